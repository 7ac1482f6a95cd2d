#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "opf/errors.hpp"
#include "opf/homotopy.hpp"
#include "opf/json_io.hpp"
#include "opf/operad.hpp"
#include "opf/rng.hpp"
#include "opf/suites.hpp"
#include "opf/wconstruction.hpp"

namespace {

using opf::io::json;

// --operad accepts @file.json, inline JSON, or a shorthand expression:
//   obm(3)  selector(2)  point(4)  nerve(2,1)
//   unitarize(selector(3))  truncate(obm(3),2)  product(obm(2),selector(2))
json parse_shorthand(std::string_view text, std::size_t& pos);

json shorthand_args(std::string_view text, std::size_t& pos, int n_args,
                    const char* kind) {
  json args = json::array();
  if (pos >= text.size() || text[pos] != '(')
    throw opf::ParseError(std::string(kind) + " needs (...) arguments");
  ++pos;
  for (int a = 0; a < n_args; ++a) {
    if (a > 0) {
      if (pos >= text.size() || text[pos] != ',')
        throw opf::ParseError(std::string(kind) + ": expected ','");
      ++pos;
    }
    if (pos < text.size() && (std::isdigit(text[pos]) != 0)) {
      std::size_t start = pos;
      while (pos < text.size() && std::isdigit(text[pos])) ++pos;
      args.push_back(std::stoi(std::string(text.substr(start, pos - start))));
    } else {
      args.push_back(parse_shorthand(text, pos));
    }
  }
  if (pos >= text.size() || text[pos] != ')')
    throw opf::ParseError(std::string(kind) + ": expected ')'");
  ++pos;
  return args;
}

json parse_shorthand(std::string_view text, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < text.size() && (std::isalnum(text[pos]) || text[pos] == '_'))
    ++pos;
  std::string kind(text.substr(start, pos - start));
  if (kind == "point" || kind == "selector" || kind == "obm") {
    json a = shorthand_args(text, pos, 1, kind.c_str());
    return json{{"kind", kind}, {"rmax", a[0]}};
  }
  if (kind == "nerve") {
    json a = shorthand_args(text, pos, 2, "nerve");
    return json{{"kind", "nerve"}, {"rmax", a[0]}, {"dim", a[1]}};
  }
  if (kind == "product") {
    json a = shorthand_args(text, pos, 2, "product");
    return json{{"kind", "product"}, {"left", a[0]}, {"right", a[1]}};
  }
  if (kind == "truncate") {
    json a = shorthand_args(text, pos, 2, "truncate");
    return json{{"kind", "truncate"}, {"base", a[0]}, {"k", a[1]}};
  }
  if (kind == "unitarize") {
    json a = shorthand_args(text, pos, 1, "unitarize");
    return json{{"kind", "unitarize"}, {"base", a[0]}};
  }
  throw opf::ParseError("unknown operad shorthand \"" + kind + "\"");
}

opf::ops::OperadPtr resolve_operad(const std::string& text) {
  if (text.empty()) throw opf::ParseError("empty operad description");
  if (text[0] == '@')
    return opf::io::operad_from_spec(opf::io::load_json_file(text.substr(1)));
  if (text[0] == '{')
    return opf::io::operad_from_spec(opf::io::parse_json(text));
  std::size_t pos = 0;
  json spec = parse_shorthand(text, pos);
  if (pos != text.size())
    throw opf::ParseError("trailing characters in operad shorthand");
  return opf::io::operad_from_spec(spec);
}

json read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return opf::io::parse_json(buf.str());
  }
  return opf::io::load_json_file(path);
}

opf::ops::Elem parse_elem(const opf::ops::FiniteOperad& p,
                          const std::string& text) {
  // "ARITY:NAME", e.g. "2:x1 x2"
  auto colon = text.find(':');
  if (colon == std::string::npos)
    throw opf::ParseError("element must be written ARITY:NAME");
  int r = std::stoi(text.substr(0, colon));
  auto e = p.find(r, text.substr(colon + 1));
  if (!e)
    throw opf::ParseError("no element \"" + text.substr(colon + 1) +
                          "\" of arity " + std::to_string(r) + " in " +
                          p.label());
  return *e;
}

std::string describe(const opf::wcons::WElement& w) {
  std::ostringstream os;
  const auto& p = *w.ops;
  os << "variant " << opf::wcons::variant_name(w.variant);
  if (w.bound) os << " (level " << *w.bound << ")";
  os << ", operad " << p.label() << ", arity " << w.arity() << "\n";
  if (w.shape.vertex_count() == 0) {
    os << "  bare edge\n";
    return os.str();
  }
  auto h = opf::wcons::vertex_heights(w);
  for (std::int32_t v = 0; v < w.shape.vertex_count(); ++v) {
    os << "  v" << v << " [" << p.name(w.labels[v]) << "]";
    if (v == w.shape.root())
      os << " root";
    else
      os << " len " << w.lengths[v].str();
    os << " height " << h[v].str() << "\n";
  }
  os << "  composite: " << p.name(opf::wcons::epsilon(w)) << "\n";
  return os.str();
}

std::uint64_t env_seed(std::uint64_t fallback) {
  if (const char* s = std::getenv("OPERADFORGE_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw opf::ParseError("OPERADFORGE_SEED is not a number");
    }
  }
  return fallback;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"operad workbench: tree rewriting, height flows, suites"};
  app.require_subcommand(1);

  std::string input = "-";
  std::string format = "json";
  std::string operad_text;
  std::string variant_text;
  std::string suite = "all";
  std::string p_text, q_text;
  std::vector<std::string> times;
  std::uint64_t seed = 0;
  int samples = 0;
  int orders = 0;
  int kval = -1;
  int at_pos = 1;
  int arity = -1;
  bool serial = false;

  auto* vcmd = app.add_subcommand("verify", "run verification suites");
  vcmd->add_option("--suite", suite, "suite name, or 'all'");
  vcmd->add_option("--seed", seed, "base RNG seed");
  vcmd->add_option("--samples", samples, "override per-suite sample counts");
  vcmd->add_flag("--serial", serial, "disable the parallel kernels");
  vcmd->add_option("--format", format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  auto* ncmd = app.add_subcommand("normalize",
                                  "canonical form of a decorated tree");
  ncmd->add_option("input", input, "JSON file, or - for stdin");
  ncmd->add_option("--variant", variant_text, "override: W, W', tauW, tauW'");
  ncmd->add_option("--k", kval, "override the truncation level");
  ncmd->add_option("--t", times,
                   "flow time(s) p/q or 'inf'; outputs one element per time");
  ncmd->add_option("--orders", orders,
                   "cross-check N randomized rule orders");
  ncmd->add_option("--seed", seed, "seed for --orders");
  ncmd->add_option("--format", format, "json|dot|text")
      ->check(CLI::IsMember({"json", "dot", "text"}));

  auto* rcmd = app.add_subcommand("render", "Graphviz drawing of a tree");
  rcmd->add_option("input", input, "JSON file, or - for stdin");

  auto* ecmd = app.add_subcommand("enumerate", "list the elements by arity");
  ecmd->add_option("--operad", operad_text, "operad (see --help-all)")
      ->required();
  ecmd->add_option("--arity", arity, "restrict to one arity");
  ecmd->add_option("--format", format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  auto* ccmd = app.add_subcommand("compose", "table composition p o_i q");
  ccmd->add_option("--operad", operad_text, "operad (see --help-all)")
      ->required();
  ccmd->add_option("-p,--left", p_text, "ARITY:NAME")->required();
  ccmd->add_option("-i,--at", at_pos, "input slot of p")->required();
  ccmd->add_option("-q,--right", q_text, "ARITY:NAME")->required();
  ccmd->add_option("--format", format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    seed = env_seed(seed);

    if (vcmd->parsed()) {
      std::vector<std::string> names;
      if (suite == "all") {
        names = opf::suites::suite_names();
      } else {
        const auto& all = opf::suites::suite_names();
        if (std::find(all.begin(), all.end(), suite) == all.end())
          throw opf::ParseError("unknown suite \"" + suite + "\"");
        names.push_back(suite);
      }
      opf::suites::Options opt;
      opt.seed = seed;
      opt.parallel = !serial;
      opt.samples = samples;
      json reports = json::array();
      bool all_pass = true;
      for (const auto& name : names) {
        auto rep = opf::suites::run_suite(name, opt);
        std::cerr << rep.summary() << "\n";
        reports.push_back(rep.to_json());
        all_pass = all_pass && rep.pass;
      }
      if (format == "json")
        std::cout << reports.dump(2) << "\n";
      else
        std::cout << (all_pass ? "PASS" : "FAIL") << " (" << names.size()
                  << " suites)\n";
      return all_pass ? 0 : 3;
    }

    if (ncmd->parsed()) {
      auto w = opf::io::welement_from_json(read_input(input));
      if (!variant_text.empty())
        w.variant = opf::wcons::parse_variant(variant_text);
      if (ncmd->count("--k")) {
        if (kval < 0)
          w.bound.reset();
        else
          w.bound = kval;
      }
      opf::wcons::validate_raw(w);
      if (w.bound) {
        auto rep = opf::wcons::validate_truncated(w, *w.bound);
        if (!rep.ok) throw opf::TruncationError(rep.detail);
      }
      std::vector<opf::wcons::WElement> out;
      if (!times.empty()) {
        for (const auto& t : times)
          out.push_back(opf::homo::rho(opf::homo::Time::parse(t), w));
      } else {
        out.push_back(opf::wcons::normalize(w));
      }
      if (orders > 0) {
        auto& base = out.back();
        for (int i = 0; i < orders; ++i) {
          auto rng = opf::item_rng(seed, static_cast<std::uint64_t>(i));
          auto alt = opf::wcons::normalize_randomized(w, rng);
          if (!(alt.shape == base.shape && alt.labels == base.labels &&
                alt.lengths == base.lengths)) {
            std::cerr << "order " << i << " produced a different form\n";
            return 3;
          }
        }
        std::cerr << orders << " randomized orders agree\n";
      }
      if (format == "dot") {
        std::cout << opf::io::to_dot(out.front());
      } else if (format == "text") {
        for (const auto& e : out) std::cout << describe(e);
      } else {
        if (times.empty()) {
          std::cout << opf::io::welement_to_json(out[0]).dump(2) << "\n";
        } else {
          json arr = json::array();
          for (std::size_t i = 0; i < out.size(); ++i)
            arr.push_back(json{{"t", times[i]},
                               {"element", opf::io::welement_to_json(out[i])}});
          std::cout << arr.dump(2) << "\n";
        }
      }
      return 0;
    }

    if (rcmd->parsed()) {
      auto w = opf::io::welement_from_json(read_input(input));
      opf::wcons::validate_raw(w);
      std::cout << opf::io::to_dot(w);
      return 0;
    }

    if (ecmd->parsed()) {
      auto p = resolve_operad(operad_text);
      int lo = arity >= 0 ? arity : 0;
      int hi = arity >= 0 ? arity : p->max_arity();
      if (hi > p->max_arity())
        throw opf::ParseError("arity exceeds the stored range");
      if (format == "json") {
        json j;
        j["label"] = p->label();
        j["rmax"] = p->max_arity();
        if (p->truncation()) j["truncation"] = *p->truncation();
        json comp = json::object();
        for (int r = lo; r <= hi; ++r) {
          json names = json::array();
          for (std::int32_t i = 0; i < p->size(r); ++i)
            names.push_back(p->name({static_cast<std::int16_t>(r), i}));
          comp[std::to_string(r)] = names;
        }
        j["components"] = comp;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << p->label() << " (arities 0.." << p->max_arity() << ")\n";
        for (int r = lo; r <= hi; ++r) {
          std::cout << "  " << r << " (" << p->size(r) << "):";
          for (std::int32_t i = 0; i < p->size(r); ++i)
            std::cout << " [" << p->name({static_cast<std::int16_t>(r), i})
                      << "]";
          std::cout << "\n";
        }
      }
      return 0;
    }

    if (ccmd->parsed()) {
      auto p = resolve_operad(operad_text);
      auto a = parse_elem(*p, p_text);
      auto b = parse_elem(*p, q_text);
      auto c = p->compose(a, at_pos, b);
      if (format == "json")
        std::cout << opf::io::elem_to_json(*p, c).dump(2) << "\n";
      else
        std::cout << p->name(c) << " (arity " << c.arity << ")\n";
      return 0;
    }
  } catch (const opf::TruncationError& e) {
    std::cerr << "truncation error: " << e.what() << "\n";
    return 2;
  } catch (const opf::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
