#include "opf/json_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "opf/barratt_eccles.hpp"
#include "opf/errors.hpp"

namespace opf::io {

using ops::Elem;
using ops::FiniteOperad;
using ops::OperadPtr;
using trees::RTree;
using trees::Slot;
using wcons::WElement;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad json: ") + e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

namespace {

const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end())
    throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

int need_int(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_number_integer())
    throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

std::string need_str(const json& j, const char* key) {
  const json& v = need(j, key);
  if (!v.is_string())
    throw ParseError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

OperadPtr table_operad(const json& spec) {
  FiniteOperad::Recipe rec;
  rec.label = spec.contains("label") ? need_str(spec, "label") : "table";
  rec.spec = spec;
  rec.rmax = need_int(spec, "rmax");
  if (spec.contains("truncation") && !spec["truncation"].is_null())
    rec.truncation = need_int(spec, "truncation");
  const json& comps = need(spec, "components");
  if (!comps.is_array()) throw ParseError("\"components\" must be an array");
  rec.names.resize(rec.rmax + 1);
  for (int r = 0; r <= rec.rmax && r < static_cast<int>(comps.size()); ++r) {
    for (const json& nm : comps[r]) rec.names[r].push_back(nm.get<std::string>());
  }
  std::map<std::pair<int, std::string>, std::int32_t> index;
  for (int r = 0; r <= rec.rmax; ++r) {
    for (std::size_t i = 0; i < rec.names[r].size(); ++i) {
      auto key = std::make_pair(r, rec.names[r][i]);
      if (!index.emplace(key, static_cast<std::int32_t>(i)).second)
        throw ParseError("duplicate element name " + rec.names[r][i]);
    }
  }
  auto lookup = [index](int r, const std::string& nm) {
    auto it = index.find({r, nm});
    if (it == index.end())
      throw ParseError("unknown element " + nm + " in arity " +
                       std::to_string(r));
    return it->second;
  };
  const json& unit = need(spec, "unit");
  rec.unit = Elem{1, lookup(1, unit.get<std::string>())};

  // compose entries [m, i, p, n, q, result]; action entries
  // [r, [images...], p, result]. Identity actions may be omitted.
  auto ctab = std::make_shared<
      std::map<std::tuple<int, int, std::int32_t, int, std::int32_t>,
               std::int32_t>>();
  for (const json& row : need(spec, "compose")) {
    if (!row.is_array() || row.size() != 6)
      throw ParseError("compose rows are [m,i,p,n,q,result]");
    int m = row[0].get<int>(), i = row[1].get<int>(), n = row[3].get<int>();
    std::int32_t p = lookup(m, row[2].get<std::string>());
    std::int32_t q = lookup(n, row[4].get<std::string>());
    std::int32_t res = lookup(m + n - 1, row[5].get<std::string>());
    (*ctab)[{m, i, p, n, q}] = res;
  }
  auto atab = std::make_shared<
      std::map<std::tuple<int, std::int64_t, std::int32_t>, std::int32_t>>();
  if (spec.contains("action")) {
    for (const json& row : spec["action"]) {
      if (!row.is_array() || row.size() != 4)
        throw ParseError("action rows are [r,[images],p,result]");
      int r = row[0].get<int>();
      std::vector<int> img = row[1].get<std::vector<int>>();
      if (static_cast<int>(img.size()) != r)
        throw ParseError("action permutation size mismatch");
      Perm sigma = Perm::identity(r);
      std::vector<std::uint8_t> im(img.begin(), img.end());
      sigma = Perm(im);
      (*atab)[{r, sigma.rank(), lookup(r, row[2].get<std::string>())}] =
          lookup(r, row[3].get<std::string>());
    }
  }
  rec.compose = [ctab](int m, int i, std::int32_t p, int n, std::int32_t q) {
    auto it = ctab->find({m, i, p, n, q});
    if (it == ctab->end())
      throw ParseError("table operad is missing a composition entry");
    return it->second;
  };
  rec.act = [atab](int r, const Perm& sigma, std::int32_t p) {
    if (sigma.is_identity()) return p;
    auto it = atab->find({r, sigma.rank(), p});
    if (it == atab->end())
      throw ParseError("table operad is missing an action entry");
    return it->second;
  };
  return FiniteOperad::build(std::move(rec));
}

}  // namespace

OperadPtr operad_from_spec(const json& spec) {
  if (!spec.is_object()) throw ParseError("operad spec must be an object");
  std::string kind = need_str(spec, "kind");
  if (kind == "point") return ops::point_operad(need_int(spec, "rmax"));
  if (kind == "selector") return ops::selector_operad(need_int(spec, "rmax"));
  if (kind == "obm") return be::obm_operad(need_int(spec, "rmax"));
  if (kind == "nerve")
    return be::nerve_operad(need_int(spec, "rmax"), need_int(spec, "dim"));
  if (kind == "product")
    return ops::product(operad_from_spec(need(spec, "left")),
                        operad_from_spec(need(spec, "right")))
        .op;
  if (kind == "truncate")
    return ops::truncate(operad_from_spec(need(spec, "base")),
                         need_int(spec, "k"));
  if (kind == "unitarize")
    return ops::unitarize(operad_from_spec(need(spec, "base"))).op;
  if (kind == "table") return table_operad(spec);
  throw ParseError("unknown operad kind \"" + kind + "\"");
}

json elem_to_json(const FiniteOperad& p, Elem e) {
  return json{{"arity", e.arity}, {"name", p.name(e)}};
}

Elem elem_from_json(const FiniteOperad& p, const json& j) {
  int r = need_int(j, "arity");
  std::string nm = need_str(j, "name");
  auto e = p.find(r, nm);
  if (!e) throw ParseError("no element named \"" + nm + "\" in arity " +
                           std::to_string(r));
  return *e;
}

json welement_to_json(const WElement& w) {
  json nodes = json::array();
  json labels = json::object();
  json lengths = json::object();
  for (std::int32_t v = 0; v < w.shape.vertex_count(); ++v) {
    json slots = json::array();
    for (const Slot& s : w.shape.slots(v)) {
      if (s.is_leaf())
        slots.push_back(json{{"leaf", s.leaf_number()}});
      else
        slots.push_back(json{{"child", s.vertex()}});
    }
    nodes.push_back(json{{"id", v}, {"slots", std::move(slots)}});
    labels[std::to_string(v)] = w.ops->name(w.labels[v]);
    lengths[std::to_string(v)] = w.lengths[v].str();
  }
  json out;
  out["operad"] = w.ops->spec();
  out["variant"] = wcons::variant_name(w.variant);
  out["k"] = w.bound ? json(*w.bound) : json(nullptr);
  out["arity"] = w.arity();
  out["root"] = w.shape.is_bare() ? json(nullptr) : json(w.shape.root());
  out["nodes"] = std::move(nodes);
  out["labels"] = std::move(labels);
  out["lengths"] = std::move(lengths);
  return out;
}

WElement welement_from_json(const json& j) {
  WElement w;
  w.ops = operad_from_spec(need(j, "operad"));
  w.variant = wcons::parse_variant(need_str(j, "variant"));
  if (j.contains("k") && !j["k"].is_null()) w.bound = need_int(j, "k");
  int arity = need_int(j, "arity");
  const json& nodes = need(j, "nodes");
  if (!nodes.is_array()) throw ParseError("\"nodes\" must be an array");
  const std::int32_t n = static_cast<std::int32_t>(nodes.size());
  if (n == 0) {
    if (arity != 1) throw ParseError("the vertex-free tree has arity 1");
    if (!need(j, "root").is_null())
      throw ParseError("the vertex-free tree has no root");
    wcons::validate_raw(w);
    return w;
  }
  std::vector<std::vector<Slot>> slots(n);
  std::vector<bool> have(n, false);
  for (const json& nd : nodes) {
    int id = need_int(nd, "id");
    if (id < 0 || id >= n || have[id])
      throw ParseError("node ids must be 0..n-1, each once");
    have[id] = true;
    for (const json& s : need(nd, "slots")) {
      if (s.contains("leaf"))
        slots[id].push_back(Slot::leaf(s["leaf"].get<std::int32_t>()));
      else if (s.contains("child"))
        slots[id].push_back(Slot::child(s["child"].get<std::int32_t>()));
      else
        throw ParseError("slot must name a \"leaf\" or a \"child\"");
    }
  }
  try {
    w.shape = RTree::build(std::move(slots), need_int(j, "root"), arity);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("bad tree: ") + e.what());
  }
  const json& labels = need(j, "labels");
  const json& lengths = need(j, "lengths");
  w.labels.resize(n);
  w.lengths.resize(n);
  for (std::int32_t v = 0; v < n; ++v) {
    std::string key = std::to_string(v);
    if (!labels.contains(key))
      throw ParseError("missing label for node " + key);
    int r = w.shape.vertex_arity(v);
    auto e = w.ops->find(r, labels[key].get<std::string>());
    if (!e)
      throw ParseError("no arity-" + std::to_string(r) + " element named \"" +
                       labels[key].get<std::string>() + "\"");
    w.labels[v] = *e;
    if (!lengths.contains(key))
      throw ParseError("missing length for node " + key);
    try {
      w.lengths[v] = Rational::parse(lengths[key].get<std::string>());
    } catch (const Error& e2) {
      throw ParseError(std::string("bad length: ") + e2.what());
    }
  }
  try {
    wcons::validate_raw(w);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("bad element: ") + e.what());
  }
  return w;
}

ops::Morphism morphism_from_json(const json& j) {
  ops::Morphism f;
  f.dom = operad_from_spec(need(j, "dom"));
  f.cod = operad_from_spec(need(j, "cod"));
  const json& map = need(j, "map");
  f.map.resize(f.dom->max_arity() + 1);
  for (int r = 0; r <= f.dom->max_arity(); ++r) {
    std::string key = std::to_string(r);
    if (!map.contains(key)) {
      if (f.dom->size(r) == 0) continue;
      throw ParseError("morphism map is missing arity " + key);
    }
    for (const json& nm : map[key]) {
      auto e = f.cod->find(r, nm.get<std::string>());
      if (!e)
        throw ParseError("morphism target \"" + nm.get<std::string>() +
                         "\" not in codomain arity " + key);
      f.map[r].push_back(e->index);
    }
    if (static_cast<int>(f.map[r].size()) != f.dom->size(r))
      throw ParseError("morphism map for arity " + key +
                       " has the wrong length");
  }
  return f;
}

std::string to_dot(const WElement& w) {
  std::ostringstream os;
  os << "digraph welement {\n  rankdir=BT;\n";
  os << "  out [shape=point];\n";
  if (w.shape.is_bare()) {
    os << "  leaf1 [shape=box, label=\"1\"];\n";
    os << "  leaf1 -> out;\n}\n";
    return os.str();
  }
  for (std::int32_t v = 0; v < w.shape.vertex_count(); ++v) {
    os << "  v" << v << " [label=\"" << w.ops->name(w.labels[v]) << "\"];\n";
  }
  for (int j = 1; j <= w.arity(); ++j) {
    os << "  leaf" << j << " [shape=box, label=\"" << j << "\"];\n";
  }
  os << "  v" << w.shape.root() << " -> out;\n";
  for (std::int32_t v = 0; v < w.shape.vertex_count(); ++v) {
    for (const Slot& s : w.shape.slots(v)) {
      if (s.is_leaf()) {
        os << "  leaf" << s.leaf_number() << " -> v" << v << ";\n";
      } else {
        os << "  v" << s.vertex() << " -> v" << v << " [label=\""
           << w.lengths[s.vertex()].str() << "\"];\n";
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace opf::io
