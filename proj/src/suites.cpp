#include "opf/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>

#include "opf/barratt_eccles.hpp"
#include "opf/errors.hpp"
#include "opf/gen.hpp"
#include "opf/homotopy.hpp"
#include "opf/json_io.hpp"
#include "opf/operad.hpp"
#include "opf/parallel.hpp"
#include "opf/rng.hpp"
#include "opf/tree_term.hpp"
#include "opf/wconstruction.hpp"

namespace opf::suites {

using homo::Time;
using ops::Elem;
using ops::FiniteOperad;
using ops::OperadPtr;
using trees::RTree;
using trees::Slot;
using wcons::Variant;
using wcons::WElement;

namespace {

struct Tally {
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::vector<std::string> wit;

  template <class F>
  void check(bool ok, F&& msg) {
    ++checks;
    if (!ok) {
      ++failures;
      if (wit.size() < 8) wit.push_back(msg());
    }
  }
  void check(bool ok, const char* msg) {
    check(ok, [msg] { return std::string(msg); });
  }
  void merge(const Tally& t) {
    checks += t.checks;
    failures += t.failures;
    for (const auto& w : t.wit) {
      if (wit.size() < 8) wit.push_back(w);
    }
  }
};

// Runs fn(i, tally_i) over 0..n-1, possibly across threads. Items only touch
// their own slot, so the merged result is identical either way.
template <class Fn>
Tally par_tally(std::int64_t n, bool parallel, Fn&& fn) {
  std::vector<Tally> parts(static_cast<std::size_t>(n));
  for_each_index(n, parallel, [&](std::int64_t i) {
    auto& slot = parts[static_cast<std::size_t>(i)];
    try {
      fn(i, slot);
    } catch (const std::exception& e) {
      slot.check(false, [&] {
        return std::string("unexpected exception: ") + e.what();
      });
    }
  });
  Tally out;
  for (const Tally& p : parts) out.merge(p);
  return out;
}

struct Builder {
  SuiteReport rep;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  explicit Builder(std::string name) { rep.suite = std::move(name); }
  void section(const std::string& name, const Tally& t) {
    rep.checks += t.checks;
    rep.failures += t.failures;
    rep.details[name] = json{{"checks", t.checks}, {"failures", t.failures}};
    for (const auto& w : t.wit) {
      if (rep.witnesses.size() < 12) rep.witnesses.push_back(name + ": " + w);
    }
  }
  SuiteReport finish() {
    rep.pass = rep.failures == 0;
    rep.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return rep;
  }
};

int effective(const Options& opt, int dflt) {
  return opt.samples > 0 ? opt.samples : dflt;
}

std::mt19937_64 salted(const Options& opt, std::uint64_t salt,
                       std::int64_t item) {
  return item_rng(mix64(opt.seed) ^ mix64(salt), item);
}

std::string wdesc(const WElement& w) {
  std::ostringstream os;
  os << wcons::variant_name(w.variant) << " element, arity " << w.arity()
     << ", " << w.shape.vertex_count() << " vertices";
  return os.str();
}

bool fields_equal(const WElement& a, const WElement& b) {
  return a.shape == b.shape && a.labels == b.labels && a.lengths == b.lengths;
}

Elem find_mono(const FiniteOperad& p, int r, const char* text) {
  auto e = p.find(r, be::format_monomial(be::parse_monomial(text)));
  if (!e) throw Error(std::string("fixture monomial not found: ") + text);
  return *e;
}

Time tmin(const Time& a, const Time& b) {
  if (a.inf) return b;
  if (b.inf) return a;
  return Time::at(min(a.value, b.value));
}

// The six-vertex decorated tree used as the pinned height example: the root
// carries (leaf1, v1, leaf2, v4, v5), v4 carries (v2, v3), v5 carries leaf3.
struct PinnedTree {
  RTree shape;
  std::vector<Rational> lengths;
};

PinnedTree pinned_tree() {
  std::vector<std::vector<Slot>> sl(6);
  sl[0] = {Slot::leaf(1), Slot::child(1), Slot::leaf(2), Slot::child(2),
           Slot::child(5)};
  sl[2] = {Slot::child(3), Slot::child(4)};
  sl[5] = {Slot::leaf(3)};
  PinnedTree p;
  p.shape = RTree::build(std::move(sl), 0, 3);
  p.lengths = {Rational(0),      Rational(1, 4), Rational(1, 2),
               Rational(1, 3),   Rational(1, 2), Rational(2, 3)};
  return p;
}

}  // namespace

json SuiteReport::to_json() const {
  json j;
  j["suite"] = suite;
  j["pass"] = pass;
  j["checks"] = checks;
  j["failures"] = failures;
  j["params"] = params;
  j["details"] = details;
  j["witnesses"] = witnesses;
  return j;
}

std::string SuiteReport::summary() const {
  char buf[192];
  std::snprintf(buf, sizeof buf, "[%s] %-10s %10lld checks %6lld failures (%.2fs)",
                pass ? "PASS" : "FAIL", suite.c_str(),
                static_cast<long long>(checks),
                static_cast<long long>(failures), seconds);
  return buf;
}

SuiteReport run_axioms(const Options& opt) {
  Builder b("axioms");
  std::vector<std::pair<std::string, OperadPtr>> fixtures;
  fixtures.emplace_back("words-r3", be::obm_operad(3));
  fixtures.emplace_back(
      "product-words2-selector2",
      ops::product(be::obm_operad(2), ops::selector_operad(2)).op);
  fixtures.emplace_back("point-r4", ops::point_operad(4));
  fixtures.emplace_back("selector-r3", ops::selector_operad(3));
  auto u3 = ops::unitarize(ops::selector_operad(3));
  fixtures.emplace_back("unitarized-selector-r3", u3.op);
  fixtures.emplace_back("truncated-words-k2", ops::truncate(be::obm_operad(3), 2));
  json par = json::array();
  for (const auto& [name, p] : fixtures) {
    Tally t;
    auto rep = ops::check_axioms(*p, opt.parallel);
    t.checks += rep.checks;
    t.failures += rep.failures;
    for (const auto& v : rep.sample) {
      if (t.wit.size() < 8) t.wit.push_back(v.law + ": " + v.detail);
    }
    b.section(name, t);
    par.push_back(name);
  }
  b.rep.params["fixtures"] = par;

  Tally t;
  t.check(u3.op->is_unitary(), "quotient is not unitary");
  auto [ka, kb] = ops::selector_constants();
  t.check(u3.apply(ka) == u3.apply(kb),
          "designated arity-1 pair was not identified");
  ops::Morphism proj{u3.source, u3.op, u3.class_of};
  auto bad = ops::check_morphism(proj);
  t.check(bad.empty(), [&] { return "projection: " + bad.front(); });
  auto u3b = ops::unitarize(u3.op);
  bool idem = u3b.op->total_size() == u3.op->total_size();
  for (int r = 0; idem && r <= u3.op->max_arity(); ++r) {
    for (std::int32_t i = 0; i < u3.op->size(r); ++i) {
      if (u3b.class_of[r][i] != i) idem = false;
    }
  }
  t.check(idem, "unitarization is not idempotent");
  auto up = ops::unitarize(ops::point_operad(3));
  t.check(up.op->total_size() == ops::point_operad(3)->total_size(),
          "unitarization moved an already-unitary operad");
  b.section("unitarization", t);
  return b.finish();
}

SuiteReport run_lemma1(const Options& opt) {
  Builder b("lemma1");
  std::vector<std::vector<be::Monomial>> words(4);
  for (int r = 0; r <= 3; ++r) words[r] = be::enumerate_monomials(r);
  const be::Monomial unit = be::unit_monomial();

  Tally obj;
  for (int m = 1; m <= 3; ++m) {
    for (int i = 1; i <= m; ++i) {
      for (int n = 0; n <= 3; ++n) {
        for (const auto& p : words[m]) {
          for (const auto& q : words[n]) {
            be::Monomial c = be::compose_monomial(p, i, q);
            bool nu = be::is_nonunital(p) || be::is_nonunital(q);
            obj.check(be::is_nonunital(c) == nu, [&] {
              return "composition left the non-unit part at " +
                     be::format_monomial(p) + " o_" + std::to_string(i) + " " +
                     be::format_monomial(q);
            });
            if (c == unit) {
              obj.check(p == unit && q == unit,
                        "the unit factored non-trivially");
            }
          }
        }
      }
    }
  }
  for (int r = 0; r <= 3; ++r) {
    for (const Perm& s : Perm::all(r)) {
      for (const auto& p : words[r]) {
        be::Monomial c = be::act_monomial(p, s);
        obj.check(be::is_nonunital(c) == be::is_nonunital(p),
                  "the action left the non-unit part");
      }
    }
  }
  b.section("words-exhaustive", obj);

  const int n_samples = effective(opt, 10000);
  Tally sim = par_tally(n_samples, opt.parallel, [&](std::int64_t i, Tally& t) {
    auto rng = salted(opt, 0xA1, i);
    int m = 1 + static_cast<int>(pick(rng, 3));
    int n = static_cast<int>(pick(rng, 4));
    int pos = 1 + static_cast<int>(pick(rng, m));
    int dim = static_cast<int>(pick(rng, 3));
    be::NerveSimplex p = gen::random_simplex(rng, m, dim);
    be::NerveSimplex q = gen::random_simplex(rng, n, dim);
    be::NerveSimplex c = be::compose_simplex(p, pos, q);
    // componentwise composition can cancel a unit component against a
    // non-unit one, so only the forward closure holds level-wise
    bool nu = be::is_nonunital(p) || be::is_nonunital(q);
    t.check(!nu || be::is_nonunital(c), [&] {
      return "simplex closure failed at " + be::format_simplex(p) + " o_" +
             std::to_string(pos) + " " + be::format_simplex(q);
    });
  });
  b.section("simplices-sampled", sim);
  b.rep.params["samples"] = n_samples;
  return b.finish();
}

SuiteReport run_lemma2(const Options& opt) {
  Builder b("lemma2");
  OperadPtr labels =
      ops::product(be::nerve_operad(2, 1),
                   ops::unitarize(ops::selector_operad(2)).op)
          .op;
  const int n_samples = effective(opt, 1000);
  Tally elim = par_tally(n_samples, opt.parallel, [&](std::int64_t i, Tally& t) {
    Variant v = (i % 2 == 0) ? Variant::W : Variant::TauW;
    Variant tw = (v == Variant::W) ? Variant::WPrime : Variant::TauWPrime;
    auto rng = salted(opt, 0xB2, i);
    gen::GrowConfig cfg{6, {}, 0.4, 0.02};
    WElement raw = gen::random_raw(rng, labels, v, cfg);
    WElement nw = wcons::normalize(raw);
    bool unitfree = true;
    for (const Elem& e : nw.labels) {
      if (e == labels->unit()) unitfree = false;
    }
    t.check(unitfree, [&] {
      return "normal form kept a unit label: " + wdesc(raw);
    });
    t.check(wcons::is_normal(nw), "normalize did not reach a normal form");
    WElement twin = nw;
    twin.variant = tw;
    t.check(wcons::is_normal(twin),
            "unit-free reading of a normal form is not normal");
    t.check(fields_equal(wcons::normalize(twin), twin),
            "unit-free normalization moved an embedded normal form");
    WElement back = twin;
    back.variant = v;
    t.check(fields_equal(wcons::normalize(back), nw),
            "round-trip through the unit-free variant changed the element");
    WElement viaprime = raw;
    viaprime.variant = tw;
    WElement staged = wcons::normalize(viaprime);
    staged.variant = v;
    t.check(fields_equal(wcons::normalize(staged), nw),
            "normalizing through the unit-free variant disagrees");
  });
  b.section("unit-elimination", elim);

  Tally aug;
  OperadPtr obm3 = be::obm_operad(3);
  OperadPtr tsel3 = ops::unitarize(ops::selector_operad(3)).op;
  for (const OperadPtr& p : {obm3, tsel3}) {
    for (int r = 0; r <= p->max_arity(); ++r) {
      for (std::int32_t idx = 0; idx < p->size(r); ++idx) {
        Elem e{static_cast<std::int16_t>(r), idx};
        for (Variant v : {Variant::W, Variant::WPrime}) {
          aug.check(wcons::epsilon(wcons::eta(p, e, v)) == e,
                    "section followed by augmentation is not the identity");
        }
      }
    }
  }
  WElement bare;
  bare.ops = obm3;
  bare.variant = Variant::W;
  aug.check(wcons::epsilon(bare) == obm3->unit(),
            "the vertex-free tree does not augment to the unit");
  b.section("augmentation-section", aug);

  const int n_pairs = effective(opt, 500);
  Tally mor = par_tally(n_pairs, opt.parallel, [&](std::int64_t i, Tally& t) {
    auto rng = salted(opt, 0xB3, i);
    gen::GrowConfig cfg{5, {}, 0.25, 0.0};
    WElement a;
    int m = 0;
    for (int tries = 0; tries < 20; ++tries) {
      a = gen::random_raw(rng, obm3, Variant::W, cfg);
      m = a.arity();
      if (m >= 1) break;
    }
    if (m < 1) {
      t.check(true, "");
      return;
    }
    int pos = 1 + static_cast<int>(pick(rng, m));
    gen::GrowConfig cfgb = cfg;
    cfgb.bound = 4 - m;  // keeps the composite arity within the tables
    WElement bb = gen::random_raw(rng, obm3, Variant::W, cfgb);
    bb.bound.reset();
    WElement ab = wcons::w_compose(a, pos, bb);
    Elem lhs = wcons::epsilon(ab);
    Elem rhs = obm3->compose(wcons::epsilon(a), pos, wcons::epsilon(bb));
    t.check(lhs == rhs, [&] {
      return "augmentation is not multiplicative on " + wdesc(a) + " o_" +
             std::to_string(pos) + " " + wdesc(bb);
    });
  });
  b.section("augmentation-morphism", mor);
  b.rep.params["samples"] = n_samples;
  b.rep.params["pairs"] = n_pairs;
  return b.finish();
}

SuiteReport run_confluence(const Options& opt) {
  Builder b("confluence");
  OperadPtr obm3 = be::obm_operad(3);
  OperadPtr tsel3 = ops::unitarize(ops::selector_operad(3)).op;
  const int n_samples = effective(opt, 1000);
  const int n_orders = 5;
  const Variant variants[] = {Variant::W, Variant::WPrime, Variant::TauW,
                              Variant::TauWPrime};
  for (int vi = 0; vi < 4; ++vi) {
    Variant v = variants[vi];
    OperadPtr p = wcons::tau_rule_active(v) ? tsel3 : obm3;
    double unit_rate = wcons::unit_rule_active(v) ? 0.35 : 0.15;
    Tally t = par_tally(n_samples, opt.parallel, [&](std::int64_t i, Tally& tl) {
      auto rng = salted(opt, 0xC0 + vi, i);
      gen::GrowConfig cfg{6, {}, unit_rate, 0.02};
      WElement raw = gen::random_raw(rng, p, v, cfg);
      WElement base = wcons::normalize(raw);
      tl.check(wcons::is_normal(base), "normalize left rewrites applicable");
      tl.check(fields_equal(wcons::normalize(base), base),
               "normalize is not idempotent");
      for (int o = 0; o < n_orders; ++o) {
        auto rng2 = salted(opt, 0xC8 + vi, i * 8 + o);
        WElement alt = wcons::normalize_randomized(raw, rng2);
        tl.check(fields_equal(alt, base), [&] {
          return std::string("rule order changed the normal form of ") +
                 wdesc(raw);
        });
      }
    });
    b.section(wcons::variant_name(v), t);
  }
  b.rep.params["samples"] = n_samples;
  b.rep.params["orders"] = n_orders;
  return b.finish();
}

SuiteReport run_homotopy(const Options& opt) {
  Builder b("homotopy");
  OperadPtr obm3 = be::obm_operad(3);
  OperadPtr tsel3 = ops::unitarize(ops::selector_operad(3)).op;
  auto pick_fixture = [&](std::int64_t i, Variant& v) -> OperadPtr {
    if (i % 2 == 0) {
      v = Variant::WPrime;
      return obm3;
    }
    v = Variant::TauWPrime;
    return tsel3;
  };

  const int n_round = effective(opt, 1000);
  Tally rt = par_tally(n_round, opt.parallel, [&](std::int64_t i, Tally& t) {
    Variant v{};
    OperadPtr p = pick_fixture(i, v);
    auto rng = salted(opt, 0xD1, i);
    gen::GrowConfig cfg{6, {}, 0.15, 0.02};
    WElement w = wcons::normalize(gen::random_raw(rng, p, v, cfg));
    wcons::HeightedElement h = wcons::to_heights(w);
    t.check(h.heights == wcons::vertex_heights(w),
            "height coordinates disagree with the geometry");
    t.check(fields_equal(wcons::from_heights(h), w),
            "height round-trip changed the element");
  });
  b.section("height-round-trip", rt);

  const int n_end = effective(opt, 300);
  Tally ep = par_tally(n_end, opt.parallel, [&](std::int64_t i, Tally& t) {
    Variant v{};
    OperadPtr p = pick_fixture(i, v);
    auto rng = salted(opt, 0xD2, i);
    gen::GrowConfig cfg{6, {}, 0.15, 0.02};
    WElement w = gen::random_raw(rng, p, v, cfg);
    WElement nw = wcons::normalize(w);
    // the bare edge has maximal height 0, so it is already its own collapse
    WElement collapsed =
        w.shape.is_bare() ? w : wcons::eta(p, wcons::epsilon(w), v);
    t.check(wcons::same_element(homo::rho(Time::at(Rational(0)), w), collapsed),
            "flow at 0 is not the collapse to a single vertex");
    Rational m = wcons::max_height(w);
    t.check(fields_equal(homo::rho(Time::at(m), w), nw),
            "flow at the maximal height moved the element");
    t.check(fields_equal(homo::rho(Time::at(m + Rational(1)), w), nw),
            "flow beyond the maximal height moved the element");
    t.check(fields_equal(homo::rho(Time::infinite(), w), nw),
            "flow at infinity moved the element");
  });
  b.section("endpoints", ep);

  const int n_semi = effective(opt, 300);
  Tally sg = par_tally(n_semi, opt.parallel, [&](std::int64_t i, Tally& t) {
    Variant v{};
    OperadPtr p = pick_fixture(i, v);
    auto rng = salted(opt, 0xD3, i);
    gen::GrowConfig cfg{6, {}, 0.15, 0.02};
    WElement w = gen::random_raw(rng, p, v, cfg);
    const Time grid[] = {Time::at(Rational(0)),    Time::at(Rational(1, 4)),
                         Time::at(Rational(1, 2)), Time::at(Rational(1)),
                         Time::at(Rational(3, 2)), Time::infinite()};
    for (int rep = 0; rep < 2; ++rep) {
      Time s = grid[pick(rng, 6)];
      Time u = grid[pick(rng, 6)];
      WElement lhs = homo::rho(s, homo::rho(u, w));
      WElement rhs = homo::rho(tmin(s, u), w);
      t.check(fields_equal(lhs, rhs), [&] {
        return "semigroup law failed at s=" + s.str() + ", t=" + u.str();
      });
    }
  });
  b.section("semigroup", sg);

  const int n_pairs = effective(opt, 500);
  Tally rel = par_tally(n_pairs, opt.parallel, [&](std::int64_t i, Tally& t) {
    Variant v{};
    OperadPtr p = pick_fixture(i, v);
    auto rng = salted(opt, 0xD4, i);
    gen::GrowConfig cfg{6, {}, 0.15, 0.0};
    auto [x, y] = gen::random_relation_pair(rng, p, v, cfg);
    t.check(wcons::same_element(x, y),
            "relation pair does not share a normal form");
    auto times = homo::time_samples(x, y);
    t.check(times.size() == 7, "time sampling did not produce 7 probes");
    for (const Time& tm : times) {
      t.check(homo::relation_compatible(tm, x, y), [&] {
        return "flow broke a relation at t=" + tm.str() + " on " + wdesc(x);
      });
    }
  });
  b.section("relation-compatibility", rel);

  // Pinned six-vertex example: heights, the treewise composite, and the
  // clamp at t=3/4 shortening the edge into the height-1 vertex to 1/4.
  Tally pin;
  {
    OperadPtr obm5 = be::obm_operad(5);
    PinnedTree pt = pinned_tree();
    std::vector<Elem> labels = {
        find_mono(*obm5, 5, "x1 e x2 x3 e x4 x5"), find_mono(*obm5, 0, "e"),
        find_mono(*obm5, 2, "x2 x1"),              find_mono(*obm5, 0, "e"),
        find_mono(*obm5, 0, "e"),                  find_mono(*obm5, 1, "e x1")};
    WElement w{pt.shape, labels, pt.lengths, obm5, Variant::TauWPrime, {}};
    wcons::validate_raw(w);
    std::vector<Rational> expect_h = {Rational(0),    Rational(1, 4),
                                      Rational(1, 2), Rational(5, 6),
                                      Rational(1),    Rational(2, 3)};
    pin.check(wcons::vertex_heights(w) == expect_h,
              "pinned height assignment differs");
    pin.check(fields_equal(wcons::from_heights(wcons::to_heights(w)), w),
              "pinned tree does not round-trip through heights");

    Elem x4c = obm5->compose(obm5->compose(labels[2], 1, labels[3]), 1,
                             labels[4]);
    Elem c1 = obm5->compose(labels[0], 2, labels[1]);
    Elem c2 = obm5->compose(c1, 3, x4c);
    Elem expect_eps = obm5->compose(c2, 3, labels[5]);
    pin.check(wcons::epsilon(w) == expect_eps,
              "pinned treewise composite differs");
    terms::TreeTerm tt{pt.shape, labels, obm5, {}};
    for (const auto& order : std::vector<std::vector<std::int32_t>>{
             {1, 2, 3, 4, 5}, {5, 4, 3, 2, 1}, {3, 4, 2, 1, 5}}) {
      auto r = terms::evaluate_in_order(tt, order);
      pin.check(r && *r == expect_eps,
                "contraction order disagrees on the pinned tree");
    }

    WElement clamped = w;
    clamped.lengths = {Rational(0),    Rational(1, 4), Rational(1, 2),
                       Rational(1, 4), Rational(1, 4), Rational(2, 3)};
    pin.check(
        wcons::same_element(homo::rho(Time::at(Rational(3, 4)), w), clamped),
        "clamp at 3/4 did not shorten the deep edges to 1/4");

    // tightest level containing the example: the 5-ary root together with
    // its binary child forms a subgraph with 6 ingoing edges
    auto trace = homo::two_step_truncated_retraction(w, 6);
    pin.check(trace.ok, [&] { return "pinned retraction: " + trace.detail; });
  }
  b.section("pinned-example", pin);
  b.rep.params["samples"] = n_round;
  b.rep.params["pairs"] = n_pairs;
  return b.finish();
}

SuiteReport run_truncated(const Options& opt) {
  Builder b("truncated");

  Tally guard;
  {
    OperadPtr p2 = ops::truncate(be::obm_operad(3), 2);
    guard.check(p2->truncation() == std::optional<int>(2),
                "truncation level not recorded");
    for (int m = 0; m <= p2->max_arity(); ++m) {
      for (int n = 0; n <= p2->max_arity(); ++n) {
        bool expect = m >= 1 && (n > 0 ? m + n - 1 <= 2 : m <= 2);
        guard.check(p2->compose_defined(m, n) == expect, [&] {
          return "composition domain wrong at m=" + std::to_string(m) +
                 ", n=" + std::to_string(n);
        });
        if (m >= 1 && !expect && p2->size(m) > 0 && p2->size(n) > 0) {
          bool threw = false;
          try {
            p2->compose(Elem{static_cast<std::int16_t>(m), 0}, 1,
                        Elem{static_cast<std::int16_t>(n), 0});
          } catch (const TruncationError&) {
            threw = true;
          }
          guard.check(threw, "out-of-level composition did not signal");
        }
      }
    }

    OperadPtr tsel2 = ops::unitarize(ops::selector_operad(2)).op;
    Elem pi1 = *tsel2->find(2, "pi1");
    WElement a = wcons::eta(tsel2, pi1, Variant::TauWPrime, 2);
    bool threw = false;
    try {
      wcons::w_compose(a, 1, a);
    } catch (const TruncationError&) {
      threw = true;
    }
    guard.check(threw, "level-2 grafting of two binary vertices did not signal");
    WElement z = wcons::eta(tsel2, tsel2->nought(), Variant::TauWPrime, 2);
    WElement az = wcons::w_compose(a, 1, z);
    guard.check(wcons::validate_truncated(az, 2).ok,
                "arity-0 grafting left the level-2 space");

    // Connected-subgraph level count: two deep arity-0 plugs push the worst
    // composite to 4 even though the term arity is 2.
    OperadPtr obm4 = be::obm_operad(4);
    std::vector<std::vector<Slot>> sl(5);
    sl[0] = {Slot::child(1), Slot::child(3)};
    sl[1] = {Slot::leaf(1), Slot::child(2)};
    sl[3] = {Slot::child(4), Slot::leaf(2)};
    RTree shape = RTree::build(std::move(sl), 0, 2);
    Elem two = find_mono(*obm4, 2, "x1 x2");
    Elem zero = find_mono(*obm4, 0, "e");
    std::vector<Elem> labels = {two, two, zero, two, zero};
    std::vector<Rational> halves(5, Rational(1, 2));
    halves[0] = Rational(0);
    WElement deep{shape, labels, halves, obm4, Variant::WPrime, {}};
    wcons::validate_raw(deep);
    auto r3 = wcons::validate_truncated(deep, 3);
    guard.check(!r3.ok && r3.worst == 4 && r3.total_arity == 2,
                "worst composite should be 4 over the whole tree");
    guard.check(wcons::validate_truncated(deep, 4).ok,
                "level 4 should admit the deep tree");
    WElement cut = deep;
    cut.lengths[1] = Rational(1);  // full-length edges delimit components
    auto c3 = wcons::validate_truncated(cut, 3);
    guard.check(c3.ok && c3.worst == 3,
                "full-length edge should shield the deep subtree");
  }
  b.section("guards", guard);

  OperadPtr obm3 = be::obm_operad(3);
  const int n_orders = effective(opt, 60);
  Tally ord = par_tally(n_orders, opt.parallel, [&](std::int64_t i, Tally& t) {
    auto rng = salted(opt, 0x7A, i);
    // wilder shapes than the safe generator: only the per-vertex and total
    // arity limits hold, so some contraction orders overflow the tables
    const int rmax = obm3->max_arity();
    RTree shape = RTree::corolla(1 + static_cast<int>(pick(rng, rmax)));
    std::vector<Elem> labels;
    labels.push_back(gen::random_elem(rng, *obm3, shape.arity()));
    int target = 2 + static_cast<int>(pick(rng, 5));
    int rejects = 0;
    const int bag[] = {0, 0, 1, 2, 2};
    while (shape.vertex_count() < target && rejects < 6 && shape.arity() > 0) {
      int leaf = 1 + static_cast<int>(pick(rng, shape.arity()));
      int n = bag[pick(rng, 5)];
      RTree grown = trees::graft(shape, leaf, RTree::corolla(n));
      if (grown.arity() > rmax || grown.vertex_count() > 6) {
        ++rejects;
        continue;
      }
      shape = std::move(grown);
      labels.push_back(gen::random_elem(rng, *obm3, n));
      rejects = 0;
    }
    terms::TreeTerm tt{shape, labels, obm3, {}};
    terms::validate(tt);
    Elem base = terms::evaluate(tt);
    std::vector<std::int32_t> ups;
    for (std::int32_t v = 0; v < shape.vertex_count(); ++v) {
      if (v != shape.root()) ups.push_back(v);
    }
    std::sort(ups.begin(), ups.end());
    int admissible = 0;
    do {
      auto r = terms::evaluate_in_order(tt, ups);
      if (r) {
        ++admissible;
        t.check(*r == base, "an admissible contraction order disagrees");
      }
    } while (std::next_permutation(ups.begin(), ups.end()));
    t.check(admissible >= 1, "no contraction order was admissible");
  });
  b.section("contraction-orders", ord);

  OperadPtr tsel2 = ops::unitarize(ops::selector_operad(2)).op;
  OperadPtr tsel3 = ops::unitarize(ops::selector_operad(3)).op;
  OperadPtr obm2 = be::obm_operad(2);
  const int n_two = effective(opt, 200);
  for (int k : {2, 3}) {
    OperadPtr tau_ops = (k == 2) ? tsel2 : tsel3;
    OperadPtr free_ops = (k == 2) ? obm2 : obm3;
    Tally t = par_tally(n_two, opt.parallel, [&](std::int64_t i, Tally& tl) {
      Variant v = (i % 2 == 0) ? Variant::TauWPrime : Variant::WPrime;
      OperadPtr p = (i % 2 == 0) ? tau_ops : free_ops;
      auto rng = salted(opt, 0x70 + k, i);
      gen::GrowConfig cfg{5, k, 0.1, 0.02};
      WElement w = gen::random_valid_truncated(rng, p, v, k, cfg);
      tl.check(wcons::validate_truncated(w, k).ok,
               "generated element is outside its level");
      auto trace = homo::two_step_truncated_retraction(w, k);
      tl.check(trace.ok, [&] {
        return "retraction failed on " + wdesc(w) + ": " + trace.detail;
      });
    });
    b.section("two-step-k" + std::to_string(k), t);
  }
  b.rep.params["order-samples"] = n_orders;
  b.rep.params["two-step-samples"] = n_two;
  return b.finish();
}

SuiteReport run_tau(const Options& opt) {
  Builder b("tau");
  OperadPtr tsel2 = ops::unitarize(ops::selector_operad(2)).op;
  auto wit = homo::find_tau_counterexample(tsel2, Variant::TauWPrime, 4);
  Tally t;
  t.check(wit.found, "no witness within 4 vertices");
  if (wit.found) {
    t.check(wit.a.shape.vertex_count() <= 4, "witness too large");
    t.check(wcons::same_element(wit.a, wit.b),
            "witness pair is not a relation pair");
    t.check(!wcons::same_element(homo::classical_rho(wit.t, wit.a),
                                 homo::classical_rho(wit.t, wit.b)),
            "per-edge clamp does not separate the witness pair");
    for (const Time& tm : homo::time_samples(wit.a, wit.b)) {
      t.check(homo::relation_compatible(tm, wit.a, wit.b), [&] {
        return "height clamp broke the witness pair at t=" + tm.str();
      });
    }
    b.rep.details["witness"] =
        json{{"a", io::welement_to_json(wit.a)},
             {"b", io::welement_to_json(wit.b)},
             {"t", wit.t.str()},
             {"note", wit.detail}};
  }
  b.section("witness", t);
  b.rep.params["max-vertices"] = 4;
  (void)opt;
  return b.finish();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "axioms",    "lemma1",    "lemma2", "confluence",
      "homotopy",  "truncated", "tau"};
  return names;
}

SuiteReport run_suite(const std::string& name, const Options& opt) {
  if (name == "axioms") return run_axioms(opt);
  if (name == "lemma1") return run_lemma1(opt);
  if (name == "lemma2") return run_lemma2(opt);
  if (name == "confluence") return run_confluence(opt);
  if (name == "homotopy") return run_homotopy(opt);
  if (name == "truncated") return run_truncated(opt);
  if (name == "tau") return run_tau(opt);
  throw ParseError("unknown suite \"" + name + "\"");
}

}  // namespace opf::suites
