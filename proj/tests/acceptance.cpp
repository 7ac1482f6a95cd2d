// Exit gate: ten independent checks over the whole library, one PASS/FAIL
// line each. Returns nonzero if any check fails. Oracles here are written
// against the literal definitions and share no code with the library.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "opf/barratt_eccles.hpp"
#include "opf/errors.hpp"
#include "opf/gen.hpp"
#include "opf/homotopy.hpp"
#include "opf/json_io.hpp"
#include "opf/operad.hpp"
#include "opf/rng.hpp"
#include "opf/suites.hpp"
#include "opf/tree_term.hpp"
#include "opf/wconstruction.hpp"
#include "support/oracles.hpp"

using opf::Perm;
using opf::Rational;
using opf::homo::Time;
using opf::ops::Elem;
using opf::ops::OperadPtr;
using opf::trees::RTree;
using opf::trees::Slot;
using opf::wcons::Variant;
using opf::wcons::WElement;
namespace be = opf::be;
namespace gen = opf::gen;
namespace homo = opf::homo;
namespace io = opf::io;
namespace ops = opf::ops;
namespace terms = opf::terms;
namespace wc = opf::wcons;

namespace {

constexpr std::uint64_t kSeed = 1;

std::string g_fixture_dir;

std::string fixture(const char* name) { return g_fixture_dir + "/" + name; }

struct Check {
  bool ok = true;
  std::string detail;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

oracle::Word to_word(const be::Monomial& m) {
  oracle::Word w;
  if (m.eps[0]) w.push_back("e");
  for (int p = 1; p <= m.arity(); ++p) {
    w.push_back("x" + std::to_string(m.sigma(p)));
    if (m.eps[p]) w.push_back("e");
  }
  if (w.empty()) w.push_back("e");
  return w;
}

// ---- 1: component sizes and closure from two generators ----
void check_enumeration(Check& c) {
  const std::int64_t expect[] = {1, 4, 16, 96};
  auto p = be::obm_operad(3);
  for (int r = 0; r <= 3; ++r) {
    c.expect(be::monomial_count(r) == expect[r], "stored count wrong");
    c.expect(p->size(r) == expect[r], "table size wrong");
    c.expect(static_cast<std::int64_t>(be::enumerate_monomials(r).size()) ==
                 expect[r],
             "enumeration size wrong");
  }

  // independent oracle: close {arity-0 word, binary letters-only word} under
  // substitution and letter renaming, never touching library word code
  std::vector<std::set<oracle::Word>> closure(4);
  closure[0].insert({"e"});
  closure[1].insert({"x1"});
  closure[2].insert({"x1", "x2"});
  bool grew = true;
  while (grew) {
    grew = false;
    auto snapshot = closure;
    for (int m = 1; m <= 3; ++m) {
      for (const auto& pw : snapshot[m]) {
        for (int n = 0; n <= 3; ++n) {
          if (m + n - 1 > 3) continue;
          for (const auto& qw : snapshot[n]) {
            for (int i = 1; i <= m; ++i) {
              auto cw = oracle::compose_words(pw, i, qw, n);
              int ar = m + n - 1;
              if (closure[ar].insert(cw).second) grew = true;
            }
          }
        }
      }
    }
    for (int r = 1; r <= 3; ++r) {
      for (const auto& pw : snapshot[r]) {
        std::vector<int> images(r);
        for (int i = 0; i < r; ++i) images[i] = i + 1;
        do {
          if (closure[r].insert(oracle::act_word(pw, images)).second)
            grew = true;
        } while (std::next_permutation(images.begin(), images.end()));
      }
    }
  }
  for (int r = 0; r <= 3; ++r) {
    c.expect(closure[r] == oracle::close_words(r),
             "closure misses the direct enumeration at arity " +
                 std::to_string(r));
    std::set<oracle::Word> lib;
    for (const auto& m : be::enumerate_monomials(r)) lib.insert(to_word(m));
    c.expect(lib == closure[r],
             "library enumeration differs from the closure at arity " +
                 std::to_string(r));
  }
}

// ---- 2: operad laws, exhaustively over the stored tables ----
void check_laws(Check& c) {
  auto rep = ops::check_axioms(*be::obm_operad(3), true);
  c.expect(rep.failures == 0 && rep.checks > 50000,
           rep.failures ? rep.sample.front().law + ": " +
                              rep.sample.front().detail
                        : "too few law checks ran");
  auto endo = io::operad_from_spec(io::load_json_file(fixture("endo2.json")));
  auto pr = ops::product(be::obm_operad(2), endo);
  auto rep2 = ops::check_axioms(*pr.op, true);
  c.expect(rep2.failures == 0,
           rep2.failures ? rep2.sample.front().law : "");
  c.expect(rep2.checks > 50000, "product law sweep too small");
}

// ---- 3: the non-unit part is closed; only the unit divides the unit ----
void check_nonunit_closure(Check& c) {
  const be::Monomial unit = be::unit_monomial();
  for (int m = 1; m <= 3; ++m) {
    for (int n = 0; n <= 3 && m + n - 1 <= 3; ++n) {
      for (const auto& p : be::enumerate_monomials(m)) {
        for (const auto& q : be::enumerate_monomials(n)) {
          for (int i = 1; i <= m; ++i) {
            auto comp = be::compose_monomial(p, i, q);
            bool nu = be::is_nonunital(p) || be::is_nonunital(q);
            c.expect(be::is_nonunital(comp) == nu, "closure failed on words");
            if (comp == unit)
              c.expect(p == unit && q == unit, "unit factored non-trivially");
          }
        }
      }
    }
  }
  // sampled pairs at the simplicial level
  for (int s = 0; s < 10000; ++s) {
    auto rng = opf::item_rng(kSeed ^ 0xA1, s);
    int m = 1 + static_cast<int>(opf::pick(rng, 3));
    int n = static_cast<int>(opf::pick(rng, 4));
    int i = 1 + static_cast<int>(opf::pick(rng, m));
    int dim = static_cast<int>(opf::pick(rng, 3));
    auto p = gen::random_simplex(rng, m, dim);
    auto q = gen::random_simplex(rng, n, dim);
    auto comp = be::compose_simplex(p, i, q);
    bool nu = be::is_nonunital(p) || be::is_nonunital(q);
    c.expect(!nu || be::is_nonunital(comp), "closure failed on simplices");
  }
}

// ---- 4: rewriting reaches one normal form in any order ----
void check_confluence(Check& c) {
  const Variant variants[] = {Variant::W, Variant::WPrime, Variant::TauW,
                              Variant::TauWPrime};
  auto obm3 = be::obm_operad(3);
  auto tsel3 = ops::unitarize(ops::selector_operad(3)).op;
  for (int vi = 0; vi < 4; ++vi) {
    Variant v = variants[vi];
    OperadPtr p = wc::tau_rule_active(v) ? tsel3 : obm3;
    for (int s = 0; s < 1000; ++s) {
      auto rng = opf::item_rng(kSeed ^ (0xC0 + vi), s);
      gen::GrowConfig cfg{6, {}, wc::unit_rule_active(v) ? 0.35 : 0.15, 0.02};
      WElement raw = gen::random_raw(rng, p, v, cfg);
      WElement base = wc::normalize(raw);
      c.expect(wc::is_normal(base), "normalize left a rewrite applicable");
      for (int o = 0; o < 5; ++o) {
        auto rng2 = opf::item_rng(kSeed ^ (0xC8 + vi),
                                  static_cast<std::uint64_t>(s) * 8 + o);
        WElement alt = wc::normalize_randomized(raw, rng2);
        c.expect(alt.shape == base.shape && alt.labels == base.labels &&
                     alt.lengths == base.lengths,
                 "rule order changed the normal form");
      }
      if (!c.ok) return;
    }
  }
}

// ---- 5: normal forms carry no unit labels; unit-free reading agrees ----
void check_unit_elimination(Check& c) {
  auto labels = ops::product(be::nerve_operad(2, 1),
                             ops::unitarize(ops::selector_operad(2)).op)
                    .op;
  for (int s = 0; s < 1000; ++s) {
    Variant v = (s % 2 == 0) ? Variant::W : Variant::TauW;
    Variant tw = (v == Variant::W) ? Variant::WPrime : Variant::TauWPrime;
    auto rng = opf::item_rng(kSeed ^ 0xB2, s);
    gen::GrowConfig cfg{6, {}, 0.4, 0.02};
    WElement raw = gen::random_raw(rng, labels, v, cfg);
    WElement nw = wc::normalize(raw);
    for (const Elem& e : nw.labels)
      c.expect(!(e == labels->unit()), "normal form kept a unit label");
    WElement twin = nw;
    twin.variant = tw;
    c.expect(wc::is_normal(twin), "embedded form is not unit-free normal");
    auto renorm = wc::normalize(twin);
    c.expect(renorm.shape == twin.shape && renorm.labels == twin.labels &&
                 renorm.lengths == twin.lengths,
             "unit-free normalization moved an embedded normal form");
    if (!c.ok) return;
  }
}

// ---- 6: the one-vertex section splits the treewise composite ----
void check_augmentation(Check& c) {
  auto obm3 = be::obm_operad(3);
  auto tsel3 = ops::unitarize(ops::selector_operad(3)).op;
  for (const OperadPtr& p : {obm3, tsel3}) {
    for (int r = 0; r <= p->max_arity(); ++r) {
      for (std::int32_t i = 0; i < p->size(r); ++i) {
        Elem e{static_cast<std::int16_t>(r), i};
        for (Variant v : {Variant::W, Variant::WPrime})
          c.expect(wc::epsilon(wc::eta(p, e, v)) == e,
                   "section then augmentation is not the identity");
      }
    }
  }
  for (int s = 0; s < 500; ++s) {
    auto rng = opf::item_rng(kSeed ^ 0xB3, s);
    gen::GrowConfig cfg{5, {}, 0.25, 0.0};
    WElement a;
    int m = 0;
    for (int tries = 0; tries < 20; ++tries) {
      a = gen::random_raw(rng, obm3, Variant::W, cfg);
      m = a.arity();
      if (m >= 1) break;
    }
    if (m < 1) continue;
    int i = 1 + static_cast<int>(opf::pick(rng, m));
    gen::GrowConfig cfgb = cfg;
    cfgb.bound = 4 - m;
    WElement b = gen::random_raw(rng, obm3, Variant::W, cfgb);
    b.bound.reset();
    WElement abv = wc::w_compose(a, i, b);
    c.expect(wc::epsilon(abv) ==
                 obm3->compose(wc::epsilon(a), i, wc::epsilon(b)),
             "augmentation is not multiplicative");
    if (!c.ok) return;
  }
}

// ---- 7: the height flow and its laws, plus the pinned example ----
void check_height_flow(Check& c) {
  auto obm3 = be::obm_operad(3);
  auto tsel3 = ops::unitarize(ops::selector_operad(3)).op;
  auto fixture_for = [&](std::int64_t i, Variant& v) -> OperadPtr {
    v = (i % 2 == 0) ? Variant::WPrime : Variant::TauWPrime;
    return (i % 2 == 0) ? OperadPtr(obm3) : OperadPtr(tsel3);
  };
  for (int s = 0; s < 1000 && c.ok; ++s) {
    Variant v{};
    OperadPtr p = fixture_for(s, v);
    auto rng = opf::item_rng(kSeed ^ 0xD1, s);
    gen::GrowConfig cfg{6, {}, 0.15, 0.02};
    WElement w = wc::normalize(gen::random_raw(rng, p, v, cfg));
    auto h = wc::to_heights(w);
    auto back = wc::from_heights(h);
    c.expect(back.shape == w.shape && back.labels == w.labels &&
                 back.lengths == w.lengths,
             "height coordinates do not round-trip");
  }
  for (int s = 0; s < 300 && c.ok; ++s) {
    Variant v{};
    OperadPtr p = fixture_for(s, v);
    auto rng = opf::item_rng(kSeed ^ 0xD2, s);
    gen::GrowConfig cfg{6, {}, 0.15, 0.02};
    WElement w = gen::random_raw(rng, p, v, cfg);
    WElement nw = wc::normalize(w);
    WElement collapsed =
        w.shape.is_bare() ? w : wc::eta(p, wc::epsilon(w), v);
    c.expect(wc::same_element(homo::rho(Time::at(Rational(0)), w), collapsed),
             "flow at 0 is not the collapsed composite");
    Rational m = wc::max_height(w);
    auto atmax = homo::rho(Time::at(m), w);
    c.expect(atmax.shape == nw.shape && atmax.lengths == nw.lengths,
             "flow at the maximal height is not the identity");
    // semigroup over a fixed grid
    const Time grid[] = {Time::at(Rational(0)),    Time::at(Rational(1, 4)),
                         Time::at(Rational(1, 2)), Time::at(Rational(1)),
                         Time::at(Rational(3, 2)), Time::infinite()};
    Time s1 = grid[opf::pick(rng, 6)];
    Time s2 = grid[opf::pick(rng, 6)];
    Time lo = (s1.inf) ? s2
              : (s2.inf) ? s1
                         : Time::at(opf::min(s1.value, s2.value));
    auto lhs = homo::rho(s1, homo::rho(s2, w));
    auto rhs = homo::rho(lo, w);
    c.expect(lhs.shape == rhs.shape && lhs.labels == rhs.labels &&
                 lhs.lengths == rhs.lengths,
             "flow does not compose by minimum");
  }
  for (int s = 0; s < 500 && c.ok; ++s) {
    Variant v{};
    OperadPtr p = fixture_for(s, v);
    auto rng = opf::item_rng(kSeed ^ 0xD4, s);
    gen::GrowConfig cfg{6, {}, 0.15, 0.0};
    auto [x, y] = gen::random_relation_pair(rng, p, v, cfg);
    c.expect(wc::same_element(x, y), "relation pair split");
    auto ts = homo::time_samples(x, y);
    c.expect(ts.size() == 7, "expected 7 probe times");
    for (const Time& t : ts)
      c.expect(homo::relation_compatible(t, x, y),
               "flow broke a relation at t=" + t.str());
  }

  // pinned six-vertex example: exact heights and the 3/4 clamp
  auto obm5 = be::obm_operad(5);
  std::vector<std::vector<Slot>> sl(6);
  sl[0] = {Slot::leaf(1), Slot::child(1), Slot::leaf(2), Slot::child(2),
           Slot::child(5)};
  sl[2] = {Slot::child(3), Slot::child(4)};
  sl[5] = {Slot::leaf(3)};
  RTree shape = RTree::build(std::move(sl), 0, 3);
  auto find = [&](int r, const char* t) { return *obm5->find(r, t); };
  std::vector<Elem> labels = {find(5, "x1 e x2 x3 e x4 x5"), find(0, "e"),
                              find(2, "x2 x1"),              find(0, "e"),
                              find(0, "e"),                  find(1, "e x1")};
  std::vector<Rational> lens = {Rational(0),    Rational(1, 4),
                                Rational(1, 2), Rational(1, 3),
                                Rational(1, 2), Rational(2, 3)};
  WElement w{shape, labels, lens, obm5, Variant::TauWPrime, {}};
  std::vector<Rational> hexp = {Rational(0),    Rational(1, 4),
                                Rational(1, 2), Rational(5, 6),
                                Rational(1),    Rational(2, 3)};
  c.expect(wc::vertex_heights(w) == hexp, "pinned heights differ");
  WElement clamped = w;
  clamped.lengths = {Rational(0),    Rational(1, 4), Rational(1, 2),
                     Rational(1, 4), Rational(1, 4), Rational(2, 3)};
  c.expect(wc::same_element(homo::rho(Time::at(Rational(3, 4)), w), clamped),
           "pinned clamp at 3/4 differs");
}

// ---- 8: the per-edge clamp separates a pair the height flow keeps ----
void check_naive_flow_separation(Check& c) {
  auto p = ops::unitarize(ops::selector_operad(2)).op;
  auto wit = homo::find_tau_counterexample(p, Variant::TauWPrime, 4);
  c.expect(wit.found, "no witness found within 4 vertices");
  if (!wit.found) return;
  c.expect(wit.a.shape.vertex_count() <= 4, "witness too large");
  c.expect(wc::same_element(wit.a, wit.b), "witness is not a relation pair");
  c.expect(!wc::same_element(homo::classical_rho(wit.t, wit.a),
                             homo::classical_rho(wit.t, wit.b)),
           "per-edge clamp does not separate the pair");
  for (const Time& t : homo::time_samples(wit.a, wit.b))
    c.expect(homo::relation_compatible(t, wit.a, wit.b),
             "height flow broke the witness pair");
}

// ---- 9: levels guard exactly; evaluation order independence; retraction --
void check_levels(Check& c) {
  auto p2 = ops::truncate(be::obm_operad(3), 2);
  for (int m = 0; m <= 2; ++m) {
    for (int n = 0; n <= 2; ++n) {
      bool expect = m >= 1 && (n > 0 ? m + n - 1 <= 2 : m <= 2);
      c.expect(p2->compose_defined(m, n) == expect, "level guard formula");
      if (m >= 1 && !expect) {
        bool threw = false;
        try {
          p2->compose(Elem{static_cast<std::int16_t>(m), 0}, 1,
                      Elem{static_cast<std::int16_t>(n), 0});
        } catch (const opf::TruncationError&) {
          threw = true;
        }
        c.expect(threw, "out-of-level composition did not signal");
      }
    }
  }

  // nullary-first evaluation equals every admissible contraction order
  auto obm3 = be::obm_operad(3);
  for (int s = 0; s < 60 && c.ok; ++s) {
    auto rng = opf::item_rng(kSeed ^ 0x7A, s);
    const int rmax = obm3->max_arity();
    RTree shape = RTree::corolla(1 + static_cast<int>(opf::pick(rng, rmax)));
    std::vector<Elem> labels = {
        gen::random_elem(rng, *obm3, shape.arity())};
    int target = 2 + static_cast<int>(opf::pick(rng, 5));
    int rejects = 0;
    const int bag[] = {0, 0, 1, 2, 2};
    while (shape.vertex_count() < target && rejects < 6 &&
           shape.arity() > 0) {
      int leaf = 1 + static_cast<int>(opf::pick(rng, shape.arity()));
      int n = bag[opf::pick(rng, 5)];
      RTree grown = opf::trees::graft(shape, leaf, RTree::corolla(n));
      if (grown.arity() > rmax || grown.vertex_count() > 6) {
        ++rejects;
        continue;
      }
      shape = std::move(grown);
      labels.push_back(gen::random_elem(rng, *obm3, n));
      rejects = 0;
    }
    terms::TreeTerm tt{shape, labels, obm3, {}};
    Elem base = terms::evaluate(tt);
    std::vector<std::int32_t> ups;
    for (std::int32_t v = 0; v < shape.vertex_count(); ++v)
      if (v != shape.root()) ups.push_back(v);
    std::sort(ups.begin(), ups.end());
    int admissible = 0;
    do {
      auto r = terms::evaluate_in_order(tt, ups);
      if (r) {
        ++admissible;
        c.expect(*r == base, "an admissible order disagrees");
      }
    } while (std::next_permutation(ups.begin(), ups.end()));
    c.expect(admissible >= 1, "no admissible order");
  }

  // two-stage retraction through valid level-k states
  auto tsel2 = ops::unitarize(ops::selector_operad(2)).op;
  auto tsel3 = ops::unitarize(ops::selector_operad(3)).op;
  auto obm2 = be::obm_operad(2);
  for (int k : {2, 3}) {
    OperadPtr tau_ops = (k == 2) ? tsel2 : tsel3;
    OperadPtr free_ops = (k == 2) ? obm2 : obm3;
    for (int s = 0; s < 200 && c.ok; ++s) {
      Variant v = (s % 2 == 0) ? Variant::TauWPrime : Variant::WPrime;
      OperadPtr p = (s % 2 == 0) ? tau_ops : free_ops;
      auto rng = opf::item_rng(kSeed ^ (0x70 + k), s);
      gen::GrowConfig cfg{5, k, 0.1, 0.02};
      WElement w = gen::random_valid_truncated(rng, p, v, k, cfg);
      c.expect(wc::validate_truncated(w, k).ok, "sample escaped its level");
      auto trace = homo::two_step_truncated_retraction(w, k);
      c.expect(trace.ok, "retraction failed: " + trace.detail);
      if (!trace.ok) return;
      for (const auto& st : trace.states)
        c.expect(wc::validate_truncated(st, k).ok, "retraction left level");
      WElement want = w.shape.is_bare() ? wc::normalize(w)
                                        : wc::eta(p, wc::epsilon(w), v, k);
      c.expect(wc::same_element(trace.states.back(), want),
               "retraction did not end at the collapsed composite");
    }
  }
}

// ---- 10: the quotient collapsing the nullary part ----
void check_unitarization(Check& c) {
  auto endo = io::operad_from_spec(io::load_json_file(fixture("endo2.json")));
  std::vector<OperadPtr> bases = {ops::selector_operad(2),
                                  ops::selector_operad(3), be::obm_operad(2),
                                  endo, ops::point_operad(3)};
  for (const auto& base : bases) {
    auto u = ops::unitarize(base);
    c.expect(u.op->is_unitary(), "quotient is not unitary");
    c.expect(ops::check_axioms(*u.op, true).failures == 0,
             "quotient fails the laws");
    ops::Morphism proj{u.source, u.op, u.class_of};
    c.expect(ops::check_morphism(proj).empty(), "projection not a morphism");
    auto uu = ops::unitarize(u.op);
    bool idem = uu.op->total_size() == u.op->total_size();
    c.expect(idem, "second quotient moved");
    auto cls = oracle::unitarize_classes(*base);
    for (int r = 0; r <= base->max_arity(); ++r) {
      for (std::int32_t i = 0; i < base->size(r); ++i) {
        for (std::int32_t j = 0; j < base->size(r); ++j) {
          Elem ei{static_cast<std::int16_t>(r), i};
          Elem ej{static_cast<std::int16_t>(r), j};
          c.expect((cls[r][i] == cls[r][j]) == (u.apply(ei) == u.apply(ej)),
                   "classes differ from the refinement oracle");
        }
      }
    }
  }

  auto u2 = ops::unitarize(ops::selector_operad(2));
  auto [ka, kb] = ops::selector_constants();
  c.expect(u2.apply(ka) == u2.apply(kb),
           "designated constants were not identified");

  // a morphism to a unitary operad factors through the quotient
  auto f = io::morphism_from_json(
      io::load_json_file(fixture("selector_to_endo2.json")));
  c.expect(ops::check_morphism(f).empty(), "fixture map is not a morphism");
  auto u = ops::unitarize(f.dom);
  std::vector<std::vector<std::int32_t>> gmap(
      static_cast<std::size_t>(u.op->max_arity()) + 1);
  for (int r = 0; r <= u.op->max_arity(); ++r) {
    gmap[r].assign(static_cast<std::size_t>(u.op->size(r)), -1);
    for (std::int32_t i = 0; i < f.dom->size(r); ++i) {
      std::int32_t cl = u.class_of[r][i];
      if (gmap[r][cl] == -1) {
        gmap[r][cl] = f.map[r][i];
      } else {
        c.expect(gmap[r][cl] == f.map[r][i],
                 "map does not descend to the quotient");
      }
    }
  }
  ops::Morphism g{u.op, f.cod, gmap};
  c.expect(ops::check_morphism(g).empty(), "descended map is not a morphism");
  for (int r = 0; r <= f.dom->max_arity(); ++r) {
    for (std::int32_t i = 0; i < f.dom->size(r); ++i) {
      Elem e{static_cast<std::int16_t>(r), i};
      c.expect(g.apply(u.apply(e)) == f.apply(e),
               "factorization does not recover the map");
    }
  }
}

}  // namespace

int main() {
  if (const char* d = std::getenv("FIXTURE_DIR")) {
    g_fixture_dir = d;
  } else {
    g_fixture_dir = "fixtures";
  }

  struct Criterion {
    const char* name;
    void (*run)(Check&);
    double budget;  // seconds
  };
  const Criterion table[] = {
      {"enumeration-and-closure", check_enumeration, 5.0},
      {"operad-laws", check_laws, 30.0},
      {"nonunit-closure", check_nonunit_closure, 60.0},
      {"rewrite-confluence", check_confluence, 60.0},
      {"unit-elimination", check_unit_elimination, 60.0},
      {"augmentation-section", check_augmentation, 30.0},
      {"height-flow", check_height_flow, 60.0},
      {"naive-flow-separation", check_naive_flow_separation, 10.0},
      {"level-guards-and-retraction", check_levels, 90.0},
      {"unitarization", check_unitarization, 30.0},
  };

  bool all = true;
  double total = 0;
  for (const auto& crit : table) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      crit.run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    total += secs;
    bool in_budget = secs <= crit.budget;
    bool ok = c.ok && in_budget;
    all = all && ok;
    std::printf("[%s] %-28s %6.2fs%s%s\n", ok ? "PASS" : "FAIL", crit.name,
                secs, c.ok ? "" : ("  " + c.detail).c_str(),
                in_budget ? "" : "  (over time budget)");
  }
  std::printf("%s  total %.2fs\n", all ? "ALL PASS" : "FAILURES", total);
  return all ? 0 : 1;
}
