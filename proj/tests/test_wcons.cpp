#include <set>

#include "doctest.h"
#include "opf/barratt_eccles.hpp"
#include "opf/errors.hpp"
#include "opf/operad.hpp"
#include "opf/wconstruction.hpp"

using opf::Rational;
using opf::ops::Elem;
using opf::trees::RTree;
using opf::trees::Slot;
namespace wc = opf::wcons;
using wc::Variant;
using wc::WElement;

namespace {

Elem named(const opf::ops::FiniteOperad& p, int r, const char* n) {
  return *p.find(r, n);
}

// root a -- (len) -- b(leaf1..leafN) chain helper
WElement chain2(opf::ops::OperadPtr p, Elem root, Elem up, Rational len,
                Variant v) {
  std::vector<std::vector<Slot>> sl(2);
  sl[0].push_back(Slot::child(1));
  for (int j = 0; j < up.arity; ++j) sl[1].push_back(Slot::leaf(j + 1));
  RTree t = RTree::build(std::move(sl), 0, up.arity);
  return WElement{t, {root, up}, {Rational(0), len}, p, v, {}};
}

}  // namespace

TEST_CASE("zero length edges contract with label composition") {
  auto p = opf::be::obm_operad(3);
  Elem a = named(*p, 1, "e x1");
  Elem b = named(*p, 2, "x2 x1");
  WElement w = chain2(p, a, b, Rational(0), Variant::WPrime);
  WElement n = wc::normalize(w);
  CHECK(n.shape.vertex_count() == 1);
  CHECK(n.labels[0] == p->compose(a, 1, b));
  CHECK(wc::is_normal(n));
  CHECK(wc::same_element(w, n));
}

TEST_CASE("positive lengths survive normalization") {
  auto p = opf::be::obm_operad(3);
  Elem a = named(*p, 1, "e x1");
  Elem b = named(*p, 2, "x2 x1");
  WElement w = chain2(p, a, b, Rational(1, 2), Variant::WPrime);
  WElement n = wc::normalize(w);
  CHECK(n.shape.vertex_count() == 2);
  CHECK(wc::is_normal(w));
}

TEST_CASE("unit labels are removed in the unital variant only") {
  auto p = opf::be::obm_operad(3);
  Elem b = named(*p, 2, "x2 x1");
  WElement w = chain2(p, p->unit(), b, Rational(1, 2), Variant::W);
  WElement n = wc::normalize(w);
  CHECK(n.shape.vertex_count() == 1);
  CHECK(n.labels[0] == b);

  WElement keep = chain2(p, p->unit(), b, Rational(1, 2), Variant::WPrime);
  CHECK(wc::normalize(keep).shape.vertex_count() == 2);
}

TEST_CASE("unit removal merges lengths by maximum") {
  auto p = opf::be::obm_operad(3);
  // a -- unit -- b: removing the middle unit keeps the longer stretch
  std::vector<std::vector<Slot>> sl(3);
  sl[0] = {Slot::child(1)};
  sl[1] = {Slot::child(2)};
  sl[2] = {Slot::leaf(1), Slot::leaf(2)};
  RTree t = RTree::build(std::move(sl), 0, 2);
  Elem a = named(*p, 1, "e x1");
  Elem b = named(*p, 2, "x2 x1");
  WElement w{t,
             {a, p->unit(), b},
             {Rational(0), Rational(1, 3), Rational(3, 4)},
             p,
             Variant::W,
             {}};
  WElement n = wc::normalize(w);
  REQUIRE(n.shape.vertex_count() == 2);
  CHECK(n.lengths[1] == Rational(3, 4));

  // unit at the root: the surviving edge keeps its own length
  WElement w2{t,
              {p->unit(), a, b},
              {Rational(0), Rational(1, 3), Rational(3, 4)},
              p,
              Variant::W,
              {}};
  WElement n2 = wc::normalize(w2);
  REQUIRE(n2.shape.vertex_count() == 2);
  // root length stays 0; removing a root unit cannot stretch it
  CHECK(n2.lengths[n2.shape.root()] == Rational(0));
}

TEST_CASE("leafless subtrees on full-length edges collapse") {
  auto u = opf::ops::unitarize(opf::ops::selector_operad(2));
  auto p = u.op;
  Elem pi1 = named(*p, 1, "pi1");
  Elem pt = p->nought();
  WElement w = chain2(p, pi1, pt, Rational(1), Variant::TauWPrime);
  // single arity-0 vertex at length 1: already the reduced named form?
  // The reduction step rewrites multi-vertex leafless subtrees; a single
  // distinguished vertex is normal.
  WElement n = wc::normalize(w);
  CHECK(n.shape.vertex_count() == 2);

  // two-vertex leafless subtree on a length-1 edge reduces
  std::vector<std::vector<Slot>> sl(3);
  sl[0] = {Slot::child(1)};
  sl[1] = {Slot::child(2)};
  RTree t = RTree::build(std::move(sl), 0, 0);
  WElement big{t,
               {pi1, pi1, pt},
               {Rational(0), Rational(1), Rational(1, 2)},
               p,
               Variant::TauWPrime,
               {}};
  WElement n2 = wc::normalize(big);
  CHECK(n2.shape.vertex_count() == 2);
  CHECK(n2.labels[1] == pt);
  CHECK(n2.lengths[1] == Rational(1));

  // same picture without the full-length edge stays put
  WElement stay = big;
  stay.lengths[1] = Rational(1, 2);
  CHECK(wc::normalize(stay).shape.vertex_count() == 3);
}

TEST_CASE("the reduction needs a unitary label operad") {
  auto s = opf::ops::selector_operad(2);  // two arity-0 elements
  Elem pi1 = named(*s, 1, "pi1");
  CHECK_THROWS_AS(
      wc::normalize(chain2(s, pi1, named(*s, 0, "a"), Rational(1),
                           Variant::TauWPrime)),
      opf::Error);
}

TEST_CASE("section and augmentation") {
  auto p = opf::be::obm_operad(3);
  for (int r = 0; r <= 3; ++r) {
    for (std::int32_t i = 0; i < p->size(r); ++i) {
      Elem e{static_cast<std::int16_t>(r), i};
      auto w = wc::eta(p, e, Variant::W);
      CHECK(w.shape.vertex_count() == 1);
      CHECK(wc::epsilon(w) == e);
    }
  }
}

TEST_CASE("grafting composes along a full-length junction") {
  auto p = opf::be::obm_operad(3);
  Elem a = named(*p, 2, "x1 x2");
  Elem b = named(*p, 2, "x2 x1");
  auto wa = wc::eta(p, a, Variant::WPrime);
  auto wb = wc::eta(p, b, Variant::WPrime);
  auto c = wc::w_compose(wa, 2, wb);
  CHECK(c.arity() == 3);
  CHECK(c.shape.vertex_count() == 2);
  CHECK(wc::epsilon(c) == p->compose(a, 2, b));
  // the junction edge has length 1
  for (std::int32_t v = 0; v < 2; ++v) {
    if (v != c.shape.root()) CHECK(c.lengths[v] == Rational(1));
  }
  // unit laws hold in the variant that removes unit labels
  auto wa2 = wc::eta(p, a, Variant::W);
  auto unit = wc::eta(p, p->unit(), Variant::W);
  CHECK(wc::same_element(wc::w_compose(wa2, 1, unit), wa2));
  CHECK(wc::same_element(wc::w_compose(unit, 1, wa2), wa2));
}

TEST_CASE("decompose cuts interior full-length edges and recomposes") {
  auto p = opf::be::obm_operad(3);
  Elem a = named(*p, 2, "x1 x2");
  Elem b = named(*p, 1, "e x1");
  Elem z = named(*p, 0, "e");
  auto w = wc::w_compose(wc::w_compose(wc::eta(p, a, Variant::WPrime), 1,
                                       wc::eta(p, b, Variant::WPrime)),
                         2, wc::eta(p, z, Variant::WPrime));
  auto f = wc::decompose(w);
  CHECK(f.factors.size() == 3);
  for (const auto& fac : f.factors) {
    CHECK(wc::is_generator(fac.element));
    CHECK(wc::is_normal(fac.element));
  }
  auto back = wc::recompose(f);
  CHECK(wc::same_element(back, w));
  CHECK(back.shape == wc::normalize(w).shape);

  // a generator decomposes into itself alone
  auto g = chain2(p, b, a, Rational(1, 2), Variant::WPrime);
  auto fg = wc::decompose(wc::normalize(g));
  CHECK(fg.factors.size() == 1);
}

TEST_CASE("height coordinates round-trip") {
  auto p = opf::be::obm_operad(3);
  Elem a = named(*p, 1, "e x1");
  Elem b = named(*p, 2, "x1 x2");
  WElement w = chain2(p, a, b, Rational(2, 5), Variant::WPrime);
  auto h = wc::to_heights(w);
  CHECK(h.heights == std::vector<Rational>{Rational(0), Rational(2, 5)});
  CHECK(wc::from_heights(h).lengths == w.lengths);
  CHECK(wc::max_height(w) == Rational(2, 5));
  CHECK(wc::vertex_heights(w)[1] == Rational(2, 5));
}

TEST_CASE("canonical forms ignore the vertex numbering") {
  auto p = opf::be::obm_operad(3);
  Elem a = named(*p, 2, "x1 x2");
  Elem z = named(*p, 0, "e");
  std::vector<std::vector<Slot>> sl1(2);
  sl1[0] = {Slot::child(1), Slot::leaf(1)};
  sl1[1] = {};
  WElement w1{RTree::build(std::move(sl1), 0, 1),
              {a, z},
              {Rational(0), Rational(1, 2)},
              p,
              Variant::WPrime,
              {}};
  std::vector<std::vector<Slot>> sl2(2);
  sl2[1] = {Slot::child(0), Slot::leaf(1)};
  sl2[0] = {};
  WElement w2{RTree::build(std::move(sl2), 1, 1),
              {z, a},
              {Rational(1, 2), Rational(0)},
              p,
              Variant::WPrime,
              {}};
  CHECK(wc::same_element(w1, w2));
  auto c1 = wc::canonical(w1);
  auto c2 = wc::canonical(w2);
  CHECK(c1.shape == c2.shape);
  CHECK(c1.labels == c2.labels);
  CHECK(c1.lengths == c2.lengths);
}

TEST_CASE("validation rejects malformed raw data") {
  auto p = opf::be::obm_operad(3);
  Elem a = named(*p, 2, "x1 x2");
  WElement bad{RTree::corolla(2), {a}, {Rational(1, 2)}, p, Variant::W, {}};
  // root length must be zero
  CHECK_THROWS_AS(wc::validate_raw(bad), opf::Error);
  WElement bad2{RTree::corolla(2), {a}, {Rational(0)}, p, Variant::W, {}};
  bad2.labels[0] = Elem{1, 0};
  CHECK_THROWS_AS(wc::validate_raw(bad2), opf::Error);
  WElement bad3 = chain2(p, a, a, Rational(3, 2), Variant::W);
  CHECK_THROWS_AS(wc::validate_raw(bad3), opf::Error);
}
