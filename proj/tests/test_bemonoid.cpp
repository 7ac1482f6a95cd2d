#include <map>
#include <set>
#include <string>

#include "doctest.h"
#include "opf/barratt_eccles.hpp"
#include "opf/rng.hpp"
#include "support/oracles.hpp"

using opf::Perm;
namespace be = opf::be;

namespace {

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

}  // namespace

TEST_CASE("word counts match the direct enumeration") {
  const std::int64_t expect[] = {1, 4, 16, 96};
  for (int r = 0; r <= 3; ++r) {
    CHECK(be::monomial_count(r) == expect[r]);
    auto all = be::enumerate_monomials(r);
    CHECK(static_cast<std::int64_t>(all.size()) == expect[r]);
    auto direct = oracle::close_words(r);
    std::set<oracle::Word> mine;
    for (const auto& m : all) mine.insert(to_word(m));
    CHECK(mine == direct);
  }
}

TEST_CASE("format and parse round-trip in both spellings") {
  for (int r = 0; r <= 3; ++r) {
    for (const auto& m : be::enumerate_monomials(r)) {
      CHECK(be::parse_monomial(be::format_monomial(m, true)) == m);
      CHECK(be::parse_monomial(be::format_monomial(m, false)) == m);
    }
  }
  auto m = be::parse_monomial("e x2 x1 e");
  CHECK(m.arity() == 2);
  CHECK(m.sigma == Perm({2, 1}));
  CHECK(m.eps == std::vector<std::uint8_t>{1, 0, 1});
  CHECK(be::format_monomial(be::e_monomial()) == "e");
  CHECK(be::format_monomial(be::unit_monomial()) == "x1");
}

TEST_CASE("index and element lookups invert each other") {
  for (int r = 0; r <= 3; ++r) {
    std::int32_t n = static_cast<std::int32_t>(be::monomial_count(r));
    for (std::int32_t i = 0; i < n; ++i) {
      CHECK(be::monomial_index(be::monomial_at(r, i)) == i);
    }
  }
}

TEST_CASE("composition agrees with literal substitution") {
  for (int m = 1; m <= 2; ++m) {
    for (int n = 0; n <= 2; ++n) {
      for (const auto& p : be::enumerate_monomials(m)) {
        for (const auto& q : be::enumerate_monomials(n)) {
          for (int i = 1; i <= m; ++i) {
            auto c = be::compose_monomial(p, i, q);
            CHECK(to_word(c) == oracle::compose_words(to_word(p), i,
                                                       to_word(q), n));
          }
        }
      }
    }
  }
  // arity 3 sampled
  auto rng = opf::item_rng(7, 0);
  auto all3 = be::enumerate_monomials(3);
  auto all2 = be::enumerate_monomials(2);
  for (int s = 0; s < 400; ++s) {
    const auto& p = all3[opf::pick(rng, all3.size())];
    const auto& q = all2[opf::pick(rng, all2.size())];
    int i = 1 + static_cast<int>(opf::pick(rng, 3));
    auto c = be::compose_monomial(p, i, q);
    CHECK(to_word(c) == oracle::compose_words(to_word(p), i, to_word(q), 2));
  }
}

TEST_CASE("the action agrees with letter renaming and is a right action") {
  for (int r = 1; r <= 3; ++r) {
    for (const auto& p : be::enumerate_monomials(r)) {
      for (const Perm& s : Perm::all(r)) {
        std::vector<int> images;
        for (int i = 1; i <= r; ++i) images.push_back(s(i));
        CHECK(to_word(be::act_monomial(p, s)) ==
              oracle::act_word(to_word(p), images));
        for (const Perm& t : Perm::all(r)) {
          CHECK(be::act_monomial(be::act_monomial(p, s), t) ==
                be::act_monomial(p, s.compose(t)));
        }
      }
    }
  }
}

TEST_CASE("unit detection") {
  CHECK_FALSE(be::is_nonunital(be::unit_monomial()));
  CHECK(be::is_nonunital(be::e_monomial()));
  CHECK(be::is_nonunital(be::parse_monomial("e x1")));
  CHECK(be::is_nonunital(be::parse_monomial("x2 x1")));
}

TEST_CASE("simplex faces and degeneracies satisfy the simplicial identities") {
  auto rng = opf::item_rng(11, 1);
  auto rand_simplex = [&](int r, int n) {
    auto all = be::enumerate_monomials(r);
    std::vector<be::Monomial> comps;
    for (int j = 0; j <= n; ++j) comps.push_back(all[opf::pick(rng, all.size())]);
    return be::make_simplex(std::move(comps));
  };
  for (int trial = 0; trial < 200; ++trial) {
    int r = static_cast<int>(opf::pick(rng, 3));
    int n = 2 + static_cast<int>(opf::pick(rng, 2));
    auto s = rand_simplex(r, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        CHECK(be::face(be::face(s, j), i) == be::face(be::face(s, i), j - 1));
      }
    }
    for (int i = 0; i <= n; ++i) {
      CHECK(be::face(be::degeneracy(s, i), i) == s);
      CHECK(be::face(be::degeneracy(s, i), i + 1) == s);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j <= n; ++j) {
        CHECK(be::degeneracy(be::face(s, j), i) ==
              be::face(be::degeneracy(s, i), j + 1));
      }
    }
  }
}

TEST_CASE("simplex composition is componentwise") {
  auto p = be::parse_simplex("x1 x2 | x2 x1");
  auto q = be::parse_simplex("e x1 | x1 e");
  auto c = be::compose_simplex(p, 2, q);
  CHECK(c.dim() == 1);
  CHECK(c.comps[0] == be::compose_monomial(p.comps[0], 2, q.comps[0]));
  CHECK(c.comps[1] == be::compose_monomial(p.comps[1], 2, q.comps[1]));
  CHECK(be::format_simplex(c) == "x1 e x2 | x2 e x1");
  CHECK(be::parse_simplex(be::format_simplex(c)) == c);
}

TEST_CASE("word and nerve operads expose the table interface") {
  auto p = be::obm_operad(3);
  CHECK(p->size(0) == 1);
  CHECK(p->size(1) == 4);
  CHECK(p->size(2) == 16);
  CHECK(p->size(3) == 96);
  CHECK(p->is_unitary());
  auto n = be::nerve_operad(2, 1);
  CHECK(n->size(0) == 1);
  CHECK(n->size(1) == 16);    // 4^2 pairs
  CHECK(n->size(2) == 256);   // 16^2 pairs
  // table lookups agree with the structural composition
  auto rng = opf::item_rng(3, 2);
  for (int trial = 0; trial < 200; ++trial) {
    int m = 1 + static_cast<int>(opf::pick(rng, 2));
    int k = static_cast<int>(opf::pick(rng, 3 - m + 1));
    int i = 1 + static_cast<int>(opf::pick(rng, m));
    opf::ops::Elem ep{static_cast<std::int16_t>(m),
                      static_cast<std::int32_t>(opf::pick(rng, p->size(m)))};
    opf::ops::Elem eq{static_cast<std::int16_t>(k),
                      static_cast<std::int32_t>(opf::pick(rng, p->size(k)))};
    auto c = p->compose(ep, i, eq);
    auto direct = be::compose_monomial(be::parse_monomial(p->name(ep)), i,
                                       be::parse_monomial(p->name(eq)));
    CHECK(p->name(c) == be::format_monomial(direct));
  }
}
