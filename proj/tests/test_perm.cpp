#include <set>

#include "doctest.h"
#include "opf/perm.hpp"

using opf::Perm;

TEST_CASE("compose and inverse") {
  Perm a({2, 3, 1});
  Perm b({1, 3, 2});
  // (a.compose(b))(i) = a(b(i))
  for (int i = 1; i <= 3; ++i) CHECK(a.compose(b)(i) == a(b(i)));
  CHECK(a.compose(a.inverse()).is_identity());
  CHECK(a.inverse().compose(a).is_identity());
  CHECK(Perm::identity(4).compose(Perm::identity(4)).is_identity());
  CHECK(Perm::transposition(3, 1, 3) == Perm({3, 2, 1}));
}

TEST_CASE("rank and unrank are mutually inverse") {
  for (int n = 0; n <= 4; ++n) {
    auto all = Perm::all(n);
    CHECK(static_cast<std::int64_t>(all.size()) == Perm::factorial(n));
    std::set<int> seen;
    for (const Perm& p : all) {
      CHECK(Perm::unrank(n, p.rank()) == p);
      seen.insert(p.rank());
    }
    CHECK(static_cast<std::int64_t>(seen.size()) == Perm::factorial(n));
  }
}

TEST_CASE("rank order is lexicographic") {
  auto all = Perm::all(3);
  CHECK(all[0] == Perm({1, 2, 3}));
  CHECK(all[1] == Perm({1, 3, 2}));
  CHECK(all[5] == Perm({3, 2, 1}));
  for (std::size_t i = 0; i < all.size(); ++i)
    CHECK(all[i].rank() == static_cast<int>(i));
}

TEST_CASE("block relabelings satisfy the equivariance bookkeeping") {
  // Check the identities quoted in the header by brute force over small
  // arities, using image-sequence evaluation only.
  for (const Perm& sigma : Perm::all(3)) {
    for (int i = 1; i <= 3; ++i) {
      for (int n = 0; n <= 2; ++n) {
        Perm ob = opf::outer_block(sigma, i, n);
        CHECK(ob.size() == 3 + n - 1);
        CHECK(ob.compose(ob.inverse()).is_identity());
      }
    }
  }
  for (const Perm& tau : Perm::all(2)) {
    Perm ib = opf::inner_block(3, 2, tau);
    CHECK(ib.size() == 4);
    // slots outside the inserted block stay fixed
    CHECK(ib(1) == 1);
    CHECK(ib(4) == 4);
    // inside the block, tau acts shifted by i-1
    CHECK(ib(2) == 1 + tau(1));
    CHECK(ib(3) == 1 + tau(2));
  }
}
