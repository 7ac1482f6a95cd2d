#pragma once

#include <optional>
#include <random>
#include <utility>

#include "opf/barratt_eccles.hpp"
#include "opf/operad.hpp"
#include "opf/rational.hpp"
#include "opf/rtree.hpp"
#include "opf/tree_term.hpp"
#include "opf/wconstruction.hpp"

namespace opf::gen {

// Knobs for random tree growth.  Every generated object is valid for its
// module and safe to normalize/evaluate: no contraction order can produce an
// intermediate vertex whose arity exceeds min(bound, rmax of the operad).
struct GrowConfig {
  int max_vertices = 5;
  std::optional<int> bound;      // arity budget on top of the operad's rmax
  double unit_label_rate = 0.0;  // chance an arity-1 label is forced to the unit
  double bare_rate = 0.0;        // chance a raw element is the vertex-free tree
};

Perm random_perm(std::mt19937_64& rng, int r);

ops::Elem random_elem(std::mt19937_64& rng, const ops::FiniteOperad& p, int r);

// Largest composite arity over connected down-closed subgraphs (lengths are
// ignored, so this bounds every contraction order of every edge subset).
int composite_bound(const trees::RTree& t);

Rational random_length(std::mt19937_64& rng);

terms::TreeTerm random_term(std::mt19937_64& rng, ops::OperadPtr gens,
                         const GrowConfig& cfg);

wcons::WElement random_raw(std::mt19937_64& rng, ops::OperadPtr ops,
                        wcons::Variant variant, const GrowConfig& cfg);

// Normalized element valid at truncation level k (forces cfg.bound = k).
wcons::WElement random_valid_truncated(std::mt19937_64& rng, ops::OperadPtr ops,
                                    wcons::Variant variant, int k,
                                    const GrowConfig& cfg);

// Two raw presentations of the same element, produced by independent random
// rewrite walks from a common seed element.
std::pair<wcons::WElement, wcons::WElement> random_relation_pair(
    std::mt19937_64& rng, ops::OperadPtr ops, wcons::Variant variant,
    const GrowConfig& cfg);

be::Monomial random_monomial(std::mt19937_64& rng, int r);

be::NerveSimplex random_simplex(std::mt19937_64& rng, int r, int n);

}  // namespace opf::gen
