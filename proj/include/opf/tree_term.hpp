#pragma once

#include <optional>
#include <vector>

#include "opf/operad.hpp"
#include "opf/rational.hpp"
#include "opf/rtree.hpp"

namespace opf::terms {

// An element of the free operad on a finite generating collection: a tree
// whose vertices carry generators of matching arity. With a bound k only
// trees with every vertex arity <= k and total arity <= k are legal.
struct TreeTerm {
  trees::RTree shape;
  std::vector<ops::Elem> labels;  // by vertex id
  ops::OperadPtr gens;
  std::optional<int> bound;

  int arity() const { return shape.arity(); }
};

TreeTerm unit_term(ops::OperadPtr gens, std::optional<int> bound = {});
TreeTerm corolla_term(ops::OperadPtr gens, ops::Elem label,
                      std::optional<int> bound = {});
void validate(const TreeTerm& t);

// Grafting of terms; raises TruncationError when a bound forbids the result.
TreeTerm free_compose(const TreeTerm& a, int i, const TreeTerm& b);

// Treewise composite in the label operad. Contracts arity-0 vertices first
// (deepest first), then the remaining edges bottom-up; with all vertex
// arities positive every intermediate arity is bounded by the term arity, so
// a valid bounded term always evaluates.
ops::Elem evaluate(const TreeTerm& t);

// Contracts the inner edges in exactly the given order (edges named by their
// upper vertex in t's numbering); nullopt when some step needs a composition
// the label operad does not define.
std::optional<ops::Elem> evaluate_in_order(
    const TreeTerm& t, const std::vector<std::int32_t>& order);

// Left action on leaf names: leaf j becomes leaf sigma(j).
TreeTerm leaf_relabel(const TreeTerm& t, const Perm& sigma);

TreeTerm canonical(const TreeTerm& t);
bool same_term(const TreeTerm& a, const TreeTerm& b);

// ---- shared helpers for decorated trees ----

struct LabeledShape {
  trees::RTree shape;
  std::vector<ops::Elem> labels;
  std::vector<std::int32_t> vertex_map;  // old id -> new id
};
// Edge contraction composing the two vertex labels.
LabeledShape contract_labeled(const trees::RTree& shape,
                              const std::vector<ops::Elem>& labels,
                              const ops::FiniteOperad& P, std::int32_t upper);

struct DecoratedCanon {
  trees::RTree shape;
  std::vector<ops::Elem> labels;
  std::vector<Rational> lengths;
  std::vector<std::int32_t> vertex_map;
};
// Canonical form with label transport under slot reordering; `lengths` (one
// entry per vertex, the vertex's outgoing edge) may be empty.
DecoratedCanon canonical_decorated(const trees::RTree& shape,
                                   std::vector<ops::Elem> labels,
                                   std::vector<Rational> lengths,
                                   const ops::FiniteOperad& P);

}  // namespace opf::terms
