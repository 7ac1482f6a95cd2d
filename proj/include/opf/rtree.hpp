#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "opf/perm.hpp"

namespace opf::trees {

// One ingoing edge of a vertex: either a numbered leaf or a child vertex.
struct Slot {
  std::int32_t raw;  // >= 0: child vertex id, < 0: leaf number -raw

  static Slot leaf(std::int32_t j) { return Slot{-j}; }
  static Slot child(std::int32_t v) { return Slot{v}; }
  bool is_leaf() const { return raw < 0; }
  std::int32_t leaf_number() const { return -raw; }
  std::int32_t vertex() const { return raw; }
  friend bool operator==(const Slot&, const Slot&) = default;
};

// A rooted tree with ordered ingoing slots per vertex and leaves numbered
// 1..arity, each number used exactly once. Edges point toward the root; a
// non-root vertex is identified with its (unique) outgoing edge. The
// vertex-free tree of arity 1 (a bare edge) is a legal value: it is the unit
// for grafting and the normal form of a contracted unit corolla.
class RTree {
 public:
  RTree() = default;  // bare edge

  static RTree bare();
  static RTree corolla(int r);
  // Validates: ids dense, every non-root vertex a slot of exactly one parent,
  // leaves 1..arity each exactly once, everything reachable from the root.
  static RTree build(std::vector<std::vector<Slot>> slots, std::int32_t root,
                     int arity);

  bool is_bare() const { return root_ < 0; }
  int vertex_count() const { return static_cast<int>(slots_.size()); }
  int arity() const { return arity_; }
  std::int32_t root() const { return root_; }
  const std::vector<Slot>& slots(std::int32_t v) const { return slots_[v]; }
  int vertex_arity(std::int32_t v) const {
    return static_cast<int>(slots_[v].size());
  }

  struct Parents {
    std::vector<std::int32_t> parent;  // -1 for the root
    std::vector<std::int32_t> pos;     // 0-based slot position in the parent
  };
  Parents parents() const;

  std::vector<std::int32_t> depths() const;
  // True per vertex iff the full subtree above it contains a numbered leaf.
  std::vector<bool> subtree_has_leaf() const;
  std::vector<std::int32_t> subtree_vertices(std::int32_t v) const;

  friend bool operator==(const RTree&, const RTree&) = default;

 private:
  std::vector<std::vector<Slot>> slots_;
  std::int32_t root_ = -1;
  int arity_ = 1;
};

// Substitution of t into leaf i of s. Vertices of s keep their ids, vertices
// of t are shifted by s.vertex_count(); leaves renumber by the usual block
// rule (t's leaf j becomes i+j-1, s's leaves above i shift by arity(t)-1).
RTree graft(const RTree& s, int i, const RTree& t);

struct Contraction {
  RTree tree;
  std::vector<std::int32_t> vertex_map;  // old id -> new id; both ends of the
                                         // contracted edge map to `merged`
  std::int32_t merged;
  std::int32_t lower, upper;  // old ids; lower is the parent
  int slot_pos;               // 1-based position of the edge in lower's slots
};
// Contracts the outgoing edge of `upper` (which must not be the root),
// splicing its slots into the parent's slot list in place of the edge.
Contraction contract_edge(const RTree& t, std::int32_t upper);

// Decoration callbacks for canonical forms. All ids are the input tree's.
// When sibling subtrees compare equal (identical shapes and decorations),
// label_rank_after is consulted to pick the slot order whose transported
// vertex label is least; permute_slots then commits that reordering (new
// position s holds the slot formerly at perm(s)).
struct CanonicalHooks {
  std::function<void(std::int32_t, std::vector<std::int64_t>&)> vertex_key;
  std::function<void(std::int32_t, std::vector<std::int64_t>&)> edge_key;
  std::function<std::int64_t(std::int32_t, const Perm&)> label_rank_after;
  std::function<void(std::int32_t, const Perm&)> permute_slots;
};

struct CanonicalResult {
  RTree tree;
  std::vector<std::int32_t> vertex_map;  // old id -> new id
};

// Deterministic canonical form: slots sort by a recursive key (leaves first,
// by number; then subtrees lexicographically), vertices renumber in preorder.
// Identical trees and only they share canonical forms.
CanonicalResult canonicalize_with(const RTree& t, const CanonicalHooks& hooks);
RTree canonicalize(const RTree& t);

struct CutPiece {
  RTree tree;
  // Origin of each piece leaf 1..arity: positive j = leaf j of the whole
  // tree, negative -(p+1) = the cut edge leading to piece p.
  std::vector<std::int32_t> slot_origin;
  std::vector<std::int32_t> vertex_map;  // piece vertex id -> original id
  std::int32_t parent_piece;             // -1 for the piece holding the root
  std::int32_t attach_upper;  // original upper vertex of the piece's cut edge
};
// Severs the outgoing edges of the given vertices and returns the connected
// pieces; piece 0 holds the root, the rest follow in traversal order.
std::vector<CutPiece> cut_edges(const RTree& t,
                                const std::vector<std::int32_t>& uppers);

}  // namespace opf::trees
