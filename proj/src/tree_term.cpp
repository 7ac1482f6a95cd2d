#include "opf/tree_term.hpp"

#include <algorithm>
#include <cassert>

#include "opf/errors.hpp"

namespace opf::terms {

using trees::RTree;
using trees::Slot;

TreeTerm unit_term(ops::OperadPtr gens, std::optional<int> bound) {
  return TreeTerm{RTree::bare(), {}, std::move(gens), bound};
}

TreeTerm corolla_term(ops::OperadPtr gens, ops::Elem label,
                      std::optional<int> bound) {
  TreeTerm t{RTree::corolla(label.arity), {label}, std::move(gens), bound};
  validate(t);
  return t;
}

void validate(const TreeTerm& t) {
  if (!t.gens) throw Error("term without a label operad");
  if (static_cast<int>(t.labels.size()) != t.shape.vertex_count()) {
    throw Error("term: one label per vertex required");
  }
  for (std::int32_t v = 0; v < t.shape.vertex_count(); ++v) {
    if (t.labels[v].arity != t.shape.vertex_arity(v)) {
      throw Error("term: label arity does not match vertex arity");
    }
    t.gens->name(t.labels[v]);  // range check
  }
  int limit = t.bound.value_or(t.gens->max_arity());
  if (t.bound && *t.bound > t.gens->max_arity()) limit = t.gens->max_arity();
  if (t.arity() > limit) {
    throw TruncationError("term arity " + std::to_string(t.arity()) +
                          " exceeds bound " + std::to_string(limit));
  }
  for (std::int32_t v = 0; v < t.shape.vertex_count(); ++v) {
    if (t.shape.vertex_arity(v) > limit) {
      throw TruncationError("vertex arity " +
                            std::to_string(t.shape.vertex_arity(v)) +
                            " exceeds bound " + std::to_string(limit));
    }
  }
}

TreeTerm free_compose(const TreeTerm& a, int i, const TreeTerm& b) {
  if (a.gens != b.gens) throw Error("free_compose: different label operads");
  if (a.bound != b.bound) throw Error("free_compose: different bounds");
  if (a.bound) {
    int k = *a.bound;
    int m = a.arity();
    int n = b.arity();
    bool ok = n > 0 ? m + n - 1 <= k : m <= k;
    if (!ok) {
      throw TruncationError("free_compose: bound " + std::to_string(k) +
                            " forbids arity " + std::to_string(m + n - 1));
    }
  }
  TreeTerm out{trees::graft(a.shape, i, b.shape), a.labels, a.gens, a.bound};
  out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
  validate(out);
  return out;
}

LabeledShape contract_labeled(const RTree& shape,
                              const std::vector<ops::Elem>& labels,
                              const ops::FiniteOperad& P, std::int32_t upper) {
  trees::Contraction c = trees::contract_edge(shape, upper);
  ops::Elem merged =
      P.compose(labels[c.lower], c.slot_pos, labels[c.upper]);
  LabeledShape out;
  out.labels.resize(shape.vertex_count() - 1);
  for (std::int32_t v = 0; v < shape.vertex_count(); ++v) {
    if (v != upper) out.labels[c.vertex_map[v]] = labels[v];
  }
  out.labels[c.merged] = merged;
  out.shape = std::move(c.tree);
  out.vertex_map = std::move(c.vertex_map);
  return out;
}

namespace {

// Deepest vertex satisfying `want`, ties to the largest id; -1 when none.
std::int32_t deepest(const RTree& t, const std::vector<std::int32_t>& depth,
                     const std::function<bool(std::int32_t)>& want) {
  std::int32_t best = -1;
  for (std::int32_t v = 0; v < t.vertex_count(); ++v) {
    if (v == t.root() || !want(v)) continue;
    if (best < 0 || depth[v] > depth[best] ||
        (depth[v] == depth[best] && v > best)) {
      best = v;
    }
  }
  return best;
}

ops::Elem finish_corolla(const RTree& shape, ops::Elem label,
                         const ops::FiniteOperad& P) {
  int r = shape.arity();
  std::vector<std::uint8_t> img(r);
  const auto& slots = shape.slots(shape.root());
  for (int pos = 0; pos < r; ++pos) {
    assert(slots[pos].is_leaf());
    img[pos] = static_cast<std::uint8_t>(slots[pos].leaf_number());
  }
  Perm ell(std::move(img));
  if (ell.is_identity()) return label;
  return P.act(label, ell.inverse());
}

}  // namespace

ops::Elem evaluate(const TreeTerm& t) {
  validate(t);
  if (t.shape.is_bare()) return t.gens->unit();
  RTree shape = t.shape;
  std::vector<ops::Elem> labels = t.labels;
  const ops::FiniteOperad& P = *t.gens;

  // Arity-0 vertices first: absorbing one only shrinks its parent.
  while (true) {
    auto depth = shape.depths();
    std::int32_t v = deepest(shape, depth, [&](std::int32_t x) {
      return shape.vertex_arity(x) == 0;
    });
    if (v < 0) break;
    auto next = contract_labeled(shape, labels, P, v);
    shape = std::move(next.shape);
    labels = std::move(next.labels);
  }
  // Remaining vertices all have inputs; contract bottom-up.
  while (shape.vertex_count() > 1) {
    auto depth = shape.depths();
    std::int32_t v =
        deepest(shape, depth, [&](std::int32_t) { return true; });
    auto next = contract_labeled(shape, labels, P, v);
    shape = std::move(next.shape);
    labels = std::move(next.labels);
  }
  return finish_corolla(shape, labels[shape.root()], P);
}

std::optional<ops::Elem> evaluate_in_order(
    const TreeTerm& t, const std::vector<std::int32_t>& order) {
  if (t.shape.is_bare()) {
    return order.empty() ? std::optional<ops::Elem>(t.gens->unit())
                         : std::nullopt;
  }
  RTree shape = t.shape;
  std::vector<ops::Elem> labels = t.labels;
  std::vector<std::int32_t> current(shape.vertex_count());
  for (std::int32_t v = 0; v < shape.vertex_count(); ++v) current[v] = v;
  std::vector<char> used(shape.vertex_count(), 0);
  const ops::FiniteOperad& P = *t.gens;

  for (std::int32_t upper0 : order) {
    if (upper0 < 0 || upper0 >= static_cast<std::int32_t>(used.size()) ||
        used[upper0] || upper0 == t.shape.root()) {
      return std::nullopt;
    }
    used[upper0] = 1;
    std::int32_t upper = current[upper0];
    auto par = shape.parents();
    std::int32_t lower = par.parent[upper];
    if (lower < 0) return std::nullopt;  // order repeated an edge
    if (!P.compose_defined(shape.vertex_arity(lower),
                           shape.vertex_arity(upper))) {
      return std::nullopt;
    }
    auto next = contract_labeled(shape, labels, P, upper);
    for (auto& c : current) c = next.vertex_map[c];
    shape = std::move(next.shape);
    labels = std::move(next.labels);
  }
  if (shape.vertex_count() != 1) return std::nullopt;
  return finish_corolla(shape, labels[shape.root()], P);
}

TreeTerm leaf_relabel(const TreeTerm& t, const Perm& sigma) {
  if (sigma.size() != t.arity()) throw Error("leaf_relabel: arity mismatch");
  if (t.shape.is_bare()) return t;
  std::vector<std::vector<Slot>> slots(t.shape.vertex_count());
  for (std::int32_t v = 0; v < t.shape.vertex_count(); ++v) {
    for (const Slot& s : t.shape.slots(v)) {
      slots[v].push_back(s.is_leaf() ? Slot::leaf(sigma(s.leaf_number())) : s);
    }
  }
  TreeTerm out{RTree::build(std::move(slots), t.shape.root(), t.arity()),
               t.labels, t.gens, t.bound};
  return out;
}

DecoratedCanon canonical_decorated(const RTree& shape,
                                   std::vector<ops::Elem> labels,
                                   std::vector<Rational> lengths,
                                   const ops::FiniteOperad& P) {
  bool with_lengths = !lengths.empty();
  trees::CanonicalHooks hooks;
  hooks.vertex_key = [&](std::int32_t v, std::vector<std::int64_t>& out) {
    out.push_back(labels[v].index);
  };
  if (with_lengths) {
    hooks.edge_key = [&](std::int32_t v, std::vector<std::int64_t>& out) {
      out.push_back(lengths[v].num());
      out.push_back(lengths[v].den());
    };
  }
  hooks.label_rank_after = [&](std::int32_t v, const Perm& pi) {
    return static_cast<std::int64_t>(P.act(labels[v], pi).index);
  };
  hooks.permute_slots = [&](std::int32_t v, const Perm& pi) {
    labels[v] = P.act(labels[v], pi);
  };
  trees::CanonicalResult res = trees::canonicalize_with(shape, hooks);

  DecoratedCanon out;
  out.labels.resize(labels.size());
  if (with_lengths) out.lengths.resize(lengths.size());
  for (std::int32_t v = 0; v < shape.vertex_count(); ++v) {
    out.labels[res.vertex_map[v]] = labels[v];
    if (with_lengths) out.lengths[res.vertex_map[v]] = lengths[v];
  }
  out.shape = std::move(res.tree);
  out.vertex_map = std::move(res.vertex_map);
  return out;
}

TreeTerm canonical(const TreeTerm& t) {
  validate(t);
  if (t.shape.is_bare()) return t;
  auto c = canonical_decorated(t.shape, t.labels, {}, *t.gens);
  return TreeTerm{std::move(c.shape), std::move(c.labels), t.gens, t.bound};
}

bool same_term(const TreeTerm& a, const TreeTerm& b) {
  if (a.gens != b.gens) throw Error("same_term: different label operads");
  TreeTerm ca = canonical(a);
  TreeTerm cb = canonical(b);
  return ca.shape == cb.shape && ca.labels == cb.labels;
}

}  // namespace opf::terms
