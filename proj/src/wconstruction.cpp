#include "opf/wconstruction.hpp"

#include <algorithm>
#include <cassert>
#include <tuple>

#include "opf/errors.hpp"
#include "opf/rng.hpp"

namespace opf::wcons {

using trees::RTree;
using trees::Slot;

bool unit_rule_active(Variant v) {
  return v == Variant::W || v == Variant::TauW;
}

bool tau_rule_active(Variant v) {
  return v == Variant::TauW || v == Variant::TauWPrime;
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::W: return "W";
    case Variant::WPrime: return "W'";
    case Variant::TauW: return "tauW";
    case Variant::TauWPrime: return "tauW'";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  if (text == "W") return Variant::W;
  if (text == "W'" || text == "Wp") return Variant::WPrime;
  if (text == "tauW") return Variant::TauW;
  if (text == "tauW'" || text == "tauWp") return Variant::TauWPrime;
  throw ParseError("unknown variant '" + std::string(text) + "'");
}

void validate_raw(const WElement& w) {
  if (!w.ops) throw Error("element without a label operad");
  if (static_cast<int>(w.labels.size()) != w.shape.vertex_count() ||
      static_cast<int>(w.lengths.size()) != w.shape.vertex_count()) {
    throw Error("element: one label and one length per vertex required");
  }
  for (std::int32_t v = 0; v < w.shape.vertex_count(); ++v) {
    if (w.labels[v].arity != w.shape.vertex_arity(v)) {
      throw Error("element: label arity does not match vertex arity");
    }
    w.ops->name(w.labels[v]);  // range check
    if (v == w.shape.root()) {
      if (w.lengths[v] != Rational(0)) {
        throw Error("element: the root carries no edge length");
      }
    } else if (w.lengths[v] < Rational(0) || w.lengths[v] > Rational(1)) {
      throw Error("element: edge lengths live in [0,1]");
    }
  }
  if (tau_rule_active(w.variant) && !w.ops->is_unitary()) {
    throw Error("element: reduced variants need a unitary label operad");
  }
}

WElement eta(ops::OperadPtr P, ops::Elem p, Variant v,
             std::optional<int> bound) {
  WElement w{RTree::corolla(p.arity), {p}, {Rational(0)}, std::move(P), v,
             bound};
  validate_raw(w);
  return w;
}

ops::Elem epsilon(const WElement& w) {
  terms::TreeTerm t{w.shape, w.labels, w.ops, w.bound};
  return terms::evaluate(t);
}

std::vector<Rewrite> applicable_rewrites(const WElement& w) {
  std::vector<Rewrite> out;
  if (w.shape.is_bare()) return out;
  std::int32_t root = w.shape.root();
  for (std::int32_t v = 0; v < w.shape.vertex_count(); ++v) {
    if (v != root && w.lengths[v] == Rational(0)) {
      out.push_back({Rewrite::Contract, v});
    }
  }
  if (unit_rule_active(w.variant)) {
    for (std::int32_t v = 0; v < w.shape.vertex_count(); ++v) {
      if (w.labels[v] == w.ops->unit()) out.push_back({Rewrite::Unit, v});
    }
  }
  if (tau_rule_active(w.variant)) {
    auto has_leaf = w.shape.subtree_has_leaf();
    auto depth = w.shape.depths();
    std::vector<Rewrite> tau;
    // with the unit rule available a leafless tree equals a unit vertex over
    // a full-length junction, so the whole tree collapses to the point
    if (unit_rule_active(w.variant) && w.shape.arity() == 0 &&
        !(w.shape.vertex_count() == 1 && w.labels[root] == w.ops->nought())) {
      tau.push_back({Rewrite::Tau, root});
    }
    for (std::int32_t v = 0; v < w.shape.vertex_count(); ++v) {
      if (v == root || w.lengths[v] != Rational(1) || has_leaf[v]) continue;
      // a lone vertex already carrying the distinguished point is the
      // normal form; any other leafless hanging subtree still reduces
      if (w.shape.subtree_vertices(v).size() < 2 &&
          w.labels[v] == w.ops->nought()) {
        continue;
      }
      tau.push_back({Rewrite::Tau, v});
    }
    // Sites closest to the root first: those are the maximal reducible
    // subtrees; deeper sites are swallowed by them anyway.
    std::stable_sort(tau.begin(), tau.end(), [&](const Rewrite& a,
                                                 const Rewrite& b) {
      return depth[a.vertex] < depth[b.vertex];
    });
    out.insert(out.end(), tau.begin(), tau.end());
  }
  return out;
}

namespace {

WElement remove_unit_vertex(const WElement& w, std::int32_t v) {
  const RTree& t = w.shape;
  assert(t.vertex_arity(v) == 1);
  Slot inner = t.slots(v)[0];
  int n = t.vertex_count();
  if (n == 1) {
    // lone unit corolla: the class of the bare edge
    return WElement{RTree::bare(), {}, {}, w.ops, w.variant, w.bound};
  }
  std::vector<std::int32_t> map(n);
  for (std::int32_t x = 0; x < n; ++x) map[x] = x - (x > v ? 1 : 0);

  std::vector<std::vector<Slot>> slots(n - 1);
  std::vector<ops::Elem> labels(n - 1);
  std::vector<Rational> lengths(n - 1);
  for (std::int32_t x = 0; x < n; ++x) {
    if (x == v) continue;
    labels[map[x]] = w.labels[x];
    lengths[map[x]] = w.lengths[x];
  }
  for (std::int32_t x = 0; x < n; ++x) {
    if (x == v) continue;
    for (const Slot& s : t.slots(x)) {
      Slot y = s;
      if (!s.is_leaf() && s.vertex() == v) {
        // splice out the unit vertex; the two edge lengths merge by max
        y = inner.is_leaf() ? inner : Slot::child(map[inner.vertex()]);
        if (!inner.is_leaf()) {
          lengths[map[inner.vertex()]] =
              max(w.lengths[inner.vertex()], w.lengths[v]);
        }
      } else if (!s.is_leaf()) {
        y = Slot::child(map[s.vertex()]);
      }
      slots[map[x]].push_back(y);
    }
  }
  std::int32_t root = t.root();
  if (v == root) {
    // the unit was the root; its child becomes the new root
    assert(!inner.is_leaf());
    root = inner.vertex();
    lengths[map[root]] = Rational(0);
    root = map[root];
  } else {
    root = map[root];
  }
  return WElement{RTree::build(std::move(slots), root, t.arity()),
                  std::move(labels), std::move(lengths), w.ops, w.variant,
                  w.bound};
}

WElement tau_reduce(const WElement& w, std::int32_t v) {
  const RTree& t = w.shape;
  if (v == t.root()) {
    return WElement{RTree::corolla(0),      {w.ops->nought()}, {Rational(0)},
                    w.ops,     w.variant,   w.bound};
  }
  auto sub = t.subtree_vertices(v);
  std::vector<char> gone(t.vertex_count(), 0);
  for (std::int32_t x : sub) gone[x] = 1;
  int n = t.vertex_count();
  int kept = n - static_cast<int>(sub.size());
  std::vector<std::int32_t> map(n, -1);
  std::int32_t next = 0;
  for (std::int32_t x = 0; x < n; ++x) {
    if (!gone[x]) map[x] = next++;
  }
  std::int32_t star = kept;  // fresh vertex replacing the subtree

  std::vector<std::vector<Slot>> slots(kept + 1);
  std::vector<ops::Elem> labels(kept + 1);
  std::vector<Rational> lengths(kept + 1);
  for (std::int32_t x = 0; x < n; ++x) {
    if (gone[x]) continue;
    labels[map[x]] = w.labels[x];
    lengths[map[x]] = w.lengths[x];
    for (const Slot& s : t.slots(x)) {
      if (!s.is_leaf() && s.vertex() == v) {
        slots[map[x]].push_back(Slot::child(star));
      } else if (!s.is_leaf()) {
        slots[map[x]].push_back(Slot::child(map[s.vertex()]));
      } else {
        slots[map[x]].push_back(s);
      }
    }
  }
  labels[star] = w.ops->nought();
  lengths[star] = Rational(1);
  return WElement{RTree::build(std::move(slots), map[t.root()], t.arity()),
                  std::move(labels), std::move(lengths), w.ops, w.variant,
                  w.bound};
}

}  // namespace

WElement apply_rewrite(const WElement& w, const Rewrite& rw) {
  switch (rw.kind) {
    case Rewrite::Contract: {
      auto next = terms::contract_labeled(w.shape, w.labels, *w.ops, rw.vertex);
      std::vector<Rational> lengths(w.shape.vertex_count() - 1);
      for (std::int32_t x = 0; x < w.shape.vertex_count(); ++x) {
        if (x != rw.vertex) lengths[next.vertex_map[x]] = w.lengths[x];
      }
      return WElement{std::move(next.shape), std::move(next.labels),
                      std::move(lengths), w.ops, w.variant, w.bound};
    }
    case Rewrite::Unit:
      return remove_unit_vertex(w, rw.vertex);
    case Rewrite::Tau:
      return tau_reduce(w, rw.vertex);
  }
  throw Error("unknown rewrite");
}

WElement canonical(const WElement& w) {
  validate_raw(w);
  if (w.shape.is_bare()) return w;
  auto c = terms::canonical_decorated(w.shape, w.labels, w.lengths, *w.ops);
  return WElement{std::move(c.shape), std::move(c.labels),
                  std::move(c.lengths), w.ops, w.variant, w.bound};
}

namespace {

// A contraction is only executable while the merged label stays inside the
// stored arity range; shrinking steps always fit, so whenever the underlying
// composite is representable some executable step remains.
std::vector<Rewrite> executable_steps(const WElement& w,
                                      const std::vector<Rewrite>& rewrites) {
  auto par = w.shape.parents();
  std::vector<Rewrite> fit;
  for (const Rewrite& rw : rewrites) {
    if (rw.kind == Rewrite::Contract) {
      int merged = w.shape.vertex_arity(par.parent[rw.vertex]) +
                   w.shape.vertex_arity(rw.vertex) - 1;
      if (merged > w.ops->max_arity()) continue;
    }
    fit.push_back(rw);
  }
  return fit;
}

Rewrite preferred_step(const WElement& w, const std::vector<Rewrite>& fit) {
  auto depth = w.shape.depths();
  auto key = [&](const Rewrite& rw) {
    int kind = rw.kind == Rewrite::Contract ? 0
               : rw.kind == Rewrite::Unit   ? 1
                                            : 2;
    int thick = w.shape.vertex_arity(rw.vertex) == 0 ? 0 : 1;
    return std::tuple<int, int, std::int32_t, std::int32_t>(
        kind, thick, -depth[rw.vertex], rw.vertex);
  };
  return *std::min_element(
      fit.begin(), fit.end(),
      [&](const Rewrite& a, const Rewrite& b) { return key(a) < key(b); });
}

}  // namespace

WElement normalize(const WElement& w) {
  validate_raw(w);
  WElement cur = w;
  while (true) {
    auto rewrites = applicable_rewrites(cur);
    if (rewrites.empty()) break;
    auto fit = executable_steps(cur, rewrites);
    if (fit.empty())
      throw Error("normalize: contraction leaves the stored arity range");
    cur = apply_rewrite(cur, preferred_step(cur, fit));
  }
  return canonical(cur);
}

WElement normalize_randomized(const WElement& w, std::mt19937_64& rng) {
  validate_raw(w);
  WElement cur = w;
  while (true) {
    auto rewrites = applicable_rewrites(cur);
    if (rewrites.empty()) break;
    auto fit = executable_steps(cur, rewrites);
    if (fit.empty())
      throw Error("normalize: contraction leaves the stored arity range");
    cur = apply_rewrite(cur, fit[pick(rng, fit.size())]);
  }
  return canonical(cur);
}

bool is_normal(const WElement& w) { return applicable_rewrites(w).empty(); }

bool same_element(const WElement& a, const WElement& b) {
  if (a.ops != b.ops) throw Error("same_element: different label operads");
  if (a.variant != b.variant) throw Error("same_element: different variants");
  WElement ca = normalize(a);
  WElement cb = normalize(b);
  return ca.shape == cb.shape && ca.labels == cb.labels &&
         ca.lengths == cb.lengths;
}

WElement leaf_relabel(const WElement& w, const Perm& sigma) {
  if (sigma.size() != w.arity()) throw Error("leaf_relabel: arity mismatch");
  if (w.shape.is_bare()) return w;
  std::vector<std::vector<Slot>> slots(w.shape.vertex_count());
  for (std::int32_t v = 0; v < w.shape.vertex_count(); ++v) {
    for (const Slot& s : w.shape.slots(v)) {
      slots[v].push_back(s.is_leaf() ? Slot::leaf(sigma(s.leaf_number())) : s);
    }
  }
  return WElement{
      RTree::build(std::move(slots), w.shape.root(), w.arity()), w.labels,
      w.lengths, w.ops, w.variant, w.bound};
}

WElement w_compose(const WElement& a, int i, const WElement& b) {
  if (a.ops != b.ops) throw Error("w_compose: different label operads");
  if (a.variant != b.variant) throw Error("w_compose: different variants");
  if (a.bound != b.bound) throw Error("w_compose: different bounds");
  if (a.bound) {
    int k = *a.bound;
    int m = a.arity();
    int n = b.arity();
    bool ok = n > 0 ? m + n - 1 <= k : m <= k;
    if (!ok) {
      throw TruncationError("w_compose: bound " + std::to_string(k) +
                            " forbids arity " + std::to_string(m + n - 1));
    }
  }
  WElement out{trees::graft(a.shape, i, b.shape), a.labels, a.lengths, a.ops,
               a.variant, a.bound};
  out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
  out.lengths.insert(out.lengths.end(), b.lengths.begin(), b.lengths.end());
  if (!a.shape.is_bare() && !b.shape.is_bare()) {
    // the junction edge is born with length 1
    out.lengths[a.shape.vertex_count() + b.shape.root()] = Rational(1);
  }
  return normalize(out);
}

bool is_generator(const WElement& w) {
  if (w.shape.is_bare() || !is_normal(w)) return false;
  for (std::int32_t v = 0; v < w.shape.vertex_count(); ++v) {
    if (v != w.shape.root() && w.lengths[v] == Rational(1)) return false;
  }
  return true;
}

Factorization decompose(const WElement& w) {
  WElement nf = normalize(w);
  Factorization f;
  if (nf.shape.is_bare()) {
    f.factors.push_back(Factor{nf, {1}});
    return f;
  }
  std::vector<std::int32_t> uppers;
  for (std::int32_t v = 0; v < nf.shape.vertex_count(); ++v) {
    if (v != nf.shape.root() && nf.lengths[v] == Rational(1)) {
      uppers.push_back(v);
    }
  }
  auto pieces = trees::cut_edges(nf.shape, uppers);
  for (const auto& piece : pieces) {
    WElement el;
    el.shape = piece.tree;
    el.ops = nf.ops;
    el.variant = nf.variant;
    el.bound = nf.bound;
    el.labels.resize(piece.tree.vertex_count());
    el.lengths.resize(piece.tree.vertex_count());
    for (std::int32_t local = 0; local < piece.tree.vertex_count(); ++local) {
      std::int32_t orig = piece.vertex_map[local];
      el.labels[local] = nf.labels[orig];
      el.lengths[local] =
          local == piece.tree.root() ? Rational(0) : nf.lengths[orig];
    }
    validate_raw(el);
    f.factors.push_back(Factor{std::move(el), piece.slot_origin});
  }
  return f;
}

WElement recompose(const Factorization& f) {
  if (f.factors.empty()) throw Error("recompose: empty factorization");
  std::vector<std::int32_t> seq;
  auto build = [&](auto&& self, std::int32_t p) -> WElement {
    const Factor& factor = f.factors[p];
    WElement e = factor.element;
    for (int pos = static_cast<int>(factor.slot_refs.size()); pos >= 1;
         --pos) {
      std::int32_t ref = factor.slot_refs[pos - 1];
      if (ref < 0) e = w_compose(e, pos, self(self, -ref - 1));
    }
    return e;
  };
  auto expand = [&](auto&& self, std::int32_t p) -> void {
    for (std::int32_t ref : f.factors[p].slot_refs) {
      if (ref < 0) {
        self(self, -ref - 1);
      } else {
        seq.push_back(ref);
      }
    }
  };
  WElement whole = build(build, 0);
  expand(expand, 0);
  if (static_cast<int>(seq.size()) != whole.arity()) {
    throw Error("recompose: leaf count mismatch");
  }
  std::vector<std::uint8_t> img(seq.size());
  for (size_t t = 0; t < seq.size(); ++t) {
    img[t] = static_cast<std::uint8_t>(seq[t]);
  }
  return canonical(leaf_relabel(whole, Perm(std::move(img))));
}

std::vector<Rational> vertex_heights(const WElement& w) {
  std::vector<Rational> h(w.shape.vertex_count(), Rational(0));
  if (w.shape.is_bare()) return h;
  std::vector<std::int32_t> stack{w.shape.root()};
  while (!stack.empty()) {
    std::int32_t v = stack.back();
    stack.pop_back();
    for (const Slot& s : w.shape.slots(v)) {
      if (!s.is_leaf()) {
        h[s.vertex()] = h[v] + w.lengths[s.vertex()];
        stack.push_back(s.vertex());
      }
    }
  }
  return h;
}

Rational max_height(const WElement& w) {
  Rational m(0);
  for (const Rational& h : vertex_heights(w)) m = max(m, h);
  return m;
}

HeightedElement to_heights(const WElement& w) {
  if (unit_rule_active(w.variant)) {
    throw Error("height coordinates need a unit-free variant");
  }
  validate_raw(w);
  return HeightedElement{w.shape,  w.labels, vertex_heights(w),
                         w.ops,    w.variant, w.bound};
}

WElement from_heights(const HeightedElement& h) {
  WElement w{h.shape, h.labels, {}, h.ops, h.variant, h.bound};
  w.lengths.assign(h.shape.vertex_count(), Rational(0));
  if (h.shape.is_bare()) {
    validate_raw(w);
    return w;
  }
  auto par = h.shape.parents();
  for (std::int32_t v = 0; v < h.shape.vertex_count(); ++v) {
    if (v == h.shape.root()) {
      if (h.heights[v] != Rational(0)) {
        throw Error("from_heights: root must sit at height 0");
      }
      continue;
    }
    Rational l = h.heights[v] - h.heights[par.parent[v]];
    if (l < Rational(0) || l > Rational(1)) {
      throw Error("from_heights: height differences must lie in [0,1]");
    }
    w.lengths[v] = l;
  }
  validate_raw(w);
  return w;
}

TruncationReport validate_truncated(const WElement& w, int k) {
  TruncationReport rep;
  rep.total_arity = w.arity();
  if (w.shape.is_bare()) {
    rep.worst = 0;
    rep.ok = w.arity() <= k;
    if (!rep.ok) rep.detail = "total arity exceeds the bound";
    return rep;
  }
  // Largest ingoing(S) over connected subgraphs S within a component equals
  // 1 + max over vertices of best(v), where best accumulates arity-1 weights
  // through non-severing edges only.
  int n = w.shape.vertex_count();
  std::vector<std::int64_t> best(n, 0);
  auto depth = w.shape.depths();
  std::vector<std::int32_t> order(n);
  for (std::int32_t v = 0; v < n; ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return depth[a] > depth[b]; });
  int worst = 0;
  for (std::int32_t v : order) {
    best[v] = w.shape.vertex_arity(v) - 1;
    for (const Slot& s : w.shape.slots(v)) {
      if (s.is_leaf()) continue;
      if (w.lengths[s.vertex()] == Rational(1)) continue;
      best[v] += std::max<std::int64_t>(0, best[s.vertex()]);
    }
    worst = std::max(worst, static_cast<int>(best[v]) + 1);
  }
  rep.worst = worst;
  rep.ok = worst <= k && w.arity() <= k;
  if (w.arity() > k) {
    rep.detail = "total arity exceeds the bound";
  } else if (worst > k) {
    rep.detail = "a component contains a subgraph with " +
                 std::to_string(worst) + " ingoing edges";
  }
  return rep;
}

}  // namespace opf::wcons
