#include "opf/homotopy.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "opf/errors.hpp"
#include "opf/rtree.hpp"

namespace opf::homo {

using trees::RTree;
using trees::Slot;
using wcons::Variant;
using wcons::WElement;

Time Time::at(Rational v) {
  if (v < Rational(0)) throw Error("Time::at: negative time");
  return Time{false, v};
}

Time Time::parse(std::string_view text) {
  if (text == "inf" || text == "infinity") return infinite();
  return at(Rational::parse(text));
}

std::string Time::str() const { return inf ? "inf" : value.str(); }

namespace {

// Rebuild edge lengths from per-vertex heights (root pinned at 0).
WElement with_heights(const WElement& w, const std::vector<Rational>& h) {
  WElement out = w;
  auto par = w.shape.parents();
  for (std::int32_t v = 0; v < w.shape.vertex_count(); ++v) {
    out.lengths[v] =
        par.parent[v] < 0 ? Rational(0) : h[v] - h[par.parent[v]];
  }
  wcons::validate_raw(out);
  return out;
}

// Distinct clamp levels strictly below the maximum of vals, descending to 0,
// with midpoints between neighbours so piecewise behaviour gets probed.
std::vector<Rational> descend_levels(std::vector<Rational> vals) {
  std::vector<Rational> out;
  if (vals.empty()) return out;
  vals.push_back(Rational(0));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  Rational top = vals.back();
  if (top == Rational(0)) return out;
  std::vector<Rational> levels;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    levels.push_back(vals[i]);
    if (i + 1 < vals.size())
      levels.push_back((vals[i] + vals[i + 1]) * Rational(1, 2));
  }
  for (auto it = levels.rbegin(); it != levels.rend(); ++it) {
    if (*it < top) out.push_back(*it);
  }
  return out;  // descending, ends at 0
}

}  // namespace

WElement rho(const Time& t, const WElement& w) {
  if (wcons::unit_rule_active(w.variant))
    throw Error("rho: heights require a unit-free variant");
  if (w.shape.vertex_count() == 0) return wcons::normalize(w);
  auto h = wcons::vertex_heights(w);
  if (!t.inf) {
    for (auto& x : h) x = min(x, t.value);
  }
  return wcons::normalize(with_heights(w, h));
}

WElement classical_rho(const Time& t, const WElement& w) {
  WElement out = w;
  if (!t.inf) {
    for (std::int32_t v = 0; v < w.shape.vertex_count(); ++v) {
      if (v == w.shape.root()) continue;
      out.lengths[v] = min(out.lengths[v], t.value);
    }
  }
  return out;
}

std::vector<Time> time_samples(const WElement& a, const WElement& b) {
  std::vector<Rational> fin{Rational(0)};
  for (const WElement* w : {&a, &b}) {
    for (const Rational& h : wcons::vertex_heights(*w)) fin.push_back(h);
  }
  std::sort(fin.begin(), fin.end());
  fin.erase(std::unique(fin.begin(), fin.end()), fin.end());
  std::vector<Rational> c;
  for (std::size_t i = 0; i < fin.size(); ++i) {
    c.push_back(fin[i]);
    if (i + 1 < fin.size())
      c.push_back((fin[i] + fin[i + 1]) * Rational(1, 2));
  }
  c.push_back(fin.back() + Rational(1));
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  if (c.size() > 6) {
    std::vector<Rational> picked;
    std::size_t n = c.size();
    for (std::size_t i = 0; i < 6; ++i) picked.push_back(c[i * (n - 1) / 5]);
    picked.erase(std::unique(picked.begin(), picked.end()), picked.end());
    c = picked;
  }
  const Rational pad[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4),
                          Rational(1), Rational(2)};
  for (const Rational& g : pad) {
    if (c.size() >= 6) break;
    if (!std::binary_search(c.begin(), c.end(), g)) {
      c.insert(std::upper_bound(c.begin(), c.end(), g), g);
    }
  }
  while (c.size() < 6) c.push_back(c.back() + Rational(1));
  std::vector<Time> out;
  for (const Rational& v : c) out.push_back(Time::at(v));
  out.push_back(Time::infinite());
  return out;
}

bool relation_compatible(const Time& t, const WElement& a, const WElement& b) {
  return wcons::same_element(rho(t, a), rho(t, b));
}

namespace {

std::vector<std::int64_t> shape_key(const RTree& t) {
  RTree canon = trees::canonicalize(t);
  std::vector<std::int64_t> key{canon.arity(), canon.root()};
  for (std::int32_t v = 0; v < canon.vertex_count(); ++v) {
    key.push_back(-1000);
    for (const Slot& s : canon.slots(v)) key.push_back(s.raw);
  }
  return key;
}

// All shapes with <= maxv vertices and vertex arities <= 2, one per
// isomorphism class, ordered by vertex count.
std::vector<RTree> small_shapes(int maxv) {
  std::vector<RTree> out;
  std::set<std::vector<std::int64_t>> seen;
  std::vector<RTree> queue;
  for (int r = 0; r <= 2; ++r) queue.push_back(RTree::corolla(r));
  while (!queue.empty()) {
    RTree t = queue.front();
    queue.erase(queue.begin());
    if (!seen.insert(shape_key(t)).second) continue;
    out.push_back(t);
    if (t.vertex_count() >= maxv) continue;
    for (int i = 1; i <= t.arity(); ++i) {
      for (int r = 0; r <= 2; ++r) {
        queue.push_back(trees::graft(t, i, RTree::corolla(r)));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RTree& x, const RTree& y) {
                     return x.vertex_count() < y.vertex_count();
                   });
  return out;
}

}  // namespace

TauWitness find_tau_counterexample(ops::OperadPtr ops, Variant variant,
                                   int max_vertices) {
  if (variant != Variant::TauWPrime)
    throw Error(
        "find_tau_counterexample: needs the unit-free leafless-reducing "
        "variant");
  if (!ops->is_unitary())
    throw Error("find_tau_counterexample: label operad must be unitary");
  const Rational grid[] = {Rational(1), Rational(1, 2), Rational(0)};
  TauWitness best;
  for (const RTree& sh : small_shapes(max_vertices)) {
    const std::int32_t n = sh.vertex_count();
    // any connected group of vertices may get contracted to one label, so
    // every such group must stay within the stored arity range
    auto par = sh.parents();
    int worst = 0;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      int tops = 0, ar = 0, count = 0;
      for (std::int32_t v = 0; v < n; ++v) {
        if (!(mask >> v & 1)) continue;
        ++count;
        ar += sh.vertex_arity(v);
        if (par.parent[v] < 0 || !(mask >> par.parent[v] & 1)) ++tops;
      }
      if (tops == 1) worst = std::max(worst, ar - (count - 1));
    }
    if (worst > ops->max_arity()) continue;
    std::vector<std::int64_t> sizes(n);
    bool usable = true;
    for (std::int32_t v = 0; v < n; ++v) {
      sizes[v] = ops->size(sh.vertex_arity(v));
      if (sizes[v] <= 0) usable = false;
    }
    if (!usable) continue;
    std::int64_t label_combos = 1;
    for (std::int32_t v = 0; v < n; ++v) {
      label_combos *= sizes[v];
      if (label_combos > 4096) break;
    }
    if (label_combos > 4096) continue;
    for (std::int64_t lc = 0; lc < label_combos; ++lc) {
      std::vector<ops::Elem> labels(n);
      std::int64_t rest = lc;
      for (std::int32_t v = 0; v < n; ++v) {
        labels[v] = ops::Elem{static_cast<std::int16_t>(sh.vertex_arity(v)),
                              static_cast<std::int32_t>(rest % sizes[v])};
        rest /= sizes[v];
      }
      std::int64_t len_combos = 1;
      for (std::int32_t v = 0; v < n; ++v) {
        if (v != sh.root()) len_combos *= 3;
      }
      for (std::int64_t ec = 0; ec < len_combos; ++ec) {
        std::vector<Rational> lengths(n, Rational(0));
        std::int64_t e = ec;
        for (std::int32_t v = 0; v < n; ++v) {
          if (v == sh.root()) continue;
          lengths[v] = grid[e % 3];
          e /= 3;
        }
        WElement a{sh, labels, lengths, ops, variant, {}};
        if (wcons::is_normal(a)) continue;
        WElement b = wcons::normalize(a);
        bool rho_all = true;
        std::optional<Time> separating;
        for (const Time& t : time_samples(a, b)) {
          if (!relation_compatible(t, a, b)) {
            rho_all = false;
            break;
          }
          if (!separating &&
              !wcons::same_element(classical_rho(t, a), classical_rho(t, b))) {
            separating = t;
          }
        }
        if (rho_all && separating) {
          best.found = true;
          best.a = a;
          best.b = b;
          best.t = *separating;
          std::ostringstream os;
          os << "raw presentation with " << n
             << " vertices; per-edge clamping at t=" << separating->str()
             << " separates the two classes while the height clamp does not";
          best.detail = os.str();
          return best;
        }
      }
    }
  }
  best.detail = "no witness within the search bounds";
  return best;
}

TwoStepTrace two_step_truncated_retraction(const WElement& w, int k) {
  TwoStepTrace tr;
  if (wcons::unit_rule_active(w.variant)) {
    tr.detail = "retraction uses heights, which need a unit-free variant";
    return tr;
  }
  WElement cur = wcons::normalize(w);
  tr.states.push_back(cur);
  if (cur.shape.vertex_count() > 0) {
    ops::Elem target = wcons::epsilon(cur);
    // step 1: lower each maximal leafless proper subtree onto its parent
    for (int round = 0; round < 1024; ++round) {
      if (cur.shape.vertex_count() <= 1) break;
      auto hasleaf = cur.shape.subtree_has_leaf();
      auto par = cur.shape.parents();
      std::int32_t top = -1;
      for (std::int32_t v = 0; v < cur.shape.vertex_count(); ++v) {
        if (v == cur.shape.root() || hasleaf[v]) continue;
        std::int32_t p = par.parent[v];
        if (p == cur.shape.root() || hasleaf[p]) {
          top = v;
          break;
        }
      }
      if (top == -1) break;
      auto h = wcons::vertex_heights(cur);
      auto sub = cur.shape.subtree_vertices(top);
      Rational base = h[par.parent[top]];
      std::vector<Rational> rel;
      for (std::int32_t u : sub) rel.push_back(h[u] - base);
      WElement next = cur;
      for (const Rational& s : descend_levels(rel)) {
        auto hh = h;
        for (std::int32_t u : sub) hh[u] = base + min(h[u] - base, s);
        next = wcons::normalize(with_heights(cur, hh));
        tr.states.push_back(next);
      }
      if (next.shape.vertex_count() >= cur.shape.vertex_count()) {
        tr.detail = "leafless subtree failed to collapse";
        return tr;
      }
      cur = next;
    }
    // step 2: lower the remaining tree onto its root
    for (const Rational& s : descend_levels(wcons::vertex_heights(cur))) {
      cur = rho(Time::at(s), cur);
      tr.states.push_back(cur);
    }
    WElement want =
        wcons::normalize(wcons::eta(cur.ops, target, cur.variant, cur.bound));
    if (!wcons::same_element(cur, want)) {
      tr.detail = "trace did not end at the collapsed element";
      return tr;
    }
  }
  for (std::size_t i = 0; i < tr.states.size(); ++i) {
    auto rep = wcons::validate_truncated(tr.states[i], k);
    if (!rep.ok) {
      std::ostringstream os;
      os << "state " << i << " leaves the level-" << k
         << " space: " << rep.detail;
      tr.detail = os.str();
      return tr;
    }
  }
  tr.ok = true;
  return tr;
}

}  // namespace opf::homo
