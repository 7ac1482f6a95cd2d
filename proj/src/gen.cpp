#include "opf/gen.hpp"

#include <algorithm>
#include <cassert>

#include "opf/errors.hpp"

#include "opf/rng.hpp"

namespace opf::gen {

Perm random_perm(std::mt19937_64& rng, int r) {
  return Perm::unrank(r, pick(rng, Perm::factorial(r)));
}

ops::Elem random_elem(std::mt19937_64& rng, const ops::FiniteOperad& p, int r) {
  const std::int64_t n = p.size(r);
  if (n <= 0) throw opf::Error("random_elem: empty component");
  return ops::Elem{static_cast<std::int16_t>(r),
                   static_cast<std::int32_t>(pick(rng, n))};
}

int composite_bound(const trees::RTree& t) {
  const std::int32_t n = t.vertex_count();
  if (n == 0) return 1;
  auto depth = t.depths();
  std::vector<std::int32_t> order(n);
  for (std::int32_t v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    return depth[a] > depth[b];
  });
  std::vector<int> f(n, 0);
  int best = 1;
  for (std::int32_t v : order) {
    int s = static_cast<int>(t.slots(v).size()) - 1;
    for (const trees::Slot& sl : t.slots(v)) {
      if (!sl.is_leaf()) s += std::max(0, f[sl.vertex()]);
    }
    f[v] = s;
    best = std::max(best, s + 1);
  }
  return best;
}

Rational random_length(std::mt19937_64& rng) {
  // endpoints weighted so the rewrite rules actually fire
  static const Rational grid[] = {
      Rational(0),     Rational(0),     Rational(0),     Rational(1),
      Rational(1),     Rational(1),     Rational(1, 2),  Rational(1, 2),
      Rational(1, 4),  Rational(3, 4),  Rational(1, 3),  Rational(2, 3)};
  return grid[pick(rng, static_cast<std::int64_t>(std::size(grid)))];
}

namespace {

int effective_limit(const ops::FiniteOperad& p, const GrowConfig& cfg) {
  int limit = p.max_arity();
  if (cfg.bound) limit = std::min(limit, *cfg.bound);
  return limit;
}

// Arity for a new vertex: small arities and binary vertices dominate.
int pick_arity(std::mt19937_64& rng, const ops::FiniteOperad& p, int limit,
               int budget) {
  std::vector<int> bag;
  for (int r = 0; r <= limit; ++r) {
    if (p.size(r) <= 0) continue;
    if (r >= 1 && r - 1 > budget) break;
    int w = r == 2 ? 3 : (r <= 1 ? 2 : 1);
    bag.insert(bag.end(), w, r);
  }
  if (bag.empty()) return -1;
  return bag[pick(rng, static_cast<std::int64_t>(bag.size()))];
}

ops::Elem pick_label(std::mt19937_64& rng, const ops::FiniteOperad& p, int r,
                     const GrowConfig& cfg) {
  if (r == 1 && cfg.unit_label_rate > 0.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < cfg.unit_label_rate) return p.unit();
  }
  return random_elem(rng, p, r);
}

// Grows a labeled shape by grafting corollas at random leaves, accepting a
// step only while composite_bound stays within the limit.
struct LabeledGrowth {
  trees::RTree shape;
  std::vector<ops::Elem> labels;
};

LabeledGrowth grow(std::mt19937_64& rng, const ops::FiniteOperad& p,
                   const GrowConfig& cfg) {
  const int limit = effective_limit(p, cfg);
  const int target =
      1 + static_cast<int>(pick(rng, std::max(1, cfg.max_vertices)));
  int r0 = pick_arity(rng, p, limit, limit - 1);
  if (r0 < 0) throw opf::Error("grow: no usable arity under the limit");
  LabeledGrowth g;
  g.shape = trees::RTree::corolla(r0);
  g.labels = {pick_label(rng, p, r0, cfg)};
  int rejects = 0;
  while (g.shape.vertex_count() < target && rejects < 4) {
    const int arity = g.shape.arity();
    if (arity == 0) break;
    int leaf = 1 + static_cast<int>(pick(rng, arity));
    int budget = limit - arity;  // composite arity grows by at most n - 1
    int n = pick_arity(rng, p, limit, budget);
    if (n < 0) break;
    trees::RTree grown = trees::graft(g.shape, leaf, trees::RTree::corolla(n));
    if (composite_bound(grown) > limit) {
      ++rejects;
      continue;
    }
    g.shape = std::move(grown);
    g.labels.push_back(pick_label(rng, p, n, cfg));
    rejects = 0;
  }
  return g;
}

}  // namespace

terms::TreeTerm random_term(std::mt19937_64& rng, ops::OperadPtr gens,
                         const GrowConfig& cfg) {
  LabeledGrowth g = grow(rng, *gens, cfg);
  terms::TreeTerm t;
  t.shape = std::move(g.shape);
  t.labels = std::move(g.labels);
  t.gens = std::move(gens);
  t.bound = cfg.bound;
  terms::validate(t);
  return t;
}

wcons::WElement random_raw(std::mt19937_64& rng, ops::OperadPtr ops,
                        wcons::Variant variant, const GrowConfig& cfg) {
  wcons::WElement w;
  w.ops = std::move(ops);
  w.variant = variant;
  w.bound = cfg.bound;
  if (cfg.bare_rate > 0.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) < cfg.bare_rate) {
      wcons::validate_raw(w);
      return w;
    }
  }
  LabeledGrowth g = grow(rng, *w.ops, cfg);
  w.shape = std::move(g.shape);
  w.labels = std::move(g.labels);
  w.lengths.assign(w.shape.vertex_count(), Rational(0));
  for (std::int32_t v = 0; v < w.shape.vertex_count(); ++v) {
    if (v != w.shape.root()) w.lengths[v] = random_length(rng);
  }
  wcons::validate_raw(w);
  return w;
}

wcons::WElement random_valid_truncated(std::mt19937_64& rng, ops::OperadPtr ops,
                                    wcons::Variant variant, int k,
                                    const GrowConfig& cfg) {
  GrowConfig c = cfg;
  c.bound = k;
  wcons::WElement w = random_raw(rng, std::move(ops), variant, c);
  return wcons::normalize(w);
}

std::pair<wcons::WElement, wcons::WElement> random_relation_pair(
    std::mt19937_64& rng, ops::OperadPtr ops, wcons::Variant variant,
    const GrowConfig& cfg) {
  auto walk = [&](wcons::WElement w, int steps) {
    for (int s = 0; s < steps; ++s) {
      auto moves = wcons::applicable_rewrites(w);
      if (moves.empty()) break;
      w = wcons::apply_rewrite(
          w, moves[pick(rng, static_cast<std::int64_t>(moves.size()))]);
    }
    return w;
  };
  for (int attempt = 0; attempt < 8; ++attempt) {
    wcons::WElement seed = random_raw(rng, ops, variant, cfg);
    wcons::WElement a = walk(seed, static_cast<int>(pick(rng, 3)));
    wcons::WElement b = walk(seed, 1 + static_cast<int>(pick(rng, 3)));
    wcons::WElement ca = wcons::canonical(a);
    wcons::WElement cb = wcons::canonical(b);
    if (ca.shape != cb.shape || ca.labels != cb.labels ||
        ca.lengths != cb.lengths) {
      return {std::move(a), std::move(b)};
    }
    if (attempt == 7) return {std::move(a), std::move(b)};
  }
  throw opf::Error("random_relation_pair: unreachable");
}

be::Monomial random_monomial(std::mt19937_64& rng, int r) {
  return be::monomial_at(r, pick(rng, be::monomial_count(r)));
}

be::NerveSimplex random_simplex(std::mt19937_64& rng, int r, int n) {
  be::NerveSimplex s;
  s.comps.reserve(n + 1);
  for (int i = 0; i <= n; ++i) s.comps.push_back(random_monomial(rng, r));
  return s;
}

}  // namespace opf::gen
