#include "opf/operad.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>

#include "opf/errors.hpp"
#include "opf/parallel.hpp"

namespace opf::ops {

std::shared_ptr<const FiniteOperad> FiniteOperad::build(Recipe recipe) {
  auto op = std::make_shared<FiniteOperad>();
  op->label_ = std::move(recipe.label);
  op->spec_ = std::move(recipe.spec);
  op->rmax_ = recipe.rmax;
  op->truncation_ = recipe.truncation;
  op->names_ = std::move(recipe.names);
  if (static_cast<int>(op->names_.size()) != op->rmax_ + 1) {
    throw Error("operad recipe: need one name list per arity 0..rmax");
  }
  op->index_.resize(op->rmax_ + 1);
  for (int r = 0; r <= op->rmax_; ++r) {
    for (std::int32_t i = 0; i < op->size(r); ++i) {
      if (!op->index_[r].emplace(op->names_[r][i], i).second) {
        throw Error("operad recipe: duplicate element name in arity " +
                    std::to_string(r));
      }
    }
  }
  op->unit_ = recipe.unit;
  if (op->unit_.arity != 1 || op->unit_.index < 0 ||
      op->unit_.index >= op->size(1)) {
    throw Error("operad recipe: unit must be a stored arity-1 element");
  }

  op->comp_.resize(op->rmax_ + 1);
  for (int m = 1; m <= op->rmax_; ++m) {
    op->comp_[m].resize(m);
    for (int i = 1; i <= m; ++i) {
      op->comp_[m][i - 1].resize(op->rmax_ + 1);
      for (int n = 0; n <= op->rmax_; ++n) {
        if (!op->compose_defined(m, n)) continue;
        auto& table = op->comp_[m][i - 1][n];
        table.resize(static_cast<std::size_t>(op->size(m)) * op->size(n));
        int res = m + n - 1;
        for (std::int32_t p = 0; p < op->size(m); ++p) {
          for (std::int32_t q = 0; q < op->size(n); ++q) {
            std::int32_t c = recipe.compose(m, i, p, n, q);
            if (c < 0 || c >= op->size(res)) {
              throw Error("operad recipe: composite index out of range");
            }
            table[static_cast<std::size_t>(p) * op->size(n) + q] = c;
          }
        }
      }
    }
  }

  op->act_.resize(op->rmax_ + 1);
  for (int r = 0; r <= op->rmax_; ++r) {
    auto perms = Perm::all(r);
    auto& table = op->act_[r];
    table.resize(perms.size() * op->size(r));
    for (const Perm& s : perms) {
      for (std::int32_t p = 0; p < op->size(r); ++p) {
        std::int32_t c = recipe.act(r, s, p);
        if (c < 0 || c >= op->size(r)) {
          throw Error("operad recipe: action index out of range");
        }
        table[static_cast<std::size_t>(s.rank()) * op->size(r) + p] = c;
      }
    }
  }
  return op;
}

int FiniteOperad::size(int r) const {
  if (r < 0 || r > rmax_) return 0;
  return static_cast<int>(names_[r].size());
}

std::int64_t FiniteOperad::total_size() const {
  std::int64_t t = 0;
  for (int r = 0; r <= rmax_; ++r) t += size(r);
  return t;
}

const std::string& FiniteOperad::name(Elem e) const {
  if (e.arity < 0 || e.arity > rmax_ || e.index < 0 ||
      e.index >= size(e.arity)) {
    throw Error("element out of range");
  }
  return names_[e.arity][e.index];
}

std::optional<Elem> FiniteOperad::find(int r, std::string_view name) const {
  if (r < 0 || r > rmax_) return std::nullopt;
  auto it = index_[r].find(std::string(name));
  if (it == index_[r].end()) return std::nullopt;
  return Elem{static_cast<std::int16_t>(r), it->second};
}

Elem FiniteOperad::nought() const {
  if (!is_unitary()) throw Error("operad has no distinguished arity-0 element");
  return Elem{0, 0};
}

bool FiniteOperad::compose_defined(int m, int n) const {
  if (m < 1 || m > rmax_ || n < 0 || n > rmax_) return false;
  if (m + n - 1 > rmax_) return false;
  if (truncation_) {
    int k = *truncation_;
    if (n > 0 ? m + n - 1 > k : m > k) return false;
  }
  return true;
}

Elem FiniteOperad::compose(Elem p, int i, Elem q) const {
  int m = p.arity;
  int n = q.arity;
  if (m < 1 || m > rmax_ || n < 0 || n > rmax_ || p.index < 0 ||
      p.index >= size(m) || q.index < 0 || q.index >= size(n)) {
    throw Error("compose: element out of range");
  }
  if (i < 1 || i > m) throw Error("compose: slot out of range");
  if (!compose_defined(m, n)) {
    if (truncation_) {
      throw TruncationError("compose: truncation bound exceeded at arity " +
                            std::to_string(m + n - 1));
    }
    throw Error("compose: result arity beyond stored tables");
  }
  const auto& table = comp_[m][i - 1][n];
  return Elem{static_cast<std::int16_t>(m + n - 1),
              table[static_cast<std::size_t>(p.index) * size(n) + q.index]};
}

Elem FiniteOperad::act(Elem p, const Perm& sigma) const {
  int r = p.arity;
  if (r < 0 || r > rmax_ || p.index < 0 || p.index >= size(r)) {
    throw Error("act: element out of range");
  }
  if (sigma.size() != r) throw Error("act: permutation arity mismatch");
  const auto& table = act_[r];
  return Elem{p.arity,
              table[static_cast<std::size_t>(sigma.rank()) * size(r) + p.index]};
}

// ---- fixtures ----

OperadPtr point_operad(int rmax) {
  FiniteOperad::Recipe r;
  r.label = "pt<=" + std::to_string(rmax);
  r.spec = {{"kind", "point"}, {"rmax", rmax}};
  r.rmax = rmax;
  r.names.resize(rmax + 1, {"pt"});
  r.unit = Elem{1, 0};
  r.compose = [](int, int, std::int32_t, int, std::int32_t) { return 0; };
  r.act = [](int, const Perm&, std::int32_t) { return 0; };
  return FiniteOperad::build(std::move(r));
}

OperadPtr selector_operad(int rmax) {
  // Component r: indices 0..r-1 are the projections pi1..pir, index r is the
  // constant ka, index r+1 the constant kb. Arity 0 only has the constants.
  FiniteOperad::Recipe rec;
  rec.label = "selector<=" + std::to_string(rmax);
  rec.spec = {{"kind", "selector"}, {"rmax", rmax}};
  rec.rmax = rmax;
  rec.names.resize(rmax + 1);
  rec.names[0] = {"a", "b"};
  for (int r = 1; r <= rmax; ++r) {
    for (int j = 1; j <= r; ++j) rec.names[r].push_back("pi" + std::to_string(j));
    rec.names[r].push_back("ka");
    rec.names[r].push_back("kb");
  }
  rec.unit = Elem{1, 0};
  rec.compose = [](int m, int i, std::int32_t p, int n, std::int32_t q) {
    int res = m + n - 1;
    if (p >= m) return res + (p - m);  // constant stays constant
    int j = p + 1;                     // f = pi_j
    if (j < i) return j - 1;
    if (j > i) return j + n - 2;
    // the i-th input is fed by g
    if (q < n) return i - 1 + q;       // g = pi_{q+1}, shifted into the block
    return res + (q - n);              // g constant
  };
  rec.act = [](int r, const Perm& s, std::int32_t p) {
    if (p >= r) return p;
    // (pi_j . s) picks the input that s routes to position j.
    return static_cast<std::int32_t>(s.inverse()(p + 1) - 1);
  };
  return FiniteOperad::build(std::move(rec));
}

std::pair<Elem, Elem> selector_constants() {
  return {Elem{1, 1}, Elem{1, 2}};
}

// ---- constructions ----

Elem ProductOperad::pair(Elem a, Elem b) const {
  if (a.arity != b.arity) throw Error("product pair: arity mismatch");
  return Elem{a.arity, a.index * right->size(a.arity) + b.index};
}

std::pair<Elem, Elem> ProductOperad::split(Elem e) const {
  std::int32_t w = right->size(e.arity);
  return {Elem{e.arity, e.index / w}, Elem{e.arity, e.index % w}};
}

ProductOperad product(const OperadPtr& a, const OperadPtr& b) {
  int rmax = std::min(a->max_arity(), b->max_arity());
  std::optional<int> trunc;
  if (a->truncation() || b->truncation()) {
    trunc = std::min(a->truncation().value_or(a->max_arity()),
                     b->truncation().value_or(b->max_arity()));
    rmax = std::min(rmax, *trunc);
  }
  FiniteOperad::Recipe rec;
  rec.label = "(" + a->label() + " x " + b->label() + ")";
  rec.spec = {{"kind", "product"}, {"left", a->spec()}, {"right", b->spec()}};
  rec.rmax = rmax;
  rec.truncation = trunc;
  rec.names.resize(rmax + 1);
  for (int r = 0; r <= rmax; ++r) {
    for (std::int32_t x = 0; x < a->size(r); ++x) {
      for (std::int32_t y = 0; y < b->size(r); ++y) {
        rec.names[r].push_back("[" + a->name(Elem{static_cast<std::int16_t>(r), x}) +
                               " ; " + b->name(Elem{static_cast<std::int16_t>(r), y}) +
                               "]");
      }
    }
  }
  auto wa = [b](int r) { return b->size(r); };
  rec.unit = Elem{1, a->unit().index * wa(1) + b->unit().index};
  rec.compose = [a, b](int m, int i, std::int32_t p, int n, std::int32_t q) {
    std::int16_t am = static_cast<std::int16_t>(m);
    std::int16_t an = static_cast<std::int16_t>(n);
    Elem pa{am, p / b->size(m)}, pb{am, p % b->size(m)};
    Elem qa{an, q / b->size(n)}, qb{an, q % b->size(n)};
    Elem ra = a->compose(pa, i, qa);
    Elem rb = b->compose(pb, i, qb);
    return ra.index * b->size(m + n - 1) + rb.index;
  };
  rec.act = [a, b](int r, const Perm& s, std::int32_t p) {
    std::int16_t ar = static_cast<std::int16_t>(r);
    Elem pa{ar, p / b->size(r)}, pb{ar, p % b->size(r)};
    return a->act(pa, s).index * b->size(r) + b->act(pb, s).index;
  };
  auto op = FiniteOperad::build(std::move(rec));
  return ProductOperad{op, a, b};
}

OperadPtr truncate(const OperadPtr& p, int k) {
  if (k < 0) throw Error("truncate: negative bound");
  int keff = std::min(k, p->truncation().value_or(p->max_arity()));
  int rmax = std::min(p->max_arity(), keff);
  FiniteOperad::Recipe rec;
  rec.label = p->label() + "|<=" + std::to_string(keff);
  rec.spec = {{"kind", "truncate"}, {"k", keff}, {"of", p->spec()}};
  rec.rmax = rmax;
  rec.truncation = keff;
  rec.names.resize(rmax + 1);
  for (int r = 0; r <= rmax; ++r) {
    for (std::int32_t i = 0; i < p->size(r); ++i) {
      rec.names[r].push_back(p->name(Elem{static_cast<std::int16_t>(r), i}));
    }
  }
  rec.unit = p->unit();
  rec.compose = [p](int m, int i, std::int32_t x, int n, std::int32_t y) {
    return p->compose(Elem{static_cast<std::int16_t>(m), x}, i,
                      Elem{static_cast<std::int16_t>(n), y})
        .index;
  };
  rec.act = [p](int r, const Perm& s, std::int32_t x) {
    return p->act(Elem{static_cast<std::int16_t>(r), x}, s).index;
  };
  return FiniteOperad::build(std::move(rec));
}

namespace {

// Small union-find over 0..n-1.
struct DSU {
  std::vector<std::int32_t> up;
  explicit DSU(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  std::int32_t find(std::int32_t x) {
    while (up[x] != x) {
      up[x] = up[up[x]];
      x = up[x];
    }
    return x;
  }
  bool unite(std::int32_t x, std::int32_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x > y) std::swap(x, y);  // keep the least index as representative
    up[y] = x;
    return true;
  }
};

}  // namespace

Elem Unitarization::apply(Elem e) const {
  return Elem{e.arity, class_of[e.arity][e.index]};
}

Unitarization unitarize(const OperadPtr& p) {
  if (p->size(0) == 0) {
    throw Error("unitarize: needs at least one arity-0 element");
  }
  int R = p->max_arity();
  std::vector<DSU> dsu;
  dsu.reserve(R + 1);
  for (int r = 0; r <= R; ++r) dsu.emplace_back(p->size(r));
  for (std::int32_t i = 1; i < p->size(0); ++i) dsu[0].unite(0, i);

  // Congruence closure: merged arguments must keep merged values. Rescan all
  // unary slices of the tables until no class moves.
  bool changed = true;
  while (changed) {
    changed = false;
    for (int m = 1; m <= R; ++m) {
      for (int n = 0; n <= R; ++n) {
        if (!p->compose_defined(m, n)) continue;
        int res = m + n - 1;
        for (int i = 1; i <= m; ++i) {
          for (std::int32_t q = 0; q < p->size(n); ++q) {
            std::map<std::int32_t, std::int32_t> seen;
            for (std::int32_t x = 0; x < p->size(m); ++x) {
              std::int32_t key = dsu[m].find(x);
              std::int32_t val = dsu[res].find(
                  p->compose(Elem{static_cast<std::int16_t>(m), x}, i,
                             Elem{static_cast<std::int16_t>(n), q})
                      .index);
              auto [it, fresh] = seen.emplace(key, val);
              if (!fresh && it->second != val) {
                changed |= dsu[res].unite(it->second, val);
              }
            }
          }
          for (std::int32_t x = 0; x < p->size(m); ++x) {
            std::map<std::int32_t, std::int32_t> seen;
            for (std::int32_t q = 0; q < p->size(n); ++q) {
              std::int32_t key = dsu[n].find(q);
              std::int32_t val = dsu[res].find(
                  p->compose(Elem{static_cast<std::int16_t>(m), x}, i,
                             Elem{static_cast<std::int16_t>(n), q})
                      .index);
              auto [it, fresh] = seen.emplace(key, val);
              if (!fresh && it->second != val) {
                changed |= dsu[res].unite(it->second, val);
              }
            }
          }
        }
      }
    }
    for (int r = 0; r <= R; ++r) {
      for (const Perm& s : Perm::all(r)) {
        std::map<std::int32_t, std::int32_t> seen;
        for (std::int32_t x = 0; x < p->size(r); ++x) {
          std::int32_t key = dsu[r].find(x);
          std::int32_t val = dsu[r].find(
              p->act(Elem{static_cast<std::int16_t>(r), x}, s).index);
          auto [it, fresh] = seen.emplace(key, val);
          if (!fresh && it->second != val) {
            changed |= dsu[r].unite(it->second, val);
          }
        }
      }
    }
  }

  Unitarization u;
  u.source = p;
  u.class_of.resize(R + 1);
  std::vector<std::vector<std::int32_t>> reps(R + 1);
  for (int r = 0; r <= R; ++r) {
    u.class_of[r].assign(p->size(r), -1);
    for (std::int32_t x = 0; x < p->size(r); ++x) {
      std::int32_t root = dsu[r].find(x);
      if (u.class_of[r][root] < 0) {
        u.class_of[r][root] = static_cast<std::int32_t>(reps[r].size());
        reps[r].push_back(root);
      }
      u.class_of[r][x] = u.class_of[r][root];
    }
  }

  FiniteOperad::Recipe rec;
  rec.label = "tau(" + p->label() + ")";
  rec.spec = {{"kind", "unitarize"}, {"of", p->spec()}};
  rec.rmax = R;
  rec.truncation = p->truncation();
  rec.names.resize(R + 1);
  for (int r = 0; r <= R; ++r) {
    for (std::int32_t c = 0; c < static_cast<std::int32_t>(reps[r].size()); ++c) {
      rec.names[r].push_back(
          p->name(Elem{static_cast<std::int16_t>(r), reps[r][c]}));
    }
  }
  rec.unit = Elem{1, u.class_of[1][p->unit().index]};
  rec.compose = [p, &u, &reps](int m, int i, std::int32_t x, int n,
                               std::int32_t y) {
    return u.class_of[m + n - 1]
                     [p->compose(Elem{static_cast<std::int16_t>(m), reps[m][x]},
                                 i,
                                 Elem{static_cast<std::int16_t>(n), reps[n][y]})
                          .index];
  };
  rec.act = [p, &u, &reps](int r, const Perm& s, std::int32_t x) {
    return u.class_of[r][p->act(Elem{static_cast<std::int16_t>(r), reps[r][x]}, s)
                             .index];
  };
  u.op = FiniteOperad::build(std::move(rec));

  // Well-definedness: the composite of classes must not depend on the chosen
  // members. The closure above guarantees it; verify anyway.
  for (int m = 1; m <= R; ++m) {
    for (int n = 0; n <= R; ++n) {
      if (!p->compose_defined(m, n)) continue;
      for (int i = 1; i <= m; ++i) {
        for (std::int32_t x = 0; x < p->size(m); ++x) {
          for (std::int32_t y = 0; y < p->size(n); ++y) {
            Elem lhs = u.apply(p->compose(Elem{static_cast<std::int16_t>(m), x},
                                          i,
                                          Elem{static_cast<std::int16_t>(n), y}));
            Elem rhs = u.op->compose(
                u.apply(Elem{static_cast<std::int16_t>(m), x}), i,
                u.apply(Elem{static_cast<std::int16_t>(n), y}));
            if (lhs != rhs) throw Error("unitarize: quotient not well defined");
          }
        }
      }
    }
  }
  return u;
}

Elem restriction(const FiniteOperad& p, const std::vector<int>& u, Elem e) {
  if (!p.is_unitary()) throw Error("restriction: operad must be unitary");
  int n = e.arity;
  int m = static_cast<int>(u.size());
  std::vector<char> hit(n + 1, 0);
  for (int x : u) {
    if (x < 1 || x > n || hit[x]) throw Error("restriction: not an injection");
    hit[x] = 1;
  }
  // Kill missing inputs top-down so earlier positions keep their meaning.
  Elem q = e;
  for (int s = n; s >= 1; --s) {
    if (!hit[s]) q = p.compose(q, s, p.nought());
  }
  // q now restricts e to the sorted image; permute into the order of u.
  std::vector<int> sorted(u);
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::uint8_t> img(m);
  for (int j = 0; j < m; ++j) {
    int pos = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(),
                                                u[j]) -
                               sorted.begin());
    img[j] = static_cast<std::uint8_t>(pos + 1);
  }
  return p.act(q, Perm(std::move(img)));
}

// ---- law checking ----

namespace {

struct Block {
  int law;
  int m = 0, n = 0, l = 0;
};

void note(AxiomReport& rep, const std::string& law, const std::string& detail) {
  ++rep.failures;
  if (rep.sample.size() < 8) rep.sample.push_back({law, detail});
}

void run_block(const FiniteOperad& P, const Block& b, AxiomReport& rep) {
  auto E = [](int r, std::int32_t i) {
    return Elem{static_cast<std::int16_t>(r), i};
  };
  switch (b.law) {
    case 0: {  // unit laws in arity r = b.m
      int r = b.m;
      bool left = P.compose_defined(1, r);
      bool right = P.compose_defined(r, 1);
      for (std::int32_t x = 0; x < P.size(r); ++x) {
        if (left) {
          ++rep.checks;
          if (P.compose(P.unit(), 1, E(r, x)) != E(r, x)) {
            note(rep, "unit-left", P.name(E(r, x)));
          }
        }
        if (right) {
          for (int i = 1; i <= r; ++i) {
            ++rep.checks;
            if (P.compose(E(r, x), i, P.unit()) != E(r, x)) {
              note(rep, "unit-right",
                   P.name(E(r, x)) + " at " + std::to_string(i));
            }
          }
        }
      }
      break;
    }
    case 1: {  // nested associativity
      int m = b.m, n = b.n, l = b.l;
      if (n < 1) break;
      if (!P.compose_defined(m, n) || !P.compose_defined(m + n - 1, l) ||
          !P.compose_defined(n, l) || !P.compose_defined(m, n + l - 1)) {
        break;
      }
      for (std::int32_t x = 0; x < P.size(m); ++x) {
        for (std::int32_t y = 0; y < P.size(n); ++y) {
          for (std::int32_t z = 0; z < P.size(l); ++z) {
            for (int i = 1; i <= m; ++i) {
              for (int j = 1; j <= n; ++j) {
                ++rep.checks;
                Elem lhs = P.compose(P.compose(E(m, x), i, E(n, y)),
                                     i - 1 + j, E(l, z));
                Elem rhs =
                    P.compose(E(m, x), i, P.compose(E(n, y), j, E(l, z)));
                if (lhs != rhs) {
                  note(rep, "assoc-nested",
                       P.name(E(m, x)) + " o_" + std::to_string(i) + " " +
                           P.name(E(n, y)) + " o_" + std::to_string(j) + " " +
                           P.name(E(l, z)));
                }
              }
            }
          }
        }
      }
      break;
    }
    case 2: {  // disjoint slots commute
      int m = b.m, n = b.n, l = b.l;
      if (m < 2) break;
      if (!P.compose_defined(m, n) || !P.compose_defined(m + n - 1, l) ||
          !P.compose_defined(m, l) || !P.compose_defined(m + l - 1, n)) {
        break;
      }
      for (std::int32_t x = 0; x < P.size(m); ++x) {
        for (std::int32_t y = 0; y < P.size(n); ++y) {
          for (std::int32_t z = 0; z < P.size(l); ++z) {
            for (int i = 1; i <= m; ++i) {
              for (int j = i + 1; j <= m; ++j) {
                ++rep.checks;
                Elem lhs = P.compose(P.compose(E(m, x), i, E(n, y)),
                                     j + n - 1, E(l, z));
                Elem rhs =
                    P.compose(P.compose(E(m, x), j, E(l, z)), i, E(n, y));
                if (lhs != rhs) {
                  note(rep, "assoc-disjoint",
                       P.name(E(m, x)) + " slots " + std::to_string(i) + "," +
                           std::to_string(j));
                }
              }
            }
          }
        }
      }
      break;
    }
    case 3: {  // equivariance in the outer element
      int m = b.m, n = b.n;
      if (!P.compose_defined(m, n)) break;
      auto perms = Perm::all(m);
      for (const Perm& s : perms) {
        for (std::int32_t x = 0; x < P.size(m); ++x) {
          for (std::int32_t y = 0; y < P.size(n); ++y) {
            for (int i = 1; i <= m; ++i) {
              ++rep.checks;
              Elem lhs = P.compose(P.act(E(m, x), s), i, E(n, y));
              Elem rhs = P.act(P.compose(E(m, x), s(i), E(n, y)),
                               outer_block(s, i, n));
              if (lhs != rhs) {
                note(rep, "equivariance-outer",
                     P.name(E(m, x)) + " . " + s.str() + " o_" +
                         std::to_string(i) + " " + P.name(E(n, y)));
              }
            }
          }
        }
      }
      break;
    }
    case 4: {  // equivariance in the inner element
      int m = b.m, n = b.n;
      if (!P.compose_defined(m, n)) break;
      auto perms = Perm::all(n);
      for (const Perm& t : perms) {
        for (std::int32_t x = 0; x < P.size(m); ++x) {
          for (std::int32_t y = 0; y < P.size(n); ++y) {
            for (int i = 1; i <= m; ++i) {
              ++rep.checks;
              Elem lhs = P.compose(E(m, x), i, P.act(E(n, y), t));
              Elem rhs =
                  P.act(P.compose(E(m, x), i, E(n, y)), inner_block(m, i, t));
              if (lhs != rhs) {
                note(rep, "equivariance-inner",
                     P.name(E(m, x)) + " o_" + std::to_string(i) + " " +
                         P.name(E(n, y)) + " . " + t.str());
              }
            }
          }
        }
      }
      break;
    }
    case 5: {  // right action group laws
      int r = b.m;
      auto perms = Perm::all(r);
      Perm id = Perm::identity(r);
      for (std::int32_t x = 0; x < P.size(r); ++x) {
        ++rep.checks;
        if (P.act(E(r, x), id) != E(r, x)) {
          note(rep, "action-identity", P.name(E(r, x)));
        }
        for (const Perm& s : perms) {
          for (const Perm& t : perms) {
            ++rep.checks;
            if (P.act(P.act(E(r, x), s), t) != P.act(E(r, x), s.compose(t))) {
              note(rep, "action-composition",
                   P.name(E(r, x)) + " . " + s.str() + " . " + t.str());
            }
          }
        }
      }
      break;
    }
    case 6: {  // composition domain matches the truncation formula
      int R = P.max_arity();
      for (int m = 0; m <= R + 1; ++m) {
        for (int n = 0; n <= R + 1; ++n) {
          ++rep.checks;
          bool stored = m <= R && n <= R;
          bool expect = stored && m >= 1 && m + n - 1 <= R;
          if (P.truncation()) {
            int k = *P.truncation();
            expect = expect && (n > 0 ? m + n - 1 <= k : m <= k);
          }
          if (P.compose_defined(m, n) != expect) {
            note(rep, "composition-domain",
                 "(" + std::to_string(m) + "," + std::to_string(n) + ")");
          }
        }
      }
      break;
    }
  }
}

}  // namespace

AxiomReport check_axioms(const FiniteOperad& p, bool parallel) {
  int R = p.max_arity();
  std::vector<Block> blocks;
  for (int r = 0; r <= R; ++r) blocks.push_back({0, r, 0, 0});
  for (int m = 1; m <= R; ++m) {
    for (int n = 0; n <= R; ++n) {
      for (int l = 0; l <= R; ++l) {
        blocks.push_back({1, m, n, l});
        blocks.push_back({2, m, n, l});
      }
      blocks.push_back({3, m, n, 0});
      blocks.push_back({4, m, n, 0});
    }
  }
  for (int r = 0; r <= R; ++r) blocks.push_back({5, r, 0, 0});
  blocks.push_back({6, 0, 0, 0});

  std::vector<AxiomReport> parts(blocks.size());
  for_each_index(static_cast<std::int64_t>(blocks.size()), parallel,
                 [&](std::int64_t i) { run_block(p, blocks[i], parts[i]); });

  AxiomReport rep;
  for (const auto& part : parts) {
    rep.checks += part.checks;
    rep.failures += part.failures;
    for (const auto& v : part.sample) {
      if (rep.sample.size() < 8) rep.sample.push_back(v);
    }
  }
  return rep;
}

Elem Morphism::apply(Elem e) const {
  return Elem{e.arity, map[e.arity][e.index]};
}

std::vector<std::string> check_morphism(const Morphism& f) {
  std::vector<std::string> bad;
  auto flag = [&](const std::string& s) {
    if (bad.size() < 16) bad.push_back(s);
  };
  const auto& D = *f.dom;
  const auto& C = *f.cod;
  if (f.apply(D.unit()) != C.unit()) flag("unit not preserved");
  int R = D.max_arity();
  for (int r = 0; r <= R; ++r) {
    if (static_cast<int>(f.map[r].size()) != D.size(r)) {
      flag("map size mismatch in arity " + std::to_string(r));
      return bad;
    }
  }
  for (int m = 1; m <= R; ++m) {
    for (int n = 0; n <= R; ++n) {
      if (!D.compose_defined(m, n)) continue;
      if (!C.compose_defined(m, n)) {
        flag("codomain misses composition (" + std::to_string(m) + "," +
             std::to_string(n) + ")");
        continue;
      }
      for (int i = 1; i <= m; ++i) {
        for (std::int32_t x = 0; x < D.size(m); ++x) {
          for (std::int32_t y = 0; y < D.size(n); ++y) {
            Elem dm{static_cast<std::int16_t>(m), x};
            Elem dn{static_cast<std::int16_t>(n), y};
            if (f.apply(D.compose(dm, i, dn)) !=
                C.compose(f.apply(dm), i, f.apply(dn))) {
              flag("composition not preserved at " + D.name(dm) + " o_" +
                   std::to_string(i) + " " + D.name(dn));
            }
          }
        }
      }
    }
  }
  for (int r = 0; r <= R; ++r) {
    for (const Perm& s : Perm::all(r)) {
      for (std::int32_t x = 0; x < D.size(r); ++x) {
        Elem e{static_cast<std::int16_t>(r), x};
        if (f.apply(D.act(e, s)) != C.act(f.apply(e), s)) {
          flag("action not preserved at " + D.name(e) + " . " + s.str());
        }
      }
    }
  }
  return bad;
}

}  // namespace opf::ops
