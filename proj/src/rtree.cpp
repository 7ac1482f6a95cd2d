#include "opf/rtree.hpp"

#include <algorithm>
#include <cassert>

#include "opf/errors.hpp"

namespace opf::trees {

RTree RTree::bare() { return RTree(); }

RTree RTree::corolla(int r) {
  std::vector<std::vector<Slot>> slots(1);
  for (int j = 1; j <= r; ++j) slots[0].push_back(Slot::leaf(j));
  return build(std::move(slots), 0, r);
}

RTree RTree::build(std::vector<std::vector<Slot>> slots, std::int32_t root,
                   int arity) {
  if (slots.empty()) {
    if (root != -1 || arity != 1) {
      throw Error("vertex-free tree must have arity 1 and no root id");
    }
    return RTree();
  }
  int n = static_cast<int>(slots.size());
  if (root < 0 || root >= n) throw Error("root id out of range");
  if (arity < 0) throw Error("negative arity");
  std::vector<int> indeg(n, 0);
  std::vector<char> leaf_seen(arity + 1, 0);
  for (const auto& list : slots) {
    for (const Slot& s : list) {
      if (s.is_leaf()) {
        std::int32_t j = s.leaf_number();
        if (j < 1 || j > arity) throw Error("leaf number out of range");
        if (leaf_seen[j]) throw Error("duplicate leaf number");
        leaf_seen[j] = 1;
      } else {
        std::int32_t c = s.vertex();
        if (c < 0 || c >= n) throw Error("child id out of range");
        ++indeg[c];
      }
    }
  }
  for (int j = 1; j <= arity; ++j) {
    if (!leaf_seen[j]) throw Error("missing leaf number");
  }
  for (int v = 0; v < n; ++v) {
    int expect = v == root ? 0 : 1;
    if (indeg[v] != expect) throw Error("vertex in-degree violates tree shape");
  }
  // In-degree alone admits cycles detached from the root; walk to rule them out.
  std::vector<char> seen(n, 0);
  std::vector<std::int32_t> stack{root};
  int reached = 0;
  seen[root] = 1;
  while (!stack.empty()) {
    std::int32_t v = stack.back();
    stack.pop_back();
    ++reached;
    for (const Slot& s : slots[v]) {
      if (!s.is_leaf()) {
        if (seen[s.vertex()]) throw Error("cycle in tree data");
        seen[s.vertex()] = 1;
        stack.push_back(s.vertex());
      }
    }
  }
  if (reached != n) throw Error("unreachable vertices in tree data");
  RTree t;
  t.slots_ = std::move(slots);
  t.root_ = root;
  t.arity_ = arity;
  return t;
}

RTree::Parents RTree::parents() const {
  Parents p;
  p.parent.assign(vertex_count(), -1);
  p.pos.assign(vertex_count(), -1);
  for (std::int32_t v = 0; v < vertex_count(); ++v) {
    const auto& list = slots_[v];
    for (int i = 0; i < static_cast<int>(list.size()); ++i) {
      if (!list[i].is_leaf()) {
        p.parent[list[i].vertex()] = v;
        p.pos[list[i].vertex()] = i;
      }
    }
  }
  return p;
}

std::vector<std::int32_t> RTree::depths() const {
  std::vector<std::int32_t> d(vertex_count(), 0);
  if (is_bare()) return d;
  std::vector<std::int32_t> stack{root_};
  while (!stack.empty()) {
    std::int32_t v = stack.back();
    stack.pop_back();
    for (const Slot& s : slots_[v]) {
      if (!s.is_leaf()) {
        d[s.vertex()] = d[v] + 1;
        stack.push_back(s.vertex());
      }
    }
  }
  return d;
}

std::vector<bool> RTree::subtree_has_leaf() const {
  std::vector<bool> has(vertex_count(), false);
  // Children have larger depth, so a reverse depth order pass suffices.
  std::vector<std::int32_t> order(vertex_count());
  for (std::int32_t v = 0; v < vertex_count(); ++v) order[v] = v;
  auto d = depths();
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return d[a] > d[b]; });
  for (std::int32_t v : order) {
    for (const Slot& s : slots_[v]) {
      if (s.is_leaf()) {
        has[v] = true;
      } else if (has[s.vertex()]) {
        has[v] = true;
      }
    }
  }
  return has;
}

std::vector<std::int32_t> RTree::subtree_vertices(std::int32_t v) const {
  std::vector<std::int32_t> out;
  std::vector<std::int32_t> stack{v};
  while (!stack.empty()) {
    std::int32_t x = stack.back();
    stack.pop_back();
    out.push_back(x);
    for (const Slot& s : slots_[x]) {
      if (!s.is_leaf()) stack.push_back(s.vertex());
    }
  }
  return out;
}

RTree graft(const RTree& s, int i, const RTree& t) {
  if (i < 1 || i > s.arity()) throw Error("graft position out of range");
  if (s.is_bare()) return t;
  if (t.is_bare()) return s;  // block renumbering around a width-1 plug is the identity
  int m = s.arity();
  int n = t.arity();
  int ns = s.vertex_count();
  int nt = t.vertex_count();
  std::vector<std::vector<Slot>> slots(ns + nt);
  for (std::int32_t v = 0; v < ns; ++v) {
    for (const Slot& sl : s.slots(v)) {
      if (sl.is_leaf()) {
        std::int32_t j = sl.leaf_number();
        if (j < i) {
          slots[v].push_back(Slot::leaf(j));
        } else if (j == i) {
          slots[v].push_back(Slot::child(t.root() + ns));
        } else {
          slots[v].push_back(Slot::leaf(j + n - 1));
        }
      } else {
        slots[v].push_back(sl);
      }
    }
  }
  for (std::int32_t v = 0; v < nt; ++v) {
    for (const Slot& sl : t.slots(v)) {
      if (sl.is_leaf()) {
        slots[v + ns].push_back(Slot::leaf(i + sl.leaf_number() - 1));
      } else {
        slots[v + ns].push_back(Slot::child(sl.vertex() + ns));
      }
    }
  }
  (void)m;
  return RTree::build(std::move(slots), s.root(), s.arity() + n - 1);
}

Contraction contract_edge(const RTree& t, std::int32_t upper) {
  if (t.is_bare() || upper < 0 || upper >= t.vertex_count()) {
    throw Error("contract: vertex id out of range");
  }
  if (upper == t.root()) throw Error("contract: root has no outgoing edge");
  auto par = t.parents();
  std::int32_t lower = par.parent[upper];
  int pos0 = par.pos[upper];
  int n = t.vertex_count();

  std::vector<std::int32_t> map(n);
  for (std::int32_t v = 0; v < n; ++v) map[v] = v - (v > upper ? 1 : 0);
  std::int32_t merged = map[lower];
  map[upper] = merged;

  std::vector<std::vector<Slot>> slots(n - 1);
  auto remap = [&](const Slot& s) {
    return s.is_leaf() ? s : Slot::child(map[s.vertex()]);
  };
  for (std::int32_t v = 0; v < n; ++v) {
    if (v == upper) continue;
    auto& out = slots[map[v]];
    const auto& list = t.slots(v);
    for (int i = 0; i < static_cast<int>(list.size()); ++i) {
      if (v == lower && i == pos0) {
        for (const Slot& s : t.slots(upper)) out.push_back(remap(s));
      } else {
        out.push_back(remap(list[i]));
      }
    }
  }
  Contraction c{RTree::build(std::move(slots), map[t.root()], t.arity()),
                std::move(map),
                merged,
                lower,
                upper,
                pos0 + 1};
  return c;
}

namespace {

// Sentinels for the recursive key encoding; genuine key values (arities,
// leaf numbers, label indices, length numerators/denominators) are >= 0.
constexpr std::int64_t kLeaf = -1;
constexpr std::int64_t kChild = -2;
constexpr std::int64_t kEnd = -3;
constexpr std::int64_t kEdge = -4;

}  // namespace

CanonicalResult canonicalize_with(const RTree& t, const CanonicalHooks& hooks) {
  if (t.is_bare()) return {t, {}};
  int n = t.vertex_count();
  std::vector<std::vector<Slot>> work(n);
  for (std::int32_t v = 0; v < n; ++v) work[v] = t.slots(v);
  std::vector<std::vector<std::int64_t>> key(n);

  auto slot_key = [&](const Slot& s) {
    std::vector<std::int64_t> k;
    if (s.is_leaf()) {
      k = {kLeaf, s.leaf_number()};
    } else {
      k.push_back(kChild);
      if (hooks.edge_key) {
        k.push_back(kEdge);
        hooks.edge_key(s.vertex(), k);
      }
      const auto& ck = key[s.vertex()];
      k.insert(k.end(), ck.begin(), ck.end());
      k.push_back(kEnd);
    }
    return k;
  };

  auto process = [&](auto&& self, std::int32_t v) -> void {
    for (const Slot& s : work[v]) {
      if (!s.is_leaf()) self(self, s.vertex());
    }
    int r = static_cast<int>(work[v].size());
    std::vector<std::pair<std::vector<std::int64_t>, int>> sk;
    sk.reserve(r);
    for (int pos = 0; pos < r; ++pos) {
      sk.emplace_back(slot_key(work[v][pos]), pos);
    }
    std::stable_sort(sk.begin(), sk.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<std::uint8_t> base(r);
    for (int s = 0; s < r; ++s) base[s] = static_cast<std::uint8_t>(sk[s].second + 1);
    Perm chosen = r > 0 ? Perm(base) : Perm::identity(0);

    if (hooks.label_rank_after) {
      // Runs of slots whose entire keyed subtrees coincide: any relative
      // order is structurally the same tree, so pick the one whose
      // transported vertex label is least.
      std::vector<std::pair<int, int>> runs;
      for (int a = 0; a < r;) {
        int b = a + 1;
        while (b < r && sk[b].first == sk[a].first) ++b;
        if (b - a >= 2) runs.emplace_back(a, b);
        a = b;
      }
      if (!runs.empty()) {
        std::int64_t total = 1;
        for (auto [a, b] : runs) total *= Perm::factorial(b - a);
        if (total > 40320) throw Error("sibling multiplicity too large");
        std::int64_t best_rank = 0;
        bool have_best = false;
        Perm best = chosen;
        std::vector<int> odo(runs.size(), 0);
        std::vector<std::vector<std::vector<int>>> run_orders(runs.size());
        for (size_t q = 0; q < runs.size(); ++q) {
          auto [a, b] = runs[q];
          std::vector<int> ord(b - a);
          for (int x = 0; x < b - a; ++x) ord[x] = x;
          do {
            run_orders[q].push_back(ord);
          } while (std::next_permutation(ord.begin(), ord.end()));
        }
        bool more = true;
        while (more) {
          std::vector<std::uint8_t> img(base);
          for (size_t q = 0; q < runs.size(); ++q) {
            auto [a, b] = runs[q];
            const auto& ord = run_orders[q][odo[q]];
            for (int x = 0; x < b - a; ++x) img[a + x] = base[a + ord[x]];
          }
          Perm cand(img);
          std::int64_t rank = hooks.label_rank_after(v, cand);
          if (!have_best || rank < best_rank) {
            have_best = true;
            best_rank = rank;
            best = cand;
          }
          // advance odometer
          more = false;
          for (size_t q = 0; q < runs.size(); ++q) {
            if (++odo[q] < static_cast<int>(run_orders[q].size())) {
              more = true;
              break;
            }
            odo[q] = 0;
          }
        }
        chosen = best;
      }
    }

    if (hooks.permute_slots && !chosen.is_identity()) {
      hooks.permute_slots(v, chosen);
    }
    // chosen maps new position -> old position of the same vertex's slots.
    std::vector<Slot> reordered(r);
    for (int s = 1; s <= r; ++s) reordered[s - 1] = work[v][chosen(s) - 1];
    work[v] = std::move(reordered);

    auto& kv = key[v];
    kv.clear();
    kv.push_back(r);
    if (hooks.vertex_key) hooks.vertex_key(v, kv);
    kv.push_back(kEnd);
    for (const Slot& s : work[v]) {
      auto k = slot_key(s);
      kv.insert(kv.end(), k.begin(), k.end());
    }
  };
  process(process, t.root());

  std::vector<std::int32_t> vmap(n, -1);
  std::int32_t next = 0;
  auto number = [&](auto&& self, std::int32_t v) -> void {
    vmap[v] = next++;
    for (const Slot& s : work[v]) {
      if (!s.is_leaf()) self(self, s.vertex());
    }
  };
  number(number, t.root());

  std::vector<std::vector<Slot>> out(n);
  for (std::int32_t v = 0; v < n; ++v) {
    for (const Slot& s : work[v]) {
      out[vmap[v]].push_back(s.is_leaf() ? s : Slot::child(vmap[s.vertex()]));
    }
  }
  return {RTree::build(std::move(out), vmap[t.root()], t.arity()),
          std::move(vmap)};
}

RTree canonicalize(const RTree& t) {
  return canonicalize_with(t, CanonicalHooks{}).tree;
}

std::vector<CutPiece> cut_edges(const RTree& t,
                                const std::vector<std::int32_t>& uppers) {
  std::vector<CutPiece> pieces;
  if (t.is_bare()) {
    if (!uppers.empty()) throw Error("cut: vertex id out of range");
    pieces.push_back(CutPiece{t, {1}, {}, -1, -1});
    return pieces;
  }
  std::vector<char> cut(t.vertex_count(), 0);
  for (std::int32_t u : uppers) {
    if (u < 0 || u >= t.vertex_count()) throw Error("cut: vertex id out of range");
    if (u == t.root()) throw Error("cut: root has no outgoing edge");
    cut[u] = 1;
  }

  struct Todo {
    std::int32_t piece_root;
    std::int32_t piece_index;
    std::int32_t parent_piece;
  };
  std::vector<Todo> queue{{t.root(), 0, -1}};
  std::int32_t next_piece = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    Todo todo = queue[qi];
    std::vector<std::int32_t> vmap;         // local id -> original id
    std::vector<std::vector<Slot>> slots;   // local slot lists
    std::vector<std::int32_t> origin;
    int next_leaf = 0;
    auto walk = [&](auto&& self, std::int32_t v) -> std::int32_t {
      std::int32_t local = static_cast<std::int32_t>(vmap.size());
      vmap.push_back(v);
      slots.emplace_back();
      for (const Slot& s : t.slots(v)) {
        // slots vector may reallocate during recursion; index it lazily
        if (s.is_leaf()) {
          origin.push_back(s.leaf_number());
          slots[local].push_back(Slot::leaf(++next_leaf));
        } else if (cut[s.vertex()]) {
          std::int32_t p = next_piece++;
          queue.push_back({s.vertex(), p, todo.piece_index});
          origin.push_back(-(p + 1));
          slots[local].push_back(Slot::leaf(++next_leaf));
        } else {
          std::int32_t c = self(self, s.vertex());
          slots[local].push_back(Slot::child(c));
        }
      }
      return local;
    };
    walk(walk, todo.piece_root);
    CutPiece piece;
    piece.tree = RTree::build(std::move(slots), 0, next_leaf);
    piece.slot_origin = std::move(origin);
    piece.vertex_map = std::move(vmap);
    piece.parent_piece = todo.parent_piece;
    piece.attach_upper = todo.parent_piece < 0 ? -1 : todo.piece_root;
    pieces.push_back(std::move(piece));
  }
  return pieces;
}

}  // namespace opf::trees
