#pragma once

#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "opf/operad.hpp"
#include "opf/rational.hpp"
#include "opf/rtree.hpp"
#include "opf/tree_term.hpp"

namespace opf::wcons {

// W: unit-labeled vertices are removed (lengths merge by max).
// WPrime: labels are taken unit-free, no unit rule.
// TauW / TauWPrime: additionally reduce leafless subtrees hanging on
// length-1 edges to the distinguished arity-0 label (needs a unitary operad).
enum class Variant { W, WPrime, TauW, TauWPrime };

bool unit_rule_active(Variant v);
bool tau_rule_active(Variant v);
const char* variant_name(Variant v);
Variant parse_variant(std::string_view text);

// A tree with operad labels on vertices and a rational length in [0,1] on
// every inner edge (stored on the edge's upper vertex; the root entry must
// be 0). Raw elements are arbitrary representatives; normalize computes the
// unique reduced representative of the class.
struct WElement {
  trees::RTree shape;
  std::vector<ops::Elem> labels;
  std::vector<Rational> lengths;
  ops::OperadPtr ops;
  Variant variant = Variant::W;
  std::optional<int> bound;

  int arity() const { return shape.arity(); }
};

void validate_raw(const WElement& w);

// Section of the augmentation: a single vertex, every edge a leaf.
WElement eta(ops::OperadPtr P, ops::Elem p, Variant v,
             std::optional<int> bound = {});
// Augmentation: forget lengths and evaluate the tree in the label operad.
ops::Elem epsilon(const WElement& w);

struct Rewrite {
  enum Kind { Contract, Unit, Tau } kind;
  std::int32_t vertex;
};
std::vector<Rewrite> applicable_rewrites(const WElement& w);
WElement apply_rewrite(const WElement& w, const Rewrite& rw);

// Exhaustive rewriting (each step drops one vertex, so it terminates),
// followed by the canonical form. The randomized variant picks applicable
// rewrites in rng order and must land on the same result.
WElement normalize(const WElement& w);
WElement normalize_randomized(const WElement& w, std::mt19937_64& rng);
bool is_normal(const WElement& w);
WElement canonical(const WElement& w);
bool same_element(const WElement& a, const WElement& b);
WElement leaf_relabel(const WElement& w, const Perm& sigma);

// Operadic composition: graft with a length-1 junction edge, then normalize.
WElement w_compose(const WElement& a, int i, const WElement& b);

// Quasi-free structure: cutting every interior length-1 edge of a normal
// form exhibits it as a composite of generators (normal elements with no
// interior length-1 edge).
bool is_generator(const WElement& w);

struct Factor {
  WElement element;
  // For factor leaf j: positive = leaf of the whole element, negative
  // -(p+1) = plug factor p in.
  std::vector<std::int32_t> slot_refs;
};
struct Factorization {
  std::vector<Factor> factors;  // factor 0 carries the root
};
Factorization decompose(const WElement& w);
WElement recompose(const Factorization& f);

// Height coordinates: the root sits at 0 and each vertex at its parent's
// height plus the connecting edge length. Only the unit-free variants admit
// the coordinate change (unit removal does not preserve heights).
struct HeightedElement {
  trees::RTree shape;
  std::vector<ops::Elem> labels;
  std::vector<Rational> heights;
  ops::OperadPtr ops;
  Variant variant = Variant::WPrime;
  std::optional<int> bound;
};
HeightedElement to_heights(const WElement& w);
WElement from_heights(const HeightedElement& h);
std::vector<Rational> vertex_heights(const WElement& w);
Rational max_height(const WElement& w);

struct TruncationReport {
  bool ok = true;
  int total_arity = 0;
  // Largest ingoing-edge count over connected subgraphs inside components
  // delimited by length-1 edges.
  int worst = 0;
  std::string detail;
};
TruncationReport validate_truncated(const WElement& w, int k);

}  // namespace opf::wcons
