#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "opf/perm.hpp"

namespace opf::ops {

// An element of a finite operad: component arity plus index into that
// component's table.
struct Elem {
  std::int16_t arity = 0;
  std::int32_t index = 0;
  friend auto operator<=>(const Elem&, const Elem&) = default;
};

// A finite symmetric operad (possibly truncated) given by explicit tables:
// partial compositions o_i, right symmetric-group actions, a unit, and a
// name per element. Tables cover every composition whose result fits the
// stored arity range; a truncation bound additionally restricts which
// compositions exist at all.
class FiniteOperad : public std::enable_shared_from_this<FiniteOperad> {
 public:
  struct Recipe {
    std::string label;
    nlohmann::ordered_json spec;  // how to rebuild this operad, for file IO
    int rmax = 0;
    std::optional<int> truncation;
    std::vector<std::vector<std::string>> names;  // [arity][index]
    Elem unit{1, 0};
    // compose(m, i, p, n, q) -> index of the composite in component m+n-1
    std::function<std::int32_t(int, int, std::int32_t, int, std::int32_t)>
        compose;
    // act(r, sigma, p) -> index of p . sigma in component r
    std::function<std::int32_t(int, const Perm&, std::int32_t)> act;
  };
  static std::shared_ptr<const FiniteOperad> build(Recipe recipe);

  const std::string& label() const { return label_; }
  const nlohmann::ordered_json& spec() const { return spec_; }
  int max_arity() const { return rmax_; }
  std::optional<int> truncation() const { return truncation_; }
  int size(int r) const;
  std::int64_t total_size() const;
  const std::string& name(Elem e) const;
  std::optional<Elem> find(int r, std::string_view name) const;
  Elem unit() const { return unit_; }
  bool is_unitary() const { return size(0) == 1; }
  Elem nought() const;  // the unique arity-0 element of a unitary operad

  // True iff o_i : P(m) x P(n) -> P(m+n-1) exists. For truncated operads
  // this is the bound m+n-1 <= k (n > 0) resp. m <= k (n = 0); otherwise it
  // only requires the result component to be stored.
  bool compose_defined(int m, int n) const;
  Elem compose(Elem p, int i, Elem q) const;
  Elem act(Elem p, const Perm& sigma) const;

 private:
  std::string label_;
  nlohmann::ordered_json spec_;
  int rmax_ = 0;
  std::optional<int> truncation_;
  std::vector<std::vector<std::string>> names_;
  std::vector<std::unordered_map<std::string, std::int32_t>> index_;
  Elem unit_{1, 0};
  // comp_[m][i-1][n]: flat table p * size(n) + q, empty when undefined
  std::vector<std::vector<std::vector<std::vector<std::int32_t>>>> comp_;
  // act_[r]: flat table sigma.rank() * size(r) + p
  std::vector<std::vector<std::int32_t>> act_;
};

using OperadPtr = std::shared_ptr<const FiniteOperad>;

// ---- fixture constructions ----

// One element in every arity 0..rmax; everything composes to the point.
OperadPtr point_operad(int rmax);

// Projections and constant maps on the set {a, b}: component r holds the r
// projections pi1..pir plus the constants ka, kb (named a, b in arity 0).
// Composition is function composition. Its unitarization glues ka to kb.
OperadPtr selector_operad(int rmax);
// Designated arity-1 pair that unitarization must identify.
std::pair<Elem, Elem> selector_constants();

// ---- constructions on operads ----

struct ProductOperad {
  OperadPtr op;
  OperadPtr left, right;
  Elem pair(Elem a, Elem b) const;
  std::pair<Elem, Elem> split(Elem e) const;
};
ProductOperad product(const OperadPtr& a, const OperadPtr& b);

OperadPtr truncate(const OperadPtr& p, int k);

struct Unitarization {
  OperadPtr op;
  OperadPtr source;
  // class_of[r][index] = index in the quotient component
  std::vector<std::vector<std::int32_t>> class_of;
  Elem apply(Elem e) const;
};
// Universal quotient collapsing component 0 to a point, closed under
// composition and the symmetric action (congruence closure by fixpoint).
Unitarization unitarize(const OperadPtr& p);

// Restriction along an injection u: {1..m} -> {1..n}, u[j-1] = u(j):
// kill the inputs missing from the image with the arity-0 element, then
// reorder by the induced permutation. Requires a unitary operad.
Elem restriction(const FiniteOperad& p, const std::vector<int>& u, Elem e);

// ---- law checking ----

struct AxiomViolation {
  std::string law;
  std::string detail;
};

struct AxiomReport {
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::vector<AxiomViolation> sample;  // first few violations
  bool pass() const { return failures == 0; }
};

// Exhaustive unit, associativity (nested and disjoint), equivariance and
// action-group laws over every stored table. Parallelizes over blocks.
AxiomReport check_axioms(const FiniteOperad& p, bool parallel = false);

struct Morphism {
  OperadPtr dom, cod;
  std::vector<std::vector<std::int32_t>> map;  // [arity][index]
  Elem apply(Elem e) const;
};
// Unit, composition and action compatibility; returns violation strings.
std::vector<std::string> check_morphism(const Morphism& f);

}  // namespace opf::ops
