#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "opf/operad.hpp"
#include "opf/rational.hpp"
#include "opf/wconstruction.hpp"

namespace opf::homo {

// A time parameter in [0, inf]. "inf" leaves every height unclamped.
struct Time {
  bool inf = false;
  Rational value;

  static Time infinite() { return Time{true, Rational(0)}; }
  static Time at(Rational v);
  static Time parse(std::string_view text);
  std::string str() const;
  friend bool operator==(const Time&, const Time&) = default;
};

// Flow on the unit-free variants: clamp every vertex height to min(h, t)
// and normalize. rho(0, .) is eta after epsilon; rho(t, .) is the identity
// once t reaches the maximal height; rho(s, rho(t, .)) = rho(min(s,t), .).
wcons::WElement rho(const Time& t, const wcons::WElement& w);

// The naive flow clamping each edge length independently (any variant,
// result left raw). It fails to respect the leafless-subtree reduction.
wcons::WElement classical_rho(const Time& t, const wcons::WElement& w);

// Seven deterministic probe times for a pair of presentations: 0 and
// infinity, height breakpoints of both with midpoints, one value past the
// maximum, padded from a fixed grid.
std::vector<Time> time_samples(const wcons::WElement& a,
                               const wcons::WElement& b);

// Whether rho lands in one class on two presentations of the same element.
bool relation_compatible(const Time& t, const wcons::WElement& a,
                         const wcons::WElement& b);

struct TauWitness {
  bool found = false;
  wcons::WElement a, b;
  Time t;
  std::string detail;
};

// Deterministic search over raw pairs (a, normalize(a)) with at most
// max_vertices vertices, vertex arities <= 2 and lengths in {0, 1/2, 1},
// for one where classical_rho separates the classes at some probe time
// while rho keeps them equal at every probe time.
TauWitness find_tau_counterexample(ops::OperadPtr ops, wcons::Variant variant,
                                   int max_vertices);

struct TwoStepTrace {
  bool ok = false;
  std::vector<wcons::WElement> states;
  std::string detail;
};

// Deformation of a level-k element onto eta(epsilon(w)) through states that
// all stay level-k valid: first every maximal leafless proper subtree is
// lowered onto its attachment vertex, then the whole tree is lowered onto
// the root.
TwoStepTrace two_step_truncated_retraction(const wcons::WElement& w, int k);

}  // namespace opf::homo
