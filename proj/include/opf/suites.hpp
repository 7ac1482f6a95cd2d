#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace opf::suites {

using json = nlohmann::ordered_json;

struct Options {
  std::uint64_t seed = 0;
  bool parallel = true;
  int samples = 0;  // 0 = per-suite default; otherwise scales the main loop
};

struct SuiteReport {
  std::string suite;
  bool pass = false;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  double seconds = 0.0;
  json params = json::object();
  json details = json::object();
  std::vector<std::string> witnesses;

  // seconds is deliberately left out so reports are reproducible byte for
  // byte across serial and parallel runs.
  json to_json() const;
  std::string summary() const;
};

// Operad laws on the built-in fixtures, plus the unitarization quotient
// (projection morphism, idempotence, designated collapses).
SuiteReport run_axioms(const Options& opt);
// Closure of the non-unit part under composition and the group action,
// exhaustive on words of arity <= 3 and sampled at simplex level, with the
// unit-factorization property.
SuiteReport run_lemma1(const Options& opt);
// Normal forms have no unit-labeled vertices and embed into the unit-free
// variant; section/augmentation identities and the augmentation being a
// morphism.
SuiteReport run_lemma2(const Options& opt);
// Rewrite order independence: randomized strategies land on bit-identical
// canonical forms for every variant.
SuiteReport run_confluence(const Options& opt);
// Height flow: coordinate round-trips, endpoint laws, the semigroup law,
// compatibility with the identification relations, and the pinned
// six-vertex example.
SuiteReport run_homotopy(const Options& opt);
// Truncation guards, contraction-order independence of evaluation, and the
// two-step retraction staying inside the level-k space.
SuiteReport run_truncated(const Options& opt);
// The naive per-edge flow breaks the leafless-subtree identification; the
// height flow does not. Finds and re-verifies a small witness.
SuiteReport run_tau(const Options& opt);

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const Options& opt);

}  // namespace opf::suites
