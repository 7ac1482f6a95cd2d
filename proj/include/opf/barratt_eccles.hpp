#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "opf/operad.hpp"
#include "opf/perm.hpp"

namespace opf::be {

// A word e^{eps_0} x_{sigma(1)} e^{eps_1} ... x_{sigma(r)} e^{eps_r} in
// normal form: each separator exponent is 0 or 1 (adjacent e-factors merge by
// e^a e^b = e^{a|b}, with e^0 the empty factor). Arity 0 is the single word
// e. Composition substitutes a word for a variable and renormalizes.
struct Monomial {
  Perm sigma;                     // word position -> variable number
  std::vector<std::uint8_t> eps;  // r+1 separator exponents

  int arity() const { return sigma.size(); }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial unit_monomial();  // x1
Monomial e_monomial();     // the arity-0 word
Monomial make_monomial(Perm sigma, std::vector<std::uint8_t> eps);

// Compact form omits e^0 and prints e for e^1 ("e x2 x1 e"); the full form
// spells every separator ("e^1 x2 e^0 x1 e^1"). parse accepts both.
std::string format_monomial(const Monomial& m, bool compact = true);
Monomial parse_monomial(std::string_view text);

Monomial compose_monomial(const Monomial& p, int i, const Monomial& q);
Monomial act_monomial(const Monomial& p, const Perm& tau);
bool is_nonunital(const Monomial& m);  // anything but the unit x1

std::int64_t monomial_count(int r);  // 1 for r=0, else r! * 2^(r+1)
std::vector<Monomial> enumerate_monomials(int r);
std::int32_t monomial_index(const Monomial& m);
Monomial monomial_at(int r, std::int32_t index);

// A simplex of the simplicial-set level: an (n+1)-tuple of same-arity words
// (the nerve of an indiscrete category needs nothing more than the tuple).
struct NerveSimplex {
  std::vector<Monomial> comps;

  int dim() const { return static_cast<int>(comps.size()) - 1; }
  int arity() const { return comps.empty() ? -1 : comps[0].arity(); }
  friend bool operator==(const NerveSimplex&, const NerveSimplex&) = default;
};

NerveSimplex make_simplex(std::vector<Monomial> comps);
std::string format_simplex(const NerveSimplex& s);
NerveSimplex parse_simplex(std::string_view text);

NerveSimplex face(const NerveSimplex& s, int i);        // drop component i
NerveSimplex degeneracy(const NerveSimplex& s, int i);  // repeat component i
// Componentwise in each simplicial degree; dimensions must agree.
NerveSimplex compose_simplex(const NerveSimplex& p, int i,
                             const NerveSimplex& q);
NerveSimplex act_simplex(const NerveSimplex& s, const Perm& tau);
bool is_nonunital(const NerveSimplex& s);  // no component equals x1

// Table-backed operads over these elements.
ops::OperadPtr obm_operad(int rmax);
ops::OperadPtr nerve_operad(int rmax, int dim);

}  // namespace opf::be
