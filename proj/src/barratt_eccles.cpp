#include "opf/barratt_eccles.hpp"

#include <charconv>
#include <sstream>

#include "opf/errors.hpp"

namespace opf::be {

Monomial unit_monomial() {
  return Monomial{Perm::identity(1), {0, 0}};
}

Monomial e_monomial() {
  return Monomial{Perm::identity(0), {1}};
}

Monomial make_monomial(Perm sigma, std::vector<std::uint8_t> eps) {
  int r = sigma.size();
  if (static_cast<int>(eps.size()) != r + 1) {
    throw Error("monomial: need r+1 separator exponents");
  }
  for (auto e : eps) {
    if (e > 1) throw Error("monomial: exponents are 0 or 1");
  }
  if (r == 0 && eps[0] != 1) {
    throw Error("monomial: the arity-0 component is the single word e");
  }
  return Monomial{std::move(sigma), std::move(eps)};
}

std::string format_monomial(const Monomial& m, bool compact) {
  int r = m.arity();
  if (r == 0) return compact ? "e" : "e^1";
  std::string out;
  auto sep = [&](int j) {
    if (compact) {
      if (m.eps[j]) {
        if (!out.empty()) out += ' ';
        out += 'e';
      }
    } else {
      if (!out.empty()) out += ' ';
      out += m.eps[j] ? "e^1" : "e^0";
    }
  };
  for (int pos = 1; pos <= r; ++pos) {
    sep(pos - 1);
    if (!out.empty()) out += ' ';
    out += 'x' + std::to_string(m.sigma(pos));
  }
  sep(r);
  return out;
}

Monomial parse_monomial(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tok;
  std::vector<std::uint8_t> eps{0};
  std::vector<std::uint8_t> vars;
  while (in >> tok) {
    if (tok == "e" || tok == "e^1") {
      eps.back() = 1;
    } else if (tok == "e^0") {
      // empty factor, nothing to record
    } else if (tok.size() >= 2 && tok[0] == 'x') {
      int v = 0;
      auto [p, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), v);
      if (ec != std::errc() || p != tok.data() + tok.size() || v < 1) {
        throw ParseError("bad variable token '" + tok + "'");
      }
      vars.push_back(static_cast<std::uint8_t>(v));
      eps.push_back(0);
    } else {
      throw ParseError("bad monomial token '" + tok + "'");
    }
  }
  if (vars.empty()) {
    if (eps[0] != 1) throw ParseError("empty monomial");
    return e_monomial();
  }
  Perm sigma;
  try {
    sigma = Perm(std::move(vars));
  } catch (const Error&) {
    throw ParseError("monomial variables must be x1..xr, each once");
  }
  return Monomial{std::move(sigma), std::move(eps)};
}

Monomial compose_monomial(const Monomial& p, int i, const Monomial& q) {
  int m = p.arity();
  int n = q.arity();
  if (i < 1 || i > m) throw Error("compose_monomial: slot out of range");
  int pos = p.sigma.inverse()(i);

  auto renumber = [&](int v) { return v < i ? v : v + n - 1; };
  std::vector<std::uint8_t> word;
  std::vector<std::uint8_t> eps;
  word.reserve(m + n - 1);
  eps.reserve(m + n);
  for (int s = 1; s < pos; ++s) {
    eps.push_back(p.eps[s - 1]);
    word.push_back(static_cast<std::uint8_t>(renumber(p.sigma(s))));
  }
  if (n >= 1) {
    eps.push_back(p.eps[pos - 1] | q.eps[0]);
    word.push_back(static_cast<std::uint8_t>(i - 1 + q.sigma(1)));
    for (int s = 2; s <= n; ++s) {
      eps.push_back(q.eps[s - 1]);
      word.push_back(static_cast<std::uint8_t>(i - 1 + q.sigma(s)));
    }
    eps.push_back(q.eps[n] | p.eps[pos]);
  } else {
    // substituting e erases the variable; the surviving separator is e^1
    eps.push_back(1);
  }
  for (int s = pos + 1; s <= m; ++s) {
    word.push_back(static_cast<std::uint8_t>(renumber(p.sigma(s))));
    eps.push_back(p.eps[s]);
  }
  if (word.empty()) return e_monomial();
  return Monomial{Perm(std::move(word)), std::move(eps)};
}

Monomial act_monomial(const Monomial& p, const Perm& tau) {
  if (tau.size() != p.arity()) throw Error("act_monomial: arity mismatch");
  return Monomial{tau.inverse().compose(p.sigma), p.eps};
}

bool is_nonunital(const Monomial& m) { return m != unit_monomial(); }

std::int64_t monomial_count(int r) {
  if (r == 0) return 1;
  return Perm::factorial(r) << (r + 1);
}

std::int32_t monomial_index(const Monomial& m) {
  int r = m.arity();
  if (r == 0) return 0;
  std::int32_t bits = 0;
  for (int j = 0; j <= r; ++j) bits |= m.eps[j] << j;
  return static_cast<std::int32_t>(m.sigma.rank() << (r + 1)) + bits;
}

Monomial monomial_at(int r, std::int32_t index) {
  if (index < 0 || index >= monomial_count(r)) {
    throw Error("monomial index out of range");
  }
  if (r == 0) return e_monomial();
  std::int32_t mask = (1 << (r + 1)) - 1;
  std::int32_t bits = index & mask;
  Perm sigma = Perm::unrank(r, index >> (r + 1));
  std::vector<std::uint8_t> eps(r + 1);
  for (int j = 0; j <= r; ++j) eps[j] = (bits >> j) & 1;
  return Monomial{std::move(sigma), std::move(eps)};
}

std::vector<Monomial> enumerate_monomials(int r) {
  std::vector<Monomial> out;
  out.reserve(monomial_count(r));
  for (std::int32_t i = 0; i < monomial_count(r); ++i) {
    out.push_back(monomial_at(r, i));
  }
  return out;
}

// ---- simplices ----

NerveSimplex make_simplex(std::vector<Monomial> comps) {
  if (comps.empty()) throw Error("simplex: need at least one component");
  for (const auto& c : comps) {
    if (c.arity() != comps[0].arity()) {
      throw Error("simplex: components must share one arity");
    }
  }
  return NerveSimplex{std::move(comps)};
}

std::string format_simplex(const NerveSimplex& s) {
  std::string out;
  for (size_t j = 0; j < s.comps.size(); ++j) {
    if (j) out += " | ";
    out += format_monomial(s.comps[j]);
  }
  return out;
}

NerveSimplex parse_simplex(std::string_view text) {
  std::vector<Monomial> comps;
  size_t start = 0;
  while (true) {
    size_t bar = text.find('|', start);
    auto piece = bar == std::string_view::npos
                     ? text.substr(start)
                     : text.substr(start, bar - start);
    comps.push_back(parse_monomial(piece));
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return make_simplex(std::move(comps));
}

NerveSimplex face(const NerveSimplex& s, int i) {
  if (s.dim() < 1 || i < 0 || i > s.dim()) throw Error("face out of range");
  NerveSimplex out = s;
  out.comps.erase(out.comps.begin() + i);
  return out;
}

NerveSimplex degeneracy(const NerveSimplex& s, int i) {
  if (i < 0 || i > s.dim()) throw Error("degeneracy out of range");
  NerveSimplex out = s;
  out.comps.insert(out.comps.begin() + i, s.comps[i]);
  return out;
}

NerveSimplex compose_simplex(const NerveSimplex& p, int i,
                             const NerveSimplex& q) {
  if (p.dim() != q.dim()) throw Error("compose_simplex: dimension mismatch");
  std::vector<Monomial> comps;
  comps.reserve(p.comps.size());
  for (size_t j = 0; j < p.comps.size(); ++j) {
    comps.push_back(compose_monomial(p.comps[j], i, q.comps[j]));
  }
  return NerveSimplex{std::move(comps)};
}

NerveSimplex act_simplex(const NerveSimplex& s, const Perm& tau) {
  std::vector<Monomial> comps;
  comps.reserve(s.comps.size());
  for (const auto& c : s.comps) comps.push_back(act_monomial(c, tau));
  return NerveSimplex{std::move(comps)};
}

bool is_nonunital(const NerveSimplex& s) {
  for (const auto& c : s.comps) {
    if (!is_nonunital(c)) return false;
  }
  return true;
}

// ---- table-backed operads ----

ops::OperadPtr obm_operad(int rmax) {
  if (rmax < 1 || rmax > 5) throw Error("obm_operad: rmax must be 1..5");
  ops::FiniteOperad::Recipe rec;
  rec.label = "ObM<=" + std::to_string(rmax);
  rec.spec = {{"kind", "obm"}, {"rmax", rmax}};
  rec.rmax = rmax;
  rec.names.resize(rmax + 1);
  for (int r = 0; r <= rmax; ++r) {
    for (const auto& m : enumerate_monomials(r)) {
      rec.names[r].push_back(format_monomial(m));
    }
  }
  rec.unit = ops::Elem{1, monomial_index(unit_monomial())};
  rec.compose = [](int m, int i, std::int32_t p, int n, std::int32_t q) {
    return monomial_index(compose_monomial(monomial_at(m, p), i,
                                           monomial_at(n, q)));
  };
  rec.act = [](int r, const Perm& s, std::int32_t p) {
    return monomial_index(act_monomial(monomial_at(r, p), s));
  };
  return ops::FiniteOperad::build(std::move(rec));
}

namespace {

std::int64_t power(std::int64_t base, int e) {
  std::int64_t v = 1;
  while (e-- > 0) v *= base;
  return v;
}

}  // namespace

ops::OperadPtr nerve_operad(int rmax, int dim) {
  if (rmax < 1 || dim < 0) throw Error("nerve_operad: bad parameters");
  std::int64_t worst = power(monomial_count(rmax), dim + 1);
  if (worst > 20000) {
    throw Error("nerve_operad: component too large; lower rmax or dim");
  }
  auto decode = [dim](int r, std::int32_t idx) {
    std::vector<Monomial> comps;
    std::int64_t base = monomial_count(r);
    for (int j = 0; j <= dim; ++j) {
      comps.push_back(monomial_at(r, static_cast<std::int32_t>(idx % base)));
      idx = static_cast<std::int32_t>(idx / base);
    }
    return NerveSimplex{std::move(comps)};
  };
  auto encode = [dim](const NerveSimplex& s) {
    std::int64_t base = monomial_count(s.arity());
    std::int64_t idx = 0;
    for (int j = dim; j >= 0; --j) idx = idx * base + monomial_index(s.comps[j]);
    return static_cast<std::int32_t>(idx);
  };

  ops::FiniteOperad::Recipe rec;
  rec.label = "Nerve(dim " + std::to_string(dim) + ")<=" + std::to_string(rmax);
  rec.spec = {{"kind", "nerve"}, {"rmax", rmax}, {"dim", dim}};
  rec.rmax = rmax;
  rec.names.resize(rmax + 1);
  for (int r = 0; r <= rmax; ++r) {
    std::int64_t count = power(monomial_count(r), dim + 1);
    for (std::int32_t i = 0; i < count; ++i) {
      rec.names[r].push_back(format_simplex(decode(r, i)));
    }
  }
  {
    std::vector<Monomial> comps(dim + 1, unit_monomial());
    rec.unit = ops::Elem{1, encode(NerveSimplex{std::move(comps)})};
  }
  rec.compose = [decode, encode](int m, int i, std::int32_t p, int n,
                                 std::int32_t q) {
    return encode(compose_simplex(decode(m, p), i, decode(n, q)));
  };
  rec.act = [decode, encode](int r, const Perm& s, std::int32_t p) {
    return encode(act_simplex(decode(r, p), s));
  };
  return ops::FiniteOperad::build(std::move(rec));
}

}  // namespace opf::be
