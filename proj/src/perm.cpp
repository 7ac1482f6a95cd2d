#include "opf/perm.hpp"

#include <algorithm>
#include <cassert>

#include "opf/errors.hpp"

namespace opf {

Perm::Perm(std::vector<std::uint8_t> images) : img_(std::move(images)) {
  std::vector<bool> seen(img_.size(), false);
  for (auto v : img_) {
    if (v < 1 || v > img_.size() || seen[v - 1]) {
      throw Error("not a permutation");
    }
    seen[v - 1] = true;
  }
}

Perm Perm::identity(int n) {
  std::vector<std::uint8_t> img(n);
  for (int i = 0; i < n; ++i) img[i] = static_cast<std::uint8_t>(i + 1);
  Perm p;
  p.img_ = std::move(img);
  return p;
}

Perm Perm::transposition(int n, int a, int b) {
  Perm p = identity(n);
  std::swap(p.img_[a - 1], p.img_[b - 1]);
  return p;
}

Perm Perm::compose(const Perm& inner) const {
  assert(size() == inner.size());
  Perm r;
  r.img_.resize(img_.size());
  for (int i = 1; i <= size(); ++i) {
    r.img_[i - 1] = static_cast<std::uint8_t>((*this)(inner(i)));
  }
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.img_.resize(img_.size());
  for (int i = 1; i <= size(); ++i) {
    r.img_[(*this)(i)-1] = static_cast<std::uint8_t>(i);
  }
  return r;
}

bool Perm::is_identity() const {
  for (int i = 1; i <= size(); ++i) {
    if ((*this)(i) != i) return false;
  }
  return true;
}

std::int64_t Perm::factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

int Perm::rank() const {
  // Lehmer code evaluated in the factorial number system.
  int n = size();
  int r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) {
      if (img_[j] < img_[i]) ++smaller;
    }
    r += smaller * static_cast<int>(factorial(n - 1 - i));
  }
  return r;
}

Perm Perm::unrank(int n, int rank) {
  std::vector<std::uint8_t> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = static_cast<std::uint8_t>(i + 1);
  std::vector<std::uint8_t> img;
  img.reserve(n);
  for (int i = n - 1; i >= 0; --i) {
    int f = static_cast<int>(factorial(i));
    int idx = rank / f;
    rank %= f;
    img.push_back(pool[idx]);
    pool.erase(pool.begin() + idx);
  }
  Perm p;
  p.img_ = std::move(img);
  return p;
}

std::vector<Perm> Perm::all(int n) {
  std::vector<Perm> out;
  out.reserve(factorial(n));
  for (int r = 0; r < factorial(n); ++r) out.push_back(unrank(n, r));
  return out;
}

std::string Perm::str() const {
  std::string s = "[";
  for (int i = 1; i <= size(); ++i) {
    if (i > 1) s += ' ';
    s += std::to_string((*this)(i));
  }
  return s + "]";
}

Perm outer_block(const Perm& sigma, int i, int n) {
  int m = sigma.size();
  std::vector<std::uint8_t> img(m + n - 1);
  int si = sigma(i);
  for (int s = 1; s <= m + n - 1; ++s) {
    int v;
    if (s >= i && s <= i + n - 1) {
      v = si + (s - i);
    } else {
      int a = s < i ? s : s - n + 1;
      int x = sigma(a);
      v = x < si ? x : x + n - 1;
    }
    img[s - 1] = static_cast<std::uint8_t>(v);
  }
  return Perm(std::move(img));
}

Perm inner_block(int m, int i, const Perm& tau) {
  int n = tau.size();
  std::vector<std::uint8_t> img(m + n - 1);
  for (int s = 1; s <= m + n - 1; ++s) {
    int v = s;
    if (n > 0 && s >= i && s <= i + n - 1) {
      v = i - 1 + tau(s - i + 1);
    }
    img[s - 1] = static_cast<std::uint8_t>(v);
  }
  return Perm(std::move(img));
}

}  // namespace opf
