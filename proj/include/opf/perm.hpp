#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace opf {

// A permutation of {1..n}, stored as the image sequence. Arities in this
// library stay below 7, so uint8 images are plenty.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<std::uint8_t> images);

  static Perm identity(int n);
  static Perm transposition(int n, int a, int b);

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i - 1]; }

  // (a.compose(b))(i) = a(b(i)).
  Perm compose(const Perm& inner) const;
  Perm inverse() const;
  bool is_identity() const;

  // Lexicographic rank among all n! image sequences; inverse of unrank.
  int rank() const;
  static Perm unrank(int n, int rank);
  static std::vector<Perm> all(int n);
  static std::int64_t factorial(int n);

  std::string str() const;  // "[2 1 3]"

  friend bool operator==(const Perm&, const Perm&) = default;

 private:
  std::vector<std::uint8_t> img_;
};

// Block relabelings underlying operadic equivariance. With the right action
// (p . sigma)(input s) = p(input sigma(s)):
//   (p . sigma) o_i q      = (p o_{sigma(i)} q) . outer_block(sigma, i, n)
//   p o_i (q . tau)        = (p o_i q) . inner_block(m, i, tau)
// where m, n are the arities of p, q.
Perm outer_block(const Perm& sigma, int i, int n);
Perm inner_block(int m, int i, const Perm& tau);

}  // namespace opf
