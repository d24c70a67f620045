#pragma once

#include <numeric>
#include <vector>

#include "mechlin/matrix.hpp"

namespace mechlin {

/// Row (or column) permutation as an index list: position i holds original
/// index perm[i], so (PA)(i, :) = A(perm[i], :).
using Permutation = std::vector<std::size_t>;

inline Permutation identity_permutation(std::size_t n) {
  Permutation p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

/// +1 for even, -1 for odd permutations.
inline int permutation_sign(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

template <Ring S>
Matrix<S> permute_rows(const Matrix<S>& a, const Permutation& p) {
  Matrix<S> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(p[i], j);
  return out;
}

template <Ring S>
Matrix<S> permute_cols(const Matrix<S>& a, const Permutation& p) {
  Matrix<S> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, p[j]);
  return out;
}

/// The permutation matrix P with P*A == permute_rows(A, p).
template <Ring S>
Matrix<S> permutation_matrix(const Permutation& p) {
  Matrix<S> m(p.size(), p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m(i, p[i]) = S(1);
  return m;
}

}  // namespace mechlin
