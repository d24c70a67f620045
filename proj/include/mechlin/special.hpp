#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mechlin/determinants.hpp"

namespace mechlin {

enum class MatrixKind {
  circulant,
  toeplitz,
  hankel,
  banded,
  checkerboard,
  anti_tridiagonal,
  spd_random,
  unimodular_random,
  gallery3
};

inline constexpr std::array<std::string_view, 9> kMatrixKindNames{
    "circulant", "toeplitz", "hankel", "banded", "checkerboard", "anti_tridiagonal",
    "spd_random", "unimodular_random", "gallery3"};

inline std::string_view kind_name(MatrixKind k) { return kMatrixKindNames[static_cast<std::size_t>(k)]; }

inline MatrixKind parse_kind(std::string_view s) {
  for (std::size_t i = 0; i < kMatrixKindNames.size(); ++i)
    if (kMatrixKindNames[i] == s) return static_cast<MatrixKind>(i);
  throw Error(ErrorCode::InvalidArgument, "unknown matrix kind '" + std::string(s) + "'", {{"kind", std::string(s)}});
}

/// What to generate. Unset optional data is drawn from the seeded stream.
struct GeneratorSpec {
  MatrixKind kind = MatrixKind::circulant;
  std::size_t size = 3;
  std::uint64_t seed = 0;
  std::vector<Rational> first_row;  // circulant, toeplitz
  std::vector<Rational> first_col;  // toeplitz, hankel
  std::vector<Rational> last_row;   // hankel
  std::size_t lower = 1;            // banded
  std::size_t upper = 1;
  std::int64_t lo = -5;  // entry range for random data
  std::int64_t hi = 5;
  std::size_t ops = 0;          // unimodular_random: 0 means 3 * size
  std::int64_t multiplier = 2;  // unimodular_random: |row multiple| <= multiplier
};

/// mt19937_64 with a per-kind stream and a portable unbiased integer draw
/// (std::uniform_int_distribution differs between standard libraries).
class SeededStream {
 public:
  SeededStream(std::uint64_t seed, std::uint64_t stream) : eng_(seed ^ (stream * 0x9E3779B97F4A7C15ULL)) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(eng_());
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % range);
  }

  std::int64_t nonzero(std::int64_t lo, std::int64_t hi) {
    for (;;) {
      auto v = uniform(lo, hi);
      if (v != 0) return v;
    }
  }

 private:
  std::mt19937_64 eng_;
};

inline Matrix<Rational> gallery3() { return Matrix<Rational>{{-149, -50, -154}, {537, 180, 546}, {-27, -9, -25}}; }

namespace detail {

inline void require_length(const std::vector<Rational>& v, std::size_t n, const char* what) {
  if (!v.empty() && v.size() != n)
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must have " + std::to_string(n) + " entries",
                {{"got", std::to_string(v.size())}});
}

inline std::vector<Rational> or_random(const std::vector<Rational>& given, std::size_t n, SeededStream& rng,
                                       const GeneratorSpec& s) {
  if (!given.empty()) return given;
  std::vector<Rational> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(rng.uniform(s.lo, s.hi));
  return v;
}

}  // namespace detail

inline Matrix<Rational> generate(const GeneratorSpec& s) {
  const std::size_t n = s.size;
  if (s.kind == MatrixKind::gallery3) {
    if (n != 3) throw Error(ErrorCode::InvalidArgument, "gallery3 is 3x3", {{"size", std::to_string(n)}});
    return gallery3();
  }
  if (n < 1 || n > 64) throw Error(ErrorCode::InvalidArgument, "size must be in 1..64", {{"size", std::to_string(n)}});
  if (s.lo > s.hi) throw Error(ErrorCode::InvalidArgument, "empty entry range", {{"lo", std::to_string(s.lo)}, {"hi", std::to_string(s.hi)}});
  const bool needs_nonzero = s.kind == MatrixKind::checkerboard || s.kind == MatrixKind::anti_tridiagonal;
  if (needs_nonzero && s.lo == 0 && s.hi == 0)
    throw Error(ErrorCode::InvalidArgument, "entry range has no nonzero values");
  SeededStream rng(s.seed, static_cast<std::uint64_t>(s.kind));
  Matrix<Rational> a(n, n);
  switch (s.kind) {
    case MatrixKind::circulant: {
      detail::require_length(s.first_row, n, "first_row");
      auto r = detail::or_random(s.first_row, n, rng, s);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = r[(j + n - i) % n];
      break;
    }
    case MatrixKind::toeplitz: {
      detail::require_length(s.first_row, n, "first_row");
      detail::require_length(s.first_col, n, "first_col");
      auto r = detail::or_random(s.first_row, n, rng, s);
      auto c = detail::or_random(s.first_col, n, rng, s);
      if (!s.first_row.empty() && !s.first_col.empty() && !(r[0] == c[0]))
        throw Error(ErrorCode::InvalidArgument, "first_row and first_col disagree on the corner");
      c[0] = r[0];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = j >= i ? r[j - i] : c[i - j];
      break;
    }
    case MatrixKind::hankel: {
      detail::require_length(s.first_col, n, "first_col");
      detail::require_length(s.last_row, n, "last_row");
      auto c = detail::or_random(s.first_col, n, rng, s);
      auto l = detail::or_random(s.last_row, n, rng, s);
      if (!s.first_col.empty() && !s.last_row.empty() && !(c[n - 1] == l[0]))
        throw Error(ErrorCode::InvalidArgument, "first_col and last_row disagree on the corner");
      l[0] = c[n - 1];
      // h[k] is the value on anti-diagonal i + j = k.
      std::vector<Rational> h(2 * n - 1);
      for (std::size_t i = 0; i < n; ++i) h[i] = c[i];
      for (std::size_t j = 1; j < n; ++j) h[n - 1 + j] = l[j];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = h[i + j];
      break;
    }
    case MatrixKind::banded:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (j + s.lower >= i && i + s.upper >= j) a(i, j) = Rational(rng.uniform(s.lo, s.hi));
      break;
    case MatrixKind::checkerboard:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if ((i + j) % 2 == 0) a(i, j) = Rational(rng.nonzero(s.lo, s.hi));
      break;
    case MatrixKind::anti_tridiagonal:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (i + j + 2 >= n && i + j <= n) a(i, j) = Rational(rng.nonzero(s.lo, s.hi));
      break;
    case MatrixKind::spd_random: {
      Matrix<Rational> g(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = Rational(rng.uniform(s.lo, s.hi));
      a = g * g.transpose();
      for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i) + Rational(static_cast<long long>(n));
      break;
    }
    case MatrixKind::unimodular_random: {
      if (s.multiplier < 1) throw Error(ErrorCode::InvalidArgument, "multiplier must be >= 1");
      a = Matrix<Rational>::identity(n);
      if (n == 1) break;
      const std::size_t ops = s.ops == 0 ? 3 * n : s.ops;
      const auto last = static_cast<std::int64_t>(n - 1);
      for (std::size_t k = 0; k < ops; ++k) {
        const auto i = static_cast<std::size_t>(rng.uniform(0, last));
        auto j = static_cast<std::size_t>(rng.uniform(0, last - 1));
        if (j >= i) ++j;
        if (rng.uniform(0, 3) == 0) {
          a.swap_rows(i, j);
        } else {
          const Rational f(rng.nonzero(-s.multiplier, s.multiplier));
          for (std::size_t c = 0; c < n; ++c) a(i, c) = a(i, c) + f * a(j, c);
        }
      }
      break;
    }
    case MatrixKind::gallery3:
      break;
  }
  return a;
}

/// Q = (I - S)(I + S)^-1 for skew-symmetric S; Q is orthogonal.
inline Matrix<Rational> cayley(const Matrix<Rational>& s) {
  require_square(s, "cayley");
  if (!(s.transpose() == -s)) throw Error(ErrorCode::NotSkewSymmetric, "Cayley transform needs S^T = -S");
  const auto i = Matrix<Rational>::identity(s.rows());
  return (i - s) * inverse_exact(Matrix<Rational>(i + s));
}

struct ExamQuestion {
  Matrix<Rational> A;
  Matrix<Rational> inverse;
  std::uint64_t seed = 0;
};

/// A 3x3 integer matrix with det +-1 and height <= max_height, and its
/// integer inverse, for "find the inverse" questions. Deterministic in the seed.
inline ExamQuestion exam_unimodular_question(std::uint64_t seed, long long max_height = 9) {
  SeededStream rng(seed, 100);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    GeneratorSpec spec;
    spec.kind = MatrixKind::unimodular_random;
    spec.size = 3;
    spec.seed = seed + static_cast<std::uint64_t>(attempt) * 0x100000001ULL;
    spec.ops = static_cast<std::size_t>(rng.uniform(3, 6));
    spec.multiplier = 2;
    Matrix<Rational> a = generate(spec);
    if (a == Matrix<Rational>::identity(3)) continue;
    bool small = true;
    for (const auto& x : a.data())
      if (x.abs() > Rational(max_height)) small = false;
    if (!small) continue;
    Matrix<Rational> inv = inverse_exact(a);
    return {std::move(a), std::move(inv), seed};
  }
  throw Error(ErrorCode::ConstructionError, "could not draw a small unimodular matrix", {{"seed", std::to_string(seed)}});
}

}  // namespace mechlin
