#pragma once

#include "mechlin/factor/lu.hpp"
#include "mechlin/scalar/ncexpr.hpp"

namespace mechlin {

/// Block LU of a 2x2 matrix of noncommuting symbols:
///   L = [[1, 0], [B21*B11^-1, 1]],  U = [[B11, B12], [0, B22 - B21*B11^-1*B12]].
struct BlockLU {
  Matrix<NCExpr> L;
  Matrix<NCExpr> U;
};

inline BlockLU block_lu_2x2(const Matrix<NCExpr>& b) {
  if (b.rows() != 2 || b.cols() != 2)
    throw Error(ErrorCode::ShapeMismatch, "block LU expects a 2x2 block matrix",
                {{"shape", shape_string(b.rows(), b.cols())}});
  if (!b(0, 0).is_single_atom())
    throw Error(ErrorCode::NonInvertible, "leading block must be a single invertible symbol",
                {{"B11", b(0, 0).to_string()}});
  const NCExpr inv = b(0, 0).inverse();
  const NCExpr mult = b(1, 0) * inv;
  Matrix<NCExpr> l{{NCExpr(1), NCExpr(0)}, {mult, NCExpr(1)}};
  Matrix<NCExpr> u{{b(0, 0), b(0, 1)}, {NCExpr(0), b(1, 1) - mult * b(0, 1)}};
  return {std::move(l), std::move(u)};
}

/// A22 - A21 * A11^-1 * A12 for a square nonsingular leading block. The
/// leading block is factored and solved against A12; no inverse is formed.
template <Field S>
Matrix<S> schur_complement(const Matrix<S>& a, BlockPartition p) {
  auto blocks = block_split(a, p);
  if (!blocks.a11.is_square())
    throw Error(ErrorCode::NotSquare, "leading block must be square",
                {{"shape", shape_string(blocks.a11.rows(), blocks.a11.cols())}});
  auto f = plu(blocks.a11, Pivoting::partial);
  for (std::size_t k = 0; k < f.U.rows(); ++k)
    if (is_zero(f.U(k, k)))
      throw Error(ErrorCode::SingularBlock, "leading block is singular", {{"k", std::to_string(k + 1)}});
  Matrix<S> x = lu_solve(f, blocks.a12);
  return blocks.a22 - blocks.a21 * x;
}

}  // namespace mechlin
