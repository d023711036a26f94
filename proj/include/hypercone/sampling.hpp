#pragma once

// Reproducible random inputs. Every trial draws from its own generator seeded by
// (seed, stream, index), so results do not depend on evaluation order.

#include <cstdint>
#include <random>

#include "hypercone/basis.hpp"

namespace hypercone {

/// Streams keep independent draws for the same (seed, index) apart.
enum class Stream : std::uint64_t {
  trial = 0,
  estimate = 1,
  refit = 2,
  basis = 3,
  probe = 4,
};

inline std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index,
                                 Stream stream = Stream::trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

inline MatrixX<double> gaussian_matrix(Index rows, Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixX<double> g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = normal(rng);
  return g;
}

/// (G + G^T) / 2 with standard normal G.
inline SymMatrix<double> random_symmetric(Index n, std::mt19937_64& rng) {
  return SymMatrix<double>(gaussian_matrix(n, n, rng), Symmetry::symmetrize);
}

/// random_symmetric(n) + alpha I with alpha uniform on {-2, -1, 0, 1, 2}.
inline SymMatrix<double> random_symmetric_stratified(Index n, std::mt19937_64& rng) {
  const SymMatrix<double> x = random_symmetric(n, rng);
  std::uniform_int_distribution<int> shift(-2, 2);
  const double alpha = shift(rng);
  return SymMatrix<double>(MatrixX<double>(x.matrix() + alpha * MatrixX<double>::Identity(n, n)));
}

/// Standard normal vector plus a shift drawn like random_symmetric_stratified.
inline VectorX<double> random_vector_stratified(Index n, std::mt19937_64& rng) {
  VectorX<double> x = gaussian_matrix(n, 1, rng);
  std::uniform_int_distribution<int> shift(-2, 2);
  x.array() += shift(rng);
  return x;
}

/// Haar-distributed orthogonal matrix (QR of a Gaussian, signs fixed by R).
inline MatrixX<double> random_orthogonal(Index n, std::mt19937_64& rng) {
  const Eigen::HouseholderQR<MatrixX<double>> qr(gaussian_matrix(n, n, rng));
  MatrixX<double> q = qr.householderQ();
  const MatrixX<double>& r = qr.matrixQR();
  for (Index j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  return q;
}

/// Random trace-zero symmetric matrix with tr(Y^2) = 1.
inline SymMatrix<double> random_traceless(Index n, std::mt19937_64& rng) {
  MatrixX<double> y = random_symmetric(n, rng).matrix();
  y -= (y.trace() / static_cast<double>(n)) * MatrixX<double>::Identity(n, n);
  y /= y.norm();
  return SymMatrix<double>(y, Symmetry::symmetrize);
}

/// d random trace-zero matrices (a basis with probability one).
inline TracelessBasis<double> random_traceless_basis(Index n, std::mt19937_64& rng) {
  TracelessBasis<double> b{n, BasisKind::custom, {}};
  for (Index i = 0; i < traceless_dimension(n); ++i) b.mats.push_back(random_traceless(n, rng));
  return b;
}

}  // namespace hypercone
