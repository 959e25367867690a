#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rkdre/errors.hpp"

namespace rkdre {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Tolerances shared across the library.
inline constexpr double kQrDeflationTol = 1e-12;   // relative R-diagonal cutoff
inline constexpr double kCondLimit = 1e13;         // substep inversion breakdown
inline constexpr Index kDenseThreshold = 1000;     // log_norm switches to Lanczos above
inline constexpr Index kOracleLimit = 500;         // largest n the dense oracles accept

/// Matrix exponential e^M by scaling and squaring with the 13th-order
/// diagonal Pade approximant.
Matrix expm(const Matrix& m);

/// phi1(z) = (e^z - 1)/z, with a series branch near zero.
double phi1(double z);

struct ThinQr {
  Matrix q;  // orthonormal columns, same count as the input
  Matrix r;  // upper triangular, nonnegative diagonal
  std::vector<Index> deflated;  // columns whose R diagonal is below tolerance
};

/// Thin Householder QR of a tall matrix (rows >= cols). Rank-deficient
/// columns are reported in `deflated`, not removed.
ThinQr thin_qr(const Matrix& b);

struct SymEig {
  Vector values;   // descending
  Matrix vectors;  // orthonormal columns matching `values`
};

/// Eigendecomposition of (m + m^T)/2.
SymEig sym_eig(const Matrix& m);

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// Logarithmic norm of a dense matrix: largest eigenvalue of (m + m^T)/2.
double log_norm_dense(const Matrix& m);

/// t^k / k!, evaluated in log space for large k to avoid overflow.
double pow_over_factorial(double t, int k);

}  // namespace rkdre
