#pragma once

#include <Eigen/Sparse>
#include <memory>
#include <mutex>
#include <optional>

#include "rkdre/dense.hpp"

namespace rkdre {

using SparseCsr = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// Optional analytic spectral data a problem generator can attach, so bound
// evaluation does not have to re-estimate what is known exactly.
struct SpectralHints {
  std::optional<double> spectral_norm;
  std::optional<double> log_norm;
  std::optional<double> eig_min;  // smallest eigenvalue (symmetric operators)
};

struct LogNormEstimate {
  double value = 0.0;
  bool converged = true;
};

// Action of a square matrix A: block products, transposed products and,
// where supported, shifted solves (s*I - A)^{-1} B for rational Krylov.
// Operators are immutable after construction; factorization caches are
// guarded so concurrent apply/solve calls are safe.
class LinearOperator {
 public:
  virtual ~LinearOperator() = default;

  virtual Index dim() const = 0;
  virtual Matrix apply_block(const Matrix& b) const = 0;
  virtual Matrix apply_transpose_block(const Matrix& b) const = 0;

  virtual bool has_shifted_solve() const { return false; }
  virtual Matrix shifted_solve(double shift, const Matrix& b) const;

  /// Dense n x n image of the operator (applies to the identity).
  virtual Matrix materialize() const;

  const SpectralHints& hints() const { return hints_; }
  void set_hints(SpectralHints h) { hints_ = h; }

 protected:
  void check_rows(const Matrix& b, const char* who) const;

 private:
  SpectralHints hints_;
};

class DenseOperator final : public LinearOperator {
 public:
  explicit DenseOperator(Matrix a);

  Index dim() const override { return a_.rows(); }
  Matrix apply_block(const Matrix& b) const override;
  Matrix apply_transpose_block(const Matrix& b) const override;
  bool has_shifted_solve() const override { return true; }
  Matrix shifted_solve(double shift, const Matrix& b) const override;
  Matrix materialize() const override { return a_; }

  const Matrix& matrix() const { return a_; }

 private:
  Matrix a_;
  mutable std::mutex cache_mutex_;
  mutable std::map<double, std::shared_ptr<Eigen::PartialPivLU<Matrix>>> lu_cache_;
};

class SparseOperator final : public LinearOperator {
 public:
  explicit SparseOperator(SparseCsr a);

  Index dim() const override { return a_.rows(); }
  Matrix apply_block(const Matrix& b) const override;
  Matrix apply_transpose_block(const Matrix& b) const override;
  bool has_shifted_solve() const override { return true; }
  Matrix shifted_solve(double shift, const Matrix& b) const override;
  Matrix materialize() const override { return Matrix(a_); }

  const SparseCsr& matrix() const { return a_; }

 private:
  using ColMajor = Eigen::SparseMatrix<double>;
  SparseCsr a_;
  mutable std::mutex cache_mutex_;
  mutable std::map<double, std::shared_ptr<Eigen::SparseLU<ColMajor>>> lu_cache_;
};

// Generalized pair (M, A) acting as M^{-1} A with M symmetric positive
// definite; M is factored once (sparse Cholesky) at construction.
class MassPairOperator final : public LinearOperator {
 public:
  MassPairOperator(SparseCsr mass, SparseCsr a);

  Index dim() const override { return a_.rows(); }
  Matrix apply_block(const Matrix& b) const override;
  Matrix apply_transpose_block(const Matrix& b) const override;
  bool has_shifted_solve() const override { return true; }
  // (s*I - M^{-1}A)^{-1} B = (s*M - A)^{-1} (M B)
  Matrix shifted_solve(double shift, const Matrix& b) const override;
  Matrix materialize() const override;

  /// M^{-1} B using the cached Cholesky factorization.
  Matrix mass_solve(const Matrix& b) const;

 private:
  using ColMajor = Eigen::SparseMatrix<double>;
  SparseCsr mass_;
  SparseCsr a_;
  Eigen::SimplicialLLT<ColMajor> mass_chol_;
  mutable std::mutex cache_mutex_;
  mutable std::map<double, std::shared_ptr<Eigen::SparseLU<ColMajor>>> lu_cache_;
};

/// mu(A): largest eigenvalue of (A + A^T)/2. Dense solve up to
/// kDenseThreshold, symmetric Lanczos (60 iterations, relative tolerance
/// 1e-6) above; a non-converged Lanczos run returns its best estimate
/// flagged as approximate.
LogNormEstimate log_norm(const LinearOperator& op);

/// ||A||_2, estimated by power iteration on A^T A for large operators
/// (30 iterations, relative tolerance 1e-4), exact below kDenseThreshold.
double operator_norm_estimate(const LinearOperator& op);

}  // namespace rkdre
