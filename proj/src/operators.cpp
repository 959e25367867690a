#include "rkdre/operators.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <string>

namespace rkdre {

void LinearOperator::check_rows(const Matrix& b, const char* who) const {
  if (b.rows() != dim()) {
    throw DimensionError(std::string(who) + ": operand has " +
                         std::to_string(b.rows()) + " rows, operator is " +
                         std::to_string(dim()) + "-dimensional");
  }
}

Matrix LinearOperator::shifted_solve(double, const Matrix&) const {
  throw NumericError("shifted_solve: operator does not support shifted solves");
}

Matrix LinearOperator::materialize() const {
  return apply_block(Matrix::Identity(dim(), dim()));
}

DenseOperator::DenseOperator(Matrix a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols()) {
    throw DimensionError("DenseOperator: matrix must be square");
  }
  if (!a_.allFinite()) {
    throw NumericError("DenseOperator: matrix has non-finite entries");
  }
}

Matrix DenseOperator::apply_block(const Matrix& b) const {
  check_rows(b, "apply_block");
  return a_ * b;
}

Matrix DenseOperator::apply_transpose_block(const Matrix& b) const {
  check_rows(b, "apply_transpose_block");
  return a_.transpose() * b;
}

Matrix DenseOperator::shifted_solve(double shift, const Matrix& b) const {
  check_rows(b, "shifted_solve");
  std::shared_ptr<Eigen::PartialPivLU<Matrix>> lu;
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = lu_cache_.find(shift);
    if (it == lu_cache_.end()) {
      Matrix shifted = -a_;
      shifted.diagonal().array() += shift;
      lu = std::make_shared<Eigen::PartialPivLU<Matrix>>(shifted);
      if (lu->rcond() < 1.0 / kCondLimit) {
        throw NumericError("shifted_solve: (s*I - A) numerically singular at s = " +
                           std::to_string(shift));
      }
      lu_cache_.emplace(shift, lu);
    } else {
      lu = it->second;
    }
  }
  return lu->solve(b);
}

SparseOperator::SparseOperator(SparseCsr a) : a_(std::move(a)) {
  if (a_.rows() != a_.cols()) {
    throw DimensionError("SparseOperator: matrix must be square");
  }
  a_.makeCompressed();
}

Matrix SparseOperator::apply_block(const Matrix& b) const {
  check_rows(b, "apply_block");
  return a_ * b;
}

Matrix SparseOperator::apply_transpose_block(const Matrix& b) const {
  check_rows(b, "apply_transpose_block");
  return a_.transpose() * b;
}

Matrix SparseOperator::shifted_solve(double shift, const Matrix& b) const {
  check_rows(b, "shifted_solve");
  std::shared_ptr<Eigen::SparseLU<ColMajor>> lu;
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = lu_cache_.find(shift);
    if (it == lu_cache_.end()) {
      ColMajor shifted = -ColMajor(a_);
      ColMajor id(a_.rows(), a_.cols());
      id.setIdentity();
      shifted += shift * id;
      lu = std::make_shared<Eigen::SparseLU<ColMajor>>();
      lu->compute(shifted);
      if (lu->info() != Eigen::Success) {
        throw NumericError("shifted_solve: (s*I - A) singular at s = " +
                           std::to_string(shift));
      }
      lu_cache_.emplace(shift, lu);
    } else {
      lu = it->second;
    }
  }
  return lu->solve(b);
}

MassPairOperator::MassPairOperator(SparseCsr mass, SparseCsr a)
    : mass_(std::move(mass)), a_(std::move(a)) {
  if (mass_.rows() != mass_.cols() || a_.rows() != a_.cols() ||
      mass_.rows() != a_.rows()) {
    throw DimensionError("MassPairOperator: M and A must be square and equal-sized");
  }
  mass_.makeCompressed();
  a_.makeCompressed();
  mass_chol_.compute(ColMajor(mass_));
  if (mass_chol_.info() != Eigen::Success) {
    throw NumericError("MassPairOperator: mass matrix is not symmetric positive definite");
  }
}

Matrix MassPairOperator::apply_block(const Matrix& b) const {
  check_rows(b, "apply_block");
  return mass_chol_.solve(a_ * b);
}

Matrix MassPairOperator::apply_transpose_block(const Matrix& b) const {
  check_rows(b, "apply_transpose_block");
  // (M^{-1} A)^T = A^T M^{-1} for symmetric M
  return a_.transpose() * mass_chol_.solve(b);
}

Matrix MassPairOperator::shifted_solve(double shift, const Matrix& b) const {
  check_rows(b, "shifted_solve");
  std::shared_ptr<Eigen::SparseLU<ColMajor>> lu;
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = lu_cache_.find(shift);
    if (it == lu_cache_.end()) {
      ColMajor shifted = shift * ColMajor(mass_) - ColMajor(a_);
      lu = std::make_shared<Eigen::SparseLU<ColMajor>>();
      lu->compute(shifted);
      if (lu->info() != Eigen::Success) {
        throw NumericError("shifted_solve: (s*M - A) singular at s = " +
                           std::to_string(shift));
      }
      lu_cache_.emplace(shift, lu);
    } else {
      lu = it->second;
    }
  }
  return lu->solve(mass_ * b);
}

Matrix MassPairOperator::materialize() const {
  return mass_chol_.solve(Matrix(a_));
}

Matrix MassPairOperator::mass_solve(const Matrix& b) const {
  check_rows(b, "mass_solve");
  return mass_chol_.solve(b);
}

namespace {

// Deterministic unit start vector for the iterative estimators.
Vector lanczos_start(Index n) {
  Vector v(n);
  uint64_t s = 0x9E3779B97F4A7C15ULL;
  for (Index i = 0; i < n; ++i) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    v(i) = 1.0 + static_cast<double>(s >> 40) * 0x1.0p-24;
  }
  v.normalize();
  return v;
}

}  // namespace

LogNormEstimate log_norm(const LinearOperator& op) {
  if (op.hints().log_norm) return {*op.hints().log_norm, true};
  const Index n = op.dim();
  if (n <= kDenseThreshold) {
    return {log_norm_dense(op.materialize()), true};
  }

  // Symmetric Lanczos on (A + A^T)/2 with full reorthogonalization.
  const int max_iter = 60;
  const double tol = 1e-6;
  auto sym_apply = [&op](const Vector& x) -> Vector {
    return 0.5 * (op.apply_block(x) + op.apply_transpose_block(x));
  };

  Matrix basis(n, max_iter + 1);
  std::vector<double> alpha, beta;
  basis.col(0) = lanczos_start(n);
  double theta = 0.0;
  bool converged = false;
  int j = 0;
  for (; j < max_iter; ++j) {
    Vector w = sym_apply(basis.col(j));
    const double a = basis.col(j).dot(w);
    alpha.push_back(a);
    w -= a * basis.col(j);
    if (j > 0) w -= beta.back() * basis.col(j - 1);
    // full reorthogonalization
    w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
    const double b = w.norm();

    Matrix tri = Matrix::Zero(j + 1, j + 1);
    for (int i = 0; i <= j; ++i) tri(i, i) = alpha[i];
    for (int i = 0; i + 1 <= j; ++i) {
      tri(i, i + 1) = beta[i];
      tri(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(tri);
    theta = es.eigenvalues().maxCoeff();
    Index which;
    es.eigenvalues().maxCoeff(&which);
    const double resid = b * std::abs(es.eigenvectors()(j, which));
    if (resid <= tol * std::max(1.0, std::abs(theta))) {
      converged = true;
      break;
    }
    if (b == 0.0) {  // invariant subspace: estimate is exact
      converged = true;
      break;
    }
    beta.push_back(b);
    basis.col(j + 1) = w / b;
  }
  return {theta, converged};
}

double operator_norm_estimate(const LinearOperator& op) {
  if (op.hints().spectral_norm) return *op.hints().spectral_norm;
  if (op.dim() <= kDenseThreshold) {
    return spectral_norm(op.materialize());
  }
  // Power iteration on A^T A.
  Vector v = lanczos_start(op.dim());
  double sigma = 0.0;
  for (int i = 0; i < 30; ++i) {
    Vector w = op.apply_transpose_block(op.apply_block(v));
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    const double next = std::sqrt(nw);
    v = w / nw;
    if (i > 0 && std::abs(next - sigma) <= 1e-4 * next) {
      sigma = next;
      break;
    }
    sigma = next;
  }
  return sigma;
}

}  // namespace rkdre
