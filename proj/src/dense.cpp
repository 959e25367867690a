#include "rkdre/dense.hpp"

#include <cmath>
#include <string>

namespace rkdre {

namespace {

// Pade-13 numerator coefficients and the scaling threshold on the 1-norm
// (Higham, "The scaling and squaring method revisited").
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Matrix expm(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("expm: matrix must be square, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  if (!m.allFinite()) {
    throw NumericError("expm: input has non-finite entries");
  }
  const Index n = m.rows();
  const Matrix id = Matrix::Identity(n, n);

  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  Matrix a = m;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    a /= std::ldexp(1.0, squarings);
  }

  const Matrix a2 = a * a;
  const Matrix a4 = a2 * a2;
  const Matrix a6 = a2 * a4;
  const Matrix u =
      a * (a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2) +
           kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2 +
           kPade13[1] * id);
  const Matrix v =
      a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2) +
      kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2 + kPade13[0] * id;

  Matrix f = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) {
    f = f * f;
    if (!f.allFinite()) {
      throw NumericError("expm: overflow while squaring (step " +
                         std::to_string(i + 1) + " of " +
                         std::to_string(squarings) +
                         ", input 1-norm = " + std::to_string(norm1) + ")");
    }
  }
  return f;
}

double phi1(double z) {
  if (std::abs(z) < 1e-2) {
    // 10-term series; agrees with the expm1 branch to 1e-14 at the switch.
    double term = 1.0;
    double sum = 1.0;
    for (int l = 1; l < 10; ++l) {
      term *= z / (l + 1);
      sum += term;
    }
    return sum;
  }
  return std::expm1(z) / z;
}

ThinQr thin_qr(const Matrix& b) {
  if (b.rows() < b.cols()) {
    throw DimensionError("thin_qr: need rows >= cols");
  }
  const Index k = b.cols();
  Eigen::HouseholderQR<Matrix> qr(b);
  ThinQr out;
  out.q = qr.householderQ() * Matrix::Identity(b.rows(), k);
  out.r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (Index i = 0; i < k; ++i) {
    if (out.r(i, i) < 0.0) {
      out.r.row(i) = -out.r.row(i);
      out.q.col(i) = -out.q.col(i);
    }
  }
  const double scale = spectral_norm(out.r);  // equals sigma_max(b)
  for (Index i = 0; i < k; ++i) {
    if (std::abs(out.r(i, i)) <= kQrDeflationTol * scale) {
      out.deflated.push_back(i);
    }
  }
  return out;
}

SymEig sym_eig(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("sym_eig: matrix must be square");
  }
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  if (es.info() != Eigen::Success) {
    throw NumericError("sym_eig: eigensolver failed to converge");
  }
  SymEig out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (!m.allFinite()) {
    throw NumericError("spectral_norm: input has non-finite entries");
  }
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

double log_norm_dense(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw DimensionError("log_norm_dense: matrix must be square");
  }
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

double pow_over_factorial(double t, int k) {
  if (k < 0) throw DimensionError("pow_over_factorial: k < 0");
  if (k == 0) return 1.0;
  if (t == 0.0) return 0.0;
  if (k <= 150) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= t / i;
    return r;
  }
  return std::exp(k * std::log(t) - std::lgamma(k + 1.0));
}

}  // namespace rkdre
