#include "laxlab/laurent.hpp"

#include <cmath>

namespace laxlab {

LaurentMatrixPoly::LaurentMatrixPoly(int n, int m) : n_(n), m_(m) {
  if (n <= 0) throw ConfigError("matrix dimension must be positive");
  if (m < 0) throw ConfigError("negative-degree bound must be >= 0");
  zero_ = Eigen::MatrixXcd::Zero(n, n);
}

const Eigen::MatrixXcd& LaurentMatrixPoly::coeff(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? zero_ : it->second;
}

void LaurentMatrixPoly::set_coeff(int k, Eigen::MatrixXcd c) {
  if (k < -m_ || k > 1)
    throw ConfigError("exponent " + std::to_string(k) + " outside [-m, 1]");
  if (c.rows() != n_ || c.cols() != n_)
    throw ConfigError("coefficient matrix must be n x n");
  coeffs_[k] = std::move(c);
}

Eigen::MatrixXcd LaurentMatrixPoly::eval(Complex lambda) const {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_, n_);
  for (const auto& [k, c] : coeffs_) out += c * std::pow(lambda, k);
  return out;
}

LaurentMatrixPoly LaurentMatrixPoly::plus_part() const {
  LaurentMatrixPoly out(n_, m_);
  for (const auto& [k, c] : coeffs_)
    if (k >= 0) out.coeffs_[k] = c;
  return out;
}

LaurentMatrixPoly LaurentMatrixPoly::minus_part() const {
  LaurentMatrixPoly out(n_, m_);
  for (const auto& [k, c] : coeffs_)
    if (k <= -1) out.coeffs_[k] = c;
  return out;
}

LaurentMatrixPoly LaurentMatrixPoly::with_constant_added(const Eigen::MatrixXcd& c) const {
  LaurentMatrixPoly out = *this;
  out.set_coeff(0, out.coeff(0) + c);
  return out;
}

LaurentMatrixPoly& LaurentMatrixPoly::operator+=(const LaurentMatrixPoly& other) {
  if (other.n_ != n_) throw ConfigError("dimension mismatch in Laurent sum");
  for (const auto& [k, c] : other.coeffs_) {
    if (k < -m_) throw ConfigError("exponent below -m in Laurent sum");
    coeffs_[k] = coeff(k) + c;
  }
  return *this;
}

LaurentMatrixPoly& LaurentMatrixPoly::operator*=(Complex s) {
  for (auto& [k, c] : coeffs_) c *= s;
  return *this;
}

double LaurentMatrixPoly::max_coeff_norm() const {
  double out = 0;
  for (const auto& [k, c] : coeffs_) out = std::max(out, c.cwiseAbs().maxCoeff());
  return out;
}

Eigen::MatrixXcd apply_P0(const LaurentMatrixPoly& L, const P0Weights& weights) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(L.dim(), L.dim());
  for (const auto& [k, w] : weights) {
    if (w.rows() != L.dim() || w.cols() != L.dim())
      throw ConfigError("P0 weight matrix must be n x n");
    out += w.cwiseProduct(L.coeff(k));
  }
  return out;
}

LaurentMatrixPoly commutator_truncated(const LaurentMatrixPoly& M,
                                       const LaurentMatrixPoly& L) {
  const int n = L.dim();
  const int m = L.neg_degree();
  LaurentMatrixPoly out(n, m);
  for (int k = -m; k <= 1; ++k) {
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j <= 1; ++j) {
      const int l = k - j;
      if (l < -m || l > 1) continue;
      c += M.coeff(j) * L.coeff(l) - L.coeff(l) * M.coeff(j);
    }
    out.set_coeff(k, std::move(c));
  }
  return out;
}

}  // namespace laxlab
