#pragma once

#include <Eigen/Dense>
#include <map>

#include "laxlab/errors.hpp"
#include "laxlab/types.hpp"

namespace laxlab {

/// Matrix-valued Laurent polynomial L(lambda) = sum_{k=-m}^{1} C_k lambda^k.
/// Coefficients are n x n complex matrices; the exponent range [-m, 1] is
/// fixed at construction and enforced on every write.
class LaurentMatrixPoly {
 public:
  LaurentMatrixPoly(int n, int m);

  int dim() const { return n_; }
  int neg_degree() const { return m_; }

  /// Coefficient of lambda^k; the zero matrix for absent exponents in range.
  const Eigen::MatrixXcd& coeff(int k) const;
  void set_coeff(int k, Eigen::MatrixXcd c);
  bool has_coeff(int k) const { return coeffs_.count(k) != 0; }

  Eigen::MatrixXcd eval(Complex lambda) const;

  /// Exponents k in [0, 1].
  LaurentMatrixPoly plus_part() const;
  /// Exponents k in [-m, -1].
  LaurentMatrixPoly minus_part() const;

  /// Adds a constant (lambda-independent) matrix to the k = 0 coefficient.
  LaurentMatrixPoly with_constant_added(const Eigen::MatrixXcd& c) const;

  LaurentMatrixPoly& operator+=(const LaurentMatrixPoly& other);
  LaurentMatrixPoly& operator*=(Complex s);
  friend LaurentMatrixPoly operator+(LaurentMatrixPoly a, const LaurentMatrixPoly& b) {
    a += b;
    return a;
  }
  friend LaurentMatrixPoly operator*(Complex s, LaurentMatrixPoly a) {
    a *= s;
    return a;
  }

  double max_coeff_norm() const;

 private:
  int n_;
  int m_;
  std::map<int, Eigen::MatrixXcd> coeffs_;
  Eigen::MatrixXcd zero_;
};

using P0Weights = std::map<int, Eigen::MatrixXcd>;

/// Entrywise-weighted sum of Laurent coefficients: sum_k W_k o C_k.
/// Realizes a lambda-independent linear functional on the coefficient space;
/// empty weights give the zero matrix.
Eigen::MatrixXcd apply_P0(const LaurentMatrixPoly& L, const P0Weights& weights);

/// Commutator [M, L] truncated back to L's exponent range [-m, 1].
/// M must have exponents in [0, 1] plus an optional constant part already
/// folded in; the lambda^2 coefficient of the product vanishes identically
/// for the flows produced here and is checked to be negligible.
LaurentMatrixPoly commutator_truncated(const LaurentMatrixPoly& M,
                                       const LaurentMatrixPoly& L);

}  // namespace laxlab
