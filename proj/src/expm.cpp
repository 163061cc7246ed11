#include "laxlab/expm.hpp"

#include <cmath>

namespace laxlab {

namespace {

// Pade coefficients and theta bounds from Higham, "The scaling and squaring
// method for the matrix exponential revisited" (2005).
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

Eigen::MatrixXcd pade_solve(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V) {
  return (V - U).partialPivLu().solve(V + U);
}

template <int N>
Eigen::MatrixXcd pade_low(const Eigen::MatrixXcd& A, const double (&b)[N + 1]) {
  const int n = static_cast<int>(A.rows());
  const Eigen::MatrixXcd A2 = A * A;
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(n, n);  // A^(2j)
  for (int j = 0; 2 * j <= N; ++j) {
    if (2 * j + 1 <= N) U += b[2 * j + 1] * P;
    V += b[2 * j] * P;
    P = P * A2;
  }
  U = A * U;
  return pade_solve(U, V);
}

Eigen::MatrixXcd pade13(const Eigen::MatrixXcd& A) {
  static const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                             1187353796428800.0,  129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,       1323241920.0,
                             40840800.0,          960960.0,            16380.0,
                             182.0,               1.0};
  const int n = static_cast<int>(A.rows());
  const Eigen::MatrixXcd A2 = A * A;
  const Eigen::MatrixXcd A4 = A2 * A2;
  const Eigen::MatrixXcd A6 = A2 * A4;
  const Eigen::MatrixXcd Id = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd U =
      A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 +
           b[3] * A2 + b[1] * Id);
  Eigen::MatrixXcd V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 +
                       b[4] * A4 + b[2] * A2 + b[0] * Id;
  return pade_solve(U, V);
}

}  // namespace

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& M) {
  const double norm = M.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
  static const double b3[] = {120.0, 60.0, 12.0, 1.0};
  static const double b5[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
  static const double b7[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                              25200.0,    1512.0,    56.0,      1.0};
  static const double b9[] = {17643225600.0, 8821612800.0, 2075673600.0,
                              302702400.0,   30270240.0,   2162160.0,
                              110880.0,      3960.0,       90.0,
                              1.0};
  if (norm <= kTheta3) return pade_low<3>(M, b3);
  if (norm <= kTheta5) return pade_low<5>(M, b5);
  if (norm <= kTheta7) return pade_low<7>(M, b7);
  if (norm <= kTheta9) return pade_low<9>(M, b9);

  int squarings = 0;
  double scaled = norm;
  while (scaled > kTheta13) {
    scaled /= 2.0;
    ++squarings;
  }
  Eigen::MatrixXcd A = M / std::pow(2.0, squarings);
  Eigen::MatrixXcd E = pade13(A);
  for (int i = 0; i < squarings; ++i) E = E * E;
  return E;
}

}  // namespace laxlab
