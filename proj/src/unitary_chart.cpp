#include "qd/unitary_chart.hpp"

#include <cmath>
#include <complex>

#include "qd/errors.hpp"

namespace qd {

UnitaryChart::UnitaryChart(int n) : n_(n) {
  if (n < 1) throw ValidationError("unitary chart: dimension must be >= 1");
}

CMatrix UnitaryChart::build(const std::vector<double>& params) const {
  if (static_cast<int>(params.size()) != parameter_count())
    throw ValidationError("unitary chart: wrong parameter count");
  CMatrix u = CMatrix::Identity(n_, n_);
  std::size_t k = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      const double theta = params[k++];
      const double phi = params[k++];
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      const std::complex<double> e(std::cos(phi), std::sin(phi));
      // u <- u * G_ij, touching only columns i and j
      for (int r = 0; r < n_; ++r) {
        const std::complex<double> ui = u(r, i);
        const std::complex<double> uj = u(r, j);
        u(r, i) = ui * c + uj * (e * s);
        u(r, j) = ui * (-std::conj(e) * s) + uj * c;
      }
    }
  }
  return u;
}

std::vector<double> UnitaryChart::extract(const CMatrix& u) const {
  if (u.rows() != n_ || u.cols() != n_)
    throw ValidationError("unitary chart: matrix dimension mismatch");
  CMatrix m = u;
  std::vector<double> params(static_cast<std::size_t>(parameter_count()), 0.0);
  std::size_t k = 0;
  // Givens QR sweep: annihilate the below-diagonal entries column by column.
  // Applying the inverse rotations in lexicographic pair order reduces m to
  // right-diagonal phases, which is exactly the chart factorization.
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      const std::complex<double> a = m(i, i);
      const std::complex<double> b = m(j, i);
      double theta = 0.0, phi = 0.0;
      if (std::abs(b) > 0.0) {
        theta = std::atan2(std::abs(b), std::abs(a));
        phi = std::arg(b) - (std::abs(a) > 0.0 ? std::arg(a) : 0.0);
      }
      params[k++] = theta;
      params[k++] = phi;
      const double c = std::cos(theta);
      const double s = std::sin(theta);
      const std::complex<double> e(std::cos(phi), std::sin(phi));
      // m <- G_ij^dagger * m, touching only rows i and j
      for (int col = 0; col < n_; ++col) {
        const std::complex<double> mi = m(i, col);
        const std::complex<double> mj = m(j, col);
        m(i, col) = c * mi + std::conj(e) * s * mj;
        m(j, col) = -e * s * mi + c * mj;
      }
    }
  }
  return params;
}

}  // namespace qd
