#include "qd/entropy.hpp"

#include <cmath>
#include <sstream>

#include "qd/errors.hpp"

namespace qd {

namespace {

constexpr double kLogEps = 1e-12;

}  // namespace

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : probs_(std::move(probs)) {
  double sum = 0.0;
  for (auto& p : probs_) {
    if (!std::isfinite(p)) throw ValidationError("probability vector: entries must be finite");
    if (p < -1e-12) {
      std::ostringstream os;
      os << "probability vector: negative entry " << p;
      throw ValidationError(os.str());
    }
    if (p < 0.0) p = 0.0;
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "probability vector: sum deviates from 1 by " << std::abs(sum - 1.0);
    throw ValidationError(os.str());
  }
}

namespace detail {

double entropy_from_spectrum(const RVector& values, double neg_tol) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double p = values(i);
    if (p < -neg_tol) {
      std::ostringstream os;
      os << "entropy: eigenvalue " << p << " below -" << neg_tol;
      throw ValidationError(os.str());
    }
    if (p <= kLogEps) continue;  // 0 log 0 = 0
    h -= p * std::log2(p);
  }
  return h;
}

}  // namespace detail

double shannon(const ProbabilityVector& p) {
  RVector v(p.size());
  for (int i = 0; i < p.size(); ++i) v(i) = p[i];
  return detail::entropy_from_spectrum(v, 0.0);
}

double von_neumann(const DensityMatrix& rho) {
  const RVector eigs = hermitian_eigenvalues(rho.matrix());
  return detail::entropy_from_spectrum(eigs, std::max(1e-10, rho.tol()));
}

double mutual_information(const DensityMatrix& rho_ab) {
  if (rho_ab.num_subsystems() != 2)
    throw ValidationError("mutual_information: state must have exactly two subsystems");
  const double h_a = von_neumann(partial_trace(rho_ab, {0}));
  const double h_b = von_neumann(partial_trace(rho_ab, {1}));
  return h_a + h_b - von_neumann(rho_ab);
}

double conditional_entropy(const DensityMatrix& rho_ab) {
  if (rho_ab.num_subsystems() != 2)
    throw ValidationError("conditional_entropy: state must have exactly two subsystems");
  return von_neumann(rho_ab) - von_neumann(partial_trace(rho_ab, {1}));
}

double ssa_quantity(const DensityMatrix& rho_abc) {
  if (rho_abc.num_subsystems() != 3)
    throw ValidationError("ssa_quantity: state must have exactly three subsystems");
  const double h_ab = von_neumann(partial_trace(rho_abc, {0, 1}));
  const double h_bc = von_neumann(partial_trace(rho_abc, {1, 2}));
  const double h_b = von_neumann(partial_trace(rho_abc, {1}));
  return h_ab + h_bc - von_neumann(rho_abc) - h_b;
}

}  // namespace qd
