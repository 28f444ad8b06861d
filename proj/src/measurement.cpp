#include "qd/measurement.hpp"

#include <cmath>
#include <sstream>

#include "qd/errors.hpp"

namespace qd {

namespace {

void check_bipartite(const DensityMatrix& rho_ab, const Povm& povm) {
  if (rho_ab.num_subsystems() != 2)
    throw ValidationError("measurement: state must have exactly two subsystems");
  if (rho_ab.dim(1) != povm.dim())
    throw ValidationError("measurement: POVM dimension does not match subsystem B");
}

// Entropy in bits of S / p where S is PSD with trace p. Works on the raw
// spectrum of S so tiny outcomes never produce 0/0 noise.
double entropy_of_scaled_block(const CMatrix& s, double p,
                               Eigen::SelfAdjointEigenSolver<CMatrix>& solver) {
  const int d = static_cast<int>(s.rows());
  if (d == 1) return 0.0;

  double h = 0.0;
  const auto accumulate = [&](double lambda) {
    const double q = lambda / p;
    if (q <= 1e-12) {
      if (q < -1e-6)
        throw InternalError("measurement: conditional state eigenvalue strongly negative");
      return;
    }
    h -= q * std::log2(q);
  };

  if (d == 2) {
    // closed-form Hermitian 2x2 spectrum
    const double a = s(0, 0).real();
    const double c = s(1, 1).real();
    const double m = 0.5 * (a + c);
    const double r = std::hypot(0.5 * (a - c), std::abs(s(0, 1)));
    accumulate(m - r);
    accumulate(m + r);
    return h;
  }

  solver.compute(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw InternalError("measurement: eigensolver did not converge");
  for (int k = 0; k < d; ++k) accumulate(solver.eigenvalues()(k));
  return h;
}

}  // namespace

Povm::Povm(std::vector<CVector> vectors) : vectors_(std::move(vectors)) {
  if (vectors_.empty()) throw ValidationError("povm: at least one element required");
  const int d = static_cast<int>(vectors_.front().size());
  CMatrix sum = CMatrix::Zero(d, d);
  for (const auto& v : vectors_) {
    if (static_cast<int>(v.size()) != d)
      throw ValidationError("povm: element dimensions disagree");
    sum += v * v.adjoint();
  }
  const double defect = max_abs(sum - CMatrix::Identity(d, d));
  if (defect > 1e-9) {
    std::ostringstream os;
    os << "povm: completeness violation, max |sum - I| = " << defect;
    throw ValidationError(os.str());
  }
  elements_.reserve(vectors_.size());
  for (const auto& v : vectors_) elements_.push_back(v * v.adjoint());
}

Povm Povm::projective(const CMatrix& u) {
  if (u.rows() != u.cols()) throw ValidationError("povm: basis matrix must be square");
  const double defect = unitarity_defect(u);
  if (defect > 1e-9) {
    std::ostringstream os;
    os << "povm: basis not unitary, max |U^dagger U - I| = " << defect;
    throw ValidationError(os.str());
  }
  std::vector<CVector> vecs;
  vecs.reserve(static_cast<std::size_t>(u.cols()));
  for (Eigen::Index k = 0; k < u.cols(); ++k) vecs.push_back(u.col(k));
  return Povm(std::move(vecs));
}

Povm Povm::from_vectors(std::vector<CVector> vectors) { return Povm(std::move(vectors)); }

Povm Povm::from_elements(const std::vector<CMatrix>& elements) {
  std::vector<CVector> vecs;
  vecs.reserve(elements.size());
  for (const auto& e : elements) {
    if (e.rows() != e.cols()) throw ValidationError("povm: elements must be square");
    if (hermiticity_defect(e) > 1e-9)
      throw ValidationError("povm: element not Hermitian");
    const EigenDecomposition d = eig_hermitian(e);
    const int n = static_cast<int>(e.rows());
    if (d.eigenvalues(0) < -1e-9)
      throw ValidationError("povm: element not positive semidefinite");
    if (n >= 2 && d.eigenvalues(n - 2) > 1e-9)
      throw ValidationError("povm: element rank exceeds 1");
    const double w = std::max(d.eigenvalues(n - 1), 0.0);
    vecs.push_back(std::sqrt(w) * d.eigenvectors.col(n - 1));
  }
  return Povm(std::move(vecs));
}

Povm bloch_projective(double theta, double phi) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const std::complex<double> phase(std::cos(phi), std::sin(phi));
  CVector v0(2), v1(2);
  v0 << c, phase * s;
  v1 << -std::conj(phase) * s, c;
  return Povm::from_vectors({v0, v1});
}

namespace detail {

void conditional_block(const CMatrix& rho, int d_a, int d_b, const CVector& v,
                       MeasurementWorkspace& ws) {
  for (int a = 0; a < d_a; ++a) {
    for (int ap = a; ap < d_a; ++ap) {
      const std::complex<double> z =
          (v.adjoint() * rho.block(a * d_b, ap * d_b, d_b, d_b) * v).value();
      ws.s(a, ap) = z;
      if (ap != a) ws.s(ap, a) = std::conj(z);
    }
  }
}

double measured_conditional_entropy_vectors(const CMatrix& rho, int d_a, int d_b,
                                            const std::vector<CVector>& vectors,
                                            MeasurementWorkspace& ws) {
  double h = 0.0;
  for (const auto& v : vectors) {
    conditional_block(rho, d_a, d_b, v, ws);
    const double p = ws.s.diagonal().real().sum();
    if (p <= kOutcomeEps) continue;
    h += p * entropy_of_scaled_block(ws.s, p, ws.solver);
  }
  return h;
}

}  // namespace detail

ConditionalEnsemble post_measurement_ensemble(const DensityMatrix& rho_ab, const Povm& povm) {
  check_bipartite(rho_ab, povm);
  const int d_a = rho_ab.dim(0);
  const int d_b = rho_ab.dim(1);

  detail::MeasurementWorkspace ws(d_a);
  std::vector<double> probs;
  std::vector<DensityMatrix> states;
  std::vector<bool> significant;
  CMatrix mixture = CMatrix::Zero(d_a, d_a);

  for (const auto& v : povm.vectors()) {
    detail::conditional_block(rho_ab.matrix(), d_a, d_b, v, ws);
    mixture += ws.s;
    const double p = ws.s.diagonal().real().sum();
    if (p <= kOutcomeEps) {
      probs.push_back(std::max(p, 0.0));
      states.emplace_back(CMatrix::Identity(d_a, d_a) / d_a, std::vector<int>{d_a});
      significant.push_back(false);
    } else {
      probs.push_back(p);
      // Absolute float error in the block is ~machine eps; dividing by p
      // rescales it, so the validation tolerance must widen with 1/p.
      const double tol = std::max(rho_ab.tol(), 1e-13 / p);
      states.emplace_back(CMatrix(ws.s / p), std::vector<int>{d_a}, tol);
      significant.push_back(true);
    }
  }

  const CMatrix rho_a = partial_trace(rho_ab, {0}).matrix();
  if (max_abs(mixture - rho_a) > 1e-9)
    throw InternalError("measurement: ensemble mixture does not reproduce rho_A");

  return ConditionalEnsemble{ProbabilityVector(std::move(probs)), std::move(states),
                             std::move(significant)};
}

double measured_conditional_entropy(const DensityMatrix& rho_ab, const Povm& povm) {
  check_bipartite(rho_ab, povm);
  detail::MeasurementWorkspace ws(rho_ab.dim(0));
  return detail::measured_conditional_entropy_vectors(rho_ab.matrix(), rho_ab.dim(0),
                                                      rho_ab.dim(1), povm.vectors(), ws);
}

}  // namespace qd
