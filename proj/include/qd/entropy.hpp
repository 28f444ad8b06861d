#pragma once

#include <vector>

#include "qd/density.hpp"

namespace qd {

/// Nonnegative entries summing to 1 within 1e-10. Entries in [-1e-12, 0)
/// are clipped to 0 at construction; anything more negative is rejected.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  int size() const { return static_cast<int>(probs_.size()); }
  double operator[](int i) const { return probs_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<double> probs_;
};

/// Shannon entropy in bits, 0 log 0 = 0.
double shannon(const ProbabilityVector& p);

/// von Neumann entropy in bits: Shannon entropy of the spectrum.
/// Eigenvalues in [-clip, 0) are clipped to 0 where clip = max(1e-10,
/// rho.tol()); more negative eigenvalues raise ValidationError. Entries at
/// or below 1e-12 contribute nothing to the log sum.
double von_neumann(const DensityMatrix& rho);

/// H(A) + H(B) - H(AB) for a bipartite state.
double mutual_information(const DensityMatrix& rho_ab);

/// H(AB) - H(B); negative for entangled states.
double conditional_entropy(const DensityMatrix& rho_ab);

/// H(AB) + H(BC) - H(ABC) - H(B) for a tripartite state; nonnegative for
/// every quantum state by strong subadditivity. Tiny negative float results
/// are reported as computed, never clipped.
double ssa_quantity(const DensityMatrix& rho_abc);

namespace detail {

/// Shared spectrum-to-bits kernel. Values below -neg_tol raise; values in
/// [-neg_tol, 1e-12] contribute 0.
double entropy_from_spectrum(const RVector& values, double neg_tol);

}  // namespace detail

}  // namespace qd
