#pragma once

#include <vector>

#include "qd/density.hpp"
#include "qd/entropy.hpp"

namespace qd {

/// Outcomes with probability at or below this threshold carry a flagged
/// placeholder state and contribute nothing to averaged quantities.
inline constexpr double kOutcomeEps = 1e-12;

/// Rank-1 POVM on one subsystem: elements v_i v_i^dagger summing to the
/// identity within 1e-9. Weights are folded into the vector norms, so a
/// projective POVM has unit vectors. Measurements act on subsystem B (the
/// second factor of a bipartite state); the A-side variant is reached by
/// swapping subsystems at the CLI layer, not by a second code path here.
class Povm {
 public:
  /// Projectors onto the columns of a unitary (checked within 1e-9).
  static Povm projective(const CMatrix& u);

  /// General rank-1 POVM from weighted vectors, element i = v_i v_i^dagger.
  static Povm from_vectors(std::vector<CVector> vectors);

  /// From explicit element matrices. Each must be PSD with second-largest
  /// eigenvalue <= 1e-9; the family must be complete within 1e-9.
  static Povm from_elements(const std::vector<CMatrix>& elements);

  int outcome_count() const { return static_cast<int>(vectors_.size()); }
  int dim() const { return static_cast<int>(vectors_.front().size()); }
  int subsystem() const { return 1; }

  const std::vector<CVector>& vectors() const { return vectors_; }
  const std::vector<CMatrix>& elements() const { return elements_; }

 private:
  explicit Povm(std::vector<CVector> vectors);

  std::vector<CVector> vectors_;
  std::vector<CMatrix> elements_;
};

/// Two-outcome qubit projective measurement onto
/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1> and its orthogonal complement.
Povm bloch_projective(double theta, double phi);

/// Outcome probabilities p_i with the post-measurement states of A.
/// Outcomes below kOutcomeEps hold a maximally mixed placeholder and are
/// marked insignificant.
struct ConditionalEnsemble {
  ProbabilityVector probs;
  std::vector<DensityMatrix> states;
  std::vector<bool> significant;

  int outcome_count() const { return probs.size(); }
};

/// p_i = tr[(I_A x Pi_i) rho_AB], rho_{A|i} = tr_B[(I_A x Pi_i) rho_AB] / p_i.
ConditionalEnsemble post_measurement_ensemble(const DensityMatrix& rho_ab, const Povm& povm);

/// sum_i p_i H(rho_{A|i}) in bits, skipping insignificant outcomes.
double measured_conditional_entropy(const DensityMatrix& rho_ab, const Povm& povm);

namespace detail {

/// Reusable scratch for the measured-entropy kernel; avoids per-call
/// allocation in optimizer loops.
struct MeasurementWorkspace {
  CMatrix s;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver;

  explicit MeasurementWorkspace(int d_a) : s(d_a, d_a), solver(d_a) {}
};

/// tr_B[(I x v v^dagger) rho] as a d_a x d_a matrix, written into ws.s.
void conditional_block(const CMatrix& rho, int d_a, int d_b, const CVector& v,
                       MeasurementWorkspace& ws);

/// Measured conditional entropy straight from measurement vectors. Same
/// semantics as the Povm overload; this is the kernel both it and the
/// discord optimizer call.
double measured_conditional_entropy_vectors(const CMatrix& rho, int d_a, int d_b,
                                            const std::vector<CVector>& vectors,
                                            MeasurementWorkspace& ws);

}  // namespace detail

}  // namespace qd
