#pragma once

#include <optional>
#include <vector>

#include "qd/density.hpp"
#include "qd/entropy.hpp"
#include "qd/measurement.hpp"

namespace qd {

/// The tripartite state produced by recording a projective measurement of B
/// in an apparatus C of the same dimension:
///   rho'_ABC = sum_{j,k} <e_j| rho_AB |e_k> x |e_j><e_k| x |f_j><f_k|
/// with {|e_j>} the measurement basis (columns of measurement_basis) and
/// {|f_j>} the computational basis of C. Its spectrum equals the spectrum of
/// rho_AB padded with zeros.
struct ApparatusExtension {
  DensityMatrix rho_abc;
  CMatrix measurement_basis;
};

/// Entropies of the apparatus extension and its marginals next to their
/// closed-form values, plus the strong-subadditivity gap
///   ssa_gap = H(rho'_AB) + H(rho'_BC) - H(rho'_ABC) - H(rho'_B),
/// which equals the measured conditional entropy minus H(A|B).
struct ProofIdentityReport {
  double h_abc = 0.0;
  double h_ab_reduced = 0.0;
  double h_bc_reduced = 0.0;
  double h_b_reduced = 0.0;
  // targets, paired with the four entropies above in order
  double target_h_rho_ab = 0.0;    // H(rho_AB)
  double target_ensemble = 0.0;    // H(p) + sum_j p_j H(rho_{A|j})
  double target_h_rho_b = 0.0;     // H(rho_B)
  double target_h_p = 0.0;         // H(p)
  double max_deviation = 0.0;
  double ssa_gap = 0.0;
};

struct ZeroDiscordCertificate {
  bool accepted = false;
  /// max Frobenius norm over j != k of (I x <lambda_j|) rho (I x |lambda_k>)
  /// in the candidate pointer basis.
  double residual = 0.0;
  /// max commutator entry norm over the family of A-sandwich operators
  /// N_mn = (<m| x I) rho (|n> x I), which is closed under adjoints.
  double commuting_family_residual = 0.0;
  std::optional<CMatrix> pointer_basis;  // columns |lambda_j>, set when accepted
  std::optional<ProbabilityVector> weights;
  std::vector<DensityMatrix> conditional_states;
  std::vector<bool> block_significant;
};

enum class CorrelationClass { classical_zero, quantum_positive };

ApparatusExtension extend_with_apparatus(const DensityMatrix& rho_ab, const CMatrix& basis);

ProofIdentityReport verify_proof_identities(const DensityMatrix& rho_ab, const CMatrix& basis);

/// Decides whether rho_AB is classical-quantum, i.e. block-diagonal in an
/// eigenbasis of rho_B. Accepts iff the N_mn family pairwise commutes (and
/// each member is normal) within tol; the pointer basis is then extracted by
/// diagonalizing one random Hermitian combination of the family, with a
/// single retry on reconstruction failure before raising InternalError.
ZeroDiscordCertificate certify_zero_discord(const DensityMatrix& rho_ab, double tol = 1e-8,
                                            SeededRng rng = SeededRng(0));

/// Random classical-quantum state sum_j p_j rho_{A|j} x |lambda_j><lambda_j|
/// with a Haar-random orthonormal basis {|lambda_j>}, flat-Dirichlet weights
/// and independent full-rank Ginibre conditional states.
DensityMatrix generate_zero_discord(int d_a, int d_b, SeededRng& rng);

/// classical_zero iff |ssa_quantity| <= tol. Valid density matrices never
/// give a value below -tol; that case signals numerical corruption and
/// raises InternalError.
CorrelationClass classify_correlations(const DensityMatrix& rho_abc, double tol = 1e-8);

}  // namespace qd
