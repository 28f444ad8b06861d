#pragma once

#include <cstdint>
#include <utility>

#include "qd/density.hpp"
#include "qd/measurement.hpp"

namespace qd {

struct OptimizerConfig {
  int starts = 32;
  int max_iterations = 500;  // per start
  double tol = 1e-9;         // convergence tolerance on the objective
  int outcome_count = 0;     // 0 => projective (dim(B) outcomes); else in [dim(B), dim(B)^2]
  std::uint64_t seed = 0;
  int grid_resolution = 256;  // per angle, for the qubit grid oracle
};

struct DiscordResult {
  double discord = 0.0;
  double classical_correlations = 0.0;
  double mutual_information = 0.0;
  double min_measured_conditional_entropy = 0.0;
  Povm optimal_povm;
  int starts_used = 0;
  bool converged = false;
  double residual_spread = 0.0;  // best-vs-second-best start gap
};

/// Quantum discord D(A:B) with measurement on B:
///   D = I(A:B) - J(A:B),  J = H(A) - min_Pi H~_Pi(A|B),
/// equivalently D = min_Pi H~_Pi(A|B) - H(A|B). The minimization runs
/// multi-start Nelder-Mead over a Givens chart of measurement unitaries;
/// start 0 is the eigenbasis of rho_B (the exact optimum for
/// classical-quantum states), the rest are Haar random. The reported value
/// is an upper bound on true discord by construction; `converged` tells
/// whether the two best starts agreed within 10x tol.
DiscordResult discord(const DensityMatrix& rho_ab, const OptimizerConfig& cfg = {});

/// J(A:B); thin wrapper over discord().
double classical_correlations(const DensityMatrix& rho_ab, const OptimizerConfig& cfg = {});

/// Exhaustive (theta, phi) sweep of two-outcome qubit projective
/// measurements: theta takes resolution+1 points on [0, pi], phi takes
/// resolution points on [0, 2 pi). Doubling the resolution refines the grid
/// in place, so the minimum is nonincreasing under doubling. Only dim(B) = 2.
std::pair<double, Povm> brute_force_min_conditional_entropy(const DensityMatrix& rho_ab,
                                                            int grid_resolution = 256);

}  // namespace qd
