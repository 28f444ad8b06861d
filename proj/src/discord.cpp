#include "qd/discord.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qd/entropy.hpp"
#include "qd/errors.hpp"
#include "qd/nelder_mead.hpp"
#include "qd/unitary_chart.hpp"

namespace qd {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

void validate_config(const OptimizerConfig& cfg, int d_b) {
  if (cfg.starts < 1) throw ValidationError("optimizer: starts must be >= 1");
  if (cfg.max_iterations < 1) throw ValidationError("optimizer: max_iterations must be >= 1");
  if (!(cfg.tol > 0.0)) throw ValidationError("optimizer: tol must be positive");
  if (cfg.grid_resolution < 1) throw ValidationError("optimizer: grid_resolution must be >= 1");
  if (cfg.outcome_count != 0 && (cfg.outcome_count < d_b || cfg.outcome_count > d_b * d_b))
    throw ValidationError("optimizer: outcome_count must lie in [dim(B), dim(B)^2]");
}

struct StartOutcome {
  double value = std::numeric_limits<double>::infinity();
  std::vector<double> params;
  bool nm_converged = false;
};

}  // namespace

DiscordResult discord(const DensityMatrix& rho_ab, const OptimizerConfig& cfg) {
  if (rho_ab.num_subsystems() != 2)
    throw ValidationError("discord: state must have exactly two subsystems");
  const int d_a = rho_ab.dim(0);
  const int d_b = rho_ab.dim(1);
  if (d_b < 2) throw ValidationError("discord: dim(B) must be >= 2");
  validate_config(cfg, d_b);

  const DensityMatrix rho_a = partial_trace(rho_ab, {0});
  const DensityMatrix rho_b = partial_trace(rho_ab, {1});
  const double h_a = von_neumann(rho_a);
  const double h_b = von_neumann(rho_b);
  const double h_ab = von_neumann(rho_ab);

  // Measurement family: N = d_b is projective; N > d_b realizes an
  // N-outcome rank-1 POVM as a projective measurement on an N-dimensional
  // extension, taking the B-space part of each measurement vector.
  const int n_outcomes = (cfg.outcome_count == 0) ? d_b : cfg.outcome_count;
  const bool projective = (n_outcomes == d_b);
  const UnitaryChart chart(n_outcomes);

  detail::MeasurementWorkspace ws(d_a);
  std::vector<CVector> vectors(static_cast<std::size_t>(n_outcomes), CVector(d_b));
  const auto vectors_from_unitary = [&](const CMatrix& u) {
    for (int k = 0; k < n_outcomes; ++k)
      vectors[static_cast<std::size_t>(k)] = u.col(k).head(d_b);
  };
  const auto objective = [&](const std::vector<double>& params) {
    vectors_from_unitary(chart.build(params));
    return detail::measured_conditional_entropy_vectors(rho_ab.matrix(), d_a, d_b, vectors, ws);
  };

  NelderMeadOptions nm_options;
  nm_options.max_iterations = cfg.max_iterations;
  nm_options.objective_tol = cfg.tol;

  const SeededRng root(cfg.seed);
  std::vector<StartOutcome> outcomes(static_cast<std::size_t>(cfg.starts));
  for (int s = 0; s < cfg.starts; ++s) {
    std::vector<double> start_params;
    if (s == 0) {
      // Zero-discord states are block-diagonal in the eigenbasis of rho_B,
      // so that basis is an informed deterministic start.
      CMatrix u0 = CMatrix::Identity(n_outcomes, n_outcomes);
      u0.topLeftCorner(d_b, d_b) = eig_hermitian(rho_b.matrix()).eigenvectors;
      start_params = chart.extract(u0);
    } else {
      SeededRng stream = root.derive(static_cast<std::uint64_t>(s));
      start_params = chart.extract(random_unitary(n_outcomes, stream));
    }
    const NelderMeadResult nm = nelder_mead(objective, start_params, nm_options);
    outcomes[static_cast<std::size_t>(s)] =
        StartOutcome{nm.value, nm.x, nm.converged};
  }

  // Deterministic reduction: lowest value wins, ties to the lowest index.
  int best_index = 0;
  for (int s = 1; s < cfg.starts; ++s)
    if (outcomes[static_cast<std::size_t>(s)].value <
        outcomes[static_cast<std::size_t>(best_index)].value)
      best_index = s;
  double second_best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < cfg.starts; ++s)
    if (s != best_index)
      second_best = std::min(second_best, outcomes[static_cast<std::size_t>(s)].value);

  const StartOutcome& best = outcomes[static_cast<std::size_t>(best_index)];
  const double min_h = best.value;
  const double spread = (cfg.starts >= 2) ? (second_best - min_h) : 0.0;
  const bool converged =
      (cfg.starts >= 2) ? (spread <= 10.0 * cfg.tol) : best.nm_converged;

  const CMatrix u_best = chart.build(best.params);
  Povm povm = [&] {
    if (projective) return Povm::projective(u_best);
    std::vector<CVector> vecs;
    vecs.reserve(static_cast<std::size_t>(n_outcomes));
    for (int k = 0; k < n_outcomes; ++k) vecs.push_back(u_best.col(k).head(d_b));
    return Povm::from_vectors(std::move(vecs));
  }();

  const double j = h_a - min_h;
  const double i = h_a + h_b - h_ab;
  return DiscordResult{i - j,
                       j,
                       i,
                       min_h,
                       std::move(povm),
                       cfg.starts,
                       converged,
                       spread};
}

double classical_correlations(const DensityMatrix& rho_ab, const OptimizerConfig& cfg) {
  return discord(rho_ab, cfg).classical_correlations;
}

std::pair<double, Povm> brute_force_min_conditional_entropy(const DensityMatrix& rho_ab,
                                                            int grid_resolution) {
  if (rho_ab.num_subsystems() != 2)
    throw ValidationError("oracle: state must have exactly two subsystems");
  if (rho_ab.dim(1) != 2) throw ValidationError("oracle: requires dim(B) = 2");
  if (grid_resolution < 1) throw ValidationError("oracle: grid_resolution must be >= 1");

  const int d_a = rho_ab.dim(0);
  detail::MeasurementWorkspace ws(d_a);
  std::vector<CVector> vectors(2, CVector(2));

  double best = std::numeric_limits<double>::infinity();
  double best_theta = 0.0, best_phi = 0.0;
  for (int i = 0; i <= grid_resolution; ++i) {
    const double theta = kPi * static_cast<double>(i) / grid_resolution;
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    for (int j = 0; j < grid_resolution; ++j) {
      const double phi = 2.0 * kPi * static_cast<double>(j) / grid_resolution;
      const std::complex<double> e(std::cos(phi), std::sin(phi));
      vectors[0](0) = c;
      vectors[0](1) = e * s;
      vectors[1](0) = -std::conj(e) * s;
      vectors[1](1) = c;
      const double h = detail::measured_conditional_entropy_vectors(rho_ab.matrix(), d_a, 2,
                                                                    vectors, ws);
      if (h < best) {
        best = h;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }
  return {best, bloch_projective(best_theta, best_phi)};
}

}  // namespace qd
