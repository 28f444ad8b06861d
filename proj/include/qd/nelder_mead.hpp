#pragma once

#include <functional>
#include <vector>

namespace qd {

struct NelderMeadOptions {
  int max_iterations = 500;
  double objective_tol = 1e-9;  // stop when the simplex value spread drops below this
  double initial_step = 0.3;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Downhill-simplex minimization. Candidate points are proposed by
/// reflection/expansion/contraction, accepted only on objective decrease,
/// with a shrink step on stagnation. Deterministic for a given start.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             const std::vector<double>& start, const NelderMeadOptions& options);

}  // namespace qd
