#include "qd/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qd/errors.hpp"

namespace qd {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             const std::vector<double>& start,
                             const NelderMeadOptions& options) {
  const std::size_t n = start.size();
  if (n == 0) {
    // Zero-dimensional problems are constant; report the single value.
    return NelderMeadResult{start, objective(start), 0, 1, true};
  }

  constexpr double kAlpha = 1.0;  // reflection
  constexpr double kGamma = 2.0;  // expansion
  constexpr double kRho = 0.5;    // contraction
  constexpr double kSigma = 0.5;  // shrink

  NelderMeadResult result;
  result.evaluations = 0;

  std::vector<std::vector<double>> simplex(n + 1, start);
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
  for (std::size_t i = 0; i <= n; ++i) {
    values[i] = objective(simplex[i]);
    ++result.evaluations;
  }

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), candidate(n);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    result.iterations = iter + 1;

    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    if (values[worst] - values[best] <= options.objective_tol) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
    }
    for (std::size_t k = 0; k < n; ++k) centroid[k] /= static_cast<double>(n);

    const auto propose = [&](double coeff) {
      for (std::size_t k = 0; k < n; ++k)
        candidate[k] = centroid[k] + coeff * (simplex[worst][k] - centroid[k]);
      ++result.evaluations;
      return objective(candidate);
    };

    const double reflected = propose(-kAlpha);
    if (reflected < values[best]) {
      const std::vector<double> reflected_point = candidate;
      const double expanded = propose(-kGamma);
      if (expanded < reflected) {
        simplex[worst] = candidate;
        values[worst] = expanded;
      } else {
        simplex[worst] = reflected_point;
        values[worst] = reflected;
      }
      continue;
    }
    if (reflected < values[second_worst]) {
      simplex[worst] = candidate;
      values[worst] = reflected;
      continue;
    }

    const double contracted =
        propose(reflected < values[worst] ? -kRho : kRho);
    if (contracted < std::min(reflected, values[worst])) {
      simplex[worst] = candidate;
      values[worst] = contracted;
      continue;
    }

    // stagnation: shrink toward the best vertex
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k)
        simplex[i][k] = simplex[best][k] + kSigma * (simplex[i][k] - simplex[best][k]);
      values[i] = objective(simplex[i]);
      ++result.evaluations;
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (values[i] < values[best]) best = i;
  result.x = simplex[best];
  result.value = values[best];
  return result;
}

}  // namespace qd
