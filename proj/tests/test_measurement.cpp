#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qd/density.hpp"
#include "qd/entropy.hpp"
#include "qd/errors.hpp"
#include "qd/measurement.hpp"
#include "qd/rng.hpp"

using namespace qd;

namespace {

constexpr double kPi = 3.14159265358979323846;

DensityMatrix bell_state() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return DensityMatrix(std::move(m), {2, 2});
}

DensityMatrix classical_mix() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = m(3, 3) = 0.5;
  return DensityMatrix(std::move(m), {2, 2});
}

DensityMatrix random_bipartite(int d_a, int d_b, std::uint64_t seed) {
  SeededRng rng(seed);
  const DensityMatrix flat = random_density(d_a * d_b, d_a * d_b, rng);
  return DensityMatrix(flat.matrix(), {d_a, d_b});
}

}  // namespace

TEST_CASE("projective povm from the identity is the computational basis") {
  const Povm povm = Povm::projective(CMatrix::Identity(3, 3));
  CHECK(povm.outcome_count() == 3);
  for (int k = 0; k < 3; ++k) {
    CMatrix expected = CMatrix::Zero(3, 3);
    expected(k, k) = 1.0;
    CHECK(max_abs(povm.elements()[static_cast<std::size_t>(k)] - expected) < 1e-15);
  }
}

TEST_CASE("projective povm from a Hadamard-like unitary gives the |+>/|-> projectors") {
  const double s = 1.0 / std::sqrt(2.0);
  CMatrix h(2, 2);
  h << s, s, s, -s;
  const Povm povm = Povm::projective(h);
  CMatrix plus(2, 2), minus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  minus << 0.5, -0.5, -0.5, 0.5;
  CHECK(max_abs(povm.elements()[0] - plus) < 1e-12);
  CHECK(max_abs(povm.elements()[1] - minus) < 1e-12);
}

TEST_CASE("projective povm satisfies completeness and rank-1 invariants") {
  SeededRng rng(5);
  const Povm povm = Povm::projective(random_unitary(3, rng));
  CMatrix sum = CMatrix::Zero(3, 3);
  for (const auto& e : povm.elements()) {
    sum += e;
    const RVector eigs = hermitian_eigenvalues(e);
    CHECK(eigs.minCoeff() >= -1e-9);
    CHECK(eigs(1) <= 1e-9);  // second-largest eigenvalue
  }
  CHECK(max_abs(sum - CMatrix::Identity(3, 3)) <= 1e-9);
}

TEST_CASE("non-unitary input is rejected") {
  CMatrix m = CMatrix::Identity(2, 2);
  m(0, 0) = 0.5;
  CHECK_THROWS_AS(Povm::projective(m), ValidationError);
}

TEST_CASE("povm from explicit elements validates and factorizes") {
  const Povm reference = bloch_projective(1.1, 0.4);
  const Povm round_trip = Povm::from_elements(reference.elements());
  CHECK(max_abs(round_trip.elements()[0] - reference.elements()[0]) < 1e-12);

  // rank-2 element rejected
  CHECK_THROWS_AS(Povm::from_elements({CMatrix::Identity(2, 2)}), ValidationError);
  // incomplete family rejected
  CMatrix half = CMatrix::Zero(2, 2);
  half(0, 0) = 1.0;
  CHECK_THROWS_AS(Povm::from_elements({half}), ValidationError);
}

TEST_CASE("bloch projective hits the named bases") {
  const Povm z = bloch_projective(0.0, 0.0);
  CMatrix p0 = CMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  CHECK(max_abs(z.elements()[0] - p0) < 1e-15);

  const Povm x = bloch_projective(kPi / 2.0, 0.0);
  CMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK(max_abs(x.elements()[0] - plus) < 1e-12);
}

TEST_CASE("bloch projective is complete for arbitrary angles") {
  SeededRng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const double theta = 4.0 * kPi * (rng.uniform() - 0.5);
    const double phi = 4.0 * kPi * (rng.uniform() - 0.5);
    const Povm povm = bloch_projective(theta, phi);
    CHECK(max_abs(povm.elements()[0] + povm.elements()[1] - CMatrix::Identity(2, 2)) <= 1e-12);
  }
}

TEST_CASE("post-measurement ensemble of a product state reproduces rho_A") {
  SeededRng rng(10);
  const DensityMatrix a = random_density(3, 3, rng);
  const DensityMatrix b = random_density(2, 2, rng);
  const DensityMatrix ab = tensor(a, b);
  const Povm povm = Povm::projective(random_unitary(2, rng));

  const ConditionalEnsemble ens = post_measurement_ensemble(ab, povm);
  for (int i = 0; i < ens.outcome_count(); ++i) {
    const double expected_p =
        (povm.vectors()[static_cast<std::size_t>(i)].adjoint() * b.matrix() *
         povm.vectors()[static_cast<std::size_t>(i)])
            .value()
            .real();
    CHECK(ens.probs[i] == doctest::Approx(expected_p).epsilon(1e-10));
    if (ens.significant[static_cast<std::size_t>(i)])
      CHECK(max_abs(ens.states[static_cast<std::size_t>(i)].matrix() - a.matrix()) < 1e-9);
  }
}

TEST_CASE("post-measurement ensemble of the Bell state in the computational basis") {
  const ConditionalEnsemble ens =
      post_measurement_ensemble(bell_state(), Povm::projective(CMatrix::Identity(2, 2)));
  CHECK(ens.probs[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(ens.probs[1] == doctest::Approx(0.5).epsilon(1e-12));
  CMatrix p0 = CMatrix::Zero(2, 2), p1 = CMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  CHECK(max_abs(ens.states[0].matrix() - p0) < 1e-12);
  CHECK(max_abs(ens.states[1].matrix() - p1) < 1e-12);
}

TEST_CASE("ensemble mixture consistency on random states") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = random_bipartite(3, 2, seed);
    SeededRng rng(seed + 1000);
    const Povm povm = Povm::projective(random_unitary(2, rng));
    const ConditionalEnsemble ens = post_measurement_ensemble(rho, povm);

    CMatrix mix = CMatrix::Zero(3, 3);
    double total = 0.0;
    for (int i = 0; i < ens.outcome_count(); ++i) {
      mix += ens.probs[i] * ens.states[static_cast<std::size_t>(i)].matrix();
      total += ens.probs[i];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(max_abs(mix - partial_trace(rho, {0}).matrix()) < 1e-9);
  }
}

TEST_CASE("zero-probability outcomes are flagged and skipped") {
  SeededRng rng(2);
  const DensityMatrix a = random_density(2, 2, rng);
  CMatrix b0 = CMatrix::Zero(2, 2);
  b0(0, 0) = 1.0;  // B definitely in |0>
  const DensityMatrix ab = tensor(a, DensityMatrix(b0, {2}));
  const ConditionalEnsemble ens =
      post_measurement_ensemble(ab, Povm::projective(CMatrix::Identity(2, 2)));
  CHECK(ens.significant[0]);
  CHECK_FALSE(ens.significant[1]);
  CHECK(ens.probs[1] <= kOutcomeEps);
  CHECK(measured_conditional_entropy(ab, Povm::projective(CMatrix::Identity(2, 2))) ==
        doctest::Approx(von_neumann(a)).epsilon(1e-9));
}

TEST_CASE("measured conditional entropy of a product state equals H(A) for any povm") {
  SeededRng rng(20);
  const DensityMatrix a = random_density(3, 2, rng);
  const DensityMatrix b = random_density(2, 2, rng);
  const DensityMatrix ab = tensor(a, b);
  const double h_a = von_neumann(a);
  for (int trial = 0; trial < 10; ++trial) {
    const Povm povm = Povm::projective(random_unitary(2, rng));
    CHECK(measured_conditional_entropy(ab, povm) == doctest::Approx(h_a).epsilon(1e-9));
  }
}

TEST_CASE("measured conditional entropy of the Bell state vanishes in every basis") {
  const DensityMatrix bell = bell_state();
  for (int i = 0; i <= 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const Povm povm = bloch_projective(kPi * i / 8.0, 2.0 * kPi * j / 8.0);
      CHECK(measured_conditional_entropy(bell, povm) == doctest::Approx(0.0).epsilon(1e-9));
    }
}

TEST_CASE("measured conditional entropy of the classical mix depends on the basis") {
  const DensityMatrix mix = classical_mix();
  CHECK(measured_conditional_entropy(mix, bloch_projective(0.0, 0.0)) ==
        doctest::Approx(0.0).epsilon(1e-10));
  CHECK(measured_conditional_entropy(mix, bloch_projective(kPi / 2.0, 0.0)) ==
        doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("measured conditional entropy obeys the entropic sandwich") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int d_a = 2 + static_cast<int>(seed % 2);
    const DensityMatrix rho = random_bipartite(d_a, 2, seed);
    SeededRng rng(seed + 500);
    const Povm povm = Povm::projective(random_unitary(2, rng));
    const double h_tilde = measured_conditional_entropy(rho, povm);
    CHECK(h_tilde >= conditional_entropy(rho) - 1e-9);
    CHECK(h_tilde <= von_neumann(partial_trace(rho, {0})) + 1e-9);
  }
}

TEST_CASE("permuting povm elements leaves the measured entropy unchanged") {
  const DensityMatrix rho = random_bipartite(2, 3, 77);
  SeededRng rng(78);
  const CMatrix u = random_unitary(3, rng);
  std::vector<CVector> fwd{u.col(0), u.col(1), u.col(2)};
  std::vector<CVector> rev{u.col(2), u.col(0), u.col(1)};
  const double h1 = measured_conditional_entropy(rho, Povm::from_vectors(fwd));
  const double h2 = measured_conditional_entropy(rho, Povm::from_vectors(rev));
  CHECK(std::abs(h1 - h2) <= 1e-12);
}

TEST_CASE("dimension mismatches are rejected") {
  const DensityMatrix rho = random_bipartite(2, 3, 5);
  CHECK_THROWS_AS(measured_conditional_entropy(rho, bloch_projective(0.3, 0.1)),
                  ValidationError);
  SeededRng rng(6);
  const DensityMatrix single = random_density(4, 4, rng);
  CHECK_THROWS_AS(post_measurement_ensemble(single, bloch_projective(0.0, 0.0)),
                  ValidationError);
}
