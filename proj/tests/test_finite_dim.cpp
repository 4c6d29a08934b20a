// Copyright 2026 The cvstretch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "cvstretch/errors.hpp"
#include "cvstretch/finite_dim.hpp"
#include "oracles.hpp"

using namespace cvstretch;
using namespace cvstretch::finite;
using Catch::Matchers::WithinAbs;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("Weyl operators", "[finite]") {
  CHECK(max_abs(weyl(2, 0, 0).matrix() - Eigen::MatrixXcd::Identity(2, 2)) == 0.0);
  Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(2);
  zero(0) = 1.0;
  const Eigen::VectorXcd flipped = weyl(2, 1, 0).matrix() * zero;
  CHECK_THAT(std::abs(flipped(1)), WithinAbs(1.0, 1e-15));
  CHECK_THAT(std::abs(flipped(0)), WithinAbs(0.0, 1e-15));
  CHECK_THROWS_AS(weyl(2, 2, 0), ValidationError);
  CHECK_THROWS_AS(weyl(1, 0, 0), ValidationError);

  for (std::size_t d : {2u, 3u}) {
    for (std::size_t k = 0; k < d * d; ++k) {
      const auto w = weyl(d, k / d, k % d).matrix();
      CHECK(max_abs(w * w.adjoint() - Eigen::MatrixXcd::Identity(d, d)) < 1e-14);
      for (std::size_t l = 0; l < d * d; ++l) {
        const auto v = weyl(d, l / d, l % d).matrix();
        const std::complex<double> tr = (w.adjoint() * v).trace();
        CHECK_THAT(std::abs(tr), WithinAbs(k == l ? static_cast<double>(d) : 0.0, 1e-12));
      }
    }
  }
}

TEST_CASE("teleportation outcomes", "[finite]") {
  std::mt19937_64 rng(1);
  const DenseOperator rho(oracle::random_density(3, rng));
  CHECK(max_abs(teleport(rho, {0, 0}, 3).state.matrix() - rho.matrix()) < 1e-15);

  Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(2, 2);
  zero(0, 0) = 1.0;
  const auto out = teleport(DenseOperator(zero), {1, 0}, 2);
  CHECK_THAT(out.state.matrix()(1, 1).real(), WithinAbs(1.0, 1e-15));
  CHECK_THAT(out.weight, WithinAbs(0.25, 0.0));

  for (std::size_t d : {2u, 3u}) {
    const DenseOperator r(oracle::random_density(static_cast<int>(d), rng));
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = 0; b < d; ++b) {
        const auto t = teleport(r, {a, b}, d);
        const auto s = weyl(d, a, b).matrix();
        const Eigen::MatrixXcd corrected = s.adjoint() * t.state.matrix() * s;
        CHECK(max_abs(corrected - r.matrix()) < 1e-12);
        sum += t.weight * corrected;
      }
    }
    CHECK(max_abs(sum - r.matrix()) < 1e-12);
  }
}

TEST_CASE("stretchability of standard qubit channels", "[finite]") {
  auto cert = stretch_check(depolarizing(0.3, 2), 2);
  REQUIRE(cert.stretchable);
  REQUIRE(cert.corrections.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(cert.corrections[k] == WeylIndex{k / 2, k % 2});

  cert = stretch_check({Eigen::MatrixXcd::Identity(2, 2)}, 2);
  REQUIRE(cert.stretchable);
  for (std::size_t k = 0; k < 4; ++k) CHECK(cert.corrections[k] == WeylIndex{k / 2, k % 2});

  CHECK_FALSE(stretch_check(amplitude_damping(0.5), 2).stretchable);
  CHECK(stretch_check(pauli_channel({0.5, 0.2, 0.2, 0.1}), 2).stretchable);

  KrausSet leaky = amplitude_damping(0.5);
  leaky[0] *= 0.9;
  CHECK_THROWS_AS(stretch_check(leaky, 2), ValidationError);
  CHECK_THROWS_AS(pauli_channel({0.5, 0.5, 0.5, 0.0}), ValidationError);
}

TEST_CASE("finite Choi states", "[finite]") {
  const auto id = choi_finite({Eigen::MatrixXcd::Identity(2, 2)}, 2).matrix();
  Eigen::MatrixXcd bell = Eigen::MatrixXcd::Zero(4, 4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  CHECK(max_abs(id - bell) < 1e-15);

  const auto full = choi_finite(depolarizing(1.0, 2), 2).matrix();
  CHECK(max_abs(full - 0.25 * Eigen::MatrixXcd::Identity(4, 4)) < 1e-15);

  const auto dep = choi_finite(depolarizing(0.3, 2), 2).matrix();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(dep);
  const Eigen::VectorXd ev = eig.eigenvalues();
  CHECK_THAT(ev(0), WithinAbs(0.075, 1e-14));
  CHECK_THAT(ev(1), WithinAbs(0.075, 1e-14));
  CHECK_THAT(ev(2), WithinAbs(0.075, 1e-14));
  CHECK_THAT(ev(3), WithinAbs(0.775, 1e-14));
  CHECK_THAT(dep.trace().real(), WithinAbs(1.0, 1e-14));
}

TEST_CASE("Bell measurement on the Choi resource simulates the channel", "[finite][property]") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::size_t d : {2u, 3u}) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> p(d * d);
      double total = 0.0;
      for (auto& x : p) total += (x = u(rng));
      for (auto& x : p) x /= total;
      const KrausSet channel = weyl_channel(p, d);
      const auto cert = stretch_check(channel, d);
      REQUIRE(cert.stretchable);
      const DenseOperator rho(oracle::random_density(static_cast<int>(d), rng));
      const auto simulated = simulate_stretch(channel, cert, rho, d);
      CHECK(max_abs(simulated.matrix() - apply_kraus(channel, rho.matrix())) <= 1e-12);
    }
  }
  CHECK_THROWS_AS(simulate_stretch(amplitude_damping(0.5), stretch_check(amplitude_damping(0.5), 2),
                                   DenseOperator(Eigen::MatrixXcd::Identity(2, 2) / 2.0), 2),
                  ValidationError);
}
