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
#include <numbers>

#include "cvstretch/errors.hpp"
#include "cvstretch/fock.hpp"
#include "oracles.hpp"

using namespace cvstretch;
using namespace cvstretch::fock;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("two-mode squeezed ket", "[fock]") {
  const auto t = make_ket(ket_kind::TwoModeSqueezed{0.8}, 40);
  CHECK(t.ket.modes() == 2);
  CHECK(t.ket.amplitudes().size() == 41 * 41);
  CHECK_THAT(t.ket.norm() * t.ket.norm(), WithinAbs(1.0 - std::pow(0.64, 41), 1e-14));
  CHECK_THAT(t.norm_deficit, WithinRel(std::pow(0.64, 41), 1e-6));
  CHECK(make_ket(ket_kind::TwoModeSqueezed{0.95}, 40).starved());
  for (int n : {0, 3, 17}) {
    CHECK_THAT(t.ket.amplitudes()(n * 41 + n).real(), WithinAbs(0.6 * std::pow(0.8, n), 1e-15));
  }
  CHECK(t.ket.amplitudes()(1).real() == 0.0);
  CHECK_FALSE(make_ket(ket_kind::TwoModeSqueezed{0.5}, 40).starved());
}

TEST_CASE("coherent and number kets", "[fock]") {
  const auto zero = make_ket(ket_kind::Coherent{0.0}, 10);
  CHECK_THAT(std::abs(zero.ket.amplitudes()(0)), WithinAbs(1.0, 1e-15));
  CHECK_THAT(zero.ket.amplitudes().tail(10).norm(), WithinAbs(0.0, 1e-15));

  const std::complex<double> alpha(1.1, -0.6);
  const auto c = make_ket(ket_kind::Coherent{alpha}, 40);
  CHECK((c.ket.amplitudes() - oracle::coherent_ket(alpha, 40)).norm() < 1e-14);

  const auto n = make_ket(ket_kind::Number{3}, 5);
  CHECK(n.ket.amplitudes()(3) == 1.0);
  CHECK(n.norm_deficit == 0.0);
  CHECK_THROWS_AS(make_ket(ket_kind::Number{6}, 5), ValidationError);
  CHECK_THROWS_AS(make_ket(ket_kind::TwoModeSqueezed{1.0}, 5), ValidationError);

  CHECK(make_ket(ket_kind::Coherent{{5.0, 0.0}}, 10).starved());
}

TEST_CASE("displacement matrix elements", "[fock]") {
  for (const std::complex<double> beta : {std::complex<double>{0.3, 0.0}, {-0.5, 0.8}, {0.0, -1.0}}) {
    const auto d = displacement_matrix(beta, 40);
    CHECK_THAT(d.matrix()(0, 0).real(), WithinAbs(std::exp(-0.5 * std::norm(beta)), 1e-15));
    const Eigen::MatrixXcd ref = oracle::displacement_expm(beta, 40);
    CHECK((d.matrix() - ref).cwiseAbs().maxCoeff() < 1e-10);
    // D(beta)|0> is the coherent ket.
    CHECK((d.matrix().col(0) - oracle::coherent_ket(beta, 40)).norm() < 1e-13);
  }
}

TEST_CASE("large displacements stay exact element-wise", "[fock]") {
  const std::complex<double> beta(2.5, -1.5);
  const Eigen::MatrixXcd block = displacement_block(beta, 61, 31);
  const Eigen::MatrixXcd ref = oracle::displacement_expm(beta, 60, 200);
  CHECK((block - ref.leftCols(31)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("displacement inverse on the low block", "[fock]") {
  for (const std::complex<double> beta : {std::complex<double>{1.0, 0.0}, {0.6, -0.8}, {-0.2, 0.4}}) {
    const Eigen::MatrixXcd prod =
        displacement_matrix(beta, 40).matrix() * displacement_matrix(-beta, 40).matrix();
    const Eigen::MatrixXcd low = prod.topLeftCorner(21, 21);
    CHECK((low - Eigen::MatrixXcd::Identity(21, 21)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("displace keeps coherent states coherent", "[fock]") {
  const auto rho = density(make_ket(ket_kind::Coherent{{0.4, 0.1}}, 40).ket);
  const auto out = displace(rho, {0.3, -0.5}, 40);
  const auto ref = density(make_ket(ket_kind::Coherent{{0.7, -0.4}}, 40).ket);
  CHECK(distance(out, ref, Metric::trace) < 1e-10);
}

TEST_CASE("distance metrics", "[fock]") {
  const auto rho = density(make_ket(ket_kind::Coherent{{0.5, 0.5}}, 30).ket);
  CHECK_THAT(distance(rho, rho, Metric::trace), WithinAbs(0.0, 1e-12));
  CHECK_THAT(distance(rho, rho, Metric::fidelity), WithinAbs(1.0, 1e-10));
  const auto zero = density(make_ket(ket_kind::Number{0}, 30).ket);
  const auto one = density(make_ket(ket_kind::Number{1}, 30).ket);
  CHECK_THAT(distance(zero, one, Metric::trace), WithinAbs(1.0, 1e-12));
  CHECK_THAT(distance(zero, one, Metric::fidelity), WithinAbs(0.0, 1e-12));

  const std::complex<double> a(0.3, -0.2), b(-0.4, 0.6);
  const auto ra = density(make_ket(ket_kind::Coherent{a}, 40).ket);
  const auto rb = density(make_ket(ket_kind::Coherent{b}, 40).ket);
  const double overlap = std::norm(oracle::coherent_ket(a, 40).dot(oracle::coherent_ket(b, 40)));
  CHECK_THAT(distance(ra, rb, Metric::fidelity), WithinAbs(std::exp(-std::norm(a - b)), 1e-10));
  CHECK_THAT(distance(ra, rb, Metric::fidelity), WithinAbs(overlap, 1e-10));
  CHECK_THAT(distance(ra, rb, Metric::trace), WithinAbs(std::sqrt(1.0 - overlap), 1e-10));

  CHECK_THROWS_AS(distance(zero, density(make_ket(ket_kind::Number{0}, 20).ket), Metric::trace),
                  ValidationError);
}

TEST_CASE("quadrature moments follow the Gaussian convention", "[fock]") {
  const std::complex<double> alpha(0.6, -0.9);
  const auto m = quadrature_moments(density(make_ket(ket_kind::Coherent{alpha}, 60).ket));
  CHECK_THAT(m.mean(0), WithinAbs(std::numbers::sqrt2 * 0.6, 1e-12));
  CHECK_THAT(m.mean(1), WithinAbs(-std::numbers::sqrt2 * 0.9, 1e-12));
  CHECK((m.cov - 0.5 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-11);

  const auto th = quadrature_moments(thermal_density(0.7, 80));
  CHECK((th.cov - 1.2 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-10);

  const auto one = quadrature_moments(density(make_ket(ket_kind::Number{1}, 10).ket));
  CHECK((one.cov - 1.5 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-14);

  const auto e = extent(density(make_ket(ket_kind::Coherent{alpha}, 60).ket));
  CHECK(std::abs(e.mean_amplitude - alpha) < 1e-12);
  CHECK(e.spread < 1e-5);
}

TEST_CASE("thermal density and cutoff helpers", "[fock]") {
  const auto th = thermal_density(0.5, 40);
  CHECK_THAT(th.matrix()(0, 0).real(), WithinAbs(1.0 / 1.5, 1e-15));
  CHECK_THAT(th.matrix()(2, 2).real(), WithinAbs((1.0 / 1.5) * std::pow(0.5 / 1.5, 2), 1e-15));
  CHECK(th.matrix()(0, 1) == 0.0);
  CHECK(cutoff_for(0.0, 0.0) >= 25);
  CHECK(cutoff_for(3.0, 0.0) > cutoff_for(1.0, 0.0));
  CHECK(cutoff_for(1.0, 2.0) > cutoff_for(1.0, 0.0));

  const auto cut = with_cutoff(th, 10);
  CHECK(cut.cutoff() == 10);
  CHECK(cut.matrix()(10, 10) == th.matrix()(10, 10));
  const auto grown = with_cutoff(cut, 20);
  CHECK(grown.matrix()(15, 15) == 0.0);
}
