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
#include "cvstretch/stretching.hpp"

using namespace cvstretch;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double max_diff(const GaussianChannelTriplet& a, const GaussianChannelTriplet& b) {
  return std::max({(a.K - b.K).cwiseAbs().maxCoeff(), (a.m - b.m).cwiseAbs().maxCoeff(),
                   (a.alpha - b.alpha).cwiseAbs().maxCoeff()});
}

}  // namespace

TEST_CASE("loss plan parameters", "[stretching]") {
  const auto plan = make_plan(pure_loss(0.5), 0.9);
  REQUIRE(is_pure_loss(plan.resource_channel));
  CHECK_THAT(std::get<channel_kind::ThermalLoss>(plan.resource_channel).eta,
             WithinAbs(0.6172839506172839, 1e-15));
  CHECK_THAT(plan.gain, WithinAbs(std::sqrt(0.5), 1e-15));
  CHECK(plan.exact);
  CHECK(plan.residual_noise == 0.0);
  CHECK(max_diff(achieved_channel(plan), make_channel(pure_loss(0.5))) < 1e-12);
  CHECK(plan.resource_chain.size() == 1);
}

TEST_CASE("thermal-loss plans carry the excess noise on the resource", "[stretching]") {
  const auto plan = make_plan(thermal_loss(0.5, 0.2), 0.9);
  const auto& res = std::get<channel_kind::ThermalLoss>(plan.resource_channel);
  CHECK_THAT(res.eta, WithinAbs(0.5 / 0.81, 1e-15));
  CHECK(res.excess_noise == 0.2);
  CHECK(max_diff(achieved_channel(plan), make_channel(thermal_loss(0.5, 0.2))) < 1e-12);
}

TEST_CASE("amplifier plan parameters", "[stretching]") {
  const auto plan = make_plan(amplifier(2.0, 0.0), 0.9);
  const auto& res = std::get<channel_kind::Amplifier>(plan.resource_channel);
  CHECK_THAT(res.kappa, WithinAbs(2.469135802469136, 1e-14));
  CHECK(res.excess_noise == 0.0);
  CHECK_THAT(plan.gain, WithinAbs(std::sqrt(2.0), 1e-15));
  CHECK_FALSE(plan.exact);
  CHECK_THAT(plan.residual_noise, WithinAbs(0.4691358024691358, 1e-15));
  const auto& achieved = std::get<channel_kind::Amplifier>(plan.achieved);
  CHECK_THAT(achieved.excess_noise, WithinAbs(0.4691358024691358, 1e-15));
  CHECK(max_diff(achieved_channel(plan), make_channel(amplifier(2.0, 0.4691358024691358))) < 1e-12);
}

TEST_CASE("additive-noise plan", "[stretching]") {
  const auto plan = make_plan(additive_noise(0.3), 0.99);
  CHECK_FALSE(plan.exact);
  CHECK_THAT(plan.residual_noise, WithinAbs(0.020304050607080910, 1e-15));
  REQUIRE(plan.resource_chain.size() == 2);
  CHECK(is_amplifier(plan.resource_chain[0]));
  CHECK(plan.gain == 1.0);
  const auto t = achieved_channel(plan);
  CHECK(t.K.isApprox(Eigen::Matrix2d::Identity()));
  CHECK_THAT(t.alpha(0, 0), WithinAbs(0.3 + 0.020304050607080910, 1e-14));
  CHECK_THAT(t.alpha(1, 1), WithinAbs(0.020304050607080910, 1e-14));
  CHECK_THAT(t.alpha(0, 1), WithinAbs(0.0, 1e-15));
  CHECK(max_diff(resource_triplet(plan),
                 compose(make_channel(amplifier(1.0 / (0.99 * 0.99))), make_channel(additive_noise(0.3)))) <
        1e-15);
}

TEST_CASE("plan errors", "[stretching]") {
  try {
    make_plan(pure_loss(0.9), 0.9);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("xi^2 > eta") != std::string::npos);
  }
  CHECK_THROWS_AS(make_plan(pure_loss(0.81), 0.9), ValidationError);
  CHECK_THROWS_AS(make_plan(identity_channel(), 0.9), ValidationError);
  CHECK_THROWS_AS(make_plan(amplifier(2.0), 1.0), ValidationError);
  CHECK_THROWS_AS(make_plan(amplifier(2.0), 0.0), ValidationError);
}

TEST_CASE("loss plans are exact over the parameter grid", "[stretching][property]") {
  int points = 0;
  for (int i = 1; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {
      for (double n : {0.0, 0.05, 0.5}) {
        const double eta = 0.049 * i;
        const double xi = 0.0499 * j;
        if (xi * xi <= eta) continue;
        ++points;
        const auto plan = make_plan(thermal_loss(eta, n), xi);
        CHECK(plan.exact);
        CHECK_THAT(std::get<channel_kind::ThermalLoss>(plan.resource_channel).eta,
                   WithinRel(eta / (xi * xi), 1e-15));
        CHECK(max_diff(achieved_channel(plan), make_channel(thermal_loss(eta, n))) < 1e-12);
      }
    }
  }
  CHECK(points > 100);
}

TEST_CASE("residual noise shrinks as xi grows", "[stretching][property]") {
  for (const auto& target : {amplifier(1.0), amplifier(3.0, 0.2), additive_noise(0.4)}) {
    double previous = INFINITY;
    for (int i = 1; i <= 99; ++i) {
      const auto plan = make_plan(target, 0.01 * i);
      CHECK_FALSE(plan.exact);
      CHECK(plan.residual_noise > 0.0);
      CHECK(plan.residual_noise < previous);
      previous = plan.residual_noise;
    }
    CHECK(previous < 0.1);
  }
}

TEST_CASE("Gaussian Bell conditioning agrees with the Fock projection", "[stretching]") {
  for (double xi : {0.5, 0.9}) {
    for (const std::complex<double> a0 : {std::complex<double>{0.0, 0.0}, {0.6, -0.2}}) {
      for (const std::complex<double> beta : {std::complex<double>{0.3, 0.4}, {-1.1, 0.2}}) {
        const auto g = bell_conditional(coherent(a0), xi, beta);
        const auto f = fock::bell_project(beta, xi, fock::density(fock::make_ket(fock::ket_kind::Coherent{a0}).ket));
        CHECK_THAT(g.density, WithinRel(f.weight, 1e-8));
        const auto m = fock::quadrature_moments(f.state);
        CHECK((g.state.mean() - m.mean).cwiseAbs().maxCoeff() < 1e-8);
        CHECK((g.state.cov() - m.cov).cwiseAbs().maxCoeff() < 1e-8);
        const std::complex<double> expected = xi * (a0 + beta);
        CHECK_THAT(g.state.mean()(0), WithinAbs(std::numbers::sqrt2 * expected.real(), 1e-12));
      }
    }
  }
}

TEST_CASE("Gaussian outcome density integrates to one", "[stretching]") {
  const double xi = 0.7;
  const auto input = thermal(0.5);
  const double h = 0.25;
  double total = 0.0;
  for (double x = -14.0; x <= 14.0; x += h) {
    for (double p = -14.0; p <= 14.0; p += h) {
      total += bell_conditional(input, xi, {x / std::numbers::sqrt2, p / std::numbers::sqrt2}).density;
    }
  }
  CHECK_THAT(total * h * h, WithinAbs(1.0, 1e-9));
  CHECK_THROWS_AS(bell_conditional(vacuum(2), xi, 0.0), ValidationError);
}
