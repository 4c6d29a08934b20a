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

#include "cvstretch/stretching.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cvstretch/errors.hpp"

namespace cvstretch {

StretchPlan make_plan(const ChannelKind& target, double xi) {
  validate(target);
  if (!(xi > 0.0 && xi < 1.0)) {
    throw ValidationError("two-mode squeezing parameter xi must lie in (0, 1)");
  }
  const double xi2 = xi * xi;
  StretchPlan plan{target, xi, identity_channel(), {}, 1.0, target, false, 0.0};

  if (const auto* loss = std::get_if<channel_kind::ThermalLoss>(&target)) {
    if (!(xi2 > loss->eta)) {
      std::ostringstream msg;
      msg << "loss target requires xi^2 > eta so the resource is a loss channel (xi^2 = "
          << xi2 << ", eta = " << loss->eta << ")";
      throw ValidationError(msg.str());
    }
    plan.resource_channel = thermal_loss(loss->eta / xi2, loss->excess_noise);
    plan.gain = std::sqrt(loss->eta);
    plan.exact = true;
  } else if (const auto* amp = std::get_if<channel_kind::Amplifier>(&target)) {
    plan.resource_channel = amplifier(amp->kappa / xi2, amp->excess_noise);
    plan.gain = std::sqrt(amp->kappa);
    plan.residual_noise = amp->kappa * (1.0 - xi2) / xi2;
    plan.achieved = amplifier(amp->kappa, amp->excess_noise + plan.residual_noise);
  } else if (const auto* noise = std::get_if<channel_kind::AdditiveNoise>(&target)) {
    // kappa = 1 amplifier plan, then the single-quadrature noise on top.
    const ChannelKind amp_stage = amplifier(1.0 / xi2, 0.0);
    plan.resource_chain = {amp_stage, *noise};
    plan.resource_channel =
        channel_kind::Other{compose(make_channel(amp_stage), make_channel(*noise))};
    plan.residual_noise = (1.0 - xi2) / xi2;
  } else {
    throw ValidationError("stretch plans support pure_loss, thermal_loss, amplifier and "
                          "additive_noise targets");
  }
  if (plan.resource_chain.empty()) plan.resource_chain = {plan.resource_channel};
  if (std::holds_alternative<channel_kind::AdditiveNoise>(target)) {
    plan.achieved = classify(achieved_channel(plan));
  }
  return plan;
}

GaussianChannelTriplet resource_triplet(const StretchPlan& plan) {
  GaussianChannelTriplet out;
  for (const auto& stage : plan.resource_chain) out = compose(out, make_channel(stage));
  return out;
}

GaussianChannelTriplet achieved_channel(const StretchPlan& plan) {
  const GaussianChannelTriplet out =
      compose(make_channel(pure_loss(plan.xi * plan.xi)), resource_triplet(plan));
  const double g = covariance_gain(out);
  if (std::abs(g - plan.gain) > 1e-12 * std::max(1.0, plan.gain)) {
    throw ValidationError("stretch plan correction gain does not match the realised channel");
  }
  return out;
}

BellConditional bell_conditional(const GaussianState& input, double xi,
                                 std::complex<double> beta) {
  if (input.n_modes() != 1) throw ValidationError("Bell measurement input must be single-mode");
  const GaussianState joint = tensor(input, two_mode_squeezed(xi));
  Eigen::Matrix<double, 2, 6> measured = Eigen::Matrix<double, 2, 6>::Zero();
  measured(0, 0) = 1.0;   // x_A
  measured(0, 2) = -1.0;  // -x_A'
  measured(1, 1) = 1.0;   // p_A
  measured(1, 3) = 1.0;   // p_A'

  const Eigen::Vector2d mean_q = measured * joint.mean();
  const Eigen::Matrix2d cov_qq = measured * joint.cov() * measured.transpose();
  const Eigen::Matrix2d cov_bq = joint.cov().block<2, 6>(4, 0) * measured.transpose();
  const Eigen::Matrix2d gain = cov_qq.ldlt().solve(cov_bq.transpose()).transpose();

  const Eigen::Vector2d q(-std::numbers::sqrt2 * beta.real(), -std::numbers::sqrt2 * beta.imag());
  const Eigen::Vector2d dq = q - mean_q;
  const double density = std::exp(-0.5 * dq.dot(cov_qq.ldlt().solve(dq))) /
                         (2.0 * std::numbers::pi * std::sqrt(cov_qq.determinant()));

  const Eigen::Vector2d mean_b = joint.mean().segment<2>(4) + gain * dq;
  Eigen::Matrix2d cov_b = joint.cov().block<2, 2>(4, 4) - gain * cov_bq.transpose();
  cov_b = 0.5 * (cov_b + cov_b.transpose()).eval();
  return {density, GaussianState(mean_b, cov_b)};
}

}  // namespace cvstretch
