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

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "cvstretch/channel.hpp"
#include "cvstretch/gaussian_state.hpp"

namespace cvstretch {

/// LOCC simulation of a target channel from a finite-energy resource.
///
/// The protocol: CV-Bell measurement (outcome beta) on the input and one
/// half of a two-mode squeezed state with parameter xi, the resource channel
/// on the other half, then the correction D(gain * beta)^dag. Averaged over
/// beta this realises the channel in the achieved field.
struct StretchPlan {
  ChannelKind target;
  double xi;
  ChannelKind resource_channel;
  // The resource channel as standard kinds, applied first to last. Equal to
  // {resource_channel} except for additive-noise targets.
  std::vector<ChannelKind> resource_chain;
  double gain;
  ChannelKind achieved;
  // True iff achieved == target.
  bool exact;
  // Isotropic noise added on top of the target: kappa (1 - xi^2) / xi^2 for
  // amplifier and additive-noise plans (kappa = 1 for the latter), 0 for loss.
  double residual_noise;
};

// Loss targets (pure or thermal, eta in (0, xi^2)) use the resource
// E_{eta/xi^2}^N and gain sqrt(eta); they are exact. Amplifier targets use
// A_{kappa/xi^2}^N and gain sqrt(kappa) and achieve
// A_kappa^{N + kappa (1 - xi^2)/xi^2}. Additive-noise targets use the kappa = 1
// amplifier plan followed by the additive noise. Raises ValidationError when
// xi^2 <= eta for a loss target or the target kind is unsupported.
StretchPlan make_plan(const ChannelKind& target, double xi);

// Triplet of the resource channel (the resource chain composed in order).
GaussianChannelTriplet resource_triplet(const StretchPlan& plan);

// Triplet the protocol realises: pure_loss(xi^2) followed by the resource
// channel, whose K must equal gain * identity so the correction undoes the
// outcome displacement.
GaussianChannelTriplet achieved_channel(const StretchPlan& plan);

struct BellConditional {
  // Outcome density per unit dx dp, beta = (x + i p) / sqrt(2).
  double density;
  // Conditional state of the output mode B before the resource channel.
  GaussianState state;
};

/// Gaussian CV-Bell measurement on a single-mode input (A) and mode A' of a
/// two-mode squeezed state (A', B).
///
/// Measures the commuting quadratures u = x_A - x_A' and v = p_A + p_A' and
/// labels the outcome beta = -(u + i v) / sqrt(2), so that a coherent input
/// |a> leaves B in |xi (a + beta)>.
BellConditional bell_conditional(const GaussianState& input, double xi,
                                 std::complex<double> beta);

struct MonteCarloResult {
  std::size_t samples;
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;
  Eigen::Vector2d mean_stderr;
  Eigen::Matrix2d cov_stderr;
};

inline constexpr std::size_t kMinMonteCarloSamples = 1000;

/// Monte-Carlo run of the LOCC protocol at the level of Gaussian moments.
///
/// Each sample draws a Bell outcome, conditions mode B, applies the resource
/// channel and the correction displacement. The outcome-averaged state has
/// covariance E[cov_out] + Cov(mean_out). Samples are drawn in fixed blocks,
/// each with its own generator seeded from (seed, block index), so the result
/// is identical for a given seed regardless of thread count.
MonteCarloResult simulate_locc_gaussian(const StretchPlan& plan, const GaussianState& input,
                                        std::size_t n_samples, std::uint64_t seed);

}  // namespace cvstretch
