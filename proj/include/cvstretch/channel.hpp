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

#include <cstddef>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "cvstretch/gaussian_state.hpp"

namespace cvstretch {

/// Single-mode Gaussian channel (K, m, alpha) acting on moments as
///   cov' = K^T cov K + alpha,   mean' = K^T mean + m.
///
/// A triplet is a plain value; physicality is checked by is_physical() and
/// enforced by the operations that need it.
struct GaussianChannelTriplet {
  Eigen::Matrix2d K = Eigen::Matrix2d::Identity();
  Eigen::Vector2d m = Eigen::Vector2d::Zero();
  Eigen::Matrix2d alpha = Eigen::Matrix2d::Zero();
};

namespace channel_kind {
// Thermal-loss channel with transmissivity eta in (0, 1) and excess noise N.
struct ThermalLoss {
  double eta;
  double excess_noise = 0.0;
};
// Phase-insensitive amplifier with gain kappa >= 1 and excess noise N.
struct Amplifier {
  double kappa;
  double excess_noise = 0.0;
};
// Identity plus Gaussian noise of variance nu on the x quadrature only.
struct AdditiveNoise {
  double nu;
};
struct Identity {};
// Anything outside the standard forms; carries its triplet.
struct Other {
  GaussianChannelTriplet triplet;
};
}  // namespace channel_kind

// Pure loss is ThermalLoss with zero excess noise; is_pure_loss() tells them
// apart.
using ChannelKind =
    std::variant<channel_kind::ThermalLoss, channel_kind::Amplifier,
                 channel_kind::AdditiveNoise, channel_kind::Identity,
                 channel_kind::Other>;

ChannelKind pure_loss(double eta);
ChannelKind thermal_loss(double eta, double excess_noise);
ChannelKind amplifier(double kappa, double excess_noise = 0.0);
ChannelKind additive_noise(double nu);
ChannelKind identity_channel();

bool is_pure_loss(const ChannelKind& kind);
bool is_loss(const ChannelKind& kind);
bool is_amplifier(const ChannelKind& kind);

// "pure_loss", "thermal_loss", "amplifier", "additive_noise", "identity",
// "other".
std::string kind_name(const ChannelKind& kind);

// Throws ValidationError when parameters are out of range.
void validate(const ChannelKind& kind);

GaussianChannelTriplet make_channel(const ChannelKind& kind);

struct Physicality {
  bool physical;
  // 2 sqrt(det alpha) - |1 - det K|; zero for quantum-limited channels.
  double margin;
};

Physicality is_physical(const GaussianChannelTriplet& channel);

// Applies the channel to one mode of a multi-mode state. Correlations with
// the other modes transform by the lifted block K.
GaussianState apply(const GaussianChannelTriplet& channel,
                    const GaussianState& state, std::size_t mode);

// The channel "second o first": first acts on the state, then second.
//   K = K1 K2,  m = K2^T m1 + m2,  alpha = K2^T alpha1 K2 + alpha2
// where subscript 1 is the channel applied first.
GaussianChannelTriplet compose(const GaussianChannelTriplet& first,
                               const GaussianChannelTriplet& second);

// Pattern-matches a physical triplet onto the standard kinds. Isotropy and
// rank tests use a 1e-10 relative tolerance; pure loss wins over thermal
// loss when the excess noise is below 1e-10.
ChannelKind classify(const GaussianChannelTriplet& channel);

// g such that E(D(beta) rho D(beta)^dag) = D(g beta) E(rho) D(g beta)^dag.
// Requires K = g * identity with g > 0.
double covariance_gain(const GaussianChannelTriplet& channel);

// Finite-energy effective Choi state: the channel applied to mode 1 of the
// two-mode squeezed state with parameter xi.
GaussianState choi(const GaussianChannelTriplet& channel, double xi);

bool approx_equal(const GaussianChannelTriplet& a,
                  const GaussianChannelTriplet& b, double tol);

}  // namespace cvstretch
