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

#include "cvstretch/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cvstretch/errors.hpp"

namespace cvstretch {
namespace {

constexpr double kClassifyTolerance = 1e-10;

bool near(double a, double b, double scale) {
  return std::abs(a - b) <= kClassifyTolerance * std::max(1.0, scale);
}

bool isotropic(const Eigen::Matrix2d& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  return near(m(0, 1), 0.0, scale) && near(m(1, 0), 0.0, scale) &&
         near(m(0, 0), m(1, 1), scale);
}

double clamp_noise(double n) { return n <= kClassifyTolerance ? 0.0 : n; }

}  // namespace

ChannelKind pure_loss(double eta) { return channel_kind::ThermalLoss{eta, 0.0}; }

ChannelKind thermal_loss(double eta, double excess_noise) {
  return channel_kind::ThermalLoss{eta, excess_noise};
}

ChannelKind amplifier(double kappa, double excess_noise) {
  return channel_kind::Amplifier{kappa, excess_noise};
}

ChannelKind additive_noise(double nu) { return channel_kind::AdditiveNoise{nu}; }

ChannelKind identity_channel() { return channel_kind::Identity{}; }

bool is_pure_loss(const ChannelKind& kind) {
  const auto* loss = std::get_if<channel_kind::ThermalLoss>(&kind);
  return loss != nullptr && loss->excess_noise == 0.0;
}

bool is_loss(const ChannelKind& kind) {
  return std::holds_alternative<channel_kind::ThermalLoss>(kind);
}

bool is_amplifier(const ChannelKind& kind) {
  return std::holds_alternative<channel_kind::Amplifier>(kind);
}

std::string kind_name(const ChannelKind& kind) {
  if (is_pure_loss(kind)) return "pure_loss";
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, channel_kind::ThermalLoss>) return "thermal_loss";
        if constexpr (std::is_same_v<K, channel_kind::Amplifier>) return "amplifier";
        if constexpr (std::is_same_v<K, channel_kind::AdditiveNoise>) return "additive_noise";
        if constexpr (std::is_same_v<K, channel_kind::Identity>) return "identity";
        return "other";
      },
      kind);
}

void validate(const ChannelKind& kind) {
  std::visit(
      [](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, channel_kind::ThermalLoss>) {
          if (!(k.eta > 0.0 && k.eta < 1.0)) {
            throw ValidationError("loss transmissivity eta must lie in (0, 1)");
          }
          if (!(k.excess_noise >= 0.0)) throw ValidationError("excess noise N must be >= 0");
        } else if constexpr (std::is_same_v<K, channel_kind::Amplifier>) {
          if (!(k.kappa >= 1.0)) throw ValidationError("amplifier gain kappa must be >= 1");
          if (!(k.excess_noise >= 0.0)) throw ValidationError("excess noise N must be >= 0");
        } else if constexpr (std::is_same_v<K, channel_kind::AdditiveNoise>) {
          if (!(k.nu >= 0.0)) throw ValidationError("additive noise variance must be >= 0");
        }
      },
      kind);
}

GaussianChannelTriplet make_channel(const ChannelKind& kind) {
  validate(kind);
  const Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  return std::visit(
      [&id](const auto& k) -> GaussianChannelTriplet {
        using K = std::decay_t<decltype(k)>;
        GaussianChannelTriplet t;
        if constexpr (std::is_same_v<K, channel_kind::ThermalLoss>) {
          t.K = std::sqrt(k.eta) * id;
          t.alpha = ((1.0 - k.eta) / 2.0 + k.excess_noise) * id;
        } else if constexpr (std::is_same_v<K, channel_kind::Amplifier>) {
          t.K = std::sqrt(k.kappa) * id;
          t.alpha = ((k.kappa - 1.0) / 2.0 + k.excess_noise) * id;
        } else if constexpr (std::is_same_v<K, channel_kind::AdditiveNoise>) {
          t.alpha(0, 0) = k.nu;
        } else if constexpr (std::is_same_v<K, channel_kind::Other>) {
          t = k.triplet;
        }
        return t;
      },
      kind);
}

Physicality is_physical(const GaussianChannelTriplet& channel) {
  const Eigen::Matrix2d& a = channel.alpha;
  const double margin =
      2.0 * std::sqrt(std::max(0.0, a.determinant())) - std::abs(1.0 - channel.K.determinant());
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const bool symmetric = std::abs(a(0, 1) - a(1, 0)) <= kSymmetryTolerance * scale;
  bool psd = false;
  if (symmetric) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(0.5 * (a + a.transpose()));
    psd = eig.eigenvalues().minCoeff() >= -kSymmetryTolerance * scale;
  }
  return {symmetric && psd && margin >= -kPhysicalityTolerance, margin};
}

namespace {

void require_physical(const GaussianChannelTriplet& channel) {
  const auto check = is_physical(channel);
  if (!check.physical) {
    std::ostringstream msg;
    msg << "unphysical channel: 2 sqrt(det alpha) - |1 - det K| = " << check.margin;
    throw ValidationError(msg.str());
  }
}

}  // namespace

GaussianState apply(const GaussianChannelTriplet& channel,
                    const GaussianState& state, std::size_t mode) {
  require_physical(channel);
  if (mode >= state.n_modes()) throw ValidationError("mode index out of range");
  const Eigen::Index dim = state.mean().size();
  const Eigen::Index offset = static_cast<Eigen::Index>(2 * mode);
  Eigen::MatrixXd lifted = Eigen::MatrixXd::Identity(dim, dim);
  lifted.block<2, 2>(offset, offset) = channel.K;
  Eigen::MatrixXd cov = lifted.transpose() * state.cov() * lifted;
  cov.block<2, 2>(offset, offset) += channel.alpha;
  Eigen::VectorXd mean = lifted.transpose() * state.mean();
  mean.segment<2>(offset) += channel.m;
  return GaussianState(mean, cov);
}

GaussianChannelTriplet compose(const GaussianChannelTriplet& first,
                               const GaussianChannelTriplet& second) {
  require_physical(first);
  require_physical(second);
  GaussianChannelTriplet out;
  out.K = first.K * second.K;
  out.m = second.K.transpose() * first.m + second.m;
  out.alpha = second.K.transpose() * first.alpha * second.K + second.alpha;
  return out;
}

ChannelKind classify(const GaussianChannelTriplet& channel) {
  require_physical(channel);
  const channel_kind::Other other{channel};
  if (!near(channel.m.cwiseAbs().maxCoeff(), 0.0, 1.0)) return other;
  if (!isotropic(channel.K) || channel.K(0, 0) <= 0.0) return other;
  const double k = channel.K(0, 0);
  const Eigen::Matrix2d& a = channel.alpha;
  const double a_scale = a.cwiseAbs().maxCoeff();

  if (near(k, 1.0, 1.0)) {
    if (near(a_scale, 0.0, 1.0)) return channel_kind::Identity{};
    if (isotropic(a)) return channel_kind::Amplifier{1.0, a(0, 0)};
    if (near(a(0, 1), 0.0, a_scale) && near(a(1, 0), 0.0, a_scale) &&
        near(a(1, 1), 0.0, a_scale)) {
      return channel_kind::AdditiveNoise{a(0, 0)};
    }
    return other;
  }
  if (!isotropic(a)) return other;
  const double gain = k * k;
  if (k < 1.0) {
    return channel_kind::ThermalLoss{gain, clamp_noise(a(0, 0) - (1.0 - gain) / 2.0)};
  }
  return channel_kind::Amplifier{gain, clamp_noise(a(0, 0) - (gain - 1.0) / 2.0)};
}

double covariance_gain(const GaussianChannelTriplet& channel) {
  require_physical(channel);
  if (!isotropic(channel.K) || channel.K(0, 0) <= 0.0) {
    throw ValidationError(
        "channel is not displacement-covariant with a scalar gain (K != g * identity)");
  }
  return channel.K(0, 0);
}

GaussianState choi(const GaussianChannelTriplet& channel, double xi) {
  return apply(channel, two_mode_squeezed(xi), 1);
}

bool approx_equal(const GaussianChannelTriplet& a,
                  const GaussianChannelTriplet& b, double tol) {
  return (a.K - b.K).cwiseAbs().maxCoeff() <= tol &&
         (a.m - b.m).cwiseAbs().maxCoeff() <= tol &&
         (a.alpha - b.alpha).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace cvstretch
