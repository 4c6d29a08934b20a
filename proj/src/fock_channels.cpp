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

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "cvstretch/errors.hpp"
#include "cvstretch/fock.hpp"

namespace cvstretch::fock {
namespace {

constexpr double kUnitTolerance = 1e-15;
constexpr int kHermiteNodes = 48;

double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// Beam splitter with vacuum ancilla, ancilla traced out:
//   rho'_{m m'} = sum_k c(m+k, k) c(m'+k, k) rho_{m+k, m'+k}.
Eigen::MatrixXcd apply_loss(const Eigen::MatrixXcd& rho, double eta) {
  const Eigen::Index dim = rho.rows();
  const Eigen::MatrixXd c = beam_splitter_amplitudes(eta, static_cast<std::size_t>(dim - 1));
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Eigen::Index len = dim - k;
    Eigen::VectorXd v(len);
    for (Eigen::Index m = 0; m < len; ++m) v(m) = c(m + k, k);
    out.topLeftCorner(len, len) +=
        v.asDiagonal() * rho.block(k, k, len, len) * v.asDiagonal();
  }
  return out;
}

// Two-mode squeezer with vacuum ancilla, ancilla traced out:
//   rho'_{m m'} = sum_k d(m-k, k) d(m'-k, k) rho_{m-k, m'-k}.
Eigen::MatrixXcd apply_amplifier(const Eigen::MatrixXcd& rho, double kappa,
                                 std::size_t out_cutoff) {
  const Eigen::Index in_dim = rho.rows();
  const auto out_dim = static_cast<Eigen::Index>(out_cutoff + 1);
  const Eigen::MatrixXd d = two_mode_squeezer_amplitudes(
      kappa, static_cast<std::size_t>(in_dim - 1), out_cutoff);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
  for (Eigen::Index k = 0; k < out_dim; ++k) {
    const Eigen::Index len = std::min(in_dim, out_dim - k);
    if (len <= 0) break;
    const Eigen::VectorXd v = d.col(k).head(len);
    if (v.cwiseAbs().maxCoeff() == 0.0) break;
    out.block(k, k, len, len) +=
        v.asDiagonal() * rho.topLeftCorner(len, len) * v.asDiagonal();
  }
  return out;
}

// Nodes and probability weights of Gauss-Hermite quadrature for the weight
// exp(-t^2) (Golub-Welsch), with weights normalised to sum to one.
void hermite_rule(int n, Eigen::VectorXd& nodes, Eigen::VectorXd& weights) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    jacobi(i, i - 1) = jacobi(i - 1, i) = std::sqrt(0.5 * i);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  nodes = eig.eigenvalues();
  weights = eig.eigenvectors().row(0).transpose().cwiseAbs2();
}

// Random displacement of x by a Gaussian of variance nu: beta = sqrt(nu) t.
Eigen::MatrixXcd apply_x_noise(const FockOperator& rho, double nu, std::size_t out_cutoff) {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  hermite_rule(kHermiteNodes, nodes, weights);
  const auto out_dim = static_cast<Eigen::Index>(out_cutoff + 1);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
  for (int i = 0; i < kHermiteNodes; ++i) {
    out += weights(i) * displace(rho, Complex(std::sqrt(nu) * nodes(i), 0.0), out_cutoff).matrix();
  }
  return out;
}

// K = sqrt(G) I and alpha = a I decompose as amplifier(kappa') o loss(tau)
// with kappa' = a + (1 + G)/2 and tau = G / kappa'.
FockOperator apply_phase_insensitive(double gain, double noise, const FockOperator& rho,
                                     std::size_t out_cutoff) {
  const double kappa = noise + 0.5 * (1.0 + gain);
  const double tau = gain / kappa;
  Eigen::MatrixXcd m = rho.matrix();
  if (tau < 1.0 - kUnitTolerance) m = apply_loss(m, tau);
  if (kappa > 1.0 + kUnitTolerance) {
    return FockOperator(out_cutoff, 1, apply_amplifier(m, kappa, out_cutoff));
  }
  return with_cutoff(FockOperator(rho.cutoff(), 1, m), out_cutoff);
}

}  // namespace

Eigen::MatrixXd beam_splitter_amplitudes(double eta, std::size_t max_n) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ValidationError("beam splitter eta must lie in (0, 1]");
  const auto dim = static_cast<Eigen::Index>(max_n + 1);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(dim, dim);
  const double log_t = 0.5 * std::log(eta);
  const double log_r = eta < 1.0 ? 0.5 * std::log1p(-eta) : -INFINITY;
  for (Eigen::Index n = 0; n < dim; ++n) {
    for (Eigen::Index k = 0; k <= n; ++k) {
      const auto nd = static_cast<double>(n);
      const auto kd = static_cast<double>(k);
      const double mag = k == 0 ? std::exp(nd * log_t)
                                : std::exp(0.5 * log_binomial(nd, kd) + (nd - kd) * log_t + kd * log_r);
      c(n, k) = (k % 2 == 0) ? mag : -mag;
    }
  }
  return c;
}

Eigen::MatrixXd two_mode_squeezer_amplitudes(double kappa, std::size_t max_n,
                                             std::size_t max_k) {
  if (!(kappa >= 1.0)) throw ValidationError("amplifier gain kappa must be >= 1");
  const auto rows = static_cast<Eigen::Index>(max_n + 1);
  const auto cols = static_cast<Eigen::Index>(max_k + 1);
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(rows, cols);
  const double log_kappa = std::log(kappa);
  const double log_t2 = kappa > 1.0 ? std::log1p(-1.0 / kappa) : -INFINITY;
  for (Eigen::Index n = 0; n < rows; ++n) {
    const auto nd = static_cast<double>(n);
    d(n, 0) = std::exp(-0.5 * (nd + 1.0) * log_kappa);
    if (kappa == 1.0) continue;
    for (Eigen::Index k = 1; k < cols; ++k) {
      const auto kd = static_cast<double>(k);
      d(n, k) = std::exp(0.5 * log_binomial(nd + kd, kd) - 0.5 * (nd + 1.0) * log_kappa +
                         0.5 * kd * log_t2);
    }
  }
  return d;
}

FockOperator apply_channel_fock(const ChannelKind& channel, const FockOperator& rho,
                                std::size_t out_cutoff) {
  if (rho.modes() != 1) throw ValidationError("channel action requires a single-mode operator");
  validate(channel);
  return std::visit(
      [&](const auto& k) -> FockOperator {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, channel_kind::ThermalLoss>) {
          return apply_phase_insensitive(k.eta, (1.0 - k.eta) / 2.0 + k.excess_noise, rho,
                                         out_cutoff);
        } else if constexpr (std::is_same_v<K, channel_kind::Amplifier>) {
          return apply_phase_insensitive(k.kappa, (k.kappa - 1.0) / 2.0 + k.excess_noise, rho,
                                         out_cutoff);
        } else if constexpr (std::is_same_v<K, channel_kind::AdditiveNoise>) {
          if (k.nu == 0.0) return with_cutoff(rho, out_cutoff);
          return FockOperator(out_cutoff, 1, apply_x_noise(rho, k.nu, out_cutoff));
        } else if constexpr (std::is_same_v<K, channel_kind::Identity>) {
          return with_cutoff(rho, out_cutoff);
        } else {
          const ChannelKind standard = classify(k.triplet);
          if (std::holds_alternative<channel_kind::Other>(standard)) {
            throw ValidationError(
                "Fock-space action supports loss, amplifier, additive-noise and identity "
                "channels only");
          }
          return apply_channel_fock(standard, rho, out_cutoff);
        }
      },
      channel);
}

}  // namespace cvstretch::fock
