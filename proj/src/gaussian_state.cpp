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

#include "cvstretch/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "cvstretch/errors.hpp"

namespace cvstretch {
namespace {

void require_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw ValidationError("covariance matrix must be square");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
    throw ValidationError("covariance matrix is not symmetric");
  }
}

}  // namespace

Eigen::MatrixXd symplectic_form(std::size_t n_modes) {
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n_modes, 2 * n_modes);
  for (std::size_t k = 0; k < n_modes; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  return omega;
}

GaussianState::GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov)
    : mean_(std::move(mean)), cov_(std::move(cov)) {
  if (mean_.size() == 0 || mean_.size() % 2 != 0) {
    throw ValidationError("mean vector must have positive even length 2n");
  }
  if (cov_.rows() != mean_.size() || cov_.cols() != mean_.size()) {
    throw ValidationError("covariance matrix must be 2n x 2n");
  }
  require_symmetric(cov_);
  cov_ = 0.5 * (cov_ + cov_.transpose()).eval();
  const auto spectrum = symplectic_spectrum(cov_);
  const double tolerance = kPhysicalityTolerance * std::max(1.0, cov_.cwiseAbs().maxCoeff());
  if (spectrum.front() < kVacuumVariance - tolerance) {
    std::ostringstream msg;
    msg << "unphysical covariance matrix: smallest symplectic eigenvalue "
        << spectrum.front() << " < 1/2";
    throw ValidationError(msg.str());
  }
}

Eigen::Matrix2d GaussianState::mode_cov(std::size_t mode) const {
  if (mode >= n_modes()) throw ValidationError("mode index out of range");
  return cov_.block<2, 2>(2 * mode, 2 * mode);
}

Eigen::Vector2d GaussianState::mode_mean(std::size_t mode) const {
  if (mode >= n_modes()) throw ValidationError("mode index out of range");
  return mean_.segment<2>(2 * mode);
}

GaussianState vacuum(std::size_t n_modes) {
  if (n_modes == 0) throw ValidationError("mode count must be positive");
  return GaussianState(Eigen::VectorXd::Zero(2 * n_modes),
                       kVacuumVariance * Eigen::MatrixXd::Identity(2 * n_modes, 2 * n_modes));
}

GaussianState coherent(std::complex<double> alpha) {
  Eigen::VectorXd mean(2);
  mean << std::numbers::sqrt2 * alpha.real(), std::numbers::sqrt2 * alpha.imag();
  return GaussianState(mean, kVacuumVariance * Eigen::MatrixXd::Identity(2, 2));
}

GaussianState two_mode_squeezed(double xi) {
  if (!(xi > 0.0 && xi < 1.0)) {
    throw ValidationError("two-mode squeezing parameter xi must lie in (0, 1)");
  }
  const double denom = 1.0 - xi * xi;
  const double c = (1.0 + xi * xi) / denom;
  const double s = 2.0 * xi / denom;
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(4, 4);
  cov.block<2, 2>(0, 0) = 0.5 * c * Eigen::Matrix2d::Identity();
  cov.block<2, 2>(2, 2) = 0.5 * c * Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d cross = 0.5 * s * Eigen::Vector2d(1.0, -1.0).asDiagonal();
  cov.block<2, 2>(0, 2) = cross;
  cov.block<2, 2>(2, 0) = cross;
  return GaussianState(Eigen::VectorXd::Zero(4), cov);
}

GaussianState thermal(double nbar) {
  if (!(nbar >= 0.0)) throw ValidationError("thermal photon number must be >= 0");
  return GaussianState(Eigen::VectorXd::Zero(2),
                       (nbar + kVacuumVariance) * Eigen::MatrixXd::Identity(2, 2));
}

GaussianState make_state(const StateKind& kind, std::size_t n_modes) {
  if (n_modes == 0) throw ValidationError("mode count must be positive");
  return std::visit(
      [n_modes](const auto& k) -> GaussianState {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, state_kind::Vacuum>) {
          return vacuum(n_modes);
        } else if constexpr (std::is_same_v<K, state_kind::Coherent>) {
          if (n_modes != 1) throw ValidationError("coherent states are single-mode");
          return coherent(k.alpha);
        } else {
          if (n_modes != 2) throw ValidationError("two-mode squeezed state has two modes");
          return two_mode_squeezed(k.xi);
        }
      },
      kind);
}

GaussianState tensor(const GaussianState& a, const GaussianState& b) {
  const Eigen::Index na = a.mean().size();
  const Eigen::Index nb = b.mean().size();
  Eigen::VectorXd mean(na + nb);
  mean << a.mean(), b.mean();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(na + nb, na + nb);
  cov.topLeftCorner(na, na) = a.cov();
  cov.bottomRightCorner(nb, nb) = b.cov();
  return GaussianState(mean, cov);
}

GaussianState displace(const GaussianState& state, std::size_t mode,
                       std::complex<double> beta) {
  if (mode >= state.n_modes()) throw ValidationError("mode index out of range");
  Eigen::VectorXd mean = state.mean();
  mean(2 * mode) += std::numbers::sqrt2 * beta.real();
  mean(2 * mode + 1) += std::numbers::sqrt2 * beta.imag();
  return GaussianState(mean, state.cov());
}

std::vector<double> symplectic_spectrum(const Eigen::MatrixXd& cov) {
  require_symmetric(cov);
  if (cov.rows() == 0 || cov.rows() % 2 != 0) {
    throw ValidationError("covariance matrix must be 2n x 2n with n >= 1");
  }
  const Eigen::MatrixXd sym = 0.5 * (cov + cov.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> real_eig(sym);
  if (real_eig.eigenvalues().minCoeff() <= 0.0) {
    throw ValidationError("covariance matrix is not positive definite");
  }
  const Eigen::MatrixXd root = real_eig.operatorSqrt();
  const std::size_t n = static_cast<std::size_t>(cov.rows() / 2);
  const Eigen::MatrixXcd i_omega =
      std::complex<double>(0.0, 1.0) * symplectic_form(n).cast<std::complex<double>>();
  Eigen::MatrixXcd herm = root.cast<std::complex<double>>() * i_omega *
                          root.cast<std::complex<double>>();
  herm = 0.5 * (herm + herm.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm, Eigen::EigenvaluesOnly);
  std::vector<double> magnitudes(static_cast<std::size_t>(cov.rows()));
  for (Eigen::Index k = 0; k < cov.rows(); ++k) {
    magnitudes[static_cast<std::size_t>(k)] = std::abs(eig.eigenvalues()(k));
  }
  std::sort(magnitudes.begin(), magnitudes.end());
  std::vector<double> spectrum(n);
  for (std::size_t k = 0; k < n; ++k) {
    spectrum[k] = 0.5 * (magnitudes[2 * k] + magnitudes[2 * k + 1]);
  }
  return spectrum;
}

Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& cov,
                                  const std::vector<std::size_t>& modes) {
  const std::size_t n = static_cast<std::size_t>(cov.rows() / 2);
  Eigen::VectorXd flip = Eigen::VectorXd::Ones(cov.rows());
  for (std::size_t mode : modes) {
    if (mode >= n) throw ValidationError("mode index out of range");
    flip(2 * mode + 1) = -1.0;
  }
  return flip.asDiagonal() * cov * flip.asDiagonal();
}

double log_negativity(const GaussianState& state,
                      const std::vector<std::size_t>& partition) {
  const std::set<std::size_t> unique(partition.begin(), partition.end());
  if (unique.empty() || unique.size() >= state.n_modes()) {
    throw ValidationError("partition must be a non-empty proper subset of the modes");
  }
  const auto spectrum = symplectic_spectrum(
      partial_transpose(state.cov(), {unique.begin(), unique.end()}));
  double total = 0.0;
  for (double nu : spectrum) total += std::max(0.0, -std::log2(2.0 * nu));
  return total;
}

}  // namespace cvstretch
