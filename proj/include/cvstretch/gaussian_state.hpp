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
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace cvstretch {

// Quadrature ordering is (x_1, p_1, ..., x_n, p_n). The vacuum has variance
// 1/2 per quadrature, so a state is physical iff cov >= (i/2) Omega.
inline constexpr double kVacuumVariance = 0.5;
inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kPhysicalityTolerance = 1e-10;

// Block-diagonal copies of sigma = [[0, 1], [-1, 0]].
Eigen::MatrixXd symplectic_form(std::size_t n_modes);

/// First and second moments of an n-mode Gaussian state.
///
/// Construction validates symmetry and the uncertainty principle, so every
/// instance is a physical state. Values are immutable.
class GaussianState {
 public:
  GaussianState(Eigen::VectorXd mean, Eigen::MatrixXd cov);

  std::size_t n_modes() const { return static_cast<std::size_t>(mean_.size() / 2); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& cov() const { return cov_; }

  // 2x2 covariance block and 2-vector of first moments for one mode.
  Eigen::Matrix2d mode_cov(std::size_t mode) const;
  Eigen::Vector2d mode_mean(std::size_t mode) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd cov_;
};

namespace state_kind {
struct Vacuum {};
struct Coherent {
  std::complex<double> alpha;
};
struct TwoModeSqueezed {
  double xi;
};
}  // namespace state_kind

using StateKind = std::variant<state_kind::Vacuum, state_kind::Coherent,
                               state_kind::TwoModeSqueezed>;

// Vacuum accepts any mode count; coherent states are single-mode and the
// two-mode squeezed state has two modes. A mismatch is a ValidationError.
GaussianState make_state(const StateKind& kind, std::size_t n_modes);

GaussianState vacuum(std::size_t n_modes = 1);
GaussianState coherent(std::complex<double> alpha);
GaussianState two_mode_squeezed(double xi);

// Thermal state with mean photon number nbar: cov = (nbar + 1/2) * I.
GaussianState thermal(double nbar);

// Product state a (x) b with a's modes first.
GaussianState tensor(const GaussianState& a, const GaussianState& b);

// D(beta) on one mode: mean shifts by sqrt(2) (Re beta, Im beta).
GaussianState displace(const GaussianState& state, std::size_t mode,
                       std::complex<double> beta);

/// Symplectic eigenvalues of a covariance matrix, ascending.
///
/// Computed as the spectrum of the Hermitian matrix cov^{1/2} (i Omega)
/// cov^{1/2}, whose eigenvalues come in pairs +-nu. Requires a symmetric
/// positive-definite input.
std::vector<double> symplectic_spectrum(const Eigen::MatrixXd& cov);

// Covariance matrix after the partial transpose on the given modes
// (p quadratures of those modes change sign).
Eigen::MatrixXd partial_transpose(const Eigen::MatrixXd& cov,
                                  const std::vector<std::size_t>& modes);

/// Logarithmic negativity (base 2) across the bipartition (partition | rest).
///
/// Sums max(0, -log2(2 nu)) over the symplectic eigenvalues of the partially
/// transposed covariance. The partition must be a non-empty proper subset of
/// the modes.
double log_negativity(const GaussianState& state,
                      const std::vector<std::size_t>& partition);

}  // namespace cvstretch
