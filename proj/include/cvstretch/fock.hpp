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
#include <optional>
#include <variant>

#include <Eigen/Dense>

#include "cvstretch/channel.hpp"

namespace cvstretch::fock {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultCutoff = 40;

// Ket on modes truncated at photon number cutoff; basis index of
// |n_1, ..., n_k> is row-major with mode 0 most significant.
class FockVector {
 public:
  FockVector(std::size_t cutoff, std::size_t modes, Eigen::VectorXcd amplitudes);

  std::size_t cutoff() const { return cutoff_; }
  std::size_t modes() const { return modes_; }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }

 private:
  std::size_t cutoff_;
  std::size_t modes_;
  Eigen::VectorXcd amplitudes_;
};

// Operator on the truncated space. Density matrices may have trace below
// one when truncation drops population.
class FockOperator {
 public:
  FockOperator(std::size_t cutoff, std::size_t modes, Eigen::MatrixXcd matrix);

  std::size_t cutoff() const { return cutoff_; }
  std::size_t modes() const { return modes_; }
  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  double trace() const { return matrix_.trace().real(); }

 private:
  std::size_t cutoff_;
  std::size_t modes_;
  Eigen::MatrixXcd matrix_;
};

namespace ket_kind {
struct Number {
  std::size_t n;
};
struct Coherent {
  Complex alpha;
};
struct TwoModeSqueezed {
  double xi;
};
}  // namespace ket_kind

using KetKind = std::variant<ket_kind::Number, ket_kind::Coherent, ket_kind::TwoModeSqueezed>;

inline constexpr double kNormCaptureTolerance = 1e-6;

struct TruncatedKet {
  FockVector ket;
  // 1 - |ket|^2: population lost above the cutoff.
  double norm_deficit;
  bool starved() const { return norm_deficit > kNormCaptureTolerance; }
};

// Number states and coherent states are single-mode; the two-mode squeezed
// state sqrt(1 - xi^2) sum xi^n |n, n> is two-mode.
TruncatedKet make_ket(const KetKind& kind, std::size_t cutoff = kDefaultCutoff);

FockOperator density(const FockVector& ket);

// Thermal state with mean photon number nbar, truncated (not renormalised).
FockOperator thermal_density(double nbar, std::size_t cutoff = kDefaultCutoff);

// Same operator embedded in (or cut down to) another cutoff.
FockOperator with_cutoff(const FockOperator& op, std::size_t cutoff);

/// Matrix elements <m|D(beta)|n> for m < rows, n < cols.
///
/// Every element is the exact value, computed from the associated-Laguerre
/// closed form through a normalised three-term recurrence, so rectangular
/// blocks carry no truncation error of their own.
Eigen::MatrixXcd displacement_block(Complex beta, std::size_t rows, std::size_t cols);

FockOperator displacement_matrix(Complex beta, std::size_t cutoff = kDefaultCutoff);

// D(beta) rho D(beta)^dag restricted to photon numbers <= out_cutoff.
FockOperator displace(const FockOperator& rho, Complex beta, std::size_t out_cutoff);

// <n-k, k| U |n, 0> for the beam splitter U = exp(theta (a^dag b - a b^dag)),
// cos(theta) = sqrt(eta). Entry (n, k), zero for k > n.
Eigen::MatrixXd beam_splitter_amplitudes(double eta, std::size_t max_n);

// <n+k, k| S |n, 0> for the two-mode squeezer S = exp(r (a^dag b^dag - a b)),
// cosh(r)^2 = kappa. Entry (n, k).
Eigen::MatrixXd two_mode_squeezer_amplitudes(double kappa, std::size_t max_n,
                                             std::size_t max_k);

/// Channel action on a single-mode density matrix by unitary dilation.
///
/// Loss uses a beam splitter with a vacuum ancilla, amplification a two-mode
/// squeezer with a vacuum ancilla; phase-insensitive channels with excess
/// noise are realised as loss followed by amplification. Additive noise on
/// x is a Gaussian-weighted random displacement (Gauss-Hermite quadrature).
/// The ancilla is traced out; population pushed above out_cutoff is dropped,
/// so the trace deficit of the result is the truncation loss.
FockOperator apply_channel_fock(const ChannelKind& channel, const FockOperator& rho,
                                std::size_t out_cutoff);

enum class Metric { trace, fidelity };

// Trace distance (1/2)||rho1 - rho2||_1, or Uhlmann fidelity
// (tr sqrt(sqrt(rho1) rho2 sqrt(rho1)))^2.
double distance(const FockOperator& rho1, const FockOperator& rho2, Metric metric);

struct Moments {
  Eigen::Vector2d mean;
  Eigen::Matrix2d cov;
};

// Quadrature moments of a single-mode density matrix, normalised by its
// trace, in the same convention as GaussianState.
Moments quadrature_moments(const FockOperator& rho);

// Photon number budget of a single-mode state: |<a>| and the spread
// sqrt(<n> - |<a>|^2), used to size working cutoffs.
struct Extent {
  Complex mean_amplitude;
  double spread;
};
Extent extent(const FockOperator& rho);

// Smallest cutoff keeping a displaced-thermal state of the given amplitude
// and thermal occupation well inside the truncated space.
std::size_t cutoff_for(double amplitude, double thermal_occupation);

inline constexpr double kBellWeightTolerance = 1e-4;

struct BellOutcome {
  // Probability density of the outcome beta per unit dx dp, where
  // beta = (x + i p) / sqrt(2).
  double weight;
  // Normalised conditional state of the output mode.
  FockOperator state;
  // Bound on the relative truncation error of weight.
  double weight_rel_error;
};

/// CV-Bell projection of rho_in (mode A) together with a two-mode squeezed
/// resource (modes A', B) onto outcome beta.
///
/// The unnormalised output is (1 - xi^2)/(2 pi) xi^n D(beta) rho D(beta)^dag
/// xi^n, so a coherent input |a> yields weight (1 - xi^2)/(2 pi)
/// exp(-(1 - xi^2)|a + beta|^2) and state |xi (a + beta)>. The working
/// cutoff grows until weight_rel_error <= kBellWeightTolerance, otherwise a
/// ConvergenceError is raised.
BellOutcome bell_project(Complex beta, double xi, const FockOperator& rho_in,
                         std::optional<std::size_t> working_cutoff = std::nullopt);

}  // namespace cvstretch::fock
