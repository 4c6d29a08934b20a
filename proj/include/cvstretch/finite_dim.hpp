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
#include <vector>

#include <Eigen/Dense>

namespace cvstretch::finite {

using Complex = std::complex<double>;

class DenseOperator {
 public:
  explicit DenseOperator(Eigen::MatrixXcd matrix);

  std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

 private:
  Eigen::MatrixXcd matrix_;
};

using KrausSet = std::vector<Eigen::MatrixXcd>;

inline constexpr double kTracePreservingTolerance = 1e-12;

// X^a Z^b with X|j> = |j+1 mod d> and Z|j> = omega^j |j>, omega = e^{2 pi i/d}.
DenseOperator weyl(std::size_t d, std::size_t a, std::size_t b);

struct WeylIndex {
  std::size_t a;
  std::size_t b;
  bool operator==(const WeylIndex&) const = default;
};

struct TeleportOutcome {
  // sigma_k rho sigma_k^dag.
  DenseOperator state;
  // Probability of the outcome, 1/d^2.
  double weight;
};

// Teleportation of rho through the ideal maximally entangled resource,
// conditioned on Bell outcome k; correcting with sigma_k^dag recovers rho.
TeleportOutcome teleport(const DenseOperator& rho, WeylIndex k, std::size_t d);

// Throws ValidationError unless the set is non-empty, d x d and
// trace-preserving to kTracePreservingTolerance.
void validate_kraus(const KrausSet& kraus, std::size_t d);

Eigen::MatrixXcd apply_kraus(const KrausSet& kraus, const Eigen::MatrixXcd& rho);

struct StretchCertificate {
  bool stretchable;
  // For each Bell outcome k = (a, b), in order a * d + b, the Weyl index of
  // the unitary U_k with E(sigma_k rho sigma_k^dag) = U_k E(rho) U_k^dag.
  // Empty when not stretchable.
  std::vector<WeylIndex> corrections;
};

/// Searches the Weyl set for correction unitaries, testing the covariance
/// condition on every matrix unit |i><j|.
StretchCertificate stretch_check(const KrausSet& kraus, std::size_t d);

// (I (x) E)(phi_0) with phi_0 the normalised maximally entangled state.
DenseOperator choi_finite(const KrausSet& kraus, std::size_t d);

/// Bell measurement on rho (x) choi_finite(E) with outcomes projected on
/// (1 (x) conj(sigma_k)) |phi_0>, each followed by the correction
/// U_k^dag from the certificate, summed over outcomes.
DenseOperator simulate_stretch(const KrausSet& kraus, const StretchCertificate& certificate,
                               const DenseOperator& rho, std::size_t d);

// Weyl channel rho -> sum_k p_k sigma_k rho sigma_k^dag, p indexed a * d + b.
KrausSet weyl_channel(const std::vector<double>& probabilities, std::size_t d);

// Qubit Pauli channel with probabilities in the order I, X, Y, Z.
KrausSet pauli_channel(const std::vector<double>& probabilities);

// rho -> (1 - p) rho + p I/d.
KrausSet depolarizing(double p, std::size_t d);

KrausSet amplitude_damping(double gamma);

}  // namespace cvstretch::finite
