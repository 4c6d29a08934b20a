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

#include "cvstretch/finite_dim.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "cvstretch/errors.hpp"

namespace cvstretch::finite {
namespace {

constexpr double kProbabilityTolerance = 1e-12;
constexpr double kCovarianceTolerance = 1e-10;

void require_dim(std::size_t d) {
  if (d < 2) throw ValidationError("dimension must be at least 2");
}

Eigen::MatrixXcd shift(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) x((j + 1) % n, j) = 1.0;
  return x;
}

Eigen::MatrixXcd clock(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    z(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) /
                                  static_cast<double>(d));
  }
  return z;
}

Eigen::MatrixXcd unit(std::size_t d, Eigen::Index i, Eigen::Index j) {
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

// |phi_0> = sum_j |j, j> / sqrt(d).
Eigen::VectorXcd max_entangled(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n * n);
  for (Eigen::Index j = 0; j < n; ++j) v(j * n + j) = 1.0;
  return v / std::sqrt(static_cast<double>(d));
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

void check_probabilities(const std::vector<double>& p, std::size_t expected) {
  if (p.size() != expected) {
    std::ostringstream msg;
    msg << "expected " << expected << " probabilities, got " << p.size();
    throw ValidationError(msg.str());
  }
  for (double x : p) {
    if (!(x >= 0.0)) throw ValidationError("probabilities must be non-negative");
  }
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  if (std::abs(total - 1.0) > kProbabilityTolerance) {
    throw ValidationError("probabilities must sum to 1");
  }
}

}  // namespace

DenseOperator::DenseOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) {
    throw ValidationError("operator must be a non-empty square matrix");
  }
}

DenseOperator weyl(std::size_t d, std::size_t a, std::size_t b) {
  require_dim(d);
  if (a >= d || b >= d) throw ValidationError("Weyl indices must lie in [0, d)");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(d),
                                                     static_cast<Eigen::Index>(d));
  const Eigen::MatrixXcd x = shift(d);
  const Eigen::MatrixXcd z = clock(d);
  for (std::size_t i = 0; i < a; ++i) out = x * out;
  for (std::size_t i = 0; i < b; ++i) out = out * z;
  return DenseOperator(out);
}

TeleportOutcome teleport(const DenseOperator& rho, WeylIndex k, std::size_t d) {
  if (rho.dim() != d) throw ValidationError("state dimension does not match d");
  const Eigen::MatrixXcd s = weyl(d, k.a, k.b).matrix();
  return {DenseOperator(s * rho.matrix() * s.adjoint()),
          1.0 / static_cast<double>(d * d)};
}

void validate_kraus(const KrausSet& kraus, std::size_t d) {
  require_dim(d);
  if (kraus.empty()) throw ValidationError("Kraus set is empty");
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(n, n);
  for (const auto& k : kraus) {
    if (k.rows() != n || k.cols() != n) {
      throw ValidationError("Kraus operators must be d x d");
    }
    sum += k.adjoint() * k;
  }
  const double err = (sum - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (err > kTracePreservingTolerance) {
    std::ostringstream msg;
    msg << "Kraus set is not trace-preserving (deviation " << err << ")";
    throw ValidationError(msg.str());
  }
}

Eigen::MatrixXcd apply_kraus(const KrausSet& kraus, const Eigen::MatrixXcd& rho) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

StretchCertificate stretch_check(const KrausSet& kraus, std::size_t d) {
  validate_kraus(kraus, d);
  const auto n = static_cast<Eigen::Index>(d);
  std::vector<Eigen::MatrixXcd> images;
  images.reserve(d * d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) images.push_back(apply_kraus(kraus, unit(d, i, j)));
  }

  StretchCertificate cert{true, {}};
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      const Eigen::MatrixXcd s = weyl(d, a, b).matrix();
      std::optional<WeylIndex> found;
      for (std::size_t a2 = 0; a2 < d && !found; ++a2) {
        for (std::size_t b2 = 0; b2 < d && !found; ++b2) {
          const Eigen::MatrixXcd u = weyl(d, a2, b2).matrix();
          bool ok = true;
          std::size_t idx = 0;
          for (Eigen::Index i = 0; i < n && ok; ++i) {
            for (Eigen::Index j = 0; j < n && ok; ++j, ++idx) {
              const Eigen::MatrixXcd lhs = apply_kraus(kraus, s * unit(d, i, j) * s.adjoint());
              const Eigen::MatrixXcd rhs = u * images[idx] * u.adjoint();
              ok = (lhs - rhs).cwiseAbs().maxCoeff() <= kCovarianceTolerance;
            }
          }
          if (ok) found = WeylIndex{a2, b2};
        }
      }
      if (!found) return {false, {}};
      cert.corrections.push_back(*found);
    }
  }
  return cert;
}

DenseOperator choi_finite(const KrausSet& kraus, std::size_t d) {
  validate_kraus(kraus, d);
  const Eigen::VectorXcd phi = max_entangled(d);
  const Eigen::MatrixXcd phi0 = phi * phi.adjoint();
  const auto n = static_cast<Eigen::Index>(d);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n * n, n * n);
  for (const auto& k : kraus) {
    const Eigen::MatrixXcd lifted = kron(id, k);
    out += lifted * phi0 * lifted.adjoint();
  }
  return DenseOperator(out);
}

DenseOperator simulate_stretch(const KrausSet& kraus, const StretchCertificate& certificate,
                               const DenseOperator& rho, std::size_t d) {
  if (!certificate.stretchable || certificate.corrections.size() != d * d) {
    throw ValidationError("simulation requires a stretchability certificate");
  }
  if (rho.dim() != d) throw ValidationError("state dimension does not match d");
  const auto n = static_cast<Eigen::Index>(d);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd joint = kron(rho.matrix(), choi_finite(kraus, d).matrix());
  const Eigen::VectorXcd phi = max_entangled(d);

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  std::size_t k = 0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b, ++k) {
      const Eigen::MatrixXcd s = weyl(d, a, b).matrix();
      const Eigen::VectorXcd bell = kron(id, s.conjugate()) * phi;
      // <bell|_{A A'} (x) 1_B as a d x d^3 map.
      const Eigen::MatrixXcd project = kron(bell.adjoint(), id);
      const Eigen::MatrixXcd branch = project * joint * project.adjoint();
      const WeylIndex c = certificate.corrections[k];
      const Eigen::MatrixXcd u = weyl(d, c.a, c.b).matrix();
      out += u.adjoint() * branch * u;
    }
  }
  return DenseOperator(out);
}

KrausSet weyl_channel(const std::vector<double>& probabilities, std::size_t d) {
  require_dim(d);
  check_probabilities(probabilities, d * d);
  KrausSet kraus;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) {
      const double p = probabilities[a * d + b];
      if (p > 0.0) kraus.push_back(std::sqrt(p) * weyl(d, a, b).matrix());
    }
  }
  return kraus;
}

KrausSet pauli_channel(const std::vector<double>& probabilities) {
  check_probabilities(probabilities, 4);
  // Weyl order for d = 2 is I, Z, X, XZ (= -iY).
  return weyl_channel({probabilities[0], probabilities[3], probabilities[1], probabilities[2]}, 2);
}

KrausSet depolarizing(double p, std::size_t d) {
  require_dim(d);
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("depolarizing p must lie in [0, 1]");
  const double dd = static_cast<double>(d * d);
  std::vector<double> probs(d * d, p / dd);
  probs[0] = 1.0 - p + p / dd;
  return weyl_channel(probs, d);
}

KrausSet amplitude_damping(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw ValidationError("amplitude damping gamma must lie in [0, 1]");
  }
  Eigen::MatrixXcd k0 = Eigen::MatrixXcd::Zero(2, 2);
  Eigen::MatrixXcd k1 = Eigen::MatrixXcd::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  return {k0, k1};
}

}  // namespace cvstretch::finite
