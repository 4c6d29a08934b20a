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

#include "cvstretch/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "cvstretch/errors.hpp"

namespace cvstretch::fock {
namespace {

std::size_t space_dim(std::size_t cutoff, std::size_t modes) {
  std::size_t dim = 1;
  for (std::size_t k = 0; k < modes; ++k) dim *= cutoff + 1;
  return dim;
}

void require_single_mode(const FockOperator& rho) {
  if (rho.modes() != 1) throw ValidationError("operation requires a single-mode operator");
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) {
  return 0.5 * (m + m.adjoint());
}

// Eigen-decomposition square root, clamping round-off negatives to zero.
// Eigenvalues below the rounding floor of the spectrum are treated as zero.
Eigen::VectorXd clipped_spectrum(const Eigen::VectorXd& ev) {
  const double floor = static_cast<double>(ev.size()) * std::numeric_limits<double>::epsilon() *
                       ev.cwiseAbs().maxCoeff();
  return ev.unaryExpr([floor](double x) { return x > floor ? x : 0.0; });
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(hermitian_part(m));
  const Eigen::VectorXd roots = clipped_spectrum(eig.eigenvalues()).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().adjoint();
}

}  // namespace

FockVector::FockVector(std::size_t cutoff, std::size_t modes, Eigen::VectorXcd amplitudes)
    : cutoff_(cutoff), modes_(modes), amplitudes_(std::move(amplitudes)) {
  if (modes_ == 0) throw ValidationError("mode count must be positive");
  if (static_cast<std::size_t>(amplitudes_.size()) != space_dim(cutoff_, modes_)) {
    throw ValidationError("amplitude vector length must be (cutoff + 1)^modes");
  }
}

FockOperator::FockOperator(std::size_t cutoff, std::size_t modes, Eigen::MatrixXcd matrix)
    : cutoff_(cutoff), modes_(modes), matrix_(std::move(matrix)) {
  if (modes_ == 0) throw ValidationError("mode count must be positive");
  const auto dim = space_dim(cutoff_, modes_);
  if (static_cast<std::size_t>(matrix_.rows()) != dim ||
      static_cast<std::size_t>(matrix_.cols()) != dim) {
    throw ValidationError("operator dimension must be (cutoff + 1)^modes");
  }
}

TruncatedKet make_ket(const KetKind& kind, std::size_t cutoff) {
  return std::visit(
      [cutoff](const auto& k) -> TruncatedKet {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, ket_kind::Number>) {
          if (k.n > cutoff) throw ValidationError("number state above the cutoff");
          Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(cutoff + 1));
          amps(static_cast<Eigen::Index>(k.n)) = 1.0;
          return {FockVector(cutoff, 1, amps), 0.0};
        } else if constexpr (std::is_same_v<K, ket_kind::Coherent>) {
          Eigen::VectorXcd amps(static_cast<Eigen::Index>(cutoff + 1));
          amps(0) = std::exp(-0.5 * std::norm(k.alpha));
          for (std::size_t n = 1; n <= cutoff; ++n) {
            const auto i = static_cast<Eigen::Index>(n);
            amps(i) = amps(i - 1) * k.alpha / std::sqrt(static_cast<double>(n));
          }
          const double deficit = std::max(0.0, 1.0 - amps.squaredNorm());
          return {FockVector(cutoff, 1, amps), deficit};
        } else {
          if (!(k.xi > 0.0 && k.xi < 1.0)) {
            throw ValidationError("two-mode squeezing parameter xi must lie in (0, 1)");
          }
          const auto side = static_cast<Eigen::Index>(cutoff + 1);
          Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(side * side);
          double amp = std::sqrt(1.0 - k.xi * k.xi);
          for (Eigen::Index n = 0; n < side; ++n) {
            amps(n * side + n) = amp;
            amp *= k.xi;
          }
          const double deficit = std::max(0.0, 1.0 - amps.squaredNorm());
          return {FockVector(cutoff, 2, amps), deficit};
        }
      },
      kind);
}

FockOperator density(const FockVector& ket) {
  return FockOperator(ket.cutoff(), ket.modes(),
                      ket.amplitudes() * ket.amplitudes().adjoint());
}

FockOperator thermal_density(double nbar, std::size_t cutoff) {
  if (!(nbar >= 0.0)) throw ValidationError("thermal photon number must be >= 0");
  Eigen::VectorXcd diag(static_cast<Eigen::Index>(cutoff + 1));
  const double ratio = nbar / (1.0 + nbar);
  double p = 1.0 / (1.0 + nbar);
  for (Eigen::Index n = 0; n < diag.size(); ++n) {
    diag(n) = p;
    p *= ratio;
  }
  return FockOperator(cutoff, 1, diag.asDiagonal());
}

FockOperator with_cutoff(const FockOperator& op, std::size_t cutoff) {
  require_single_mode(op);
  const auto n = static_cast<Eigen::Index>(cutoff + 1);
  const auto keep = std::min<Eigen::Index>(n, op.matrix().rows());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  m.topLeftCorner(keep, keep) = op.matrix().topLeftCorner(keep, keep);
  return FockOperator(cutoff, 1, m);
}

Eigen::MatrixXcd displacement_block(Complex beta, std::size_t rows, std::size_t cols) {
  const auto r = static_cast<Eigen::Index>(rows);
  const auto c = static_cast<Eigen::Index>(cols);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(r, c);
  const double x = std::norm(beta);
  if (x == 0.0) {
    for (Eigen::Index k = 0; k < std::min(r, c); ++k) out(k, k) = 1.0;
    return out;
  }
  const double log_x = std::log(x);
  const Complex phase = beta / std::abs(beta);
  const Complex upper_phase = -std::conj(phase);

  // f_j = sqrt(j!/(j+k)!) e^{-x/2} x^{k/2} L_j^{(k)}(x) = |<j+k|D|j>| up to
  // sign, via the three-term Laguerre recurrence rescaled to stay O(1).
  // Lower triangle: <j+k|D|j> = f_j phase^k. Upper: <j|D|j+k> = f_j (-phase*)^k.
  const Eigen::Index max_k = std::max(r, c);
  std::vector<double> f;
  for (Eigen::Index k = 0; k < max_k; ++k) {
    const Eigen::Index lower_len = std::min(c, r - k);
    const Eigen::Index upper_len = k == 0 ? 0 : std::min(r, c - k);
    const Eigen::Index len = std::max(lower_len, upper_len);
    if (len <= 0) continue;
    const auto kd = static_cast<double>(k);
    f.assign(static_cast<std::size_t>(len), 0.0);
    f[0] = std::exp(-0.5 * x + 0.5 * kd * log_x - 0.5 * std::lgamma(kd + 1.0));
    if (len > 1) f[1] = (1.0 + kd - x) * f[0] / std::sqrt(1.0 + kd);
    for (Eigen::Index j = 1; j + 1 < len; ++j) {
      const auto jd = static_cast<double>(j);
      f[static_cast<std::size_t>(j + 1)] =
          ((2.0 * jd + 1.0 + kd - x) * f[static_cast<std::size_t>(j)] -
           std::sqrt(jd * (jd + kd)) * f[static_cast<std::size_t>(j - 1)]) /
          std::sqrt((jd + 1.0) * (jd + 1.0 + kd));
    }
    const Complex lower_phase_k = std::pow(phase, static_cast<int>(k));
    const Complex upper_phase_k = std::pow(upper_phase, static_cast<int>(k));
    for (Eigen::Index j = 0; j < lower_len; ++j) {
      out(j + k, j) = f[static_cast<std::size_t>(j)] * lower_phase_k;
    }
    for (Eigen::Index j = 0; j < upper_len; ++j) {
      out(j, j + k) = f[static_cast<std::size_t>(j)] * upper_phase_k;
    }
  }
  return out;
}

FockOperator displacement_matrix(Complex beta, std::size_t cutoff) {
  return FockOperator(cutoff, 1, displacement_block(beta, cutoff + 1, cutoff + 1));
}

FockOperator displace(const FockOperator& rho, Complex beta, std::size_t out_cutoff) {
  require_single_mode(rho);
  const Eigen::MatrixXcd d = displacement_block(beta, out_cutoff + 1, rho.dim());
  return FockOperator(out_cutoff, 1, d * rho.matrix() * d.adjoint());
}

double distance(const FockOperator& rho1, const FockOperator& rho2, Metric metric) {
  if (rho1.cutoff() != rho2.cutoff() || rho1.modes() != rho2.modes()) {
    throw ValidationError("distance requires operators with equal cutoff and mode count");
  }
  if (metric == Metric::trace) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(
        hermitian_part(rho1.matrix() - rho2.matrix()), Eigen::EigenvaluesOnly);
    return 0.5 * eig.eigenvalues().cwiseAbs().sum();
  }
  const Eigen::MatrixXcd root = psd_sqrt(rho1.matrix());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(
      hermitian_part(root * rho2.matrix() * root), Eigen::EigenvaluesOnly);
  const double s = clipped_spectrum(eig.eigenvalues()).cwiseSqrt().sum();
  return s * s;
}

namespace {

struct LadderExpectations {
  double trace;
  Complex a;
  Complex a2;
  double n;
};

LadderExpectations ladder_expectations(const FockOperator& rho) {
  require_single_mode(rho);
  const Eigen::MatrixXcd& m = rho.matrix();
  LadderExpectations e{rho.trace(), 0.0, 0.0, 0.0};
  const Eigen::Index dim = m.rows();
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto kd = static_cast<double>(k);
    e.n += kd * m(k, k).real();
    if (k >= 1) e.a += std::sqrt(kd) * m(k, k - 1);
    if (k >= 2) e.a2 += std::sqrt(kd * (kd - 1.0)) * m(k, k - 2);
  }
  if (e.trace <= 0.0) throw ValidationError("operator has non-positive trace");
  e.a /= e.trace;
  e.a2 /= e.trace;
  e.n /= e.trace;
  return e;
}

}  // namespace

Moments quadrature_moments(const FockOperator& rho) {
  const auto e = ladder_expectations(rho);
  Moments out;
  out.mean << std::numbers::sqrt2 * e.a.real(), std::numbers::sqrt2 * e.a.imag();
  const double xx = e.a2.real() + e.n + 0.5;
  const double pp = -e.a2.real() + e.n + 0.5;
  const double xp = e.a2.imag();
  out.cov << xx - out.mean(0) * out.mean(0), xp - out.mean(0) * out.mean(1),
      xp - out.mean(0) * out.mean(1), pp - out.mean(1) * out.mean(1);
  return out;
}

Extent extent(const FockOperator& rho) {
  const auto e = ladder_expectations(rho);
  return {e.a, std::sqrt(std::max(0.0, e.n - std::norm(e.a)))};
}

std::size_t cutoff_for(double amplitude, double thermal_occupation) {
  const double a2 = amplitude * amplitude;
  const double n = thermal_occupation;
  const double spread = std::sqrt((2.0 * n + 1.0) * a2 + n * n + n);
  return static_cast<std::size_t>(std::ceil(a2 + n + 10.0 * spread + 25.0));
}

}  // namespace cvstretch::fock
