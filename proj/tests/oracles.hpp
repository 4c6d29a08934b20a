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

// Independent reference computations for the unit and acceptance tests.
// Nothing here calls into the library's numerical kernels.

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace oracle {

using Complex = std::complex<double>;

// Truncated annihilation operator on photon numbers 0..cutoff.
inline Eigen::MatrixXcd annihilation(int cutoff) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(cutoff + 1, cutoff + 1);
  for (int n = 1; n <= cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// exp(beta a^dag - beta* a) built at a large cutoff and cut to keep + 1 rows
// and columns.
inline Eigen::MatrixXcd displacement_expm(Complex beta, int keep, int work = 160) {
  const Eigen::MatrixXcd a = annihilation(work);
  const Eigen::MatrixXcd gen = beta * a.adjoint() - std::conj(beta) * a;
  const Eigen::MatrixXcd d = gen.exp();
  return d.topLeftCorner(keep + 1, keep + 1);
}

// e^{-|a|^2/2} a^n / sqrt(n!) by direct products.
inline Eigen::VectorXcd coherent_ket(Complex alpha, int cutoff) {
  Eigen::VectorXcd v(cutoff + 1);
  v(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cutoff; ++n) v(n) = v(n - 1) * alpha / std::sqrt(static_cast<double>(n));
  return v;
}

inline Eigen::MatrixXcd projector(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

inline Eigen::VectorXcd number_ket(int n, int cutoff) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(cutoff + 1);
  v(n) = 1.0;
  return v;
}

// Symplectic eigenvalues from the complex eigenvalues of i Omega gamma,
// paired after sorting by magnitude.
inline Eigen::VectorXd symplectic_eigenvalues(const Eigen::MatrixXd& cov) {
  const Eigen::Index n = cov.rows() / 2;
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    omega(2 * k, 2 * k + 1) = 1.0;
    omega(2 * k + 1, 2 * k) = -1.0;
  }
  const Eigen::MatrixXcd m = Complex(0.0, 1.0) * (omega * cov).cast<Complex>();
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(m);
  std::vector<double> mags;
  for (Eigen::Index i = 0; i < 2 * n; ++i) mags.push_back(std::abs(eig.eigenvalues()(i)));
  std::sort(mags.begin(), mags.end());
  Eigen::VectorXd out(n);
  for (Eigen::Index k = 0; k < n; ++k) out(k) = 0.5 * (mags[2 * k] + mags[2 * k + 1]);
  return out;
}

// Log-negativity with the p quadrature of the given mode sign-flipped.
inline double log_negativity(const Eigen::MatrixXd& cov, int mode) {
  Eigen::MatrixXd flipped = cov;
  flipped.row(2 * mode + 1) *= -1.0;
  flipped.col(2 * mode + 1) *= -1.0;
  double total = 0.0;
  const Eigen::VectorXd nu = symplectic_eigenvalues(flipped);
  for (Eigen::Index i = 0; i < nu.size(); ++i) total += std::max(0.0, -std::log2(2.0 * nu(i)));
  return total;
}

// Minimum eigenvalue of the Hermitian matrix alpha - (i/2)(sigma - K^T sigma K).
inline double physicality_eigenvalue(const Eigen::Matrix2d& K, const Eigen::Matrix2d& alpha) {
  Eigen::Matrix2d sigma;
  sigma << 0.0, 1.0, -1.0, 0.0;
  const Eigen::Matrix2cd h = alpha.cast<Complex>() -
                             Complex(0.0, 0.5) * (sigma - K.transpose() * sigma * K).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(h);
  return eig.eigenvalues().minCoeff();
}

// Random density matrix from a Ginibre matrix.
inline Eigen::MatrixXcd random_density(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXcd g(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::MatrixXcd rho = g * g.adjoint();
  return rho / rho.trace();
}

}  // namespace oracle
