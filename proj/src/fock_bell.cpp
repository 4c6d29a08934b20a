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

#include <cmath>
#include <numbers>
#include <sstream>

#include "cvstretch/errors.hpp"
#include "cvstretch/fock.hpp"
#include "fock_internal.hpp"

namespace cvstretch::fock {
namespace detail {

BellBranch bell_branch(Complex beta, double xi, const FockOperator& rho,
                       std::size_t working_cutoff) {
  const Eigen::MatrixXcd d = displacement_block(beta, working_cutoff + 1, rho.dim());
  Eigen::MatrixXcd m = d * rho.matrix() * d.adjoint();
  const double missing = std::max(0.0, rho.trace() - m.trace().real());
  const auto dim = static_cast<Eigen::Index>(working_cutoff + 1);
  Eigen::VectorXd filter(dim);
  double power = 1.0;
  for (Eigen::Index n = 0; n < dim; ++n) {
    filter(n) = power;
    power *= xi;
  }
  const double prefactor = (1.0 - xi * xi) / (2.0 * std::numbers::pi);
  m = prefactor * (filter.asDiagonal() * m * filter.asDiagonal());
  // Dropped rows all carry a filter factor of at most xi^(W+1) on each side.
  return {std::move(m), prefactor * power * power * missing};
}

std::size_t bell_working_cutoff(Complex beta, double xi, const Extent& input) {
  const double amplitude = xi * (std::abs(input.mean_amplitude + beta) + input.spread + 1.0);
  return cutoff_for(amplitude, 0.0);
}

}  // namespace detail

namespace {
constexpr std::size_t kMaxWorkingCutoff = 4096;
}

BellOutcome bell_project(Complex beta, double xi, const FockOperator& rho_in,
                         std::optional<std::size_t> working_cutoff) {
  if (rho_in.modes() != 1) throw ValidationError("Bell projection requires a single-mode input");
  if (!(xi > 0.0 && xi < 1.0)) {
    throw ValidationError("two-mode squeezing parameter xi must lie in (0, 1)");
  }
  std::size_t cutoff = working_cutoff.value_or(
      std::max(rho_in.cutoff(), detail::bell_working_cutoff(beta, xi, extent(rho_in))));
  while (true) {
    auto branch = detail::bell_branch(beta, xi, rho_in, cutoff);
    const double weight = branch.unnormalized.trace().real();
    const double rel_error = weight > 0.0 ? branch.trace_error / weight : INFINITY;
    if (rel_error <= kBellWeightTolerance) {
      return {weight, FockOperator(cutoff, 1, branch.unnormalized / weight), rel_error};
    }
    if (working_cutoff || cutoff >= kMaxWorkingCutoff) {
      std::ostringstream msg;
      msg << "Bell projection starved at working cutoff " << cutoff
          << ": relative weight error estimate " << rel_error << " exceeds "
          << kBellWeightTolerance;
      throw ConvergenceError(msg.str());
    }
    cutoff *= 2;
  }
}

}  // namespace cvstretch::fock
