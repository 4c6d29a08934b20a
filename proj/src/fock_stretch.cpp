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

#include "cvstretch/fock_stretch.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cvstretch/errors.hpp"
#include "fock_internal.hpp"
#include "parallel.hpp"

namespace cvstretch::fock {
namespace {

// Amplitude and thermal occupation carried through a chain of channels,
// used only to size cutoffs.
struct Budget {
  double amplitude;
  double occupation;
};

Budget propagate(const ChannelKind& stage, Budget b) {
  return std::visit(
      [&](const auto& k) -> Budget {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, channel_kind::ThermalLoss>) {
          return {std::sqrt(k.eta) * b.amplitude, k.eta * b.occupation + k.excess_noise};
        } else if constexpr (std::is_same_v<K, channel_kind::Amplifier>) {
          return {std::sqrt(k.kappa) * b.amplitude,
                  k.kappa * b.occupation + (k.kappa - 1.0) + k.excess_noise};
        } else if constexpr (std::is_same_v<K, channel_kind::AdditiveNoise>) {
          return {b.amplitude, b.occupation + k.nu};
        } else {
          return b;
        }
      },
      stage);
}

struct PointResult {
  Eigen::MatrixXcd contribution;
  double truncation_error;
  double output_tail;
};

PointResult evaluate_point(const StretchPlan& plan, const std::vector<ChannelKind>& chain,
                           const FockOperator& rho_in, const Extent& ext, Complex beta,
                           std::size_t out_cutoff) {
  const std::size_t working = std::max(rho_in.cutoff(), detail::bell_working_cutoff(beta, plan.xi, ext));
  auto branch = detail::bell_branch(beta, plan.xi, rho_in, working);

  Budget budget{plan.xi * (std::abs(ext.mean_amplitude + beta) + ext.spread + 1.0), 0.0};
  FockOperator sigma(working, 1, std::move(branch.unnormalized));
  for (const auto& stage : chain) {
    budget = propagate(stage, budget);
    const std::size_t cutoff =
        std::max(sigma.cutoff(), cutoff_for(budget.amplitude, budget.occupation));
    sigma = apply_channel_fock(stage, sigma, cutoff);
  }
  const double before = sigma.trace();
  FockOperator out = displace(sigma, -plan.gain * beta, out_cutoff);
  return {out.matrix(), branch.trace_error, std::max(0.0, before - out.trace())};
}

}  // namespace

std::vector<ChannelKind> achieved_kinds(const StretchPlan& plan) {
  if (const auto* noise = std::get_if<channel_kind::AdditiveNoise>(&plan.target)) {
    return {amplifier(1.0, plan.residual_noise), *noise};
  }
  return {plan.achieved};
}

double default_radius(double xi, double spread) {
  if (!(xi > 0.0 && xi < 1.0)) throw ValidationError("two-mode squeezing parameter xi must lie in (0, 1)");
  return (4.0 + spread) / std::sqrt(1.0 - xi * xi);
}

namespace {

StretchIntegral integrate_unchecked(const StretchPlan& plan, const FockOperator& rho_in,
                                    const StretchGrid& grid, std::size_t out_cutoff) {
  if (rho_in.modes() != 1) throw ValidationError("stretch integration requires a single-mode input");
  if (!(grid.radius > 0.0 && grid.step > 0.0)) {
    throw ValidationError("grid radius and step must be positive");
  }
  if (out_cutoff == 0) out_cutoff = rho_in.cutoff();
  achieved_channel(plan);

  const Extent ext = extent(rho_in);
  // Random displacements commute with the correction, so trailing additive
  // noise is applied once to the integrated output.
  std::vector<ChannelKind> chain = plan.resource_chain;
  std::vector<ChannelKind> deferred;
  while (!chain.empty() && std::holds_alternative<channel_kind::AdditiveNoise>(chain.back())) {
    deferred.insert(deferred.begin(), chain.back());
    chain.pop_back();
  }
  const std::size_t final_cutoff = out_cutoff;
  if (!deferred.empty()) {
    Budget budget{std::abs(ext.mean_amplitude) + ext.spread + 1.0, 0.0};
    for (const auto& stage : achieved_kinds(plan)) budget = propagate(stage, budget);
    out_cutoff = std::max(out_cutoff, cutoff_for(budget.amplitude, budget.occupation));
  }
  const Complex center = -ext.mean_amplitude;
  const double xc = std::numbers::sqrt2 * center.real();
  const double pc = std::numbers::sqrt2 * center.imag();
  const auto half = static_cast<long>(std::floor(grid.radius / grid.step));
  const auto rows = static_cast<std::size_t>(2 * half + 1);
  const auto dim = static_cast<Eigen::Index>(out_cutoff + 1);

  struct RowSum {
    Eigen::MatrixXcd rho;
    double truncation_error = 0.0;
    double output_tail = 0.0;
    std::size_t points = 0;
  };
  std::vector<RowSum> sums(rows);

  cvstretch::detail::parallel_for(rows, [&](std::size_t row) {
    RowSum& acc = sums[row];
    acc.rho = Eigen::MatrixXcd::Zero(dim, dim);
    const double u = static_cast<double>(static_cast<long>(row) - half) * grid.step;
    for (long j = -half; j <= half; ++j) {
      const double v = static_cast<double>(j) * grid.step;
      if (u * u + v * v > grid.radius * grid.radius) continue;
      const Complex beta((xc + u) / std::numbers::sqrt2, (pc + v) / std::numbers::sqrt2);
      const PointResult point = evaluate_point(plan, chain, rho_in, ext, beta, out_cutoff);
      acc.rho += point.contribution;
      acc.truncation_error += point.truncation_error;
      acc.output_tail += point.output_tail;
      ++acc.points;
    }
  });

  const double area = grid.step * grid.step;
  StretchIntegral result{FockOperator(out_cutoff, 1, Eigen::MatrixXcd::Zero(dim, dim)), 0.0, 0.0,
                         0.0, 0, grid};
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& s : sums) {
    total += s.rho;
    result.truncation_error += area * s.truncation_error;
    result.output_tail += area * s.output_tail;
    result.points += s.points;
  }
  total *= area;
  total = 0.5 * (total + total.adjoint()).eval();
  FockOperator rho(out_cutoff, 1, std::move(total));
  const double integrated = rho.trace();
  for (const auto& stage : deferred) rho = apply_channel_fock(stage, rho, out_cutoff);
  result.rho = with_cutoff(rho, final_cutoff);
  result.trace = result.rho.trace();
  result.output_tail += std::max(0.0, integrated - result.trace);
  return result;
}

void require_trace(const StretchIntegral& result, const FockOperator& rho_in) {
  const auto& grid = result.grid;
  const double deviation = std::abs(result.trace - rho_in.trace());
  if (deviation > kStretchTraceTolerance) {
    std::ostringstream msg;
    msg << "stretch integral trace " << result.trace << " deviates from the input trace "
        << rho_in.trace() << " by " << deviation << " (radius " << grid.radius << ", step "
        << grid.step << ", output tail " << result.output_tail << ")";
    throw ConvergenceError(msg.str());
  }
}

}  // namespace

StretchIntegral integrate_stretch(const StretchPlan& plan, const FockOperator& rho_in,
                                  const StretchGrid& grid, std::size_t out_cutoff) {
  StretchIntegral result = integrate_unchecked(plan, rho_in, grid, out_cutoff);
  require_trace(result, rho_in);
  return result;
}

namespace {
constexpr int kMaxRefinements = 8;
constexpr double kRadiusGrowth = 1.25;
constexpr double kInitialStepsPerRadius = 6.0;
}  // namespace

ConvergedStretch converge_stretch(const StretchPlan& plan, const FockOperator& rho_in,
                                  std::size_t out_cutoff, double tol) {
  StretchGrid grid{default_radius(plan.xi, extent(rho_in).spread), 0.0};
  grid.step = grid.radius / kInitialStepsPerRadius;
  ConvergedStretch out{integrate_unchecked(plan, rho_in, grid, out_cutoff), INFINITY, {grid}};
  // Outcome mass outside the disc shows up as a trace deficit that the
  // output tail does not explain.
  auto grid_deficit = [&](const StretchIntegral& r) {
    return rho_in.trace() - r.trace - r.output_tail;
  };
  for (int i = 0; i < kMaxRefinements; ++i) {
    const bool grow = grid_deficit(out.result) > tol;
    if (grow) {
      grid.radius *= kRadiusGrowth;
    } else {
      grid.step *= 0.5;
    }
    StretchIntegral next = integrate_unchecked(plan, rho_in, grid, out_cutoff);
    out.history.push_back(grid);
    out.refinement_change = distance(out.result.rho, next.rho, Metric::trace);
    out.result = std::move(next);
    if (!grow && out.refinement_change < tol && grid_deficit(out.result) <= tol) {
      require_trace(out.result, rho_in);
      return out;
    }
  }
  std::ostringstream msg;
  msg << "stretch grid did not converge: last refinement changed the output by "
      << out.refinement_change << " (tolerance " << tol << ")";
  throw ConvergenceError(msg.str());
}


FockOperator achieved_output(const StretchPlan& plan, const FockOperator& rho_in,
                             std::size_t out_cutoff) {
  const Extent ext = extent(rho_in);
  Budget budget{std::abs(ext.mean_amplitude) + ext.spread + 1.0, 0.0};
  FockOperator rho = rho_in;
  for (const auto& stage : achieved_kinds(plan)) {
    budget = propagate(stage, budget);
    rho = apply_channel_fock(stage, rho, std::max(rho.cutoff(), cutoff_for(budget.amplitude, budget.occupation)));
  }
  return with_cutoff(rho, out_cutoff);
}

}  // namespace cvstretch::fock
