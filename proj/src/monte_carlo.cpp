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
#include <random>
#include <vector>

#include "cvstretch/errors.hpp"
#include "cvstretch/stretching.hpp"
#include "parallel.hpp"

namespace cvstretch {
namespace {

constexpr std::size_t kBlockSize = 4096;

}  // namespace

MonteCarloResult simulate_locc_gaussian(const StretchPlan& plan, const GaussianState& input,
                                        std::size_t n_samples, std::uint64_t seed) {
  if (input.n_modes() != 1) throw ValidationError("Monte-Carlo input must be single-mode");
  if (n_samples < kMinMonteCarloSamples) {
    throw ValidationError("Monte-Carlo simulation needs at least 1000 samples");
  }
  const GaussianChannelTriplet resource = resource_triplet(plan);
  achieved_channel(plan);  // rejects plans whose gain does not close the loop

  // Outcome statistics: q = (x_A - x_A', p_A + p_A') with beta = -(q1 + i q2)/sqrt(2).
  const GaussianState joint = tensor(input, two_mode_squeezed(plan.xi));
  Eigen::Matrix<double, 2, 6> measured = Eigen::Matrix<double, 2, 6>::Zero();
  measured(0, 0) = 1.0;
  measured(0, 2) = -1.0;
  measured(1, 1) = 1.0;
  measured(1, 3) = 1.0;
  const Eigen::Vector2d mean_q = measured * joint.mean();
  const Eigen::Matrix2d cov_qq = measured * joint.cov() * measured.transpose();
  const Eigen::Matrix2d chol = cov_qq.llt().matrixL();

  const std::size_t blocks = (n_samples + kBlockSize - 1) / kBlockSize;
  std::vector<Eigen::Vector2d> outputs(n_samples);
  std::vector<Eigen::Matrix2d> block_cov(blocks, Eigen::Matrix2d::Zero());

  detail::parallel_for(blocks, [&](std::size_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    const std::size_t begin = block * kBlockSize;
    const std::size_t end = std::min(n_samples, begin + kBlockSize);
    for (std::size_t i = begin; i < end; ++i) {
      const Eigen::Vector2d z(normal(rng), normal(rng));
      const Eigen::Vector2d q = mean_q + chol * z;
      const std::complex<double> beta(-q(0) / std::numbers::sqrt2, -q(1) / std::numbers::sqrt2);
      const GaussianState conditioned = bell_conditional(input, plan.xi, beta).state;
      const GaussianState received = apply(resource, conditioned, 0);
      const GaussianState corrected = displace(received, 0, -plan.gain * beta);
      outputs[i] = corrected.mean();
      block_cov[block] += corrected.cov();
    }
  });

  MonteCarloResult result;
  result.samples = n_samples;
  const auto n = static_cast<double>(n_samples);
  Eigen::Matrix2d mean_cov = Eigen::Matrix2d::Zero();
  for (const auto& c : block_cov) mean_cov += c;
  mean_cov /= n;

  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  for (const auto& y : outputs) mean += y;
  mean /= n;

  Eigen::Matrix2d spread = Eigen::Matrix2d::Zero();
  Eigen::Matrix2d spread_sq = Eigen::Matrix2d::Zero();
  for (const auto& y : outputs) {
    const Eigen::Vector2d d = y - mean;
    const Eigen::Matrix2d outer = d * d.transpose();
    spread += outer;
    spread_sq += outer.cwiseProduct(outer);
  }
  spread /= n;
  spread_sq /= n;

  result.mean = mean;
  result.cov = mean_cov + spread;
  result.mean_stderr = spread.diagonal().cwiseMax(0.0).cwiseSqrt() / std::sqrt(n - 1.0);
  result.cov_stderr =
      (spread_sq - spread.cwiseProduct(spread)).cwiseMax(0.0).cwiseSqrt() / std::sqrt(n - 1.0);
  return result;
}

}  // namespace cvstretch
