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

#include <cstddef>
#include <vector>

#include "cvstretch/fock.hpp"
#include "cvstretch/stretching.hpp"

namespace cvstretch::fock {

// Square grid of Bell outcomes beta = (x + i p) / sqrt(2) with spacing step
// in (x, p), restricted to the disc of the given radius around the outcome
// that cancels the input's mean amplitude.
struct StretchGrid {
  double radius;
  double step;
};

// (4 + spread) / sqrt(1 - xi^2): four standard deviations of the outcome
// density of a coherent input, widened by the photon-number spread of the
// input about its mean amplitude.
double default_radius(double xi, double spread = 0.0);

struct StretchIntegral {
  FockOperator rho;
  double trace;
  // Summed trace lost by the working cutoffs of the Bell branches.
  double truncation_error;
  // Summed trace pushed above the output cutoff by the correction.
  double output_tail;
  std::size_t points;
  StretchGrid grid;
};

inline constexpr double kStretchTraceTolerance = 1e-3;

/// Quadrature of the stretching integral
///   int dx dp D(g beta)^dag E'(T rho T^dag) D(g beta)
/// with E' the resource chain of the plan and T the Bell functional.
///
/// Each outcome is evaluated at its own working cutoff; the result is cut
/// to out_cutoff (default: the cutoff of rho_in). Raises ConvergenceError
/// when the trace misses tr(rho_in) by more than kStretchTraceTolerance.
StretchIntegral integrate_stretch(const StretchPlan& plan, const FockOperator& rho_in,
                                  const StretchGrid& grid, std::size_t out_cutoff = 0);

inline constexpr double kGridTolerance = 1e-4;

struct ConvergedStretch {
  StretchIntegral result;
  // Trace distance between the last two refinements.
  double refinement_change;
  std::vector<StretchGrid> history;
};

// Starts from default_radius (with the input's spread) and a coarse step, grows the radius while the
// grid misses outcome mass and halves the step until successive results
// differ by less than tol in trace distance.
ConvergedStretch converge_stretch(const StretchPlan& plan, const FockOperator& rho_in,
                                  std::size_t out_cutoff = 0, double tol = kGridTolerance);

// The channel the protocol realises as standard kinds, applied in order.
std::vector<ChannelKind> achieved_kinds(const StretchPlan& plan);

// Direct action of the achieved channel: the reference for integrate_stretch.
FockOperator achieved_output(const StretchPlan& plan, const FockOperator& rho_in,
                             std::size_t out_cutoff);

}  // namespace cvstretch::fock
