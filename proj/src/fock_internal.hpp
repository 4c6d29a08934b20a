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

#include <Eigen/Dense>

#include "cvstretch/fock.hpp"

namespace cvstretch::fock::detail {

struct BellBranch {
  // (1 - xi^2)/(2 pi) xi^n D(beta) rho D(beta)^dag xi^n at the working cutoff.
  Eigen::MatrixXcd unnormalized;
  // Upper bound on the trace dropped by the working cutoff.
  double trace_error;
};

BellBranch bell_branch(Complex beta, double xi, const FockOperator& rho,
                       std::size_t working_cutoff);

// Working cutoff for the conditional state of outcome beta: the filtered
// output is close to a coherent state of amplitude xi (|<a> + beta| + spread).
std::size_t bell_working_cutoff(Complex beta, double xi, const Extent& input);

}  // namespace cvstretch::fock::detail
