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
#include <ostream>
#include <vector>

namespace cvstretch {

// -log2(1 - eta) bits per channel use, eta in [0, 1).
double plob_bound(double eta);

struct SweepRow {
  double xi;
  double eta;
  double excess_noise;
  double log_negativity;
};

// Log-negativity of choi(thermal_loss(eta, excess_noise), xi) for each xi,
// which must be strictly ascending and inside (0, 1).
std::vector<SweepRow> negativity_sweep(double eta, double excess_noise,
                                       const std::vector<double>& xi_list);

// steps evenly spaced values from xi_from to xi_to inclusive.
std::vector<double> xi_grid(double xi_from, double xi_to, std::size_t steps);

// Header xi,eta,excess_noise,log_negativity; 9 significant digits; LF.
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace cvstretch
