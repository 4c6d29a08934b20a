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

#include "cvstretch/bounds.hpp"

#include <cmath>
#include <cstdio>

#include "cvstretch/channel.hpp"
#include "cvstretch/errors.hpp"
#include "cvstretch/gaussian_state.hpp"

namespace cvstretch {

double plob_bound(double eta) {
  if (!(eta >= 0.0 && eta < 1.0)) throw ValidationError("plob bound requires eta in [0, 1)");
  return -std::log2(1.0 - eta);
}

std::vector<SweepRow> negativity_sweep(double eta, double excess_noise,
                                       const std::vector<double>& xi_list) {
  const ChannelKind channel = thermal_loss(eta, excess_noise);
  validate(channel);
  std::vector<SweepRow> rows;
  rows.reserve(xi_list.size());
  for (std::size_t i = 0; i < xi_list.size(); ++i) {
    if (i > 0 && !(xi_list[i] > xi_list[i - 1])) {
      throw ValidationError("xi list must be strictly ascending");
    }
    const double xi = xi_list[i];
    const GaussianState state = choi(make_channel(channel), xi);
    rows.push_back({xi, eta, excess_noise, log_negativity(state, {0})});
  }
  return rows;
}

std::vector<double> xi_grid(double xi_from, double xi_to, std::size_t steps) {
  if (steps == 0) throw ValidationError("sweep needs at least one step");
  if (steps == 1) return {xi_from};
  if (!(xi_to > xi_from)) throw ValidationError("sweep requires xi-to > xi-from");
  std::vector<double> out(steps);
  const double h = (xi_to - xi_from) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) out[i] = xi_from + h * static_cast<double>(i);
  out.back() = xi_to;
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "xi,eta,excess_noise,log_negativity\n";
  char line[128];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%.9g,%.9g,%.9g,%.9g\n", r.xi, r.eta, r.excess_noise,
                  r.log_negativity);
    out << line;
  }
}

}  // namespace cvstretch
