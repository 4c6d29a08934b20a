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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "cvstretch/bounds.hpp"
#include "cvstretch/channel.hpp"
#include "cvstretch/errors.hpp"
#include "oracles.hpp"

using namespace cvstretch;
using Catch::Matchers::WithinAbs;

TEST_CASE("plob bound values", "[bounds]") {
  CHECK(plob_bound(0.5) == 1.0);
  CHECK(plob_bound(0.0) == 0.0);
  CHECK_THAT(plob_bound(0.99), WithinAbs(6.643856189774725, 1e-12));
  CHECK_THROWS_AS(plob_bound(1.0), ValidationError);
  CHECK_THROWS_AS(plob_bound(-0.1), ValidationError);
}

TEST_CASE("plob bound is increasing and convex", "[bounds][property]") {
  const double h = 0.01;
  for (int i = 1; i < 98; ++i) {
    const double a = plob_bound(h * (i - 1)), b = plob_bound(h * i), c = plob_bound(h * (i + 1));
    CHECK(b > a);
    CHECK(a + c - 2.0 * b > 0.0);
  }
}

TEST_CASE("negativity sweep over xi", "[bounds]") {
  const auto rows = negativity_sweep(0.5, 0.0, xi_grid(0.1, 0.9, 9));
  REQUIRE(rows.size() == 9);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].log_negativity > rows[i - 1].log_negativity);
  CHECK_THAT(rows.back().xi, WithinAbs(0.9, 0.0));
  CHECK_THAT(rows.back().log_negativity, WithinAbs(1.454530724709645, 1e-12));

  const auto tiny = negativity_sweep(0.5, 0.0, {1e-4, 1e-3});
  CHECK(tiny[0].log_negativity < 1e-3);
  CHECK(tiny[0].log_negativity >= 0.0);
}

TEST_CASE("large-xi plateau", "[bounds]") {
  // The plateau log2((1 + eta)/(1 - eta)) = log2 3 follows from the closed-form
  // partially transposed symplectic eigenvalue as xi -> 1.
  const double plateau = std::log2(3.0);
  const auto rows = negativity_sweep(0.5, 0.0, {0.99, 0.999, 0.9999, 0.99999});
  CHECK_THAT(rows[0].log_negativity, WithinAbs(1.572117118565592, 1e-11));
  CHECK_THAT(rows[1].log_negativity, WithinAbs(1.583679891343863, 1e-10));
  CHECK_THAT(rows[2].log_negativity, WithinAbs(1.584834259024587, 1e-9));
  CHECK_THAT(rows[3].log_negativity, WithinAbs(1.584949676743864, 1e-8));
  CHECK_THAT(rows[2].log_negativity, WithinAbs(plateau, 1e-3));
  CHECK(rows[3].log_negativity < plateau);
  // xi = 0.999 is 1.28e-3 below the plateau: within 1e-3 of the xi = 0.9999 value
  // only after the next decade.
  CHECK_THAT(plateau - rows[1].log_negativity, WithinAbs(1.2826e-3, 1e-6));
}

TEST_CASE("sweep agrees with the brute-force oracle", "[bounds]") {
  for (const auto& row : negativity_sweep(0.3, 0.1, xi_grid(0.2, 0.95, 6))) {
    const auto state = choi(make_channel(thermal_loss(0.3, 0.1)), row.xi);
    CHECK_THAT(row.log_negativity, WithinAbs(oracle::log_negativity(state.cov(), 0), 1e-9));
  }
}

TEST_CASE("negativity is monotone in eta and xi on a grid", "[bounds][property]") {
  const auto xis = xi_grid(0.05, 0.95, 10);
  std::vector<std::vector<double>> table;
  for (int i = 1; i <= 10; ++i) {
    std::vector<double> column;
    for (const auto& row : negativity_sweep(0.095 * i, 0.0, xis)) {
      CHECK(std::isfinite(row.log_negativity));
      CHECK(row.log_negativity >= 0.0);
      column.push_back(row.log_negativity);
    }
    for (std::size_t j = 1; j < column.size(); ++j) CHECK(column[j] >= column[j - 1]);
    table.push_back(column);
  }
  for (std::size_t i = 1; i < table.size(); ++i) {
    for (std::size_t j = 0; j < xis.size(); ++j) CHECK(table[i][j] >= table[i - 1][j]);
  }
}

TEST_CASE("sweep inputs are validated", "[bounds]") {
  CHECK_THROWS_AS(negativity_sweep(0.5, 0.0, {0.5, 0.4}), ValidationError);
  CHECK_THROWS_AS(negativity_sweep(0.5, 0.0, {0.5, 1.0}), ValidationError);
  CHECK_THROWS_AS(negativity_sweep(1.5, 0.0, {0.5}), ValidationError);
  CHECK_THROWS_AS(xi_grid(0.5, 0.5, 3), ValidationError);
  CHECK_THROWS_AS(xi_grid(0.1, 0.5, 0), ValidationError);
}

TEST_CASE("CSV layout", "[bounds]") {
  std::ostringstream out;
  write_sweep_csv(out, {{0.1, 0.5, 0.0, 0.197248582123}, {0.5, 0.5, 0.25, 1.0 / 3.0}});
  CHECK(out.str() ==
        "xi,eta,excess_noise,log_negativity\n"
        "0.1,0.5,0,0.197248582\n"
        "0.5,0.5,0.25,0.333333333\n");
}
