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

#include "cvstretch/channel_json.hpp"

#include "cvstretch/errors.hpp"

namespace cvstretch {
namespace {

using nlohmann::json;

double number_field(const json& spec, const char* key) {
  if (!spec.contains(key)) {
    throw ValidationError(std::string("channel spec is missing field \"") + key + "\"");
  }
  if (!spec.at(key).is_number()) {
    throw ValidationError(std::string("channel spec field \"") + key + "\" must be a number");
  }
  return spec.at(key).get<double>();
}

double optional_number(const json& spec, const char* key, double fallback) {
  return spec.contains(key) ? number_field(spec, key) : fallback;
}

Eigen::Matrix2d matrix_field(const json& spec, const char* key) {
  if (!spec.contains(key)) {
    throw ValidationError(std::string("triplet spec is missing field \"") + key + "\"");
  }
  const json& rows = spec.at(key);
  if (!rows.is_array() || rows.size() != 2) {
    throw ValidationError(std::string("\"") + key + "\" must be a 2x2 array");
  }
  Eigen::Matrix2d out;
  for (std::size_t r = 0; r < 2; ++r) {
    if (!rows[r].is_array() || rows[r].size() != 2) {
      throw ValidationError(std::string("\"") + key + "\" must be a 2x2 array");
    }
    for (std::size_t c = 0; c < 2; ++c) {
      if (!rows[r][c].is_number()) {
        throw ValidationError(std::string("\"") + key + "\" entries must be numbers");
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c].get<double>();
    }
  }
  return out;
}

json matrix_json(const Eigen::Matrix2d& m) {
  return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

}  // namespace

ChannelKind channel_from_json(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec.at("kind").is_string()) {
    throw ValidationError("channel spec must be an object with a string \"kind\"");
  }
  const std::string kind = spec.at("kind").get<std::string>();
  ChannelKind out;
  if (kind == "pure_loss") {
    out = pure_loss(number_field(spec, "eta"));
  } else if (kind == "thermal_loss") {
    out = thermal_loss(number_field(spec, "eta"), optional_number(spec, "excess_noise", 0.0));
  } else if (kind == "amplifier") {
    out = amplifier(number_field(spec, "gain"), optional_number(spec, "excess_noise", 0.0));
  } else if (kind == "additive_noise") {
    out = additive_noise(number_field(spec, "variance"));
  } else if (kind == "identity") {
    out = identity_channel();
  } else if (kind == "triplet") {
    GaussianChannelTriplet t;
    t.K = matrix_field(spec, "K");
    t.alpha = matrix_field(spec, "alpha");
    if (spec.contains("m")) {
      const json& m = spec.at("m");
      if (!m.is_array() || m.size() != 2 || !m[0].is_number() || !m[1].is_number()) {
        throw ValidationError("\"m\" must be an array of two numbers");
      }
      t.m << m[0].get<double>(), m[1].get<double>();
    }
    out = channel_kind::Other{t};
  } else {
    throw ValidationError("unknown channel kind \"" + kind + "\"");
  }
  validate(out);
  return out;
}

ChannelKind parse_channel_spec(const std::string& text) {
  json spec;
  try {
    spec = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("channel spec is not valid JSON: ") + e.what());
  }
  return channel_from_json(spec);
}

json triplet_to_json(const GaussianChannelTriplet& t) {
  return json{{"kind", "triplet"},
              {"K", matrix_json(t.K)},
              {"m", json::array({t.m(0), t.m(1)})},
              {"alpha", matrix_json(t.alpha)}};
}

json channel_to_json(const ChannelKind& kind) {
  return std::visit(
      [&kind](const auto& k) -> json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, channel_kind::ThermalLoss>) {
          if (is_pure_loss(kind)) return json{{"kind", "pure_loss"}, {"eta", k.eta}};
          return json{{"kind", "thermal_loss"}, {"eta", k.eta}, {"excess_noise", k.excess_noise}};
        } else if constexpr (std::is_same_v<K, channel_kind::Amplifier>) {
          return json{{"kind", "amplifier"}, {"gain", k.kappa}, {"excess_noise", k.excess_noise}};
        } else if constexpr (std::is_same_v<K, channel_kind::AdditiveNoise>) {
          return json{{"kind", "additive_noise"}, {"variance", k.nu}};
        } else if constexpr (std::is_same_v<K, channel_kind::Identity>) {
          return json{{"kind", "identity"}};
        } else {
          return triplet_to_json(k.triplet);
        }
      },
      kind);
}

}  // namespace cvstretch
