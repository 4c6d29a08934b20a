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

#include <string>

#include <json.hpp>

#include "cvstretch/channel.hpp"

namespace cvstretch {

// JSON channel specs:
//   {"kind":"pure_loss","eta":0.5}
//   {"kind":"thermal_loss","eta":0.5,"excess_noise":0.1}
//   {"kind":"amplifier","gain":2.0,"excess_noise":0.0}
//   {"kind":"additive_noise","variance":0.3}
//   {"kind":"identity"}
//   {"kind":"triplet","K":[[..],[..]],"m":[..],"alpha":[[..],[..]]}
// excess_noise defaults to 0 and m to the zero vector. Malformed input
// raises ValidationError.
ChannelKind channel_from_json(const nlohmann::json& spec);
ChannelKind parse_channel_spec(const std::string& text);

nlohmann::json channel_to_json(const ChannelKind& kind);
nlohmann::json triplet_to_json(const GaussianChannelTriplet& triplet);

}  // namespace cvstretch
