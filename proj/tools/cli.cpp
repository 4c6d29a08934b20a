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

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

#include "cvstretch/bounds.hpp"
#include "cvstretch/channel.hpp"
#include "cvstretch/channel_json.hpp"
#include "cvstretch/errors.hpp"
#include "cvstretch/finite_dim.hpp"
#include "cvstretch/fock.hpp"
#include "cvstretch/fock_stretch.hpp"
#include "cvstretch/gaussian_state.hpp"
#include "cvstretch/stretching.hpp"

namespace cvstretch::cli {
namespace {

using nlohmann::json;

// Input state literal: coherent:RE+IMi, fock:n, vacuum or thermal:nbar.
struct InputSpec {
  enum class Kind { coherent, fock, thermal } kind;
  std::complex<double> alpha;
  std::size_t n;
  double nbar;
};

std::complex<double> parse_complex(const std::string& text) {
  static const std::regex pattern(
      R"(^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)(?:([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i)?\s*$)");
  std::smatch match;
  if (!std::regex_match(text, match, pattern)) {
    throw ValidationError("complex literal must look like RE+IMi, got \"" + text + "\"");
  }
  const double re = std::stod(match[1].str());
  const double im = match[2].matched ? std::stod(match[2].str()) : 0.0;
  return {re, im};
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ValidationError(what + " must be a number, got \"" + text + "\"");
  }
  return value;
}

InputSpec parse_input(const std::string& text) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "vacuum" && colon == std::string::npos) return {InputSpec::Kind::fock, 0.0, 0, 0.0};
  if (head == "coherent") return {InputSpec::Kind::coherent, parse_complex(tail), 0, 0.0};
  if (head == "fock") {
    static const std::regex digits(R"(^\d+$)");
    if (!std::regex_match(tail, digits)) {
      throw ValidationError("fock input needs a photon number, got \"" + tail + "\"");
    }
    return {InputSpec::Kind::fock, 0.0, std::stoul(tail), 0.0};
  }
  if (head == "thermal") {
    const double nbar = parse_real(tail, "thermal occupation");
    if (!(nbar >= 0.0)) throw ValidationError("thermal occupation must be >= 0");
    return {InputSpec::Kind::thermal, 0.0, 0, nbar};
  }
  throw ValidationError("input must be coherent:RE+IMi, fock:n, vacuum or thermal:nbar, got \"" +
                        text + "\"");
}

fock::FockOperator input_density(const InputSpec& in, std::size_t cutoff) {
  switch (in.kind) {
    case InputSpec::Kind::coherent:
      return fock::density(fock::make_ket(fock::ket_kind::Coherent{in.alpha}, cutoff).ket);
    case InputSpec::Kind::fock:
      if (in.n > cutoff) throw ValidationError("fock input photon number exceeds the cutoff");
      return fock::density(fock::make_ket(fock::ket_kind::Number{in.n}, cutoff).ket);
    case InputSpec::Kind::thermal:
      return fock::thermal_density(in.nbar, cutoff);
  }
  throw ValidationError("unknown input kind");
}

GaussianState input_gaussian(const InputSpec& in) {
  switch (in.kind) {
    case InputSpec::Kind::coherent:
      return coherent(in.alpha);
    case InputSpec::Kind::fock:
      if (in.n != 0) throw ValidationError("Monte-Carlo inputs must be Gaussian; fock:n needs n = 0");
      return vacuum(1);
    case InputSpec::Kind::thermal:
      return thermal(in.nbar);
  }
  throw ValidationError("unknown input kind");
}

ChannelKind parse_spec(const std::string& text) { return parse_channel_spec(text); }

std::string describe(const ChannelKind& kind) {
  std::ostringstream s;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, channel_kind::ThermalLoss>) {
          if (k.excess_noise == 0.0) {
            s << "pure_loss(eta=" << format_number(k.eta) << ")";
          } else {
            s << "thermal_loss(eta=" << format_number(k.eta)
              << ", excess_noise=" << format_number(k.excess_noise) << ")";
          }
        } else if constexpr (std::is_same_v<K, channel_kind::Amplifier>) {
          s << "amplifier(gain=" << format_number(k.kappa)
            << ", excess_noise=" << format_number(k.excess_noise) << ")";
        } else if constexpr (std::is_same_v<K, channel_kind::AdditiveNoise>) {
          s << "additive_noise(variance=" << format_number(k.nu) << ")";
        } else if constexpr (std::is_same_v<K, channel_kind::Identity>) {
          s << "identity";
        } else {
          s << "other";
        }
      },
      kind);
  return s.str();
}

std::string matrix_text(const Eigen::Matrix2d& m) {
  return "[[" + format_number(m(0, 0)) + ", " + format_number(m(0, 1)) + "], [" +
         format_number(m(1, 0)) + ", " + format_number(m(1, 1)) + "]]";
}

std::string vector_text(const Eigen::Vector2d& v) {
  return "[" + format_number(v(0)) + ", " + format_number(v(1)) + "]";
}

void print_triplet(std::ostream& out, const GaussianChannelTriplet& t) {
  out << "K: " << matrix_text(t.K) << "\n"
      << "m: " << vector_text(t.m) << "\n"
      << "alpha: " << matrix_text(t.alpha) << "\n";
}

json vector_json(const Eigen::Vector2d& v) { return json::array({v(0), v(1)}); }

json matrix_json(const Eigen::Matrix2d& m) {
  return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

struct Options {
  bool json = false;
  std::string first, second, spec, target, input = "vacuum", channel, out_path;
  double xi = 0.0, eta = 0.0, excess_noise = 0.0, xi_from = 0.0, xi_to = 0.0;
  std::optional<double> grid_radius, grid_step;
  std::size_t cutoff = fock::kDefaultCutoff, samples = 100000, steps = 10, dim = 2;
  std::uint64_t seed = 1;
};

int channel_compose(const Options& o, std::ostream& out) {
  const auto first = make_channel(parse_spec(o.first));
  const auto second = make_channel(parse_spec(o.second));
  const auto result = compose(first, second);
  const auto phys = is_physical(result);
  const auto kind = classify(result);
  if (o.json) {
    out << json{{"triplet", triplet_to_json(result)},
                {"classification", channel_to_json(kind)},
                {"physical", phys.physical},
                {"margin", phys.margin}}
               .dump(2)
        << "\n";
    return kExitOk;
  }
  print_triplet(out, result);
  out << "classification: " << describe(kind) << "\n"
      << "physical: " << bool_text(phys.physical) << " (margin " << format_number(phys.margin)
      << ")\n";
  return kExitOk;
}

int channel_classify(const Options& o, std::ostream& out) {
  const auto triplet = make_channel(parse_spec(o.spec));
  const auto phys = is_physical(triplet);
  if (!phys.physical) {
    throw ValidationError("channel is unphysical (margin " + format_number(phys.margin) + ")");
  }
  const auto kind = classify(triplet);
  if (o.json) {
    out << json{{"classification", channel_to_json(kind)}}.dump(2) << "\n";
  } else {
    out << "classification: " << describe(kind) << "\n";
  }
  return kExitOk;
}

int channel_check(const Options& o, std::ostream& out, std::ostream& err) {
  const auto triplet = make_channel(parse_spec(o.spec));
  const auto phys = is_physical(triplet);
  if (o.json) {
    out << json{{"physical", phys.physical}, {"margin", phys.margin}}.dump(2) << "\n";
  } else {
    out << "physical: " << bool_text(phys.physical) << "\n"
        << "margin: " << format_number(phys.margin) << "\n";
  }
  if (!phys.physical) {
    err << "error: channel violates 2 sqrt(det alpha) >= |1 - det K|\n";
    return kExitValidation;
  }
  return kExitOk;
}

int stretch_plan(const Options& o, std::ostream& out) {
  const auto plan = make_plan(parse_spec(o.target), o.xi);
  const auto achieved = achieved_channel(plan);
  if (o.json) {
    json chain = json::array();
    for (const auto& stage : plan.resource_chain) chain.push_back(channel_to_json(stage));
    out << json{{"target", channel_to_json(plan.target)},
                {"xi", plan.xi},
                {"resource_channel", channel_to_json(plan.resource_channel)},
                {"resource_chain", chain},
                {"gain", plan.gain},
                {"achieved", channel_to_json(plan.achieved)},
                {"achieved_triplet", triplet_to_json(achieved)},
                {"exact", plan.exact},
                {"residual_noise", plan.residual_noise}}
               .dump(2)
        << "\n";
    return kExitOk;
  }
  out << "target: " << describe(plan.target) << "\n"
      << "xi: " << format_number(plan.xi) << "\n"
      << "resource: " << describe(plan.resource_channel) << "\n";
  if (plan.resource_chain.size() > 1) {
    out << "resource chain:";
    for (const auto& stage : plan.resource_chain) out << " " << describe(stage);
    out << "\n";
  }
  out << "gain: " << format_number(plan.gain) << "\n"
      << "achieved: " << describe(plan.achieved) << "\n";
  print_triplet(out, achieved);
  out << "exact: " << bool_text(plan.exact) << "\n"
      << "residual_noise: " << format_number(plan.residual_noise) << "\n";
  return kExitOk;
}

int stretch_verify_fock(const Options& o, std::ostream& out) {
  const auto plan = make_plan(parse_spec(o.target), o.xi);
  const auto rho = input_density(parse_input(o.input), o.cutoff);
  if (o.grid_radius.has_value() != o.grid_step.has_value()) {
    throw ValidationError("--grid-radius and --grid-step must be given together");
  }
  fock::StretchIntegral result = [&] {
    if (o.grid_radius) {
      return fock::integrate_stretch(plan, rho, {*o.grid_radius, *o.grid_step}, o.cutoff);
    }
    return fock::converge_stretch(plan, rho, o.cutoff).result;
  }();
  const auto reference = fock::achieved_output(plan, rho, o.cutoff);
  const double td = fock::distance(result.rho, reference, fock::Metric::trace);
  const double input_deficit = 1.0 - rho.trace();
  const double reference_deficit = 1.0 - reference.trace();
  if (o.json) {
    out << json{{"trace_distance", td},
                {"trace", result.trace},
                {"grid", {{"radius", result.grid.radius}, {"step", result.grid.step}}},
                {"points", result.points},
                {"cutoff", o.cutoff},
                {"bell_truncation_error", result.truncation_error},
                {"output_tail", result.output_tail},
                {"input_norm_deficit", input_deficit},
                {"reference_norm_deficit", reference_deficit}}
               .dump(2)
        << "\n";
    return kExitOk;
  }
  out << "trace distance to achieved channel: " << format_number(td) << "\n"
      << "output trace: " << format_number(result.trace) << "\n"
      << "grid: radius " << format_number(result.grid.radius) << ", step "
      << format_number(result.grid.step) << ", " << result.points << " points\n"
      << "cutoff: " << o.cutoff << "\n"
      << "bell truncation error: " << format_number(result.truncation_error) << "\n"
      << "output tail: " << format_number(result.output_tail) << "\n"
      << "input norm deficit: " << format_number(input_deficit) << "\n"
      << "reference norm deficit: " << format_number(reference_deficit) << "\n";
  return kExitOk;
}

int stretch_verify_mc(const Options& o, std::ostream& out) {
  const auto plan = make_plan(parse_spec(o.target), o.xi);
  const auto input = input_gaussian(parse_input(o.input));
  const auto mc = simulate_locc_gaussian(plan, input, o.samples, o.seed);
  const auto predicted = apply(achieved_channel(plan), input, 0);
  if (o.json) {
    out << json{{"samples", mc.samples},
                {"seed", o.seed},
                {"empirical", {{"mean", vector_json(mc.mean)}, {"cov", matrix_json(mc.cov)}}},
                {"stderr", {{"mean", vector_json(mc.mean_stderr)}, {"cov", matrix_json(mc.cov_stderr)}}},
                {"predicted",
                 {{"mean", vector_json(predicted.mean())}, {"cov", matrix_json(predicted.cov())}}}}
               .dump(2)
        << "\n";
    return kExitOk;
  }
  out << "samples: " << mc.samples << ", seed: " << o.seed << "\n";
  const char* names[] = {"x", "p"};
  for (int i = 0; i < 2; ++i) {
    out << "mean " << names[i] << ": " << format_number(mc.mean(i)) << " +/- "
        << format_number(mc.mean_stderr(i)) << " (predicted "
        << format_number(predicted.mean()(i)) << ")\n";
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = i; j < 2; ++j) {
      out << "cov " << names[i] << names[j] << ": " << format_number(mc.cov(i, j)) << " +/- "
          << format_number(mc.cov_stderr(i, j)) << " (predicted "
          << format_number(predicted.cov()(i, j)) << ")\n";
    }
  }
  return kExitOk;
}

int bound(const Options& o, std::ostream& out) {
  const double value = plob_bound(o.eta);
  if (o.json) {
    out << json{{"eta", o.eta}, {"plob_bound", value}}.dump(2) << "\n";
  } else {
    out << format_number(value) << "\n";
  }
  return kExitOk;
}

int sweep(const Options& o, std::ostream& out) {
  const auto rows = negativity_sweep(o.eta, o.excess_noise, xi_grid(o.xi_from, o.xi_to, o.steps));
  if (o.out_path.empty()) {
    write_sweep_csv(out, rows);
    return kExitOk;
  }
  std::ofstream file(o.out_path, std::ios::binary);
  if (!file) throw ValidationError("cannot open output file " + o.out_path);
  write_sweep_csv(file, rows);
  if (o.json) {
    out << json{{"rows", rows.size()}, {"path", o.out_path}}.dump(2) << "\n";
  } else {
    out << "wrote " << rows.size() << " rows to " << o.out_path << "\n";
  }
  return kExitOk;
}

std::vector<double> parse_probabilities(const std::string& text) {
  std::vector<double> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) out.push_back(parse_real(item, "probability"));
  return out;
}

finite::KrausSet parse_finite_channel(const std::string& text, std::size_t d) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "pauli") {
    const auto p = parse_probabilities(tail);
    return d == 2 ? finite::pauli_channel(p) : finite::weyl_channel(p, d);
  }
  if (head == "depolarizing") return finite::depolarizing(parse_real(tail, "p"), d);
  if (head == "amplitude-damping") {
    if (d != 2) throw ValidationError("amplitude damping is a qubit channel (--dim 2)");
    return finite::amplitude_damping(parse_real(tail, "gamma"));
  }
  if (head == "identity" && colon == std::string::npos) {
    return {Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d))};
  }
  throw ValidationError(
      "channel must be pauli:p0,...,  depolarizing:p, amplitude-damping:g or identity, got \"" +
      text + "\"");
}

int finite_stretch_check(const Options& o, std::ostream& out) {
  const auto kraus = parse_finite_channel(o.channel, o.dim);
  const auto cert = finite::stretch_check(kraus, o.dim);
  if (o.json) {
    json corrections = json::array();
    std::size_t k = 0;
    for (std::size_t a = 0; a < o.dim && cert.stretchable; ++a) {
      for (std::size_t b = 0; b < o.dim; ++b, ++k) {
        corrections.push_back({{"outcome", {a, b}},
                               {"correction", {cert.corrections[k].a, cert.corrections[k].b}}});
      }
    }
    out << json{{"stretchable", cert.stretchable}, {"corrections", corrections}}.dump(2) << "\n";
    return kExitOk;
  }
  out << "stretchable: " << bool_text(cert.stretchable) << "\n";
  std::size_t k = 0;
  for (std::size_t a = 0; a < o.dim && cert.stretchable; ++a) {
    for (std::size_t b = 0; b < o.dim; ++b, ++k) {
      out << "outcome (" << a << ", " << b << ") -> correction W(" << cert.corrections[k].a
          << ", " << cert.corrections[k].b << ")\n";
    }
  }
  return kExitOk;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value == 0.0 ? 0.0 : value);
  std::string s(buf);
  if (std::isfinite(value) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian channel algebra and teleportation-stretching verification", "cvstretch"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable JSON output");

  auto* channel = app.add_subcommand("channel", "Gaussian channel algebra");
  channel->require_subcommand(1);
  auto* compose_cmd = channel->add_subcommand("compose", "Compose two channels (first, then second)");
  compose_cmd->add_option("--first", o.first, "Channel applied first (JSON)")->required();
  compose_cmd->add_option("--second", o.second, "Channel applied second (JSON)")->required();
  auto* classify_cmd = channel->add_subcommand("classify", "Classify a channel");
  classify_cmd->add_option("--spec", o.spec, "Channel (JSON)")->required();
  auto* check_cmd = channel->add_subcommand("check", "Physicality margin of a channel");
  check_cmd->add_option("--spec", o.spec, "Channel (JSON)")->required();

  auto* stretch = app.add_subcommand("stretch", "Teleportation-stretching plans");
  stretch->require_subcommand(1);
  auto* plan_cmd = stretch->add_subcommand("plan", "Build a stretch plan");
  auto* fock_cmd = stretch->add_subcommand("verify-fock", "Integrate the protocol in Fock space");
  auto* mc_cmd = stretch->add_subcommand("verify-mc", "Monte-Carlo run at the Gaussian level");
  for (auto* cmd : {plan_cmd, fock_cmd, mc_cmd}) {
    cmd->add_option("--target", o.target, "Target channel (JSON)")->required();
    cmd->add_option("--xi", o.xi, "Two-mode squeezing parameter in (0, 1)")->required();
  }
  for (auto* cmd : {fock_cmd, mc_cmd}) {
    cmd->add_option("--input", o.input, "coherent:RE+IMi | fock:n | vacuum | thermal:nbar");
  }
  fock_cmd->add_option("--cutoff", o.cutoff, "Fock cutoff of input and output");
  fock_cmd->add_option("--grid-radius", o.grid_radius, "Outcome grid radius (default: converge)");
  fock_cmd->add_option("--grid-step", o.grid_step, "Outcome grid step (default: converge)");
  mc_cmd->add_option("--samples", o.samples, "Number of Bell outcomes");
  mc_cmd->add_option("--seed", o.seed, "Generator seed");

  auto* bound_cmd = app.add_subcommand("bound", "Repeaterless rate-loss bound -log2(1 - eta)");
  bound_cmd->add_option("--eta", o.eta, "Transmissivity")->required();

  auto* sweep_cmd = app.add_subcommand("sweep", "Log-negativity of the finite-energy Choi state");
  sweep_cmd->add_option("--eta", o.eta, "Transmissivity")->required();
  sweep_cmd->add_option("--excess-noise", o.excess_noise, "Excess noise N");
  sweep_cmd->add_option("--xi-from", o.xi_from, "First xi")->required();
  sweep_cmd->add_option("--xi-to", o.xi_to, "Last xi")->required();
  sweep_cmd->add_option("--steps", o.steps, "Number of xi values");
  sweep_cmd->add_option("--out", o.out_path, "CSV path (default: stdout)");

  auto* finite_cmd = app.add_subcommand("finite", "Finite-dimensional stretching oracle");
  finite_cmd->require_subcommand(1);
  auto* sc_cmd = finite_cmd->add_subcommand("stretch-check", "Search Weyl corrections");
  sc_cmd->add_option("--channel", o.channel,
                     "pauli:p0,p1,p2,p3 | depolarizing:p | amplitude-damping:g | identity")
      ->required();
  sc_cmd->add_option("--dim", o.dim, "Dimension d");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*compose_cmd) return channel_compose(o, out);
    if (*classify_cmd) return channel_classify(o, out);
    if (*check_cmd) return channel_check(o, out, err);
    if (*plan_cmd) return stretch_plan(o, out);
    if (*fock_cmd) return stretch_verify_fock(o, out);
    if (*mc_cmd) return stretch_verify_mc(o, out);
    if (*bound_cmd) return bound(o, out);
    if (*sweep_cmd) return sweep(o, out);
    if (*sc_cmd) return finite_stretch_check(o, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConvergence;
  }
  err << "usage error: no command given\n";
  return kExitUsage;
}

}  // namespace cvstretch::cli
