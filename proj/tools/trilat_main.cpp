#include <charconv>
#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "trilat/harness.hpp"
#include "trilat/topology.hpp"

namespace {

void parse_gen_arg(const std::string& text, trilat::ExperimentSpec& spec) {
  std::array<std::string_view, 3> parts;
  std::string_view sv = text;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t comma = sv.find(',');
    if (i < 2) {
      if (comma == std::string_view::npos) {
        throw std::invalid_argument("--gen expects N,ANCHORS,SIDE");
      }
      parts[i] = sv.substr(0, comma);
      sv.remove_prefix(comma + 1);
    } else {
      if (comma != std::string_view::npos) {
        throw std::invalid_argument("--gen expects exactly three values");
      }
      parts[i] = sv;
    }
  }
  auto parse_u64 = [](std::string_view p, const char* what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), v);
    if (ec != std::errc() || ptr != p.data() + p.size()) {
      throw std::invalid_argument(std::string("--gen: bad ") + what);
    }
    return v;
  };
  double side = 0.0;
  auto [ptr, ec] =
      std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), side);
  if (ec != std::errc() || ptr != parts[2].data() + parts[2].size()) {
    throw std::invalid_argument("--gen: bad field side");
  }
  spec.use_gen = true;
  spec.gen_total = parse_u64(parts[0], "node count");
  spec.gen_anchors = parse_u64(parts[1], "anchor count");
  spec.gen_side = side;
}

std::pair<std::string, std::string> split_override(const std::string& text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw std::invalid_argument("--set expects key=value, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Flooding-localization simulator with transmit-power swarm optimizers"};
  app.require_subcommand(1);

  trilat::ExperimentSpec spec;
  std::string gen_text;
  std::string mode_text = "standard";
  std::string config_path;
  std::vector<std::string> sets;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", spec.seed, "master random seed");
    sub->add_option("--out", spec.out_dir, "output directory");
    sub->add_option("--set", sets, "config override key=value (repeatable)");
    sub->add_option("--config", config_path, "config file of key=value lines");
  };
  auto add_experiment = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_option("--topology", spec.topology_path, "topology file to load");
    sub->add_option("--gen", gen_text,
                    "generate a topology instead: N,ANCHORS,SIDE");
    sub->add_option("--trials", spec.trials, "independent trials to run");
    sub->add_option("--mode", mode_text,
                    "continuous update semantics: standard | paper-literal");
  };

  CLI::App* baseline =
      app.add_subcommand("baseline", "uniform min/mid/max reference runs");
  add_experiment(baseline);
  CLI::App* sopso = app.add_subcommand(
      "sopso", "single-objective binary swarm over discrete power levels");
  add_experiment(sopso);
  CLI::App* mopso_bin = app.add_subcommand(
      "mopso-bin", "multi-objective binary swarm over discrete power levels");
  add_experiment(mopso_bin);
  CLI::App* mopso_cont = app.add_subcommand(
      "mopso-cont", "multi-objective continuous swarm over transmit ranges");
  add_experiment(mopso_cont);
  CLI::App* sweep =
      app.add_subcommand("sweep", "parameter study over a predefined grid");
  add_experiment(sweep);
  sweep->add_option("--param", spec.sweep_param,
                    "particles_iterations, max_range, mutation_fraction, "
                    "mutation_value, or inertia");
  CLI::App* gen_topology =
      app.add_subcommand("gen-topology", "write a random topology file");
  add_common(gen_topology);
  gen_topology->add_option("--gen", gen_text, "N,ANCHORS,SIDE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (baseline->parsed()) spec.command = trilat::Command::Baseline;
    if (sopso->parsed()) spec.command = trilat::Command::Sopso;
    if (mopso_bin->parsed()) spec.command = trilat::Command::MopsoBinary;
    if (mopso_cont->parsed()) spec.command = trilat::Command::MopsoContinuous;
    if (sweep->parsed()) spec.command = trilat::Command::Sweep;
    if (gen_topology->parsed()) spec.command = trilat::Command::GenTopology;

    if (!gen_text.empty()) parse_gen_arg(gen_text, spec);
    if (mode_text == "standard") {
      spec.position_mode = trilat::PositionUpdateMode::Standard;
    } else if (mode_text == "paper-literal") {
      spec.position_mode = trilat::PositionUpdateMode::PaperLiteral;
    } else {
      throw std::invalid_argument("--mode must be standard or paper-literal");
    }
    if (!config_path.empty()) {
      spec.overrides = trilat::read_config_file(config_path);
    }
    for (const std::string& s : sets) {
      spec.overrides.push_back(split_override(s));
    }

    trilat::run_experiment(spec);
    return 0;
  } catch (const trilat::TopologyError& e) {
    std::cerr << "error: " << e.what();
    if (e.line() != 0) std::cerr << " (line " << e.line() << ")";
    std::cerr << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
