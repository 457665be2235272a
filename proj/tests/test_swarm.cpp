#include "doctest.h"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "support/fixtures.hpp"
#include "support/naive_sim.hpp"
#include "support/pareto_oracle.hpp"
#include "trilat/swarm.hpp"

using namespace trilat;
using namespace trilat::testing;

namespace {

/// Replays a scripted sequence of uniforms; asserts on exhaustion.
struct ScriptedRng {
  std::vector<double> values;
  std::size_t next = 0;
  double uniform() {
    REQUIRE(next < values.size());
    return values[next++];
  }
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }
};

PsoConfig small_config(std::uint64_t seed, SwarmMode, std::size_t particles = 20,
                       std::size_t iterations = 20) {
  PsoConfig config;
  config.n_particles = particles;
  config.n_iterations = iterations;
  config.seed = seed;
  return config;
}

bool row_is_one_hot(const std::vector<double>& p, std::size_t row) {
  int ones = 0;
  for (std::size_t j = 0; j < kBinaryColumns; ++j) {
    const double cell = p[row * kBinaryColumns + j];
    if (cell == 1.0) {
      ++ones;
    } else if (cell != 0.0) {
      return false;
    }
  }
  return ones == 1;
}

}  // namespace

TEST_SUITE("swarm") {

TEST_CASE("scalar fitness minimizes every objective") {
  const ObjectiveVector o{4, 12.5, 7, 9};
  CHECK(scalar_fitness(o, ScalarObjective::LocalizedBlind) == -7.0);
  CHECK(scalar_fitness(o, ScalarObjective::TimeSteps) == 4.0);
  CHECK(scalar_fitness(o, ScalarObjective::PowerMw) == 12.5);
  CHECK(scalar_fitness(o, ScalarObjective::Messages) == 9.0);
}

TEST_CASE("velocity rule reproduces the hand-worked value") {
  // omega*v + c1*r1*(pbest-p) + c2*r2*(g-p) with r1 = r2 = 0.5:
  // 0.1*0 + 1.49445*0.5*(110-100) + 1.49445*0.5*(120-100) = 22.41675.
  ScriptedRng rng{{0.5, 0.5}};
  std::vector<double> v{0.0};
  const std::vector<double> p{100.0}, pb{110.0}, g{120.0};
  velocity_step(std::span<double>(v), std::span<const double>(p),
                std::span<const double>(pb), std::span<const double>(g), 0.1,
                1.49445, 1.49445, rng);
  CHECK(v[0] == doctest::Approx(22.41675).epsilon(1e-12));
}

TEST_CASE("velocity rule draws the personal-best factor first") {
  // With the draws (1, 0) only the personal-best term survives; a swapped
  // draw order would produce the social term instead.
  ScriptedRng rng{{1.0, 0.0}};
  std::vector<double> v{0.0};
  const std::vector<double> p{0.0}, pb{1.0}, g{5.0};
  velocity_step(std::span<double>(v), std::span<const double>(p),
                std::span<const double>(pb), std::span<const double>(g), 0.0, 2.0,
                3.0, rng);
  CHECK(v[0] == 2.0);

  ScriptedRng rng2{{0.0, 1.0}};
  std::vector<double> v2{0.0};
  velocity_step(std::span<double>(v2), std::span<const double>(p),
                std::span<const double>(pb), std::span<const double>(g), 0.0, 2.0,
                3.0, rng2);
  CHECK(v2[0] == 15.0);
}

TEST_CASE("velocity at a fixed point only decays") {
  ScriptedRng rng{{0.9, 0.3}};
  std::vector<double> v{8.0};
  const std::vector<double> p{50.0};
  velocity_step(std::span<double>(v), std::span<const double>(p),
                std::span<const double>(p), std::span<const double>(p), 0.25, 2.0,
                2.0, rng);
  CHECK(v[0] == 2.0);
}

TEST_CASE("velocity clamps per mode") {
  PsoConfig config;  // min 64, max 132 -> delta 34
  REQUIRE(config.delta() == 34.0);

  SUBCASE("binary squashes into [0,1]") {
    std::vector<double> v{1.7, -0.3, 0.5};
    clamp_velocity(std::span<double>(v), SwarmMode::Binary, config);
    CHECK(v == std::vector<double>{1.0, 0.0, 0.5});
  }
  SUBCASE("continuous standard is symmetric about zero") {
    std::vector<double> v{100.0, -100.0, 10.0, 34.0, -34.0};
    clamp_velocity(std::span<double>(v), SwarmMode::Continuous, config);
    CHECK(v == std::vector<double>{34.0, -34.0, 10.0, 34.0, -34.0});
  }
  SUBCASE("continuous literal snaps to the two published values") {
    config.position_mode = PositionUpdateMode::PaperLiteral;
    std::vector<double> v{33.9, 34.0, -5.0, 100.0};
    clamp_velocity(std::span<double>(v), SwarmMode::Continuous, config);
    CHECK(v == std::vector<double>{64.0, 34.0, 64.0, 34.0});
  }
}

TEST_CASE("one-hot repair keeps the strongest candidate") {
  SUBCASE("multiple set bits keep the highest velocity") {
    std::vector<double> row{1.0, 1.0, 0.0};
    const std::vector<double> vel{0.2, 0.8, 0.9};
    repair_one_hot(std::span<double>(row), std::span<const double>(vel));
    CHECK(row == std::vector<double>{0.0, 1.0, 0.0});
  }
  SUBCASE("velocity ties resolve to the cheapest level") {
    std::vector<double> row{1.0, 1.0, 1.0};
    const std::vector<double> vel{0.5, 0.5, 0.5};
    repair_one_hot(std::span<double>(row), std::span<const double>(vel));
    CHECK(row == std::vector<double>{1.0, 0.0, 0.0});
  }
  SUBCASE("an all-zero row revives at the velocity argmax") {
    std::vector<double> row{0.0, 0.0, 0.0};
    const std::vector<double> vel{0.1, 0.7, 0.3};
    repair_one_hot(std::span<double>(row), std::span<const double>(vel));
    CHECK(row == std::vector<double>{0.0, 1.0, 0.0});
  }
  SUBCASE("a valid row is left alone even if velocity prefers another") {
    std::vector<double> row{0.0, 1.0, 0.0};
    const std::vector<double> vel{0.9, 0.1, 0.2};
    repair_one_hot(std::span<double>(row), std::span<const double>(vel));
    CHECK(row == std::vector<double>{0.0, 1.0, 0.0});
  }
}

TEST_CASE("binary position sampling is certain at velocity extremes") {
  RngStream rng(123);
  // Cells with velocity 1 always fire, cells with velocity 0 never do; a
  // row with no fired cell is revived one-hot at the velocity argmax.
  std::vector<double> p{1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0};
  const std::vector<double> v{0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  position_step_binary(std::span<double>(p), std::span<const double>(v), rng);
  CHECK(p == std::vector<double>{0, 1, 0, 1, 0, 0, 1, 0, 0});
  for (std::size_t row = 0; row < 3; ++row) CHECK(row_is_one_hot(p, row));
}

TEST_CASE("decode maps representations to assignments") {
  SUBCASE("binary rows select discrete levels") {
    const std::vector<double> pos{0, 1, 0, 1, 0, 0, 0, 0, 1};
    const RangeAssignment a = decode(pos, SwarmMode::Binary);
    REQUIRE(a.range_m.size() == 3);
    CHECK(a.range_m[0] == level_range_m(PowerLevel::Mid));
    CHECK(a.range_m[1] == level_range_m(PowerLevel::Min));
    CHECK(a.range_m[2] == level_range_m(PowerLevel::Max));
    CHECK(a.power_mw[0] == level_mw(PowerLevel::Mid));
    CHECK(a.power_mw[1] == level_mw(PowerLevel::Min));
    CHECK(a.power_mw[2] == level_mw(PowerLevel::Max));
  }
  SUBCASE("continuous positions pass through as ranges") {
    const std::vector<double> pos{70.0, 131.5};
    const RangeAssignment a = decode(pos, SwarmMode::Continuous);
    CHECK(a.range_m == pos);
    CHECK(a.power_mw[0] == mw_from_range(70.0));
  }
  SUBCASE("malformed binary rows are a programming error") {
    CHECK_THROWS_AS(decode({0, 0, 0}, SwarmMode::Binary), std::logic_error);
    CHECK_THROWS_AS(decode({1, 1, 0}, SwarmMode::Binary), std::logic_error);
    CHECK_THROWS_AS(decode({0, 0.5, 0}, SwarmMode::Binary), std::logic_error);
    CHECK_THROWS_AS(decode({1, 0}, SwarmMode::Binary), std::logic_error);
  }
}

TEST_CASE("evaluation agrees with the simulator on the walkthrough") {
  const SimIndex index(worked_example_topology());
  PsoConfig config;

  SUBCASE("uniform full-reach continuous position") {
    const std::vector<double> pos(6, 132.0);
    const ObjectiveVector o = evaluate(pos, SwarmMode::Continuous, index, config);
    CHECK(o.time_steps == 2);
    CHECK(o.power_mw == doctest::Approx(15.746808070156764).epsilon(1e-12));
    CHECK(o.localized_blind == 2);
    CHECK(o.messages == 5);
  }
  SUBCASE("all top-level binary position") {
    std::vector<double> pos(18, 0.0);
    for (std::size_t row = 0; row < 6; ++row) pos[row * 3 + 2] = 1.0;
    const ObjectiveVector o = evaluate(pos, SwarmMode::Binary, index, config);
    CHECK(o.time_steps == 2);
    CHECK(o.power_mw ==
          doctest::Approx(5.0 * level_mw(PowerLevel::Max)).epsilon(1e-12));
    CHECK(o.localized_blind == 2);
    CHECK(o.messages == 5);
  }
}

TEST_CASE("swarm initialization obeys its distributional contract") {
  const SimIndex index(worked_example_topology());

  SUBCASE("binary swarms start one-hot with velocities in [0,1)") {
    PsoConfig config = small_config(11, SwarmMode::Binary, 200, 1);
    const Swarm swarm = init_swarm(index, config, SwarmMode::Binary);
    REQUIRE(swarm.particles.size() == 200);
    std::array<std::size_t, 3> column_counts{0, 0, 0};
    for (const Particle& particle : swarm.particles) {
      REQUIRE(particle.position.size() == 18);
      for (std::size_t row = 0; row < 6; ++row) {
        REQUIRE(row_is_one_hot(particle.position, row));
        for (std::size_t j = 0; j < 3; ++j) {
          if (particle.position[row * 3 + j] == 1.0) ++column_counts[j];
        }
      }
      for (double v : particle.velocity) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
      }
      CHECK(particle.best_position == particle.position);
      const ObjectiveVector o =
          evaluate(particle.position, SwarmMode::Binary, index, config);
      CHECK(particle.objectives.time_steps == o.time_steps);
      CHECK(particle.objectives.power_mw == o.power_mw);
      CHECK(particle.objectives.localized_blind == o.localized_blind);
      CHECK(particle.best_objectives.power_mw == o.power_mw);
    }
    // 1200 rows spread over three columns; expect ~400 each.
    for (std::size_t c : column_counts) {
      CHECK(c > 300);
      CHECK(c < 500);
    }
  }

  SUBCASE("continuous swarms start inside the box") {
    PsoConfig config = small_config(12, SwarmMode::Continuous, 50, 1);
    const Swarm swarm = init_swarm(index, config, SwarmMode::Continuous);
    for (const Particle& particle : swarm.particles) {
      REQUIRE(particle.position.size() == 6);
      for (double p : particle.position) {
        CHECK(p >= 64.0);
        CHECK(p <= 132.0);
      }
      for (double v : particle.velocity) {
        CHECK(v >= -34.0);
        CHECK(v < 34.0);
      }
    }
  }

  SUBCASE("literal-mode velocities start in the published interval") {
    PsoConfig config = small_config(13, SwarmMode::Continuous, 50, 1);
    config.position_mode = PositionUpdateMode::PaperLiteral;
    const Swarm swarm = init_swarm(index, config, SwarmMode::Continuous);
    for (const Particle& particle : swarm.particles) {
      for (double v : particle.velocity) {
        CHECK(v >= 34.0);
        CHECK(v < 64.0);
      }
    }
  }

  SUBCASE("identical seeds give identical swarms, different seeds differ") {
    PsoConfig config = small_config(14, SwarmMode::Binary, 20, 1);
    const Swarm a = init_swarm(index, config, SwarmMode::Binary);
    const Swarm b = init_swarm(index, config, SwarmMode::Binary);
    config.seed = 15;
    const Swarm c = init_swarm(index, config, SwarmMode::Binary);
    bool same_ab = true;
    bool diff_ac = false;
    for (std::size_t p = 0; p < a.particles.size(); ++p) {
      same_ab = same_ab && a.particles[p].position == b.particles[p].position &&
                a.particles[p].velocity == b.particles[p].velocity;
      diff_ac = diff_ac || a.particles[p].position != c.particles[p].position;
    }
    CHECK(same_ab);
    CHECK(diff_ac);
  }
}

TEST_CASE("inertia weight schedule") {
  PsoConfig config;
  SUBCASE("fixed inertia is just the constant") {
    config.inertia_omega = 0.37;
    CHECK(inertia_for_iteration(config, 1) == 0.37);
    CHECK(inertia_for_iteration(config, 99) == 0.37);
  }
  SUBCASE("randomized inertia lands in [0.5, 1) and varies by iteration") {
    config.inertia_kind = InertiaKind::Random;
    config.seed = 21;
    bool varies = false;
    const double first = inertia_for_iteration(config, 1);
    for (std::uint64_t iter = 1; iter <= 50; ++iter) {
      const double w = inertia_for_iteration(config, iter);
      CHECK(w >= 0.5);
      CHECK(w < 1.0);
      CHECK(w == inertia_for_iteration(config, iter));  // replayable
      varies = varies || w != first;
    }
    CHECK(varies);
  }
}

TEST_CASE("update cycle preserves representation invariants") {
  const SimIndex index(worked_example_topology());

  SUBCASE("continuous standard stays inside box and velocity cap") {
    PsoConfig config = small_config(31, SwarmMode::Continuous, 10, 1);
    Swarm swarm = init_swarm(index, config, SwarmMode::Continuous);
    RngStream rng(derive_seed(31, {0xabc}));
    const std::vector<double> gbest(6, 64.0);
    for (int cycle = 0; cycle < 25; ++cycle) {
      for (Particle& particle : swarm.particles) {
        velocity_step(std::span<double>(particle.velocity),
                      std::span<const double>(particle.position),
                      std::span<const double>(particle.best_position),
                      std::span<const double>(gbest), 0.7, config.c1, config.c2,
                      rng);
        clamp_velocity(std::span<double>(particle.velocity), SwarmMode::Continuous,
                       config);
        position_step_continuous(std::span<double>(particle.position),
                                 std::span<const double>(particle.velocity),
                                 config, rng);
        for (double v : particle.velocity) {
          CHECK(v >= -34.0);
          CHECK(v <= 34.0);
        }
        for (double p : particle.position) {
          CHECK(p >= 64.0);
          CHECK(p <= 132.0);
        }
      }
    }
  }

  SUBCASE("continuous literal keeps the snap values and the box") {
    PsoConfig config = small_config(32, SwarmMode::Continuous, 10, 1);
    config.position_mode = PositionUpdateMode::PaperLiteral;
    Swarm swarm = init_swarm(index, config, SwarmMode::Continuous);
    RngStream rng(derive_seed(32, {0xabc}));
    const std::vector<double> gbest(6, 100.0);
    for (int cycle = 0; cycle < 25; ++cycle) {
      for (Particle& particle : swarm.particles) {
        velocity_step(std::span<double>(particle.velocity),
                      std::span<const double>(particle.position),
                      std::span<const double>(particle.best_position),
                      std::span<const double>(gbest), 0.7, config.c1, config.c2,
                      rng);
        clamp_velocity(std::span<double>(particle.velocity), SwarmMode::Continuous,
                       config);
        position_step_continuous(std::span<double>(particle.position),
                                 std::span<const double>(particle.velocity),
                                 config, rng);
        for (double v : particle.velocity) {
          CHECK((v == 64.0 || v == 34.0));
        }
        for (double p : particle.position) {
          CHECK(p >= 64.0);
          CHECK(p <= 132.0);
        }
      }
    }
  }

  SUBCASE("binary rows stay one-hot and velocities in [0,1]") {
    PsoConfig config = small_config(33, SwarmMode::Binary, 10, 1);
    Swarm swarm = init_swarm(index, config, SwarmMode::Binary);
    RngStream rng(derive_seed(33, {0xabc}));
    std::vector<double> gbest(18, 0.0);
    for (std::size_t row = 0; row < 6; ++row) gbest[row * 3] = 1.0;
    for (int cycle = 0; cycle < 25; ++cycle) {
      for (Particle& particle : swarm.particles) {
        velocity_step(std::span<double>(particle.velocity),
                      std::span<const double>(particle.position),
                      std::span<const double>(particle.best_position),
                      std::span<const double>(gbest), 0.7, config.c1, config.c2,
                      rng);
        clamp_velocity(std::span<double>(particle.velocity), SwarmMode::Binary,
                       config);
        position_step_binary(std::span<double>(particle.position),
                             std::span<const double>(particle.velocity), rng);
        for (double v : particle.velocity) {
          CHECK(v >= 0.0);
          CHECK(v <= 1.0);
        }
        for (std::size_t row = 0; row < 6; ++row) {
          CHECK(row_is_one_hot(particle.position, row));
        }
      }
    }
  }
}

TEST_CASE("scalar optimizer finds the exhaustive optimum on a toy") {
  const Topology topo = only_max_reaches_topology();
  const SimIndex index(topo);

  // Brute force over all 81 discrete assignments: the lone blind node
  // localizes only when all three anchors transmit at the top level.
  const auto all = enumerate_level_assignments(topo);
  REQUIRE(all.size() == 81);
  std::size_t best_localized = 0;
  for (const auto& sol : all) {
    best_localized = std::max(best_localized, sol.objectives.localized_blind);
  }
  REQUIRE(best_localized == 1);

  PsoConfig config = small_config(7, SwarmMode::Binary, 30, 40);
  const SopsoResult result =
      sopso_run(index, config, ScalarObjective::LocalizedBlind);
  CHECK(result.best_fitness == -1.0);
  CHECK(result.best_objectives.localized_blind == 1);
  // The found position decodes to a run matching its recorded objectives.
  const ObjectiveVector check =
      evaluate(result.best_position, SwarmMode::Binary, index, config);
  CHECK(check.localized_blind == result.best_objectives.localized_blind);
  CHECK(check.power_mw == result.best_objectives.power_mw);
}

TEST_CASE("no discrete assignment localizes more than full power everywhere") {
  for (const Topology& topo :
       {worked_example_topology(), only_max_reaches_topology()}) {
    const auto all = enumerate_level_assignments(topo);
    const NaiveResult top = naive_simulate(
        topo, RangeAssignment::from_levels(std::vector<PowerLevel>(
                  topo.nodes.size(), PowerLevel::Max)));
    for (const auto& sol : all) {
      CHECK(sol.objectives.localized_blind <= top.localized_blind);
    }
  }
}

TEST_CASE("a converged single-particle swarm is a fixed point") {
  const SimIndex index(worked_example_topology());
  PsoConfig config;
  config.n_particles = 1;
  config.n_iterations = 10;
  config.c1 = 0.0;
  config.c2 = 0.0;
  config.inertia_omega = 0.0;
  config.seed = 5;

  Swarm swarm;
  swarm.mode = SwarmMode::Binary;
  swarm.n_nodes = 6;
  swarm.particles.resize(1);
  Particle& particle = swarm.particles[0];
  particle.position.assign(18, 0.0);
  for (std::size_t row = 0; row < 6; ++row) particle.position[row * 3] = 1.0;
  particle.velocity.assign(18, 0.0);
  particle.objectives = evaluate(particle.position, SwarmMode::Binary, index, config);
  particle.best_position = particle.position;
  particle.best_objectives = particle.objectives;

  const double fixed_fitness =
      scalar_fitness(particle.objectives, ScalarObjective::PowerMw);
  const SopsoResult result =
      sopso_run_swarm(index, config, ScalarObjective::PowerMw, swarm);
  REQUIRE(result.fitness_trace.size() == 11);
  for (double f : result.fitness_trace) CHECK(f == fixed_fitness);
  CHECK(result.best_fitness == fixed_fitness);
}

TEST_CASE("scalar optimizer bookkeeping and determinism") {
  const Topology topo = Topology::generate_random(24, 6, 320.0, 42);
  const SimIndex index(topo);
  PsoConfig config = small_config(3, SwarmMode::Continuous, 15, 12);

  const SopsoResult a = sopso_run(index, config, ScalarObjective::PowerMw,
                                  SwarmMode::Continuous);
  SUBCASE("trace is monotone and consistent with the result") {
    REQUIRE(a.fitness_trace.size() == 13);
    for (std::size_t i = 1; i < a.fitness_trace.size(); ++i) {
      CHECK(a.fitness_trace[i] <= a.fitness_trace[i - 1]);
    }
    CHECK(a.fitness_trace.back() == a.best_fitness);
    CHECK(scalar_fitness(a.best_objectives, ScalarObjective::PowerMw) ==
          a.best_fitness);
    const ObjectiveVector check =
        evaluate(a.best_position, SwarmMode::Continuous, index, config);
    CHECK(check.power_mw == a.best_objectives.power_mw);
    CHECK(check.time_steps == a.best_objectives.time_steps);
    CHECK(check.localized_blind == a.best_objectives.localized_blind);
    CHECK(check.messages == a.best_objectives.messages);
  }
  SUBCASE("same seed replays bit for bit") {
    const SopsoResult b = sopso_run(index, config, ScalarObjective::PowerMw,
                                    SwarmMode::Continuous);
    CHECK(b.best_position == a.best_position);
    CHECK(b.fitness_trace == a.fitness_trace);
  }
  SUBCASE("thread count does not change the answer") {
    PsoConfig threaded = config;
    threaded.threads = 4;
    const SopsoResult b = sopso_run(index, threaded, ScalarObjective::PowerMw,
                                    SwarmMode::Continuous);
    CHECK(b.best_position == a.best_position);
    CHECK(b.fitness_trace == a.fitness_trace);
  }
}

TEST_CASE("parallel_for covers every index exactly once") {
  std::vector<std::atomic<int>> hits(1000);
  for (auto& h : hits) h.store(0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i].fetch_add(1); });
  for (const auto& h : hits) CHECK(h.load() == 1);

  int calls = 0;
  parallel_for(0, 4, [&](std::size_t) { ++calls; });
  CHECK(calls == 0);
  parallel_for(3, 16, [&](std::size_t i) { CHECK(i < 3); });
}

TEST_CASE("configuration invariants are enforced") {
  PsoConfig config;
  CHECK_NOTHROW(config.validate());

  PsoConfig bad = config;
  bad.n_particles = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.min_range = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.min_range = 140.0;  // above max
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.min_range = bad.max_range;  // degenerate box is allowed for sweeps
  CHECK_NOTHROW(bad.validate());

  bad = config;
  bad.c1 = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.inertia_omega = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = config;
  bad.threads = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  CHECK_THROWS_AS(sopso_run(SimIndex(worked_example_topology()), bad,
                            ScalarObjective::PowerMw),
                  std::invalid_argument);
}

}  // TEST_SUITE
