#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sycos/core_types.hpp"

namespace sycos {

enum class Relation {
  Independent,
  Linear,
  Exponential,
  Quadratic,
  Diamond,
  Circle,
  Sine,
  Cross,
  Quartic,
  Sqrt,
};

const std::vector<Relation>& all_relations();
const char* to_string(Relation r);
Relation parse_relation(const std::string& name);

struct RelationSpec {
  Relation kind = Relation::Linear;
  std::optional<double> x_lo;  // family default when unset
  std::optional<double> x_hi;
  Index n = 1000;
  std::optional<double> noise;  // amplitude of u ~ U(0,1); family default when unset
  std::uint64_t seed = 1;
  bool sorted = true;  // sort x ascending before pairing
};

TimeSeriesPair generate_relation(const RelationSpec& spec);

struct Block {
  Index position = 0;
  Index length = 0;
  RelationSpec relation;
};

struct ScenarioSpec {
  Index total_length = 0;
  std::vector<Block> blocks;
  std::uint64_t seed = 1;
};

struct Scenario {
  TimeSeriesPair pair;
  std::vector<Window> truth;
};

Scenario generate_scenario(const ScenarioSpec& spec);

// Three blocks of 800 in 4000 samples.
ScenarioSpec dense_scenario(std::uint64_t seed);
// Five blocks of 60 in 6000 samples.
ScenarioSpec sparse_scenario(std::uint64_t seed);
// Four blocks of 250 in 5000 samples.
ScenarioSpec moderate_scenario(std::uint64_t seed);
// One block of `length` samples at `position` inside independent background.
ScenarioSpec embedded_block(std::uint64_t seed, Index total = 4000, Index position = 1000,
                            Index length = 400, Relation relation = Relation::Linear,
                            std::optional<double> noise = std::nullopt);

}  // namespace sycos
