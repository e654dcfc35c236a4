#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace vpl {

struct SmokersConfig {
  std::size_t persons = 10;
  std::uint64_t seed = 0;
  double p_stress = 0.3;
  double p_influences = 0.2;
  double p_susceptible = 0.4;
};

// Directed friend edges (from, to) over persons 1..n. Each new person links
// to up to two earlier persons drawn with probability proportional to
// degree + 1. Deterministic for a given seed on every platform.
std::vector<std::pair<std::size_t, std::size_t>> smokers_graph(std::size_t persons, std::uint64_t seed);

// Program text for the social-network smokers domain over smokers_graph.
// A friend edge (i, j) yields friend(p_i,p_j) and influences(p_j,p_i): the
// friend j may push i to smoke.
std::string generate_smokers(const SmokersConfig& config);

}  // namespace vpl
