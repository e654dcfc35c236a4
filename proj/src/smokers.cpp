#include "vproblog/smokers.hpp"

#include <algorithm>
#include <random>

#include "vproblog/error.hpp"
#include "vproblog/parser.hpp"

namespace vpl {

std::vector<std::pair<std::size_t, std::size_t>> smokers_graph(std::size_t persons, std::uint64_t seed) {
  // Raw engine output only: the standard distributions are not specified
  // bit-for-bit across library implementations.
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> degree(persons + 1, 0);
  std::vector<std::pair<std::size_t, std::size_t>> edges;

  for (std::size_t node = 2; node <= persons; ++node) {
    std::vector<std::size_t> chosen;
    const std::size_t links = std::min<std::size_t>(2, node - 1);
    while (chosen.size() < links) {
      std::uint64_t total = 0;
      for (std::size_t j = 1; j < node; ++j)
        if (std::find(chosen.begin(), chosen.end(), j) == chosen.end()) total += degree[j] + 1;
      std::uint64_t r = rng() % total;
      for (std::size_t j = 1; j < node; ++j) {
        if (std::find(chosen.begin(), chosen.end(), j) != chosen.end()) continue;
        if (r < degree[j] + 1) {
          chosen.push_back(j);
          break;
        }
        r -= degree[j] + 1;
      }
    }
    for (std::size_t target : chosen) {
      edges.emplace_back(node, target);
      ++degree[node];
      ++degree[target];
    }
  }
  return edges;
}

std::string generate_smokers(const SmokersConfig& config) {
  if (config.persons == 0) throw Error(ErrorCode::InvalidArgument, "smokers needs at least one person");
  auto person = [](std::size_t i) { return "p" + std::to_string(i); };
  const auto edges = smokers_graph(config.persons, config.seed);
  const std::string ps = format_probability(config.p_stress);
  const std::string pi = format_probability(config.p_influences);
  const std::string pu = format_probability(config.p_susceptible);

  std::string out = "% smokers: " + std::to_string(config.persons) + " persons, seed " +
                    std::to_string(config.seed) + "\n";
  for (std::size_t i = 1; i <= config.persons; ++i) out += ps + "::stress(" + person(i) + ").\n";
  for (std::size_t i = 1; i <= config.persons; ++i) out += pu + "::susceptible(" + person(i) + ").\n";
  for (const auto& [from, to] : edges) out += "friend(" + person(from) + "," + person(to) + ").\n";
  for (const auto& [from, to] : edges) out += pi + "::influences(" + person(to) + "," + person(from) + ").\n";
  out +=
      "smokes(X) :- stress(X).\n"
      "smokes(X) :- friend(X,Y), influences(Y,X), smokes(Y).\n"
      "asthma(X) :- smokes(X), susceptible(X).\n";
  return out;
}

}  // namespace vpl
