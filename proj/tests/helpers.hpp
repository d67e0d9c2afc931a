#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "ctree/events.hpp"
#include "ctree/random_vars.hpp"
#include "ctree/tree.hpp"

namespace th {

using namespace ctree;

inline std::string corpus_path(const std::string& name) {
  return std::string(CTREE_CORPUS_DIR) + "/" + name;
}

// The urn experiment: swap, side, draw. Mirrors corpus/urn.ctree.
inline SpaceSpec urn_spec() {
  SpaceSpec s;
  s.outcomes = {"no_left_black",  "no_left_white",  "no_right_black", "no_right_white",
                "yes_left_black", "yes_left_white", "yes_right_black", "yes_right_white"};
  s.root = "S0";
  s.nodes = {"S0", "S1", "S2", "S3", "S4", "S5", "S6"};
  for (int i = 7; i <= 14; ++i) {
    s.leaves.push_back({"S" + std::to_string(i), s.outcomes[static_cast<size_t>(i - 7)]});
  }
  s.edges = {{"S0", "S1", Rational(1, 2)},  {"S0", "S2", Rational(1, 2)},
             {"S1", "S3", Rational(3, 4)},  {"S1", "S4", Rational(1, 4)},
             {"S2", "S5", Rational(1, 4)},  {"S2", "S6", Rational(3, 4)},
             {"S3", "S7", Rational(3, 4)},  {"S3", "S8", Rational(1, 4)},
             {"S4", "S9", Rational(1, 4)},  {"S4", "S10", Rational(3, 4)},
             {"S5", "S11", Rational(1, 4)}, {"S5", "S12", Rational(3, 4)},
             {"S6", "S13", Rational(3, 4)}, {"S6", "S14", Rational(1, 4)}};
  return s;
}

inline CausalSpace urn() { return build_space(urn_spec()); }

inline std::vector<RandomVariable> urn_vars(const CausalSpace& s) {
  return {
      define_variable(s, "Swap", {"no", "yes"}, {{"S1", "no"}, {"S2", "yes"}}),
      define_variable(s, "Pick", {"left", "right"},
                      {{"S3", "left"}, {"S4", "right"}, {"S5", "left"}, {"S6", "right"}}),
      define_variable(s, "Colour", {"black", "white"},
                      {{"S7", "black"},
                       {"S8", "white"},
                       {"S9", "black"},
                       {"S10", "white"},
                       {"S11", "black"},
                       {"S12", "white"},
                       {"S13", "black"},
                       {"S14", "white"}}),
  };
}

// Mirrors corpus/barometer.ctree.
inline SpaceSpec barometer_spec() {
  SpaceSpec s;
  s.outcomes = {"h1_sunny_low", "h1_sunny_high", "h1_rainy_low", "h1_rainy_high",
                "h2_low_sunny", "h2_low_rainy",  "h2_high_sunny", "h2_high_rainy"};
  s.root = "S0";
  s.nodes = {"S0", "S1", "S2", "S3", "S4", "S5", "S6"};
  for (int i = 7; i <= 14; ++i) {
    s.leaves.push_back({"S" + std::to_string(i), s.outcomes[static_cast<size_t>(i - 7)]});
  }
  s.edges = {{"S0", "S1", Rational(1, 2)},  {"S0", "S2", Rational(1, 2)},
             {"S1", "S3", Rational(1, 2)},  {"S1", "S4", Rational(1, 2)},
             {"S2", "S5", Rational(1, 2)},  {"S2", "S6", Rational(1, 2)},
             {"S3", "S7", Rational(3, 4)},  {"S3", "S8", Rational(1, 4)},
             {"S4", "S9", Rational(1, 4)},  {"S4", "S10", Rational(3, 4)},
             {"S5", "S11", Rational(3, 4)}, {"S5", "S12", Rational(1, 4)},
             {"S6", "S13", Rational(1, 4)}, {"S6", "S14", Rational(3, 4)}};
  return s;
}

inline CausalSpace barometer() { return build_space(barometer_spec()); }

inline std::vector<RandomVariable> barometer_vars(const CausalSpace& s) {
  return {
      define_variable(s, "H", {"1", "2"}, {{"S1", "1"}, {"S2", "2"}}),
      define_variable(s, "W", {"sunny", "rainy"},
                      {{"S3", "sunny"},
                       {"S4", "rainy"},
                       {"S11", "sunny"},
                       {"S12", "rainy"},
                       {"S13", "sunny"},
                       {"S14", "rainy"}}),
      define_variable(s, "B", {"low", "high"},
                      {{"S5", "low"},
                       {"S6", "high"},
                       {"S7", "low"},
                       {"S8", "high"},
                       {"S9", "low"},
                       {"S10", "high"}}),
  };
}

// Mirrors corpus/xyzu.ctree: Y and Z resolve in branch-dependent order.
inline SpaceSpec xyzu_spec() {
  SpaceSpec s;
  s.outcomes = {"x0y0z0", "x0y0z1", "x0y1z0", "x0y1z1",
                "x1z0y0", "x1z0y1", "x1z1y0", "x1z1y1"};
  s.root = "S0";
  s.nodes = {"S0", "S1", "S2", "S3", "S4", "S5", "S6"};
  for (int i = 7; i <= 14; ++i) {
    s.leaves.push_back({"S" + std::to_string(i), s.outcomes[static_cast<size_t>(i - 7)]});
  }
  s.edges = {{"S0", "S1", Rational(1, 2)},  {"S0", "S2", Rational(1, 2)},
             {"S1", "S3", Rational(3, 4)},  {"S1", "S4", Rational(1, 4)},
             {"S2", "S5", Rational(1, 4)},  {"S2", "S6", Rational(3, 4)},
             {"S3", "S7", Rational(3, 4)},  {"S3", "S8", Rational(1, 4)},
             {"S4", "S9", Rational(1, 4)},  {"S4", "S10", Rational(3, 4)},
             {"S5", "S11", Rational(1, 4)}, {"S5", "S12", Rational(3, 4)},
             {"S6", "S13", Rational(3, 4)}, {"S6", "S14", Rational(1, 4)}};
  return s;
}

inline CausalSpace xyzu() { return build_space(xyzu_spec()); }

inline std::vector<RandomVariable> xyzu_vars(const CausalSpace& s) {
  return {
      define_variable(s, "X", {"0", "1"}, {{"S1", "0"}, {"S2", "1"}}),
      define_variable(s, "Y", {"0", "1"},
                      {{"S3", "0"}, {"S4", "1"}, {"S11", "0"},
                       {"S12", "1"}, {"S13", "0"}, {"S14", "1"}}),
      define_variable(s, "Z", {"0", "1"},
                      {{"S5", "0"}, {"S6", "1"}, {"S7", "0"},
                       {"S8", "1"}, {"S9", "0"}, {"S10", "1"}}),
      define_variable(s, "U", {"0", "1"},
                      {{"S2", "0"}, {"S4", "1"}, {"S7", "0"}, {"S8", "1"}}),
  };
}

// Mirrors corpus/bifurcations.ctree: nine leaves, uneven depths.
inline SpaceSpec fixture_spec() {
  SpaceSpec s;
  s.outcomes = {"1", "2", "3", "4", "5", "6", "7", "8", "9"};
  s.root = "S0";
  s.nodes = {"S0", "S1", "S2", "S3", "S4", "S5", "S9", "S12"};
  s.leaves = {{"S7", "1"},  {"S8", "2"},  {"S11", "3"}, {"S14", "4"}, {"S10", "8"},
              {"S15", "5"}, {"S16", "6"}, {"S13", "7"}, {"S6", "9"}};
  s.edges = {{"S0", "S1", Rational(1, 2)},  {"S0", "S2", Rational(1, 2)},
             {"S1", "S3", Rational(1, 3)},  {"S1", "S4", Rational(2, 3)},
             {"S3", "S7", Rational(1, 2)},  {"S3", "S8", Rational(1, 2)},
             {"S4", "S9", Rational(2, 3)},  {"S4", "S10", Rational(1, 3)},
             {"S9", "S11", Rational(1, 2)}, {"S9", "S14", Rational(1, 2)},
             {"S2", "S5", Rational(3, 4)},  {"S2", "S6", Rational(1, 4)},
             {"S5", "S12", Rational(1, 4)}, {"S5", "S13", Rational(3, 4)},
             {"S12", "S15", Rational(1, 2)}, {"S12", "S16", Rational(1, 2)}};
  return s;
}

inline CausalSpace fixture() { return build_space(fixture_spec()); }

// Mirrors corpus/coarse.ctree: seven atoms, one of them merged.
inline SpaceSpec coarse_spec() {
  SpaceSpec s;
  s.outcomes = {"1", "2", "3", "4", "56", "7", "8"};
  s.root = "S0";
  s.nodes = {"S0", "S1", "S2", "S3", "S4", "S5"};
  s.leaves = {{"S7", "1"}, {"S8", "2"}, {"S9", "3"}, {"S10", "4"},
              {"S11", "56"}, {"S12", "7"}, {"S6", "8"}};
  s.edges = {{"S0", "S1", Rational(1, 2)}, {"S0", "S2", Rational(1, 2)},
             {"S1", "S3", Rational(1, 2)}, {"S1", "S4", Rational(1, 2)},
             {"S3", "S7", Rational(1, 2)}, {"S3", "S8", Rational(1, 2)},
             {"S4", "S9", Rational(1, 4)}, {"S4", "S10", Rational(3, 4)},
             {"S2", "S5", Rational(2, 3)}, {"S2", "S6", Rational(1, 3)},
             {"S5", "S11", Rational(3, 5)}, {"S5", "S12", Rational(2, 5)}};
  return s;
}

inline CausalSpace coarse() { return build_space(coarse_spec()); }

// One root, one outcome: the smallest valid space.
inline SpaceSpec single_spec() {
  SpaceSpec s;
  s.outcomes = {"only"};
  s.root = "S0";
  s.leaves = {{"S0", "only"}};
  return s;
}

inline Event ev(const CausalSpace& s, std::initializer_list<const char*> labels) {
  std::vector<std::string> v;
  for (const char* l : labels) v.emplace_back(l);
  return make_event(s, v);
}

inline std::vector<int> idx(const CausalSpace& s, std::initializer_list<const char*> names) {
  std::vector<int> v;
  for (const char* n : names) v.push_back(s.index_of(n));
  return v;
}

inline std::vector<Rational> table(std::initializer_list<const char*> fracs) {
  std::vector<Rational> v;
  for (const char* f : fracs) v.emplace_back(f);
  return v;
}

// Masses of all leaves in depth-first position order.
inline std::vector<Rational> masses(const CausalSpace& s, const CausalMeasure& m) {
  std::vector<Rational> v;
  for (int p = 0; p < s.leaf_count(); ++p) {
    v.push_back(transition_prob(s, m, s.root(), s.leaf_at(p)));
  }
  return v;
}

inline std::vector<Rational> masses(const CausalSpace& s) { return masses(s, s.measure()); }

}  // namespace th
