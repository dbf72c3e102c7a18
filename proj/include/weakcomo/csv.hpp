#pragma once

#include <string>
#include <vector>

#include "weakcomo/prob_core.hpp"

namespace weakcomo {

// Scenario table: header `weight,<name1>,<name2>,...`, one row per atom.
// Weights are renormalized into the space's probabilities.
struct Scenario {
  SpacePtr space;
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;  // one value vector per name

  RandomVariable variable(const std::string& name) const;
};

Scenario parse_scenario_csv(const std::string& text);
Scenario load_scenario_csv(const std::string& path);

// Square numeric matrix, no header.
std::vector<std::vector<double>> parse_matrix_csv(const std::string& text);
std::vector<std::vector<double>> load_matrix_csv(const std::string& path);

std::string read_text_file(const std::string& path);

}  // namespace weakcomo
