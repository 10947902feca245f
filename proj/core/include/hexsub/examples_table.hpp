#pragma once
// The reproduction table for the four example families: the decay exponent
// 2 alpha_delta - 2 of each family at its published (eps, delta), plus the
// comparison exponents from earlier prescribed-growth settings where those
// are defined.

#include <optional>
#include <string>
#include <vector>

#include "hexsub/admissibility.hpp"

namespace hexsub {

struct ExampleRow {
  std::string family;
  double epsilon = 0.0;
  double delta = 0.0;
  double two_alpha_minus_2 = 0.0;          // computed, family closed form
  double reference_two_alpha_minus_2 = 0.0;
  std::optional<double> comparison;            // computed comparison exponent
  std::optional<double> reference_comparison;
  std::string note;
};

std::vector<ExampleRow> reproduce_examples();
std::string examples_table_text(const std::vector<ExampleRow>& rows);
std::string examples_table_json(const std::vector<ExampleRow>& rows);

}  // namespace hexsub
