#pragma once

#include <string>
#include <vector>

#include "suc/milp_model.hpp"

namespace suc {

// CPLEX LP text format (Minimize / Subject To / Bounds / Binaries / End) so
// external MILP solvers can consume exported models. Coefficients are printed
// with 17 significant digits, which makes write -> read lossless.
void write_lp(const std::string& path, const MilpModel& model);
std::string lp_text(const MilpModel& model);
MilpModel read_lp(const std::string& path);

// Solution files: '#' header carrying status and objective, then one
// "name value" row per variable.
struct SolutionFile {
  std::string status;
  double objective = 0;
  std::vector<std::pair<std::string, double>> values;
};

void write_solution(const std::string& path, const SolutionFile& solution);
SolutionFile read_solution(const std::string& path);

// Maps a parsed solution onto a model's variables by name; throws when a
// model variable is missing from the file.
std::vector<double> solution_values_for(const MilpModel& model,
                                        const SolutionFile& solution);

}  // namespace suc
