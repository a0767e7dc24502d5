#pragma once

#include <string>
#include <string_view>

#include "bslab/potential.hpp"

namespace bslab {

// JSON hand-off for capacity problems and solutions. Doubles are written in
// shortest round-trip form, so parse(write(x)) reproduces x exactly.
std::string write_capacity_problem(const CapacityProblem& problem);
CapacityProblem parse_capacity_problem(std::string_view text);

std::string write_potential_solution(const PotentialSolution& solution);
PotentialSolution parse_potential_solution(std::string_view text);

// Reads a whole file; throws PreconditionError if it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace bslab
