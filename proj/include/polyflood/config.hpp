#pragma once

#include <istream>
#include <string>
#include <vector>

#include "polyflood/solver.hpp"

namespace polyflood {

/// Reads a RunConfig from an INI file:
///
///   [model]     name = quadratic_test | two_phase_gravity; adsorption = linear | langmuir;
///               k, b; two-phase keys n1, n2, mu1, mu1_c, mu2, g1, g2, q
///   [grid]      x_min, x_max, and n_cells or h
///   [scheme]    name, lambda
///   [boundary]  type = dirichlet | closed; s_left, c_left, s_right, c_right
///   [initial]   breaks, s, c  (whitespace or comma separated lists)
///   [run]       t_end, snapshots
///
/// Inline "; ..." and "# ..." comments are stripped. Errors are ConfigError
/// naming the line or the field.
RunConfig load_config(const std::string& path);
RunConfig parse_config(std::istream& in, const std::string& source = "<config>");

/// quadratic_test (alias quadratic) or two_phase_gravity (alias two_phase).
FluxModel model_by_name(const std::string& name);

/// Accepts decimals and fractions such as "1/50".
double parse_number(const std::string& text);
/// Splits on commas and whitespace.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace polyflood
