#pragma once

#include <string>
#include <utility>
#include <vector>

namespace twistfold {

// True if s has a + or - at parenthesis depth zero after its first character.
bool has_top_level_sum(const std::string& s);

// "c*atom" with parentheses around sums and unit coefficients elided.
std::string coef_times(const std::string& coef, const std::string& atom);

// Joins (coefficient, atom) pairs into "a*atom1 + b*atom2 - ...".
std::string join_terms(const std::vector<std::pair<std::string, std::string>>& parts, bool compact);

}  // namespace twistfold
