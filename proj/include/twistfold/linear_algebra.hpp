#pragma once

#include <optional>
#include <vector>

#include "twistfold/scalar.hpp"

namespace twistfold {

using ScalarMatrix = std::vector<std::vector<Scalar>>;

std::optional<ScalarMatrix> invert(const ScalarMatrix& a);

// Solves A x = b for a possibly overdetermined system; nullopt if inconsistent.
// Free variables are set to zero.
std::optional<std::vector<Scalar>> solve(const ScalarMatrix& a, const std::vector<Scalar>& b);

int rank(const ScalarMatrix& a);

}  // namespace twistfold
