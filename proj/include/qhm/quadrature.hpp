#pragma once

#include <cstddef>
#include <vector>

namespace qhm {

/// Gauss-Legendre rule mapped to [0, 1]; weights sum to 1.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Cached n-point rule (n >= 1). The reference stays valid for the lifetime
/// of the program.
const GaussRule& gauss_legendre(std::size_t n);

}  // namespace qhm
