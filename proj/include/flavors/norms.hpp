#pragma once

#include <span>

namespace flavors {

/// (1/n) * sum |v_i|, the discrete analogue of (1/L) ||v||_{L^1}.
/// Throws EmptyVector for an empty input.
double normalized_l1(std::span<const double> v);

/// True when every entry is finite.
bool all_finite(std::span<const double> v);

}  // namespace flavors
