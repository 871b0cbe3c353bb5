#include "flavors/norms.hpp"

#include <algorithm>
#include <cmath>

#include "flavors/errors.hpp"

namespace flavors {

double normalized_l1(std::span<const double> v) {
    if (v.empty()) throw EmptyVector("normalized_l1 of an empty vector");
    double sum = 0.0;
    for (double x : v) sum += std::abs(x);
    return sum / static_cast<double>(v.size());
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace flavors
