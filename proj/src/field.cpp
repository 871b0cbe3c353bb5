#include "flavors/field.hpp"

#include <algorithm>

#include "flavors/errors.hpp"

namespace flavors {

SpaceTimeField::SpaceTimeField(std::string name, std::vector<double> x, double space_step,
                               double time_step, double micro_step)
    : name_(std::move(name)),
      x_(std::move(x)),
      space_step_(space_step),
      time_step_(time_step),
      micro_step_(micro_step) {}

void SpaceTimeField::append_column(std::span<const double> values, double t, bool macro) {
    if (values.size() != rows()) {
        throw InvalidArgument("column length does not match the spatial node count");
    }
    if (!times_.empty() && !(t > times_.back())) {
        throw InvalidArgument("time nodes must be strictly increasing");
    }
    values_.insert(values_.end(), values.begin(), values.end());
    times_.push_back(t);
    macro_.push_back(macro ? 1 : 0);
}

}  // namespace flavors
