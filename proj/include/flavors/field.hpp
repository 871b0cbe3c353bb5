#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace flavors {

/// Solution samples on a space-time grid: one column per stored time node.
///
/// Columns are contiguous (column-major storage). `macro` marks the columns
/// sitting on macro nodes kH of a FLAVOR mesh; for single-scale runs every
/// stored column is marked. Step metadata travels with the field so that
/// comparisons can check grid nesting and report speedups.
class SpaceTimeField {
public:
    SpaceTimeField() = default;

    /// `time_step` is H for FLAVOR fields and the uniform step otherwise;
    /// `micro_step` is h for FLAVOR fields and 0 otherwise.
    SpaceTimeField(std::string name, std::vector<double> x, double space_step,
                   double time_step, double micro_step = 0.0);

    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    std::size_t rows() const { return x_.size(); }
    std::size_t cols() const { return times_.size(); }

    const std::vector<double>& x() const { return x_; }
    const std::vector<double>& times() const { return times_; }
    bool is_macro(std::size_t col) const { return macro_[col] != 0; }

    double space_step() const { return space_step_; }
    double time_step() const { return time_step_; }
    double micro_step() const { return micro_step_; }
    bool is_flavor() const { return micro_step_ > 0.0; }

    double operator()(std::size_t i, std::size_t col) const { return values_[col * rows() + i]; }
    double& operator()(std::size_t i, std::size_t col) { return values_[col * rows() + i]; }

    std::span<const double> column(std::size_t col) const {
        return {values_.data() + col * rows(), rows()};
    }
    std::span<double> column(std::size_t col) { return {values_.data() + col * rows(), rows()}; }

    const std::vector<double>& values() const { return values_; }

    void append_column(std::span<const double> values, double t, bool macro = true);

    bool unstable() const { return failure_time_.has_value(); }
    std::optional<double> failure_time() const { return failure_time_; }
    void mark_unstable(double t) { failure_time_ = t; }

private:
    std::string name_;
    std::vector<double> x_;
    std::vector<double> times_;
    std::vector<char> macro_;
    std::vector<double> values_;
    double space_step_ = 0.0;
    double time_step_ = 0.0;
    double micro_step_ = 0.0;
    std::optional<double> failure_time_;
};

}  // namespace flavors
