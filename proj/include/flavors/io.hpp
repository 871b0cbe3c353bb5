#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

#include "flavors/bench.hpp"
#include "flavors/field.hpp"

namespace flavors::io {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double v);

/// One row per spatial node: x followed by the value at every stored time.
/// The header row is "x" followed by the stored times.
void write_field_csv(const SpaceTimeField& field, const std::filesystem::path& path);

/// Matrix with h values across the first row and H values down the first
/// column. Masked cells are written as "unstable".
void write_surface_csv(const bench::ErrorSurface& surface, const std::filesystem::path& path);

/// Cell counts, the smallest stable error and where it occurs, and the
/// speedup of every cell against a benchmark with steps (h_bench, k_bench)
/// for FLAVOR space step K.
nlohmann::json surface_summary(const bench::ErrorSurface& surface, double K, double h_bench, double k_bench);

/// Shape, step metadata and stability of a field.
nlohmann::json field_summary(const SpaceTimeField& field);

nlohmann::json to_json(const bench::ComparisonReport& report);

void write_json(const nlohmann::json& doc, const std::filesystem::path& path);

}  // namespace flavors::io
