#include "flavors/io.hpp"

#include <charconv>
#include <fstream>

#include "flavors/errors.hpp"

namespace flavors::io {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    return out;
}

const char* status_name(bench::CellStatus s) {
    switch (s) {
        case bench::CellStatus::stable: return "stable";
        case bench::CellStatus::unstable: return "unstable";
        case bench::CellStatus::invalid: return "invalid";
    }
    return "invalid";
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_field_csv(const SpaceTimeField& field, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << 'x';
    for (double t : field.times()) out << ',' << format_double(t);
    out << '\n';
    for (std::size_t i = 0; i < field.rows(); ++i) {
        out << format_double(field.x()[i]);
        for (std::size_t c = 0; c < field.cols(); ++c) out << ',' << format_double(field(i, c));
        out << '\n';
    }
}

void write_surface_csv(const bench::ErrorSurface& surface, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << "H\\h";
    for (double h : surface.h_values) out << ',' << format_double(h);
    out << '\n';
    for (std::size_t a = 0; a < surface.H_values.size(); ++a) {
        out << format_double(surface.H_values[a]);
        for (std::size_t b = 0; b < surface.h_values.size(); ++b) {
            const auto e = surface.error(a, b);
            out << ',' << (e ? format_double(*e) : std::string("unstable"));
        }
        out << '\n';
    }
}

nlohmann::json surface_summary(const bench::ErrorSurface& surface, double K, double h_bench, double k_bench) {
    nlohmann::json doc;
    std::size_t counts[3] = {0, 0, 0};
    std::optional<std::size_t> best;
    auto status = nlohmann::json::array();
    auto speedups = nlohmann::json::array();
    for (std::size_t a = 0; a < surface.H_values.size(); ++a) {
        auto srow = nlohmann::json::array();
        auto vrow = nlohmann::json::array();
        for (std::size_t b = 0; b < surface.h_values.size(); ++b) {
            const std::size_t idx = surface.index(a, b);
            ++counts[static_cast<int>(surface.status[idx])];
            srow.push_back(status_name(surface.status[idx]));
            vrow.push_back(bench::speedup(surface.H_values[a], K, h_bench, k_bench));
            if (surface.errors[idx] && (!best || *surface.errors[idx] < *surface.errors[*best])) best = idx;
        }
        status.push_back(std::move(srow));
        speedups.push_back(std::move(vrow));
    }
    doc["H_values"] = surface.H_values;
    doc["h_values"] = surface.h_values;
    doc["stable_cells"] = counts[0];
    doc["unstable_cells"] = counts[1];
    doc["invalid_cells"] = counts[2];
    doc["status"] = std::move(status);
    doc["speedup"] = std::move(speedups);
    if (best) {
        doc["min_error"] = *surface.errors[*best];
        doc["argmin"] = {{"H", surface.H_values[*best / surface.h_values.size()]},
                         {"h", surface.h_values[*best % surface.h_values.size()]}};
    } else {
        doc["min_error"] = nullptr;
        doc["argmin"] = nullptr;
    }
    return doc;
}

nlohmann::json field_summary(const SpaceTimeField& field) {
    nlohmann::json doc{{"name", field.name()},
                       {"rows", field.rows()},
                       {"cols", field.cols()},
                       {"space_step", field.space_step()},
                       {"time_step", field.time_step()},
                       {"micro_step", field.micro_step()},
                       {"unstable", field.unstable()}};
    doc["failure_time"] = field.failure_time() ? nlohmann::json(*field.failure_time()) : nlohmann::json();
    return doc;
}

nlohmann::json to_json(const bench::ComparisonReport& report) {
    return {{"error", report.error}, {"node_count", report.node_count}, {"speedup", report.speedup}};
}

void write_json(const nlohmann::json& doc, const std::filesystem::path& path) {
    auto out = open_output(path);
    out << doc.dump(2) << '\n';
}

}  // namespace flavors::io
