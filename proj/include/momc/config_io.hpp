#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "momc/measures.hpp"
#include "momc/moment_complex.hpp"

namespace momc {

using Json = nlohmann::json;

// One structured text format for configs and machine reports: a single
// object with "rank" and a "weights" array of {"chi": [...], "mult": n}.
// Rationals are serialized as "p/q" strings so exact values survive.
struct ConfigFile {
    int rank = 0;
    std::vector<WeightComponent> weights;
    std::optional<Limits> limits;
    std::optional<std::vector<std::vector<int>>> cells; // abstract complex mode

    bool operator==(const ConfigFile&) const = default;
};

ConfigFile parse_config(const std::string& text); // throws InputError with position info
ConfigFile config_from_json(const Json& j);
Json config_to_json(const ConfigFile& c);

// CLI flags take precedence, then the config file, then MOMC_LIMIT_*
// environment variables, then defaults.
Limits resolve_limits(const ConfigFile& cfg, std::optional<int> cli_cells,
                      std::optional<int> cli_points);

WeightConfiguration to_weight_configuration(const ConfigFile& c);
MomentComplex build_complex_from_config(const ConfigFile& c, const Limits& limits);

std::string config_digest(const ConfigFile& c);

Rat parse_rational(const std::string& s);
std::string rational_str(const Rat& r);
VecQ parse_rational_vector(const std::string& s); // comma separated

// ---- machine reports ----------------------------------------------------

struct CellReport {
    int id = 0;
    std::vector<int> components;
    int dim = 0;
    std::vector<int> faces;
    std::vector<CellSubdivision> subdivisions;
    bool operator==(const CellReport&) const = default;
};

struct ComplexReport {
    int rank = 0;
    std::vector<WeightComponent> components;
    int generic_cell = 0;
    std::vector<CellReport> cells;
    bool operator==(const ComplexReport&) const = default;
};

ComplexReport make_complex_report(const MomentComplex& cx);
Json to_json(const ComplexReport& r);
ComplexReport complex_report_from_json(const Json& j);

struct MeasureReport {
    int id = 0;
    std::vector<std::vector<int>> one_cells; // component sets of the value-1 cells
    bool geometric = false;
    std::vector<Support> supports;
    bool open = false;
    bool operator==(const MeasureReport&) const = default;
};

struct MeasuresReport {
    std::string mode;
    bool geometric_only = false;
    std::vector<MeasureReport> measures;
    bool operator==(const MeasuresReport&) const = default;
};

MeasuresReport make_measures_report(const MomentComplex& cx, const std::vector<MomentMeasure>& ms);
Json to_json(const MeasuresReport& r);
MeasuresReport measures_report_from_json(const Json& j);

// Report envelope shared by all commands.
Json report_envelope(const std::string& command, const ConfigFile& cfg, Json payload);

} // namespace momc
