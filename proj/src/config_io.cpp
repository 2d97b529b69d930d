#include "momc/config_io.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace momc {

namespace {

long long to_ll(const Json& j, const char* what) {
    if (!j.is_number_integer())
        throw InputError(std::string(what) + " must be an integer");
    return j.get<long long>();
}

std::optional<int> env_limit(const char* name) {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    try {
        return std::stoi(v);
    } catch (...) {
        throw InputError(std::string(name) + " is not an integer");
    }
}

} // namespace

ConfigFile config_from_json(const Json& j) {
    if (!j.is_object()) throw InputError("config must be a JSON object");
    ConfigFile out;
    if (!j.contains("rank")) throw InputError("config is missing \"rank\"");
    out.rank = static_cast<int>(to_ll(j.at("rank"), "rank"));
    if (!j.contains("weights") || !j.at("weights").is_array())
        throw InputError("config is missing the \"weights\" array");
    for (const Json& w : j.at("weights")) {
        WeightComponent c;
        if (!w.contains("chi") || !w.at("chi").is_array())
            throw InputError("weight entry is missing the \"chi\" vector");
        for (const Json& x : w.at("chi")) c.chi.coords.push_back(Int(to_ll(x, "chi coordinate")));
        c.mult = w.contains("mult") ? Int(to_ll(w.at("mult"), "mult")) : Int(1);
        out.weights.push_back(std::move(c));
    }
    if (j.contains("limits")) {
        const Json& l = j.at("limits");
        Limits lim;
        if (l.contains("maxComponents")) lim.max_components = static_cast<int>(to_ll(l.at("maxComponents"), "maxComponents"));
        if (l.contains("maxSubdivisionPoints")) lim.max_subdivision_points = static_cast<int>(to_ll(l.at("maxSubdivisionPoints"), "maxSubdivisionPoints"));
        if (l.contains("maxCells")) lim.max_cells = static_cast<int>(to_ll(l.at("maxCells"), "maxCells"));
        out.limits = lim;
    }
    if (j.contains("cells")) {
        std::vector<std::vector<int>> cells;
        for (const Json& c : j.at("cells")) {
            std::vector<int> cell;
            for (const Json& i : c) cell.push_back(static_cast<int>(to_ll(i, "cell index")));
            cells.push_back(std::move(cell));
        }
        out.cells = std::move(cells);
    }
    return out;
}

ConfigFile parse_config(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("config parse error: ") + e.what());
    }
    return config_from_json(j);
}

Json config_to_json(const ConfigFile& c) {
    Json j;
    j["rank"] = c.rank;
    Json ws = Json::array();
    for (const WeightComponent& w : c.weights) {
        Json e;
        Json chi = Json::array();
        for (const Int& x : w.chi.coords) chi.push_back(static_cast<long long>(x));
        e["chi"] = chi;
        e["mult"] = static_cast<long long>(w.mult);
        ws.push_back(e);
    }
    j["weights"] = ws;
    if (c.limits) {
        j["limits"] = Json{{"maxComponents", c.limits->max_components},
                           {"maxSubdivisionPoints", c.limits->max_subdivision_points},
                           {"maxCells", c.limits->max_cells}};
    }
    if (c.cells) j["cells"] = *c.cells;
    return j;
}

Limits resolve_limits(const ConfigFile& cfg, std::optional<int> cli_cells,
                      std::optional<int> cli_points) {
    Limits lim;
    if (auto v = env_limit("MOMC_LIMIT_COMPONENTS")) lim.max_components = *v;
    if (auto v = env_limit("MOMC_LIMIT_POINTS")) lim.max_subdivision_points = *v;
    if (auto v = env_limit("MOMC_LIMIT_CELLS")) lim.max_cells = *v;
    if (cfg.limits) lim = *cfg.limits;
    if (cli_points) lim.max_subdivision_points = *cli_points;
    if (cli_cells) lim.max_cells = *cli_cells;
    return lim;
}

WeightConfiguration to_weight_configuration(const ConfigFile& c) {
    return WeightConfiguration(c.rank, c.weights);
}

MomentComplex build_complex_from_config(const ConfigFile& c, const Limits& limits) {
    WeightConfiguration cfg = to_weight_configuration(c);
    if (c.cells) return MomentComplex::from_cells(std::move(cfg), *c.cells, limits);
    return MomentComplex::build(std::move(cfg), limits);
}

std::string config_digest(const ConfigFile& c) {
    ConfigFile canonical = c;
    std::sort(canonical.weights.begin(), canonical.weights.end(),
              [](const WeightComponent& a, const WeightComponent& b) { return a.chi < b.chi; });
    std::string dump = config_to_json(canonical).dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : dump) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

Rat parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw InputError("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const InputError&) {
        throw;
    } catch (...) {
        throw InputError("cannot parse rational: " + s);
    }
}

std::string rational_str(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

VecQ parse_rational_vector(const std::string& s) {
    VecQ out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, ',')) {
        // trim spaces
        size_t a = item.find_first_not_of(" \t");
        size_t b = item.find_last_not_of(" \t");
        if (a == std::string::npos) throw InputError("empty rational in vector: " + s);
        out.push_back(parse_rational(item.substr(a, b - a + 1)));
    }
    if (out.empty()) throw InputError("empty rational vector");
    return out;
}

ComplexReport make_complex_report(const MomentComplex& cx) {
    ComplexReport r;
    r.rank = cx.config().rank();
    r.components = cx.config().components();
    r.generic_cell = cx.generic_cell();
    for (int id = 0; id < cx.cell_count(); ++id) {
        CellReport c;
        c.id = id;
        c.components = cx.cell(id).comps;
        c.dim = cx.cell(id).dim;
        c.faces = cx.faces_of(id);
        c.subdivisions = cx.subdivisions_of(id);
        r.cells.push_back(std::move(c));
    }
    return r;
}

Json to_json(const ComplexReport& r) {
    Json j;
    j["rank"] = r.rank;
    Json comps = Json::array();
    for (size_t i = 0; i < r.components.size(); ++i) {
        Json chi = Json::array();
        for (const Int& x : r.components[i].chi.coords) chi.push_back(static_cast<long long>(x));
        comps.push_back(Json{{"index", i}, {"chi", chi}, {"mult", static_cast<long long>(r.components[i].mult)}});
    }
    j["components"] = comps;
    j["generic_cell"] = r.generic_cell;
    Json cells = Json::array();
    for (const CellReport& c : r.cells) {
        Json subs = Json::array();
        for (const CellSubdivision& s : c.subdivisions)
            subs.push_back(Json{{"maximal", s.maximal}, {"internal", s.internal}});
        cells.push_back(Json{{"id", c.id},
                             {"components", c.components},
                             {"dim", c.dim},
                             {"faces", c.faces},
                             {"subdivisions", subs}});
    }
    j["cells"] = cells;
    return j;
}

ComplexReport complex_report_from_json(const Json& j) {
    ComplexReport r;
    r.rank = static_cast<int>(to_ll(j.at("rank"), "rank"));
    for (const Json& c : j.at("components")) {
        WeightComponent w;
        for (const Json& x : c.at("chi")) w.chi.coords.push_back(Int(to_ll(x, "chi")));
        w.mult = Int(to_ll(c.at("mult"), "mult"));
        r.components.push_back(std::move(w));
    }
    r.generic_cell = static_cast<int>(to_ll(j.at("generic_cell"), "generic_cell"));
    for (const Json& c : j.at("cells")) {
        CellReport cr;
        cr.id = static_cast<int>(to_ll(c.at("id"), "id"));
        cr.components = c.at("components").get<std::vector<int>>();
        cr.dim = static_cast<int>(to_ll(c.at("dim"), "dim"));
        cr.faces = c.at("faces").get<std::vector<int>>();
        for (const Json& s : c.at("subdivisions")) {
            CellSubdivision cs;
            cs.maximal = s.at("maximal").get<std::vector<int>>();
            cs.internal = s.at("internal").get<std::vector<int>>();
            cr.subdivisions.push_back(std::move(cs));
        }
        r.cells.push_back(std::move(cr));
    }
    return r;
}

MeasuresReport make_measures_report(const MomentComplex& cx, const std::vector<MomentMeasure>& ms) {
    MeasuresReport r;
    r.mode = ms.empty() ? std::string("normalized") : mode_name(ms.front().mode());
    for (size_t i = 0; i < ms.size(); ++i) {
        MeasureReport mr;
        mr.id = static_cast<int>(i);
        for (int id : ms[i].one_cells()) mr.one_cells.push_back(cx.cell(id).comps);
        mr.geometric = is_geometric(ms[i]);
        SupportFamily fam = u_supports(ms[i]);
        mr.supports = fam.supports;
        mr.open = fam.upward_closed;
        r.measures.push_back(std::move(mr));
    }
    return r;
}

Json to_json(const MeasuresReport& r) {
    Json j;
    j["mode"] = r.mode;
    j["geometric_only"] = r.geometric_only;
    Json ms = Json::array();
    for (const MeasureReport& m : r.measures)
        ms.push_back(Json{{"id", m.id},
                          {"cells", m.one_cells},
                          {"geometric", m.geometric},
                          {"supports", m.supports},
                          {"open", m.open}});
    j["measures"] = ms;
    return j;
}

MeasuresReport measures_report_from_json(const Json& j) {
    MeasuresReport r;
    r.mode = j.at("mode").get<std::string>();
    r.geometric_only = j.at("geometric_only").get<bool>();
    for (const Json& m : j.at("measures")) {
        MeasureReport mr;
        mr.id = static_cast<int>(to_ll(m.at("id"), "id"));
        mr.one_cells = m.at("cells").get<std::vector<std::vector<int>>>();
        mr.geometric = m.at("geometric").get<bool>();
        mr.supports = m.at("supports").get<std::vector<Support>>();
        mr.open = m.at("open").get<bool>();
        r.measures.push_back(std::move(mr));
    }
    return r;
}

Json report_envelope(const std::string& command, const ConfigFile& cfg, Json payload) {
    Json j;
    j["command"] = command;
    j["digest"] = config_digest(cfg);
    j["payload"] = std::move(payload);
    j["status"] = 0;
    return j;
}

} // namespace momc
