#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "momc/config_io.hpp"
#include "momc/equivariant.hpp"
#include "momc/verify.hpp"

using namespace momc;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string comps_str(const std::vector<int>& comps) {
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < comps.size(); ++i) os << (i ? "," : "") << comps[i];
    os << '}';
    return os.str();
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    if (out.empty()) throw InputError("empty index list");
    return out;
}

std::vector<std::vector<int>> parse_cell_list(const std::string& s) {
    std::vector<std::vector<int>> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ';'))
        if (!item.empty()) out.push_back(parse_int_list(item));
    if (out.empty()) throw InputError("empty cell list");
    return out;
}

Character parse_character(const std::string& s, int rank) {
    std::vector<int> v = parse_int_list(s);
    if (static_cast<int>(v.size()) != rank && rank > 0)
        throw InputError("vector " + s + " does not have rank " + std::to_string(rank));
    VecI coords;
    for (int x : v) coords.push_back(Int(x));
    return Character(coords);
}

struct Options {
    std::string format = "table";
    std::optional<int> limit_cells;
    std::optional<int> limit_points;
};

void emit(const Json& machine, const std::string& table, const Options& opt) {
    if (opt.format == "machine") std::cout << machine.dump(2) << "\n";
    else std::cout << table;
}

struct Ctx {
    ConfigFile file;
    Limits limits;
    MomentComplex cx;
};

Ctx load(const std::string& path, const Options& opt) {
    ConfigFile file = parse_config(read_file(path));
    Limits limits = resolve_limits(file, opt.limit_cells, opt.limit_points);
    MomentComplex cx = build_complex_from_config(file, limits);
    return Ctx{std::move(file), limits, std::move(cx)};
}

int cmd_complex(const std::string& path, const Options& opt) {
    Ctx ctx = load(path, opt);
    const MomentComplex& cx = ctx.cx;
    ComplexReport rep = make_complex_report(cx);
    std::ostringstream t;
    t << "rank " << rep.rank << ", " << rep.components.size() << " components, " << rep.cells.size()
      << " cells" << (cx.abstract_mode() ? " (abstract complex)" : "") << "\n\ncomponents:\n";
    for (size_t i = 0; i < rep.components.size(); ++i)
        t << "  [" << i << "] chi=" << rep.components[i].chi.str() << " mult=" << rep.components[i].mult
          << "\n";
    t << "\ncells (generic = " << rep.generic_cell << "):\n";
    for (const CellReport& c : rep.cells) {
        t << "  #" << c.id << " " << comps_str(c.components) << " dim=" << c.dim << " faces=[";
        for (size_t i = 0; i < c.faces.size(); ++i) t << (i ? "," : "") << c.faces[i];
        t << "] subdivisions=" << c.subdivisions.size() << "\n";
        for (const CellSubdivision& s : c.subdivisions) {
            if (s.maximal.size() == 1 && s.maximal[0] == c.id) continue;
            t << "      split: maximal=[";
            for (size_t i = 0; i < s.maximal.size(); ++i) t << (i ? "," : "") << s.maximal[i];
            t << "] internal=[";
            for (size_t i = 0; i < s.internal.size(); ++i) t << (i ? "," : "") << s.internal[i];
            t << "]\n";
        }
    }
    emit(report_envelope("complex", ctx.file, to_json(rep)), t.str(), opt);
    return 0;
}

int cmd_measures(const std::string& path, const Options& opt, const std::string& mode_str,
                 bool geometric_only) {
    Ctx ctx = load(path, opt);
    const MomentComplex& cx = ctx.cx;
    auto mode = mode_from_name(mode_str);
    if (!mode) throw InputError("unknown mode: " + mode_str);
    std::vector<MomentMeasure> ms = enumerate_measures(cx, *mode, geometric_only);
    if (*mode != ValidationMode::normalized) {
        std::vector<MomentMeasure> norm = enumerate_measures(cx, ValidationMode::normalized, geometric_only);
        if (ms.size() > norm.size())
            std::cerr << "warning: mode discrepancy: " << mode_str << " admits " << ms.size()
                      << " measures, normalized admits " << norm.size() << "\n";
    }
    MeasuresReport rep = make_measures_report(cx, ms);
    rep.mode = mode_str;
    rep.geometric_only = geometric_only;
    std::ostringstream t;
    t << ms.size() << " measures (mode " << mode_str << (geometric_only ? ", geometric only" : "")
      << ")\n";
    for (const MeasureReport& m : rep.measures) {
        t << "  #" << m.id << " cells=";
        for (size_t i = 0; i < m.one_cells.size(); ++i) t << (i ? "," : "") << comps_str(m.one_cells[i]);
        t << " geometric=" << (m.geometric ? "yes" : "no") << " open=" << (m.open ? "yes" : "no")
          << " supports=";
        for (size_t i = 0; i < m.supports.size(); ++i) t << (i ? "," : "") << comps_str(m.supports[i]);
        t << "\n";
    }
    emit(report_envelope("measures", ctx.file, to_json(rep)), t.str(), opt);
    return 0;
}

int cmd_classify(const std::string& path, const Options& opt, std::optional<int> measure_id,
                 const std::string& cells_arg, const std::string& mode_str) {
    Ctx ctx = load(path, opt);
    const MomentComplex& cx = ctx.cx;
    auto mode = mode_from_name(mode_str);
    if (!mode) throw InputError("unknown mode: " + mode_str);

    std::optional<MomentMeasure> measure;
    if (measure_id) {
        std::vector<MomentMeasure> ms = enumerate_measures(cx, *mode, false);
        if (*measure_id < 0 || *measure_id >= static_cast<int>(ms.size()))
            throw InputError("measure id " + std::to_string(*measure_id) + " out of range (have " +
                             std::to_string(ms.size()) + ")");
        measure = ms[*measure_id];
    } else {
        std::vector<int> one_cells;
        for (const auto& comps : parse_cell_list(cells_arg)) {
            auto id = cx.cell_id(comps);
            if (!id) throw InputError("selector " + comps_str(comps) + " is not a cell");
            one_cells.push_back(*id);
        }
        measure = MomentMeasure::from_one_cells(cx, one_cells, *mode);
    }

    Json verdicts;
    std::map<std::string, std::vector<MeasureViolation>> viols;
    for (ValidationMode m : {ValidationMode::literal, ValidationMode::additive, ValidationMode::normalized}) {
        auto v = validate(*measure, m);
        viols[mode_name(m)] = v;
        Json list = Json::array();
        for (const auto& x : v) list.push_back(x.detail);
        verdicts[mode_name(m)] = Json{{"valid", v.empty()}, {"violations", list}};
    }
    const auto& selected = viols[mode_str];
    std::ostringstream t;
    t << "measure cells=";
    {
        auto ones = measure->one_cells();
        for (size_t i = 0; i < ones.size(); ++i) t << (i ? "," : "") << comps_str(cx.cell(ones[i]).comps);
    }
    t << "\nverdicts:\n";
    for (const auto& [name, v] : viols) {
        t << "  " << name << ": " << (v.empty() ? "valid" : "INVALID") << "\n";
        for (const auto& x : v) t << "      " << x.detail << "\n";
    }
    if (!selected.empty()) {
        std::cout << t.str();
        std::cerr << "error: measure is invalid in mode " << mode_str << "\n";
        return 1;
    }

    SupportFamily fam = u_supports(*measure);
    Json payload;
    payload["verdicts"] = verdicts;
    payload["geometric"] = is_geometric(*measure);
    payload["open"] = fam.upward_closed;
    payload["supports"] = fam.supports;
    Json closed = Json::array();
    std::map<int, std::vector<Support>> fibers;
    for (const Support& s : fam.supports) {
        ClosedOrbitCell cc = closed_orbit_cell(*measure, s);
        Json e;
        e["support"] = s;
        e["unique"] = cc.unique;
        if (cc.cell) {
            e["cell"] = cx.cell(*cc.cell).comps;
            fibers[*cc.cell].push_back(s);
        }
        closed.push_back(e);
    }
    payload["closed_orbits"] = closed;
    Json fy = Json::array();
    for (const auto& [cell, sups] : fibers)
        fy.push_back(Json{{"cell", cx.cell(cell).comps}, {"supports", sups}});
    payload["fibers"] = fy;
    {
        Json mass = Json::array();
        std::vector<Int> cm = closed_mass_report(*measure);
        for (int c = 0; c < cx.cell_count(); ++c)
            mass.push_back(Json{{"cell", cx.cell(c).comps}, {"mass", static_cast<long long>(cm[c])}});
        payload["closed_mass"] = mass;
    }

    t << "geometric: " << (is_geometric(*measure) ? "yes" : "no") << "\n";
    t << "U_(m) supports (" << fam.supports.size() << ", " << (fam.upward_closed ? "open" : "NOT open")
      << "):\n";
    for (const Support& s : fam.supports) {
        ClosedOrbitCell cc = closed_orbit_cell(*measure, s);
        t << "  " << comps_str(s) << " -> closed orbit cell ";
        if (cc.cell) t << comps_str(cx.cell(*cc.cell).comps);
        else t << (cc.unique ? "none" : "NOT UNIQUE");
        t << "\n";
    }
    t << "fibers:\n";
    for (const auto& [cell, sups] : fibers) {
        t << "  " << comps_str(cx.cell(cell).comps) << " <- ";
        for (size_t i = 0; i < sups.size(); ++i) t << (i ? "," : "") << comps_str(sups[i]);
        t << "\n";
    }
    emit(report_envelope("classify", ctx.file, payload), t.str(), opt);
    return 0;
}

int cmd_git(const std::string& path, const Options& opt, const std::string& chi_arg) {
    Ctx ctx = load(path, opt);
    const MomentComplex& cx = ctx.cx;
    VecQ chi = parse_rational_vector(chi_arg);
    MomentMeasure m = git_measure(cx, chi); // throws ValidationError on walls
    Json payload;
    Json cells = Json::array();
    for (int id : m.one_cells()) cells.push_back(cx.cell(id).comps);
    payload["chi"] = [&] {
        Json v = Json::array();
        for (const Rat& x : chi) v.push_back(rational_str(x));
        return v;
    }();
    payload["cells"] = cells;
    payload["valid"] = true;
    payload["geometric"] = is_geometric(m);
    std::optional<int> id_in_enum;
    try {
        std::vector<MomentMeasure> ms = enumerate_measures(cx, ValidationMode::normalized, false);
        for (size_t i = 0; i < ms.size(); ++i)
            if (ms[i].values() == m.values()) id_in_enum = static_cast<int>(i);
    } catch (const ResourceError&) {
    }
    if (id_in_enum) payload["measure_id"] = *id_in_enum;

    std::ostringstream t;
    t << "chamber measure at chi=(";
    for (size_t i = 0; i < chi.size(); ++i) t << (i ? "," : "") << rational_str(chi[i]);
    t << "): cells=";
    auto ones = m.one_cells();
    for (size_t i = 0; i < ones.size(); ++i) t << (i ? "," : "") << comps_str(cx.cell(ones[i]).comps);
    t << "\nvalid (normalized), geometric";
    if (id_in_enum) t << ", enumeration id " << *id_in_enum;
    t << "\n";
    emit(report_envelope("git", ctx.file, payload), t.str(), opt);
    return 0;
}

int cmd_class(const std::string& path, const Options& opt, const std::string& cell_arg,
              const std::string& support_arg, const std::string& cone_arg, const std::string& phi_arg) {
    Ctx ctx = load(path, opt);
    const MomentComplex& cx = ctx.cx;
    const int rank = cx.config().rank();
    Json payload;
    std::ostringstream t;
    int selectors = (!cell_arg.empty()) + (!support_arg.empty()) + (!cone_arg.empty());
    if (selectors != 1) throw InputError("pick exactly one of --cell, --support, --cone");

    auto print_fingerprint = [&](const Fingerprint& fp) {
        Json entries = Json::array();
        t << "fingerprint (one entry per component):\n";
        for (int i = 0; i < fp.components(); ++i) {
            entries.push_back(Json{{"component", i}, {"class", fp.at(i).str()}});
            t << "  [" << i << "] " << fp.at(i).str() << "\n";
        }
        payload["fingerprint"] = entries;
    };

    if (!cell_arg.empty()) {
        std::vector<int> comps = parse_int_list(cell_arg);
        std::sort(comps.begin(), comps.end());
        auto id = cx.cell_id(comps);
        if (!id) throw InputError("selector " + comps_str(comps) + " is not a cell");
        payload["cell"] = cx.cell(*id).comps;
        print_fingerprint(cell_fingerprint(cx, *id));
    } else if (!support_arg.empty()) {
        Support s = parse_int_list(support_arg);
        payload["support"] = s;
        print_fingerprint(support_class(cx, s));
    } else {
        if (phi_arg.empty()) throw InputError("--cone requires --phi");
        PhiList phi;
        {
            std::istringstream is(phi_arg);
            std::string item;
            while (std::getline(is, item, ';')) {
                if (item.empty()) continue;
                auto colon = item.rfind(':');
                Int mult = 1;
                std::string vec = item;
                if (colon != std::string::npos) {
                    mult = Int(item.substr(colon + 1));
                    vec = item.substr(0, colon);
                }
                phi.push_back({parse_character(vec, rank), mult});
            }
        }
        std::vector<Character> rays;
        {
            std::istringstream is(cone_arg);
            std::string item;
            while (std::getline(is, item, ';'))
                if (!item.empty()) rays.push_back(parse_character(item, rank));
        }
        SymPolynomial cls = cone_class(rays, phi);
        payload["class"] = cls.str();
        t << "cone class: " << cls.str() << "\n";
    }
    emit(report_envelope("class", ctx.file, payload), t.str(), opt);
    return 0;
}

int cmd_verify(const std::string& path, const Options& opt, int samples) {
    Ctx ctx = load(path, opt);
    std::vector<PropertyResult> results = verify_config(ctx.cx, samples);
    Json payload = Json::array();
    std::ostringstream t;
    bool failed = false;
    for (const PropertyResult& r : results) {
        payload.push_back(Json{{"name", r.name}, {"status", r.status}, {"detail", r.detail}});
        t << (r.status == "pass" ? "PASS" : r.status == "skip" ? "SKIP" : "FAIL") << "  " << r.name
          << (r.detail.empty() ? "" : "  (" + r.detail + ")") << "\n";
        failed = failed || r.failed();
    }
    Json envelope = report_envelope("verify", ctx.file, payload);
    envelope["status"] = failed ? 1 : 0;
    emit(envelope, t.str(), opt);
    return failed ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact moment complexes, moment measures and equivariant cone classes for linear torus actions"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "output format: table or machine")
        ->check(CLI::IsMember({"table", "machine"}));
    int limit_cells = -1, limit_points = -1;
    app.add_option("--limit-cells", limit_cells, "measure enumeration cell limit");
    app.add_option("--limit-points", limit_points, "subdivision enumeration point limit");

    std::string cfg_complex, cfg_measures, cfg_classify, cfg_git, cfg_class, cfg_verify;
    std::string mode = "normalized";
    bool geometric_only = false;
    int measure_id = -1;
    std::string cells_arg, chi_arg, cell_arg, support_arg, cone_arg, phi_arg;
    int samples = 60;

    // Global flags may follow the subcommand.
    app.fallthrough();
    CLI::App* c1 = app.add_subcommand("complex", "components, cells, faces and subdivisions");
    c1->fallthrough();
    c1->add_option("config", cfg_complex)->required();
    CLI::App* c2 = app.add_subcommand("measures", "enumerate valid moment measures");
    c2->fallthrough();
    c2->add_option("config", cfg_measures)->required();
    c2->add_option("--mode", mode, "literal | additive | normalized");
    c2->add_flag("--geometric", geometric_only, "geometric measures only");
    CLI::App* c3 = app.add_subcommand("classify", "validate a measure and describe U_(m)");
    c3->fallthrough();
    c3->add_option("config", cfg_classify)->required();
    c3->add_option("--measure-id", measure_id, "id from the enumeration");
    c3->add_option("--cells", cells_arg, "value-1 cells, e.g. \"1;0,2\"");
    c3->add_option("--mode", mode, "literal | additive | normalized");
    CLI::App* c4 = app.add_subcommand("git", "chamber measure of a generic rational character");
    c4->fallthrough();
    c4->add_option("config", cfg_git)->required();
    c4->add_option("--chi", chi_arg, "rational vector, e.g. \"1/2\" or \"1/3,1/2\"")->required();
    CLI::App* c5 = app.add_subcommand("class", "equivariant cycle classes");
    c5->fallthrough();
    c5->add_option("config", cfg_class)->required();
    c5->add_option("--cell", cell_arg, "cell components, e.g. \"0,2\"");
    c5->add_option("--support", support_arg, "support components");
    c5->add_option("--cone", cone_arg, "cone rays, e.g. \"1,0;1,1\"");
    c5->add_option("--phi", phi_arg, "weights with multiplicity, e.g. \"1,0:1;0,1:2\"");
    CLI::App* c6 = app.add_subcommand("verify", "run the bundled invariant suite");
    c6->fallthrough();
    c6->add_option("config", cfg_verify)->required();
    c6->add_option("--samples", samples, "generic characters to sample");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (limit_cells >= 0) opt.limit_cells = limit_cells;
    if (limit_points >= 0) opt.limit_points = limit_points;

    try {
        if (c1->parsed()) return cmd_complex(cfg_complex, opt);
        if (c2->parsed()) return cmd_measures(cfg_measures, opt, mode, geometric_only);
        if (c3->parsed()) {
            if ((measure_id >= 0) == !cells_arg.empty())
                throw InputError("classify needs exactly one of --measure-id or --cells");
            std::optional<int> mid;
            if (measure_id >= 0) mid = measure_id;
            return cmd_classify(cfg_classify, opt, mid, cells_arg, mode);
        }
        if (c4->parsed()) return cmd_git(cfg_git, opt, chi_arg);
        if (c5->parsed()) return cmd_class(cfg_class, opt, cell_arg, support_arg, cone_arg, phi_arg);
        if (c6->parsed()) return cmd_verify(cfg_verify, opt, samples);
    } catch (const ResourceError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "validation failure: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
