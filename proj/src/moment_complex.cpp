#include "momc/moment_complex.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace momc {

WeightConfiguration::WeightConfiguration(int rank, std::vector<WeightComponent> components)
    : rank_(rank), comps_(std::move(components)) {
    if (rank_ < 1) throw InputError("configuration rank must be at least 1");
    if (comps_.empty()) throw InputError("configuration needs at least one weight");
    for (const WeightComponent& c : comps_) {
        if (c.chi.rank() != rank_)
            throw InputError("weight " + c.chi.str() + " does not have rank " + std::to_string(rank_));
        if (c.mult < 1) throw InputError("weight " + c.chi.str() + " has non-positive multiplicity");
    }
    std::sort(comps_.begin(), comps_.end(),
              [](const WeightComponent& a, const WeightComponent& b) { return a.chi < b.chi; });
    for (size_t i = 1; i < comps_.size(); ++i)
        if (comps_[i].chi == comps_[i - 1].chi)
            throw InputError("duplicate character " + comps_[i].chi.str() +
                             "; merge the multiplicities into a single entry");
    dim_ = 0;
    for (const WeightComponent& c : comps_) dim_ += c.mult;
}

std::vector<std::pair<int, Character>> fixed_components(const WeightConfiguration& cfg) {
    std::vector<std::pair<int, Character>> out;
    for (int i = 0; i < cfg.component_count(); ++i) out.emplace_back(i, cfg.weight(i));
    return out;
}

namespace {

std::string comps_str(const std::vector<int>& comps) {
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < comps.size(); ++i) {
        if (i) os << ',';
        os << comps[i];
    }
    os << '}';
    return os.str();
}

// Canonical cell order: by size, then lexicographically.
bool cell_less(const std::vector<int>& a, const std::vector<int>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
}

} // namespace

std::vector<Character> MomentComplex::weights_of(const std::vector<int>& comps) const {
    std::vector<Character> out;
    for (int i : comps) {
        if (i < 0 || i >= cfg_.component_count())
            throw InputError("component index " + std::to_string(i) + " out of range");
        out.push_back(cfg_.weight(i));
    }
    return out;
}

MomentComplex MomentComplex::build(WeightConfiguration cfg, Limits limits) {
    const int n = cfg.component_count();
    if (n > limits.max_components)
        throw ResourceError("configuration has " + std::to_string(n) +
                            " components; limit is " + std::to_string(limits.max_components));
    if (n > 20) throw ResourceError("component enumeration is capped at 20");
    MomentComplex cx(std::move(cfg), limits);

    std::vector<std::vector<int>> cell_sets;
    std::map<Support, std::vector<int>> support_vertexset;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> subset;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) subset.push_back(i);
        std::vector<int> verts = vertex_set(cx.weights_of(subset));
        std::vector<int> cell;
        for (int v : verts) cell.push_back(subset[v]);
        if (cell == subset) cell_sets.push_back(subset);
        support_vertexset[subset] = std::move(cell);
    }
    std::sort(cell_sets.begin(), cell_sets.end(), cell_less);
    for (const auto& c : cell_sets) {
        cx.id_by_comps_[c] = static_cast<int>(cx.cells_.size());
        cx.cells_.push_back(Cell{c, 0});
    }
    for (const auto& [support, verts] : support_vertexset)
        cx.support_cell_[support] = cx.id_by_comps_.at(verts);
    cx.finalize();
    return cx;
}

MomentComplex MomentComplex::from_cells(WeightConfiguration cfg, std::vector<std::vector<int>> cells,
                                        Limits limits) {
    const int n = cfg.component_count();
    if (n > limits.max_components)
        throw ResourceError("configuration has " + std::to_string(n) +
                            " components; limit is " + std::to_string(limits.max_components));
    MomentComplex cx(std::move(cfg), limits);
    cx.abstract_ = true;

    std::set<std::vector<int>> unique;
    for (auto c : cells) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        if (c.empty()) throw InputError("abstract cell list contains an empty cell");
        std::vector<int> verts = vertex_set(cx.weights_of(c));
        if (static_cast<int>(verts.size()) != static_cast<int>(c.size()))
            throw InputError("abstract cell " + comps_str(c) + " is not in convex position");
        unique.insert(std::move(c));
    }
    if (unique.empty()) throw InputError("abstract cell list is empty");
    std::vector<std::vector<int>> cell_sets(unique.begin(), unique.end());
    std::sort(cell_sets.begin(), cell_sets.end(), cell_less);
    for (const auto& c : cell_sets) {
        cx.id_by_comps_[c] = static_cast<int>(cx.cells_.size());
        cx.cells_.push_back(Cell{c, 0});
    }
    cx.finalize();
    return cx;
}

void MomentComplex::finalize() {
    // Realizations and dimensions.
    for (Cell& c : cells_) {
        realizations_.push_back(Polytope::from_characters(weights_of(c.comps)));
        c.dim = realizations_.back().dim();
    }

    // Face relation: vertex sets of polytope faces. For a convex-position
    // cell every face's generator set is its vertex set.
    for (int id = 0; id < cell_count(); ++id) {
        const Cell& c = cells_[id];
        std::set<int> face_ids;
        for (const auto& f : realizations_[id].faces()) {
            std::vector<int> face_comps;
            for (int local : f) face_comps.push_back(c.comps[local]);
            auto it = id_by_comps_.find(face_comps);
            if (it == id_by_comps_.end()) {
                if (abstract_)
                    throw InputError("abstract complex is not closed under faces: cell " +
                                     comps_str(c.comps) + " is missing face " + comps_str(face_comps));
                throw std::logic_error("face of a cell is not a cell");
            }
            face_ids.insert(it->second);
        }
        faces_.emplace_back(face_ids.begin(), face_ids.end());
    }

    // Generic cell.
    if (!abstract_) {
        std::vector<int> full(cfg_.component_count());
        for (int i = 0; i < cfg_.component_count(); ++i) full[i] = i;
        generic_ = cell_of_support(full);
    } else {
        int top = -1;
        for (int id = 0; id < cell_count(); ++id)
            if (top < 0 || cells_[id].dim > cells_[top].dim) top = id;
        for (int id = 0; id < cell_count(); ++id)
            if (id != top && cells_[id].dim == cells_[top].dim)
                throw InputError("abstract complex has no unique cell of maximal dimension");
        generic_ = top;
    }

    // Subdivision catalogue. The parent point set of a cell is every
    // configuration weight inside its polytope, so the point limit counts
    // what the enumeration actually searches over.
    for (int id = 0; id < cell_count(); ++id) {
        const Polytope& parent = realizations_[id];
        std::vector<Polytope> allowed;
        std::vector<int> allowed_ids;
        for (int other = 0; other < cell_count(); ++other) {
            if (cells_[other].dim != cells_[id].dim) continue;
            bool inside = true;
            for (const VecQ& g : realizations_[other].generators())
                if (!parent.contains(g)) {
                    inside = false;
                    break;
                }
            if (!inside) continue;
            allowed.push_back(realizations_[other]);
            allowed_ids.push_back(other);
        }
        std::vector<Character> region;
        for (int i = 0; i < cfg_.component_count(); ++i)
            if (parent.contains(to_rat(cfg_.weight(i).coords))) region.push_back(cfg_.weight(i));
        std::vector<Subdivision> raw =
            enumerate_subdivisions(region, allowed, limits_.max_subdivision_points);
        std::vector<CellSubdivision> out;
        for (const Subdivision& s : raw) {
            CellSubdivision cs;
            for (const Polytope& piece : s.maximal_pieces) {
                int found = -1;
                for (size_t a = 0; a < allowed.size(); ++a)
                    if (allowed[a].same_vertex_set(piece)) {
                        found = allowed_ids[a];
                        break;
                    }
                if (found < 0) throw std::logic_error("subdivision piece is not a cell");
                cs.maximal.push_back(found);
            }
            for (const Polytope& face : s.internal_faces) {
                std::vector<int> comps = vertex_comps(face);
                auto it = id_by_comps_.find(comps);
                if (it == id_by_comps_.end()) {
                    if (abstract_)
                        throw InputError("abstract complex lacks internal face cell " + comps_str(comps));
                    throw std::logic_error("internal face is not a cell");
                }
                cs.internal.push_back(it->second);
            }
            std::sort(cs.maximal.begin(), cs.maximal.end());
            std::sort(cs.internal.begin(), cs.internal.end());
            out.push_back(std::move(cs));
        }
        std::sort(out.begin(), out.end(), [](const CellSubdivision& a, const CellSubdivision& b) {
            if (a.maximal != b.maximal) return a.maximal < b.maximal;
            return a.internal < b.internal;
        });
        subs_.push_back(std::move(out));
    }
}

std::vector<int> MomentComplex::vertex_comps(const Polytope& p) const {
    std::vector<int> comps;
    for (const VecQ& v : p.vertex_points()) {
        int found = -1;
        for (int i = 0; i < cfg_.component_count(); ++i)
            if (to_rat(cfg_.weight(i).coords) == v) {
                found = i;
                break;
            }
        if (found < 0) throw std::logic_error("vertex is not a configuration weight");
        comps.push_back(found);
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

std::optional<int> MomentComplex::cell_id(const std::vector<int>& comps) const {
    std::vector<int> sorted = comps;
    std::sort(sorted.begin(), sorted.end());
    auto it = id_by_comps_.find(sorted);
    if (it == id_by_comps_.end()) return std::nullopt;
    return it->second;
}

bool MomentComplex::is_face(int sub, int super) const {
    const auto& f = faces_[super];
    return std::binary_search(f.begin(), f.end(), sub);
}

int MomentComplex::cell_of_support(const Support& s) const {
    if (s.empty()) throw InputError("empty support");
    Support sorted = s;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    auto it = support_cell_.find(sorted);
    if (it != support_cell_.end()) return it->second;
    std::vector<int> verts = vertex_set(weights_of(sorted));
    std::vector<int> cell;
    for (int v : verts) cell.push_back(sorted[v]);
    auto found = id_by_comps_.find(cell);
    if (found == id_by_comps_.end())
        throw InputError("support " + comps_str(sorted) + " has vertex set " + comps_str(cell) +
                         " which is not a cell of this complex");
    return found->second;
}

std::vector<int> MomentComplex::orbit_closure_cells(const Support& s) const {
    return faces_of(cell_of_support(s));
}

int MomentComplex::orbit_dimension(const Support& s) const {
    return cells_[cell_of_support(s)].dim;
}

std::vector<Support> MomentComplex::all_supports() const {
    const int n = cfg_.component_count();
    if (n > 20) throw ResourceError("support enumeration is capped at 20 components");
    std::vector<Support> out;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        Support s;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(i);
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(), cell_less);
    return out;
}

} // namespace momc
