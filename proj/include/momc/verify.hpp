#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "momc/equivariant.hpp"
#include "momc/measures.hpp"

namespace momc {

struct PropertyResult {
    std::string name;
    std::string status; // "pass" | "fail" | "skip"
    std::string detail;

    bool failed() const { return status == "fail"; }
};

// The bundled invariant suite over one configuration: complete-fan
// vanishing, fingerprint additivity over the whole subdivision catalogue,
// class-determined-by-cell over all supports, chamber-oracle soundness over
// sampled generic characters, openness of every enumerated measure, and
// distinctness of their support families.
std::vector<PropertyResult> verify_config(const MomentComplex& cx, int chamber_samples = 60,
                                          std::uint64_t seed = 0x5eed0517ULL);

// Complete fans derived from a configuration: the fan cut out by all
// pairwise weight-difference directions (ranks 1 and 2 only).
std::vector<Cone> difference_fan(const WeightConfiguration& cfg);
PhiList difference_weights(const WeightConfiguration& cfg);

// Deterministic generic rational characters inside the generic polytope;
// returns up to `count` samples (fewer if rejection keeps failing).
std::vector<VecQ> sample_generic_characters(const MomentComplex& cx, int count, std::uint64_t seed);

} // namespace momc
