#pragma once

#include "twisted/verify.hpp"

#include <cstdint>

namespace twisted {

Report field_axioms(const FieldSpec& f, std::uint64_t seed = 7);

// multiplication law, inverses and the K-action, exhaustive when |Q|^2 is small
Report unipotent_oracles(Family fam, unsigned q, std::uint64_t seed = 7);

// centre, derived subgroup, cubes and K-orbits of the Ree unipotent group
Report ree_structure(unsigned q);

// matrix model gates and 2-transitivity for both families
Report cross_model_gate();

struct PipelineOptions {
    unsigned threads = 1;
    std::uint64_t seed = 1;
    std::uint64_t cap_indices = std::uint64_t(1) << 27;
};

struct PipelineResult {
    Report report;
    Construction construction;
};

// construct and verify; throws cap_exceeded and validation_failure
PipelineResult run_pipeline(const Action& a, DesignId d, Mode mode, const PipelineOptions& opt = {});

Report sieve_replays();

Report distinguish_report(const Action& a, const std::vector<std::uint64_t>& conjugate_seeds);

}
