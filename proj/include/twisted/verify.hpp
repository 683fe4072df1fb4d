#pragma once

#include "twisted/designs.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace twisted {

class verify_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParamsResult {
    DesignParams params;
    bool lambda_exhaustive = false; // false: lambda left at 0, not attempted (cap)
};

// Full designs only. Throws verify_error on non-uniform k, repeated blocks or non-constant r.
ParamsResult compute_params(const Design& d, std::uint64_t pair_cap = std::uint64_t(1) << 26, unsigned threads = 1);

struct PairResult {
    bool constant = false;
    std::uint64_t lambda = 0;
    std::optional<std::pair<point_t, point_t>> witness; // a pair whose count differs from the first pair's
    std::uint64_t witness_count = 0;
};

PairResult verify_pairs_exhaustive(const Design& d, unsigned threads = 1);

// Exact lambda check through one point, valid when the group is 2-transitive and
// the slice is one orbit of the point stabilizer.
struct SliceResult {
    Report report;
    std::optional<DesignParams> derived; // set when every check passed
};

SliceResult verify_via_point_stabilizer(const Action& a, const std::vector<Block>& slice, const DesignParams& expected,
                                        unsigned threads = 1);

Report verify_flag_transitive(const Action& a, const Design& d, const SubgroupGens& h, const Block& seed,
                              const DesignParams& params);

bool verify_rlambda_coprime(const DesignParams& p);

Report param_identities(const DesignParams& p);

std::uint64_t twisted_group_order(Family fam, unsigned q);

struct BlockStabilizer {
    Report report;
    std::uint64_t tb = 0;         // |T| / b
    std::uint64_t on_block = 0;   // order of H restricted to the block
};

BlockStabilizer block_stabilizer_order(const Action& a, DesignId id, const Block& seed, const SubgroupGens& h,
                                       const DesignParams& params);

struct Distinguish {
    unsigned h1_orbits = 0, h2_orbits = 0;
    std::vector<std::size_t> h1_sizes, h2_sizes;
    std::size_t h1_order = 0, h2_order = 0;
};

// Orbits of H acting by conjugation on the non-identity elements of its normal
// Sylow 3-subgroup, for H1 = Q1:K and H2 = Q2:K. A nonzero seed conjugates both
// subgroups by independent random group elements first.
Distinguish distinguish_d1_d2(const Action& a, std::uint64_t conjugate_seed = 0);

// Whole verification pipeline for a constructed or imported design.
Report verify_design(const Action& a, const Design& d, const Construction& prep, unsigned threads = 1);

}
