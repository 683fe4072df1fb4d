#pragma once

#include "twisted/action.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace twisted {

enum class DesignId { D1, D2, D3, Unital, SuzukiMain };
enum class Mode { Full, Stabilizer };

const char* design_name(DesignId d);
DesignId parse_design(const std::string& s);
const char* mode_name(Mode m);
Mode parse_mode(const std::string& s);
Family design_family(DesignId d);

using Block = std::vector<point_t>;

struct BlockHash {
    std::size_t operator()(const Block& b) const;
};

struct DesignParams {
    std::uint64_t v = 0, b = 0, r = 0, k = 0, lambda = 0;
    bool operator==(const DesignParams& o) const = default;
    std::string str() const;
};

// Either a full design or, in stabilizer mode, the blocks through point 0.
struct Design {
    Family family = Family::Ree;
    unsigned q = 0;
    DesignId id = DesignId::D1;
    Mode mode = Mode::Full;
    DesignParams header; // as declared; in stabilizer mode b counts listed blocks
    std::vector<Block> blocks;

    std::size_t v() const { return header.v; }
};

struct SubgroupGens {
    std::string label;
    std::vector<Perm> gens;
};

DesignParams expected_params(DesignId d, unsigned q);
std::uint64_t expected_block_stabilizer_order(DesignId d, unsigned q);

point_t k_fixed_second_point(const Action& a);

SubgroupGens subgroup_gens(const Action& a, DesignId d); // d1, d2, d3, suzuki_main
Block subgroup_orbit_block(const Action& a, const SubgroupGens& h, point_t seed);

Block block_image(const Perm& g, const Block& b);

// first involution found as a power of a random even-order element
Perm find_involution(const Action& a, std::uint64_t seed);
Block involution_block(const Action& a, std::uint64_t seed);
// centralizer elements of j from random elements (Bray), together with j itself
SubgroupGens involution_centralizer(const Action& a, const Perm& j, std::uint64_t seed, unsigned count = 12);

// move a block onto one containing point 0 using the transversal
Block through_seed(const Action& a, const Block& b);

std::vector<Block> block_orbit(const std::vector<Perm>& gens, const Block& seed, std::uint64_t cap_indices);
std::vector<Block> block_orbit(const Action& a, const Block& seed, Mode mode, std::uint64_t cap_indices);

struct ConstructOptions {
    std::uint64_t seed = 1;
    std::uint64_t cap_indices = std::uint64_t(1) << 27; // total stored block entries
};

struct Construction {
    Design design;
    DesignParams expected;
    SubgroupGens h;
    Block seed_block;
    std::optional<Perm> involution;
};

// seed block, its subgroup H and expected parameters, without the block orbit
Construction prepare(const Action& a, DesignId d, std::uint64_t seed = 1);
Construction construct(const Action& a, DesignId d, Mode mode, const ConstructOptions& opt = {});

class format_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void export_design(const Design& d, std::ostream& os);
void export_design(const Design& d, const std::string& path);
Design import_design(std::istream& is);
Design import_design(const std::string& path);

}
