#include "twisted/designs.hpp"

#include <boost/functional/hash.hpp>

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace twisted {

const char* design_name(DesignId d)
{
    switch (d) {
    case DesignId::D1: return "d1";
    case DesignId::D2: return "d2";
    case DesignId::D3: return "d3";
    case DesignId::Unital: return "unital";
    case DesignId::SuzukiMain: return "suzuki_main";
    }
    return "?";
}

DesignId parse_design(const std::string& s)
{
    for (auto d : {DesignId::D1, DesignId::D2, DesignId::D3, DesignId::Unital, DesignId::SuzukiMain})
        if (s == design_name(d)) return d;
    throw std::invalid_argument("unknown design '" + s + "'");
}

const char* mode_name(Mode m) { return m == Mode::Full ? "full" : "stabilizer"; }

Mode parse_mode(const std::string& s)
{
    if (s == "full") return Mode::Full;
    if (s == "stabilizer") return Mode::Stabilizer;
    throw std::invalid_argument("unknown mode '" + s + "'");
}

Family design_family(DesignId d) { return d == DesignId::SuzukiMain ? Family::Suzuki : Family::Ree; }

std::size_t BlockHash::operator()(const Block& b) const { return boost::hash_range(b.begin(), b.end()); }

std::string DesignParams::str() const
{
    return "(" + std::to_string(v) + ", " + std::to_string(b) + ", " + std::to_string(r) + ", " + std::to_string(k) + ", " +
           std::to_string(lambda) + ")";
}

DesignParams expected_params(DesignId d, unsigned qq)
{
    std::uint64_t q = qq;
    switch (d) {
    case DesignId::D1:
    case DesignId::D2: return {q * q * q + 1, q * q * (q * q * q + 1), q * q * q, q, q - 1};
    case DesignId::D3: return {q * q * q + 1, q * (q * q * q + 1), q * q * q, q * q, q * q - 1};
    case DesignId::Unital: return {q * q * q + 1, q * q * (q * q - q + 1), q * q, q + 1, 1};
    case DesignId::SuzukiMain: return {q * q + 1, q * (q * q + 1), q * q, q, q - 1};
    }
    throw std::logic_error("bad design id");
}

std::uint64_t expected_block_stabilizer_order(DesignId d, unsigned qq)
{
    std::uint64_t q = qq;
    switch (d) {
    case DesignId::D1:
    case DesignId::D2:
    case DesignId::SuzukiMain: return q * (q - 1);
    case DesignId::D3: return q * q * (q - 1);
    case DesignId::Unital: return q * (q * q - 1);
    }
    throw std::logic_error("bad design id");
}

point_t k_fixed_second_point(const Action& a)
{
    auto tor = a.torus_perms();
    std::vector<point_t> fixed;
    for (std::size_t x = 1; x < a.degree(); ++x) {
        bool all = true;
        for (const auto& t : tor) all = all && t(point_t(x)) == x;
        if (all) fixed.push_back(point_t(x));
    }
    if (fixed.size() != 1)
        throw std::runtime_error("torus fixes " + std::to_string(fixed.size()) + " points besides 0, expected exactly one");
    return fixed[0];
}

SubgroupGens subgroup_gens(const Action& a, DesignId d)
{
    if (design_family(d) != a.family()) throw std::invalid_argument("design does not belong to this group family");
    const FieldSpec& f = a.field();
    const MatrixModel& model = a.model();
    SubgroupGens h;
    std::vector<unsigned> coords; // which coordinates run over a basis
    switch (d) {
    case DesignId::D1:
        h.label = "Q1:K";
        coords = {2};
        break;
    case DesignId::D2:
        h.label = "Q2:K";
        coords = {1};
        break;
    case DesignId::D3:
        h.label = "Q':K";
        coords = {1, 2};
        break;
    case DesignId::SuzukiMain:
        h.label = "Z(Q):K";
        coords = {1};
        break;
    case DesignId::Unital: throw std::invalid_argument("the unital block stabilizer comes from an involution");
    }
    FieldElement zero(f, 0);
    unsigned basis = 1;
    for (unsigned i = 0; i < f.e(); ++i, basis *= f.p()) {
        FieldElement u(f, FieldSpec::elem(basis));
        for (unsigned c : coords) {
            Matrix m = a.family() == Family::Ree
                           ? model.map(ReeTriple{zero, c == 1 ? u : zero, c == 2 ? u : zero})
                           : model.map(SuzukiPair{zero, u});
            h.gens.push_back(a.perm_of(m));
        }
    }
    for (const auto& t : a.torus_perms()) h.gens.push_back(t);
    return h;
}

Block block_image(const Perm& g, const Block& b)
{
    Block r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = g(b[i]);
    std::sort(r.begin(), r.end());
    return r;
}

Block subgroup_orbit_block(const Action& a, const SubgroupGens& h, point_t seed) { return orbit(h.gens, seed, a.degree()); }

Perm find_involution(const Action& a, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    for (int tries = 0; tries < 1000; ++tries) {
        Perm g = random_element(a.perms(), rng);
        auto o = g.order();
        if (o % 2 == 0) return g.pow((long long)(o / 2));
    }
    throw std::runtime_error("no even-order element found");
}

Block involution_block(const Action& a, std::uint64_t seed)
{
    if (a.family() != Family::Ree) throw std::invalid_argument("involution blocks are defined for the Ree family only");
    auto fix = fixed_points(find_involution(a, seed));
    if (fix.size() != a.q() + 1)
        throw std::runtime_error("involution fixes " + std::to_string(fix.size()) + " points, expected " + std::to_string(a.q() + 1));
    return fix;
}

SubgroupGens involution_centralizer(const Action& a, const Perm& j, std::uint64_t seed, unsigned count)
{
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    SubgroupGens h{"C(j)", {j}};
    for (unsigned tries = 0; h.gens.size() < count + 1 && tries < 50 * count; ++tries) {
        Perm g = random_element(a.perms(), rng);
        Perm c = j * g.inverse() * j * g;
        auto o = c.order();
        Perm x = o % 2 == 0 ? c.pow((long long)(o / 2)) : g * c.pow((long long)((o - 1) / 2));
        if (x * j == j * x && !x.is_identity()) h.gens.push_back(x);
    }
    return h;
}

Block through_seed(const Action& a, const Block& b)
{
    if (b.empty()) throw std::invalid_argument("empty block");
    if (b.front() == 0) return b;
    return block_image(a.transversal_to(b.front()).inverse(), b);
}

std::vector<Block> block_orbit(const std::vector<Perm>& gens, const Block& seed, std::uint64_t cap_indices)
{
    std::unordered_set<Block, BlockHash> seen{seed};
    std::vector<Block> out{seed};
    for (std::size_t head = 0; head < out.size(); ++head)
        for (const auto& g : gens) {
            Block img = block_image(g, out[head]);
            if (seen.count(img)) continue;
            if ((out.size() + 1) * seed.size() > cap_indices)
                throw cap_exceeded("block orbit exceeds the cap of " + std::to_string(cap_indices) + " stored indices");
            seen.insert(img);
            out.push_back(std::move(img));
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Block> block_orbit(const Action& a, const Block& seed, Mode mode, std::uint64_t cap_indices)
{
    if (mode == Mode::Full) return block_orbit(a.perms(), seed, cap_indices);
    return block_orbit(a.stabilizer_perms(), through_seed(a, seed), cap_indices);
}

Construction prepare(const Action& a, DesignId d, std::uint64_t seed)
{
    if (design_family(d) != a.family())
        throw std::invalid_argument(std::string("design ") + design_name(d) + " does not belong to family " + family_name(a.family()));
    Construction c;
    c.expected = expected_params(d, a.q());
    if (d == DesignId::Unital) {
        Perm j = find_involution(a, seed);
        c.seed_block = fixed_points(j);
        if (c.seed_block.size() != a.q() + 1)
            throw std::runtime_error("involution fixes " + std::to_string(c.seed_block.size()) + " points, expected " +
                                     std::to_string(a.q() + 1));
        c.h = involution_centralizer(a, j, seed);
        c.involution = j;
    } else {
        c.h = subgroup_gens(a, d);
        c.seed_block = subgroup_orbit_block(a, c.h, k_fixed_second_point(a));
    }
    Design& des = c.design;
    des.family = a.family();
    des.q = a.q();
    des.id = d;
    des.header = c.expected;
    return c;
}

Construction construct(const Action& a, DesignId d, Mode mode, const ConstructOptions& opt)
{
    Construction c = prepare(a, d, opt.seed);
    c.design.mode = mode;
    c.design.blocks = block_orbit(a, c.seed_block, mode, opt.cap_indices);
    if (mode == Mode::Stabilizer) c.design.header.b = c.design.blocks.size();
    return c;
}

}
