#pragma once

#include "twisted/field.hpp"

#include <cstdint>
#include <vector>

namespace twisted {

enum class Family { Ree, Suzuki };

const char* family_name(Family f);
Family parse_family(const std::string& s);
unsigned family_char(Family f);

struct ReeTriple {
    FieldElement alpha, beta, gamma;
    bool operator==(const ReeTriple& o) const = default;
};

struct SuzukiPair {
    FieldElement a, b;
    bool operator==(const SuzukiPair& o) const = default;
};

ReeTriple ree_identity(const FieldSpec& f);
ReeTriple ree_mul(const ReeTriple& x, const ReeTriple& y);
ReeTriple ree_inv(const ReeTriple& x);
ReeTriple k_conj_ree(const ReeTriple& x, const FieldElement& k);

SuzukiPair suzuki_identity(const FieldSpec& f);
SuzukiPair suzuki_mul(const SuzukiPair& x, const SuzukiPair& y);
SuzukiPair suzuki_inv(const SuzukiPair& x);
SuzukiPair k_conj_suzuki(const SuzukiPair& x, const FieldElement& t);

// Integer coding of unipotent elements, lexicographic in the coordinates:
// Ree (a,b,c) -> (a*q + b)*q + c, Suzuki (a,b) -> a*q + b.
using ucode = std::uint32_t;

class UnipotentLaw {
public:
    UnipotentLaw(Family fam, const FieldSpec& f);

    Family family() const { return fam_; }
    const FieldSpec& field() const { return *f_; }
    ucode order() const { return order_; }

    ucode mul(ucode x, ucode y) const;
    ucode inv(ucode x) const;
    ucode conj_k(ucode x, FieldSpec::elem t) const;
    ucode commutator(ucode x, ucode y) const { return mul(mul(inv(x), inv(y)), mul(x, y)); }

    ReeTriple ree(ucode x) const;
    ucode code(const ReeTriple& t) const;
    SuzukiPair suzuki(ucode x) const;
    ucode code(const SuzukiPair& s) const;

    // each coordinate run over an additive basis of the field
    std::vector<ucode> generators() const;

private:
    Family fam_;
    const FieldSpec* f_;
    ucode order_;
};

enum class Subgroup { Q1, Q2, Qprime, ZQ, FullQ };

const char* subgroup_name(Subgroup s);

std::vector<ucode> members(const UnipotentLaw& law, Subgroup tag, unsigned cap = 1u << 20);

struct CenterDerived {
    std::vector<ucode> center;
    std::vector<ucode> derived;
};

CenterDerived compute_center_and_derived(const UnipotentLaw& law, unsigned cap = 1u << 20);

// orbits of the multiplicative group on tag \ {1}, each orbit sorted, orbits sorted by first element
std::vector<std::vector<ucode>> k_orbits(const UnipotentLaw& law, Subgroup tag);

// closure of a generating set under multiplication; sorted
std::vector<ucode> subgroup_closure(const UnipotentLaw& law, const std::vector<ucode>& gens);

}
