#include "twisted/unipotent.hpp"

#include <algorithm>
#include <stdexcept>

namespace twisted {

const char* family_name(Family f) { return f == Family::Ree ? "ree" : "suzuki"; }

Family parse_family(const std::string& s)
{
    if (s == "ree") return Family::Ree;
    if (s == "suzuki") return Family::Suzuki;
    throw std::invalid_argument("unknown family '" + s + "'");
}

unsigned family_char(Family f) { return f == Family::Ree ? 3 : 2; }

namespace {

void need_char(const FieldSpec& f, unsigned p)
{
    if (f.p() != p) throw field_error("field characteristic does not match the group family");
}

}

ReeTriple ree_identity(const FieldSpec& f)
{
    need_char(f, 3);
    FieldElement z(f, 0);
    return {z, z, z};
}

// (a1+a2, b1+b2 - a1 a2^m, c1+c2 - a1^2 a2^m - a2 b1 + a1 a2^(m+1))
ReeTriple ree_mul(const ReeTriple& x, const ReeTriple& y)
{
    const FieldSpec& f = x.alpha.spec();
    need_char(f, 3);
    auto a2m = twist(y.alpha);
    auto a = x.alpha + y.alpha;
    auto b = x.beta + y.beta - x.alpha * a2m;
    auto c = x.gamma + y.gamma - x.alpha * x.alpha * a2m - y.alpha * x.beta + x.alpha * a2m * y.alpha;
    return {a, b, c};
}

ReeTriple ree_inv(const ReeTriple& x)
{
    need_char(x.alpha.spec(), 3);
    auto a = x.alpha;
    auto am = twist(a);
    return {-a, -x.beta - a * am, -x.gamma + am * a * a - a * x.beta};
}

ReeTriple k_conj_ree(const ReeTriple& x, const FieldElement& k)
{
    if (k.is_zero()) throw field_error("torus parameter must be nonzero");
    auto km = twist(k);
    return {k * x.alpha, k * km * x.beta, k * k * km * x.gamma};
}

SuzukiPair suzuki_identity(const FieldSpec& f)
{
    need_char(f, 2);
    FieldElement z(f, 0);
    return {z, z};
}

SuzukiPair suzuki_mul(const SuzukiPair& x, const SuzukiPair& y)
{
    need_char(x.a.spec(), 2);
    return {x.a + y.a, x.b + y.b + twist(x.a) * y.a};
}

SuzukiPair suzuki_inv(const SuzukiPair& x)
{
    need_char(x.a.spec(), 2);
    // (a,b)(a,c) = (0, b + c + a^(m+1)) so c = b + a^(m+1)
    return {x.a, x.b + twist(x.a) * x.a};
}

SuzukiPair k_conj_suzuki(const SuzukiPair& x, const FieldElement& t)
{
    if (t.is_zero()) throw field_error("torus parameter must be nonzero");
    return {t * x.a, t * twist(t) * x.b};
}

UnipotentLaw::UnipotentLaw(Family fam, const FieldSpec& f) : fam_(fam), f_(&f)
{
    need_char(f, family_char(fam));
    order_ = fam == Family::Ree ? f.q() * f.q() * f.q() : f.q() * f.q();
}

ReeTriple UnipotentLaw::ree(ucode x) const
{
    unsigned q = f_->q();
    return {FieldElement(*f_, FieldSpec::elem(x / (q * q))), FieldElement(*f_, FieldSpec::elem(x / q % q)),
            FieldElement(*f_, FieldSpec::elem(x % q))};
}

ucode UnipotentLaw::code(const ReeTriple& t) const
{
    ucode q = f_->q();
    return (ucode(t.alpha.code()) * q + t.beta.code()) * q + t.gamma.code();
}

SuzukiPair UnipotentLaw::suzuki(ucode x) const
{
    unsigned q = f_->q();
    return {FieldElement(*f_, FieldSpec::elem(x / q)), FieldElement(*f_, FieldSpec::elem(x % q))};
}

ucode UnipotentLaw::code(const SuzukiPair& s) const { return ucode(s.a.code()) * f_->q() + s.b.code(); }

ucode UnipotentLaw::mul(ucode x, ucode y) const
{
    if (fam_ == Family::Ree) return code(ree_mul(ree(x), ree(y)));
    return code(suzuki_mul(suzuki(x), suzuki(y)));
}

ucode UnipotentLaw::inv(ucode x) const
{
    if (fam_ == Family::Ree) return code(ree_inv(ree(x)));
    return code(suzuki_inv(suzuki(x)));
}

ucode UnipotentLaw::conj_k(ucode x, FieldSpec::elem t) const
{
    FieldElement k(*f_, t);
    if (fam_ == Family::Ree) return code(k_conj_ree(ree(x), k));
    return code(k_conj_suzuki(suzuki(x), k));
}

std::vector<ucode> UnipotentLaw::generators() const
{
    std::vector<ucode> g;
    unsigned q = f_->q();
    unsigned coords = fam_ == Family::Ree ? 3 : 2;
    for (unsigned c = 0; c < coords; ++c) {
        ucode scale = 1;
        for (unsigned j = c + 1; j < coords; ++j) scale *= q;
        unsigned basis = 1;
        for (unsigned i = 0; i < f_->e(); ++i, basis *= f_->p()) g.push_back(basis * scale);
    }
    return g;
}

const char* subgroup_name(Subgroup s)
{
    switch (s) {
    case Subgroup::Q1: return "Q1";
    case Subgroup::Q2: return "Q2";
    case Subgroup::Qprime: return "Qprime";
    case Subgroup::ZQ: return "ZQ";
    case Subgroup::FullQ: return "Q";
    }
    return "?";
}

std::vector<ucode> members(const UnipotentLaw& law, Subgroup tag, unsigned cap)
{
    unsigned q = law.field().q();
    std::vector<ucode> out;
    auto check = [&](std::size_t n) {
        if (n > cap) throw std::length_error("subgroup size exceeds cap");
    };
    if (law.family() == Family::Ree) {
        switch (tag) {
        case Subgroup::Q1:
        case Subgroup::ZQ:
            check(q);
            for (ucode c = 0; c < q; ++c) out.push_back(c);
            break;
        case Subgroup::Q2:
            check(q);
            for (ucode b = 0; b < q; ++b) out.push_back(b * q);
            break;
        case Subgroup::Qprime:
            check(std::size_t(q) * q);
            for (ucode x = 0; x < q * q; ++x) out.push_back(x);
            break;
        case Subgroup::FullQ:
            check(law.order());
            for (ucode x = 0; x < law.order(); ++x) out.push_back(x);
            break;
        }
    } else {
        switch (tag) {
        case Subgroup::ZQ:
            check(q);
            for (ucode b = 0; b < q; ++b) out.push_back(b);
            break;
        case Subgroup::FullQ:
            check(law.order());
            for (ucode x = 0; x < law.order(); ++x) out.push_back(x);
            break;
        default:
            throw std::invalid_argument(std::string("subgroup ") + subgroup_name(tag) + " is defined for the Ree family only");
        }
    }
    return out;
}

std::vector<ucode> subgroup_closure(const UnipotentLaw& law, const std::vector<ucode>& gens)
{
    std::vector<char> seen(law.order(), 0);
    std::vector<ucode> out{0}, frontier{0};
    seen[0] = 1;
    while (!frontier.empty()) {
        std::vector<ucode> next;
        for (ucode x : frontier)
            for (ucode g : gens) {
                ucode y = law.mul(x, g);
                if (!seen[y]) {
                    seen[y] = 1;
                    out.push_back(y);
                    next.push_back(y);
                }
            }
        frontier.swap(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

CenterDerived compute_center_and_derived(const UnipotentLaw& law, unsigned cap)
{
    if (law.order() > cap) throw std::length_error("group order exceeds cap");
    auto gens = law.generators();
    CenterDerived r;
    for (ucode x = 0; x < law.order(); ++x) {
        bool central = true;
        for (ucode g : gens)
            if (law.mul(x, g) != law.mul(g, x)) { central = false; break; }
        if (central) r.center.push_back(x);
    }

    // normal closure of the generator commutators
    std::vector<ucode> seeds;
    for (ucode a : gens)
        for (ucode b : gens) seeds.push_back(law.commutator(a, b));
    for (;;) {
        auto sub = subgroup_closure(law, seeds);
        std::vector<char> in(law.order(), 0);
        for (ucode x : sub) in[x] = 1;
        bool grew = false;
        for (ucode s : std::vector<ucode>(seeds))
            for (ucode g : gens) {
                ucode c = law.mul(law.mul(law.inv(g), s), g);
                if (!in[c]) {
                    seeds.push_back(c);
                    grew = true;
                }
            }
        if (!grew) {
            r.derived = std::move(sub);
            break;
        }
    }
    return r;
}

std::vector<std::vector<ucode>> k_orbits(const UnipotentLaw& law, Subgroup tag)
{
    if (tag == Subgroup::Qprime || tag == Subgroup::FullQ)
        throw std::invalid_argument("k_orbits expects Q1, Q2 or ZQ");
    auto elems = members(law, tag);
    std::vector<char> done(law.order(), 0);
    std::vector<std::vector<ucode>> orbits;
    for (ucode x : elems) {
        if (x == 0 || done[x]) continue;
        std::vector<ucode> orb;
        for (unsigned t = 1; t < law.field().q(); ++t) {
            ucode y = law.conj_k(x, FieldSpec::elem(t));
            if (!done[y]) {
                done[y] = 1;
                orb.push_back(y);
            }
        }
        std::sort(orb.begin(), orb.end());
        orbits.push_back(std::move(orb));
    }
    return orbits;
}

}
