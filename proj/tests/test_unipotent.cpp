#include "doctest.h"

#include "twisted/selftest.hpp"
#include "twisted/unipotent.hpp"

#include <algorithm>
#include <random>

using namespace twisted;

namespace {

ReeTriple triple(const FieldSpec& f, unsigned a, unsigned b, unsigned c)
{
    return {FieldElement(f, FieldSpec::elem(a)), FieldElement(f, FieldSpec::elem(b)), FieldElement(f, FieldSpec::elem(c))};
}

SuzukiPair pair(const FieldSpec& f, unsigned a, unsigned b) { return {FieldElement(f, FieldSpec::elem(a)), FieldElement(f, FieldSpec::elem(b))}; }

std::vector<std::size_t> orbit_sizes(const std::vector<std::vector<ucode>>& o)
{
    std::vector<std::size_t> s;
    for (const auto& x : o) s.push_back(x.size());
    std::sort(s.begin(), s.end());
    return s;
}

}

TEST_SUITE("unipotent") {

TEST_CASE("ree product examples")
{
    const FieldSpec& f27 = field_for_q(27);
    for (unsigned b : {1u, 5u, 26u})
        for (unsigned c : {0u, 2u, 13u}) CHECK(ree_mul(triple(f27, 0, 0, c), triple(f27, 0, b, 0)) == triple(f27, 0, b, c));

    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        auto x = triple(f27, rng() % 27, rng() % 27, rng() % 27);
        CHECK(ree_mul(x, ree_identity(f27)) == x);
        CHECK(ree_mul(ree_identity(f27), x) == x);
    }
    const FieldSpec& f3 = field_for_q(3);
    CHECK(ree_mul(triple(f3, 1, 0, 0), triple(f3, 1, 0, 0)) == triple(f3, 2, 2, 0));
}

TEST_CASE("ree product with an explicit evaluation of the law")
{
    // beta = b1 + b2 - a1 a2^m, gamma = c1 + c2 - a1^2 a2^m - a2 b1 + a1 a2^(m+1)
    const FieldSpec& f = field_for_q(27);
    std::mt19937_64 rng(4);
    for (int i = 0; i < 500; ++i) {
        auto x = triple(f, rng() % 27, rng() % 27, rng() % 27);
        auto y = triple(f, rng() % 27, rng() % 27, rng() % 27);
        auto a1 = x.alpha, b1 = x.beta, c1 = x.gamma, a2 = y.alpha, b2 = y.beta, c2 = y.gamma;
        auto a2m = twist(a2);
        ReeTriple want{a1 + a2, b1 + b2 - a1 * a2m, c1 + c2 - a1 * a1 * a2m - a2 * b1 + a1 * a2m * a2};
        REQUIRE(ree_mul(x, y) == want);
    }
}

TEST_CASE("ree law is associative")
{
    const FieldSpec& f3 = field_for_q(3);
    UnipotentLaw l3(Family::Ree, f3);
    for (ucode x = 0; x < 27; ++x)
        for (ucode y = 0; y < 27; ++y)
            for (ucode z = 0; z < 27; ++z) REQUIRE(l3.mul(l3.mul(x, y), z) == l3.mul(x, l3.mul(y, z)));

    UnipotentLaw l27(Family::Ree, field_for_q(27));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<ucode> d(0, l27.order() - 1);
    for (int i = 0; i < 100000; ++i) {
        ucode x = d(rng), y = d(rng), z = d(rng);
        REQUIRE(l27.mul(l27.mul(x, y), z) == l27.mul(x, l27.mul(y, z)));
    }
}

TEST_CASE("ree inverse")
{
    const FieldSpec& f = field_for_q(27);
    CHECK(ree_inv(ree_identity(f)) == ree_identity(f));
    for (unsigned b : {1u, 7u})
        for (unsigned c : {0u, 4u}) {
            auto x = triple(f, 0, b, c);
            CHECK(ree_inv(x) == ReeTriple{x.alpha, -x.beta, -x.gamma});
        }
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        auto x = triple(f, rng() % 27, rng() % 27, rng() % 27);
        CHECK(ree_mul(x, ree_inv(x)) == ree_identity(f));
        CHECK(ree_mul(ree_inv(x), x) == ree_identity(f));
    }
}

TEST_CASE("ree K-action")
{
    const FieldSpec& f3 = field_for_q(3);
    FieldElement one(f3, 1), two(f3, 2);
    for (ucode c = 0; c < 27; ++c) {
        UnipotentLaw law(Family::Ree, f3);
        auto x = law.ree(c);
        CHECK(k_conj_ree(x, one) == x);
        // 2^(1+m) = 2^4 = 1 and 2^(2+m) = 2 over GF(3)
        CHECK(k_conj_ree(x, two) == ReeTriple{two * x.alpha, x.beta, two * x.gamma});
    }
    CHECK_THROWS(k_conj_ree(triple(f3, 1, 1, 1), FieldElement(f3, 0)));

    // automorphism: exhaustive at q = 3, random at q = 27
    UnipotentLaw l3(Family::Ree, f3);
    for (ucode x = 0; x < 27; ++x)
        for (ucode y = 0; y < 27; ++y) REQUIRE(l3.conj_k(l3.mul(x, y), 2) == l3.mul(l3.conj_k(x, 2), l3.conj_k(y, 2)));
    UnipotentLaw l27(Family::Ree, field_for_q(27));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10000; ++i) {
        ucode x = ucode(rng() % l27.order()), y = ucode(rng() % l27.order());
        auto t = FieldSpec::elem(1 + rng() % 26);
        REQUIRE(l27.conj_k(l27.mul(x, y), t) == l27.mul(l27.conj_k(x, t), l27.conj_k(y, t)));
    }
    // group action: (x^s)^t = x^(st)
    const FieldSpec& f27 = field_for_q(27);
    for (int i = 0; i < 1000; ++i) {
        ucode x = ucode(rng() % l27.order());
        auto s = FieldSpec::elem(1 + rng() % 26), t = FieldSpec::elem(1 + rng() % 26);
        REQUIRE(l27.conj_k(l27.conj_k(x, s), t) == l27.conj_k(x, f27.mul(s, t)));
    }
}

TEST_CASE("suzuki product and K-action")
{
    const FieldSpec& f = field_for_q(8);
    UnipotentLaw law(Family::Suzuki, f);
    CHECK(law.order() == 64);
    for (ucode x = 0; x < 64; ++x) {
        auto p = law.suzuki(x);
        CHECK(suzuki_mul(p, suzuki_identity(f)) == p);
        CHECK(suzuki_mul(p, suzuki_inv(p)) == suzuki_identity(f));
        CHECK(k_conj_suzuki(p, FieldElement(f, 1)) == p);
    }
    for (unsigned b1 = 0; b1 < 8; ++b1)
        for (unsigned b2 = 0; b2 < 8; ++b2) CHECK(suzuki_mul(pair(f, 0, b1), pair(f, 0, b2)) == pair(f, 0, f.add(b1, b2)));
    // (a1, b1)(a2, b2) = (a1 + a2, b1 + b2 + a1^theta a2)
    auto x = pair(f, 3, 5), y = pair(f, 6, 1);
    CHECK(suzuki_mul(x, y) == SuzukiPair{x.a + y.a, x.b + y.b + twist(x.a) * y.a});
    CHECK(subgroup_closure(law, law.generators()).size() == 64);

    for (ucode a = 0; a < 64; ++a)
        for (ucode b = 0; b < 64; ++b)
            for (FieldSpec::elem t = 1; t < 8; ++t) REQUIRE(law.conj_k(law.mul(a, b), t) == law.mul(law.conj_k(a, t), law.conj_k(b, t)));
    for (ucode a = 0; a < 64; ++a)
        for (ucode b = 0; b < 64; ++b)
            for (ucode c = 0; c < 64; ++c) REQUIRE(law.mul(law.mul(a, b), c) == law.mul(a, law.mul(b, c)));
    CHECK_THROWS(k_conj_suzuki(x, FieldElement(f, 0)));
}

TEST_CASE("code round trip is lexicographic")
{
    const FieldSpec& f = field_for_q(27);
    UnipotentLaw law(Family::Ree, f);
    CHECK(law.order() == 19683);
    CHECK(law.code(triple(f, 1, 2, 3)) == (1 * 27 + 2) * 27 + 3);
    for (ucode x = 0; x < law.order(); x += 97) CHECK(law.code(law.ree(x)) == x);
    UnipotentLaw s(Family::Suzuki, field_for_q(32));
    for (ucode x = 0; x < s.order(); x += 13) CHECK(s.code(s.suzuki(x)) == x);
}

TEST_CASE("members")
{
    UnipotentLaw l27(Family::Ree, field_for_q(27));
    CHECK(members(l27, Subgroup::Q1).size() == 27);
    CHECK(members(l27, Subgroup::Q2).size() == 27);
    CHECK(members(l27, Subgroup::Qprime).size() == 729);
    UnipotentLaw l3(Family::Ree, field_for_q(3));
    CHECK(members(l3, Subgroup::Q1) == std::vector<ucode>{0, 1, 2});
    for (ucode x : members(l27, Subgroup::Q2)) {
        auto t = l27.ree(x);
        CHECK(t.alpha.is_zero());
        CHECK(t.gamma.is_zero());
    }
    UnipotentLaw s8(Family::Suzuki, field_for_q(8));
    CHECK(members(s8, Subgroup::ZQ).size() == 8);
    CHECK_THROWS_AS(members(s8, Subgroup::Q2), std::invalid_argument);
    CHECK_THROWS(members(l27, Subgroup::FullQ, 100));
}

TEST_CASE("center and derived subgroup at q = 27")
{
    UnipotentLaw law(Family::Ree, field_for_q(27));
    auto cd = compute_center_and_derived(law);
    CHECK(cd.center.size() == 27);
    CHECK(cd.derived.size() == 729);
    auto q1 = members(law, Subgroup::Q1), qp = members(law, Subgroup::Qprime);
    std::sort(cd.center.begin(), cd.center.end());
    std::sort(cd.derived.begin(), cd.derived.end());
    CHECK(cd.center == q1);
    CHECK(cd.derived == qp);
    Report r = ree_structure(27);
    INFO(r.first_failure());
    CHECK(r.ok());
}

TEST_CASE("center and derived subgroup at q = 3 are both Q1")
{
    // at q = 3 the commutator of two generators lands in Q1, so Q' has order 3
    UnipotentLaw law(Family::Ree, field_for_q(3));
    auto cd = compute_center_and_derived(law);
    auto q1 = members(law, Subgroup::Q1);
    std::sort(cd.center.begin(), cd.center.end());
    std::sort(cd.derived.begin(), cd.derived.end());
    CHECK(cd.center.size() == 3);
    CHECK(cd.derived.size() == 3);
    CHECK(cd.center == q1);
    CHECK(cd.derived == q1);
}

TEST_CASE("suzuki centre")
{
    UnipotentLaw law(Family::Suzuki, field_for_q(8));
    auto cd = compute_center_and_derived(law);
    std::sort(cd.center.begin(), cd.center.end());
    CHECK(cd.center == members(law, Subgroup::ZQ));
}

TEST_CASE("cube law")
{
    for (unsigned q : {3u, 27u}) {
        UnipotentLaw law(Family::Ree, field_for_q(q));
        for (ucode x = 0; x < law.order(); ++x) {
            auto t = law.ree(law.mul(x, law.mul(x, x)));
            REQUIRE(t.alpha.is_zero());
            REQUIRE(t.beta.is_zero());
        }
    }
    UnipotentLaw law(Family::Ree, field_for_q(27));
    for (ucode x = 0; x < law.order(); x += 7) {
        ucode c = law.mul(x, law.mul(x, x));
        CHECK(law.mul(c, law.mul(c, c)) == 0);
    }
}

TEST_CASE("K-orbits")
{
    UnipotentLaw l27(Family::Ree, field_for_q(27));
    CHECK(orbit_sizes(k_orbits(l27, Subgroup::Q1)) == std::vector<std::size_t>{26});
    CHECK(orbit_sizes(k_orbits(l27, Subgroup::Q2)) == std::vector<std::size_t>{13, 13});
    // the two Q2 orbits are those of (0, 1, 0) and (0, -1, 0)
    auto o2 = k_orbits(l27, Subgroup::Q2);
    const FieldSpec& f = field_for_q(27);
    ucode plus = l27.code(triple(f, 0, 1, 0)), minus = l27.code(triple(f, 0, 2, 0));
    int pi = -1, mi = -1;
    for (int i = 0; i < 2; ++i) {
        if (std::binary_search(o2[i].begin(), o2[i].end(), plus)) pi = i;
        if (std::binary_search(o2[i].begin(), o2[i].end(), minus)) mi = i;
    }
    CHECK(pi >= 0);
    CHECK(mi >= 0);
    CHECK(pi != mi);

    UnipotentLaw s8(Family::Suzuki, field_for_q(8));
    CHECK(orbit_sizes(k_orbits(s8, Subgroup::ZQ)) == std::vector<std::size_t>{7});
    CHECK_THROWS_AS(k_orbits(l27, Subgroup::FullQ), std::invalid_argument);
}

TEST_CASE("distinguished subgroups are K-invariant and Q' is elementary abelian")
{
    UnipotentLaw law(Family::Ree, field_for_q(27));
    for (auto tag : {Subgroup::Q1, Subgroup::Q2, Subgroup::Qprime}) {
        auto m = members(law, tag);
        for (ucode x : m)
            for (FieldSpec::elem t : {FieldSpec::elem(2), field_for_q(27).primitive()})
                REQUIRE(std::binary_search(m.begin(), m.end(), law.conj_k(x, t)));
    }
    auto qp = members(law, Subgroup::Qprime);
    for (ucode x : qp) {
        REQUIRE(law.mul(x, law.mul(x, x)) == 0);
        for (ucode y : qp) REQUIRE(law.mul(x, y) == law.mul(y, x));
    }
}

TEST_CASE("oracle reports")
{
    for (auto [fam, q] : {std::pair{Family::Ree, 3u}, std::pair{Family::Ree, 27u}, std::pair{Family::Suzuki, 8u}, std::pair{Family::Suzuki, 32u}}) {
        Report r = unipotent_oracles(fam, q);
        INFO(r.first_failure());
        CHECK(r.ok());
    }
}

TEST_CASE("family names")
{
    CHECK(parse_family("ree") == Family::Ree);
    CHECK(parse_family("suzuki") == Family::Suzuki);
    CHECK(family_char(Family::Ree) == 3);
    CHECK(family_char(Family::Suzuki) == 2);
    CHECK_THROWS(parse_family("g2"));
}

}
