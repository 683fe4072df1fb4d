#include "doctest.h"

#include "twisted/designs.hpp"

#include <random>
#include <set>

using namespace twisted;

namespace {

const Action& ree27()
{
    static Action a = Action::build(Family::Ree, 27);
    return a;
}

const Action& sz8()
{
    static Action a = Action::build(Family::Suzuki, 8);
    return a;
}

}

TEST_SUITE("perm_engine") {

TEST_CASE("permutation basics")
{
    Perm a(std::vector<point_t>{1, 2, 0, 4, 3});
    Perm b(std::vector<point_t>{0, 2, 1, 3, 4});
    CHECK(a.order() == 6);
    CHECK((a * a.inverse()).is_identity());
    CHECK(a.pow(6).is_identity());
    CHECK(a.pow(-1) == a.inverse());
    CHECK(a.pow(7) == a);
    // (a * b)(x) = a(b(x))
    for (point_t x = 0; x < 5; ++x) CHECK((a * b)(x) == a(b(x)));
    CHECK(conjugate(a, b) == b.inverse() * a * b);
    CHECK(fixed_points(Perm(5)) == std::vector<point_t>{0, 1, 2, 3, 4});
    CHECK(fixed_points(b) == std::vector<point_t>{0, 3, 4});
    CHECK_FALSE(Perm(std::vector<point_t>{0, 0, 1}).is_bijection());
    CHECK(PermHash{}(a) == PermHash{}(Perm(std::vector<point_t>{1, 2, 0, 4, 3})));
}

TEST_CASE("matrix nullspace and inverse")
{
    const FieldSpec& f = field_for_q(27);
    Matrix m = Matrix::diag(f, {1, 2, 5});
    m(0, 2) = 7;
    CHECK((m * m.inverse()).is_identity());
    // x + y = 0 over GF(27) in three unknowns has a 2-dimensional solution space
    auto ns = nullspace(f, {{1, 1, 0}}, 3);
    CHECK(ns.size() == 2);
    for (const auto& v : ns) CHECK(f.add(v[0], v[1]) == 0);
    CHECK(nullspace(f, {{1, 0}, {0, 1}}, 2).empty());
}

TEST_CASE("generator validation gate")
{
    for (auto [fam, q] : {std::pair{Family::Ree, 3u}, std::pair{Family::Ree, 27u}, std::pair{Family::Suzuki, 8u},
                          std::pair{Family::Suzuki, 32u}, std::pair{Family::Suzuki, 128u}}) {
        Report r = Action::gate_only(fam, q);
        INFO(family_name(fam), " q=", q, " ", r.first_failure());
        CHECK(r.ok());
        for (const char* name : {"gen.identity", "gen.tau_involution", "gen.tau_inverts_torus", "gen.homomorphism",
                                 "gen.torus_conjugation", "action.unique_seed", "action.degree", "cert.transitive",
                                 "cert.stabilizer_transitive"})
            CHECK(r.find(name) != nullptr);
    }
    Report r3 = Action::gate_only(Family::Ree, 3);
    CHECK(r3.find("gen.homomorphism")->details.find("exhaustive") != std::string::npos);
    CHECK(r3.find("action.group_order")->status == Status::Pass);
    Report r27 = Action::gate_only(Family::Ree, 27);
    CHECK(r27.find("gen.homomorphism")->details.find("1000/1000") != std::string::npos);
    CHECK(Action::gate_only(Family::Suzuki, 8).find("action.group_order")->status == Status::Pass);
}

TEST_CASE("perturbed model fails the gate")
{
    ActionOptions opt;
    opt.perturb = true;
    for (auto [fam, q] : {std::pair{Family::Ree, 27u}, std::pair{Family::Suzuki, 8u}}) {
        Report r = Action::gate_only(fam, q, opt);
        CHECK_FALSE(r.ok());
        CHECK(r.find("gen.homomorphism")->status == Status::Fail);
        CHECK_THROWS_AS(Action::build(fam, q, opt), validation_failure);
    }
}

TEST_CASE("unsupported instances")
{
    CHECK_THROWS_AS(Action::build(Family::Suzuki, 27), std::invalid_argument);
    CHECK_THROWS_AS(Action::build(Family::Ree, 243), cap_exceeded);
    CHECK_THROWS_AS(Action::build(Family::Ree, 9), field_error);
}

TEST_CASE("torus matrices")
{
    const Action& a = ree27();
    const MatrixModel& model = a.model();
    const FieldSpec& f = a.field();
    // the diagonal shape (l^th, l^(1-th), l^(2th-1), 1, l^(1-2th), l^(th-1), l^-th) with th = 3^n
    // gives the torus element k(t) at l = t^-(2m+3)
    long long th = 3, m = f.m();
    for (FieldSpec::elem t = 1; t < f.q(); ++t) {
        auto l = f.pow(t, -(2 * m + 3));
        Matrix d = Matrix::diag(f, {f.pow(l, th), f.pow(l, 1 - th), f.pow(l, 2 * th - 1), 1, f.pow(l, 1 - 2 * th), f.pow(l, th - 1),
                                    f.pow(l, -th)});
        REQUIRE(d == model.torus(t));
    }
    Matrix w = model.weyl();
    CHECK((w * w).is_identity());
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) {
        auto t = FieldSpec::elem(1 + rng() % (f.q() - 1));
        CHECK(w * model.torus(t) * w == model.torus(t).inverse());
    }
    const MatrixModel& sm = sz8().model();
    for (FieldSpec::elem t = 1; t < 8; ++t) CHECK(sm.weyl() * sm.torus(t) * sm.weyl() == sm.torus(t).inverse());
}

TEST_CASE("map_unipotent is a homomorphism")
{
    for (unsigned q : {3u, 27u}) {
        const Action& a = q == 3 ? Action::build(Family::Ree, 3) : ree27();
        const MatrixModel& model = a.model();
        const UnipotentLaw& law = model.law();
        CHECK(model.map_code(0).is_identity());
        std::mt19937_64 rng(q);
        unsigned n = law.order();
        unsigned pairs = q == 3 ? n * n : 1000;
        for (unsigned i = 0; i < pairs; ++i) {
            ucode x = q == 3 ? i / n : ucode(rng() % n), y = q == 3 ? i % n : ucode(rng() % n);
            REQUIRE(model.map_code(x) * model.map_code(y) == model.map_code(law.mul(x, y)));
        }
        for (int i = 0; i < 100; ++i) {
            ucode x = ucode(rng() % n);
            auto t = FieldSpec::elem(1 + rng() % (q - 1));
            Matrix k = model.torus(t);
            REQUIRE(k.inverse() * model.map_code(x) * k == model.map_code(law.conj_k(x, t)));
        }
    }
}

TEST_CASE("point actions have the expected degrees")
{
    CHECK(sz8().degree() == 65);
    CHECK(ree27().degree() == 19684);
    CHECK(Action::build(Family::Ree, 3).degree() == 28);
    CHECK(Action::build(Family::Suzuki, 32).degree() == 1025);
    CHECK(expected_degree(Family::Suzuki, 128) == 16385);
    for (const auto& p : ree27().stabilizer_perms()) CHECK(p(0) == 0);
}

TEST_CASE("orbits")
{
    const Action& a = ree27();
    CHECK(orbit({}, 5, a.degree()) == std::vector<point_t>{5});
    CHECK(orbit({Perm(a.degree())}, 5, a.degree()) == std::vector<point_t>{5});
    CHECK(orbit(a.perms(), 0, a.degree()).size() == a.degree());
    // Q is regular on the other points
    auto u = a.unipotent_perms();
    CHECK(orbit(u, 1, a.degree()).size() == 19683);
    CHECK(orbit(u, 12345, a.degree()).size() == 19683);
    CHECK(orbit(sz8().unipotent_perms(), 3, 65).size() == 64);
}

TEST_CASE("two-transitivity certificate")
{
    CHECK(two_transitivity_certificate(ree27()).ok());
    CHECK(two_transitivity_certificate(sz8()).ok());
    auto stab = sz8().stabilizer_perms();
    Report r = two_transitivity_certificate(65, stab, stab);
    CHECK_FALSE(r.ok());
    CHECK(r.find("cert.transitive")->status == Status::Fail);
}

TEST_CASE("transversal")
{
    const Action& a = ree27();
    CHECK(a.transversal_to(0).is_identity());
    std::mt19937_64 rng(9);
    for (int i = 0; i < 50; ++i) {
        auto x = point_t(rng() % a.degree());
        Perm g = a.transversal_to(x);
        REQUIRE(g(0) == x);
        Perm s = random_element(a.stabilizer_perms(), rng, 10);
        REQUIRE((g * s)(0) == x);
    }
}

TEST_CASE("group enumeration")
{
    auto g = enumerate_group(sz8().perms(), 65, 100000);
    CHECK_FALSE(g.overflow);
    CHECK(g.order == 29120);
    auto s = enumerate_group(sz8().stabilizer_perms(), 65, 100000);
    CHECK(s.order == 448);
    CHECK(enumerate_group(ree27().perms(), ree27().degree(), 20000).overflow);
    CHECK(enumerate_group(Action::build(Family::Ree, 3).perms(), 28, 10000).order == 1512);
    CHECK_FALSE(group_elements(sz8().perms(), 65, 1000).has_value());
}

TEST_CASE("involutions")
{
    CHECK(fixed_points(Perm(10)).size() == 10);
    for (std::uint64_t seed : {1, 2, 3}) {
        Perm j = find_involution(ree27(), seed);
        CHECK((j * j).is_identity());
        CHECK_FALSE(j.is_identity());
        CHECK(fixed_points(j).size() == 28);
        Perm js = find_involution(sz8(), seed);
        CHECK(fixed_points(js).size() == 1);
    }
}

TEST_CASE("torus fixes exactly one more point")
{
    for (const Action* a : {&ree27(), &sz8()}) {
        point_t g = k_fixed_second_point(*a);
        CHECK(g != 0);
        auto tor = a->torus_perms();
        std::set<point_t> seen{0, g};
        for (std::size_t x = 1; x < a->degree(); ++x) {
            if (seen.count(point_t(x))) continue;
            auto o = orbit(tor, point_t(x), a->degree());
            CHECK(o.size() > 1);
            CHECK((a->q() - 1) % o.size() == 0);
            seen.insert(o.begin(), o.end());
        }
        CHECK(seen.size() == a->degree());
    }
}

TEST_CASE("point labelling is deterministic")
{
    CHECK(Action::build(Family::Suzuki, 8).dump() == sz8().dump());
    CHECK(Action::build(Family::Ree, 27).dump() == ree27().dump());
    auto p = sz8().point(0);
    CHECK(sz8().find_point(p) == point_t(0));
}

}
