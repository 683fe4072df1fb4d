#include "doctest.h"

#include "twisted/selftest.hpp"
#include "twisted/sieve.hpp"

#include <sstream>

using namespace twisted::sieve;

namespace {

std::string batch(const std::string& in)
{
    std::istringstream is(in);
    std::ostringstream os;
    run_batch(is, os);
    return os.str();
}

}

TEST_SUITE("sieve") {

TEST_CASE("parameters from v, k, lambda")
{
    auto a = params_from_vkl(65, 8, 7);
    CHECK(a.feasible);
    CHECK(a.r == 64);
    CHECK(a.b == 520);
    auto u = params_from_vkl(19684, 28, 1);
    CHECK(u.feasible);
    CHECK(u.r == 729);
    CHECK(u.b == 512487);
    auto bad = params_from_vkl(10, 4, 1);
    CHECK_FALSE(bad.feasible);
    CHECK(bad.reason.find("b = vr/k") != std::string::npos);
    CHECK_FALSE(params_from_vkl(7, 3, 1).feasible); // the Fano plane is symmetric
    CHECK_FALSE(params_from_vkl(10, 2, 1).feasible);
}

TEST_CASE("known parameter sets round trip")
{
    struct Row {
        long long v, b, r, k, l;
    };
    for (auto row : {Row{65, 520, 64, 8, 7}, Row{1025, 32800, 1024, 32, 31}, Row{19684, 14349636, 19683, 27, 26},
                     Row{19684, 531468, 19683, 729, 728}, Row{19684, 512487, 729, 28, 1}}) {
        auto p = params_from_vkl(row.v, row.k, row.l);
        CHECK(p.feasible);
        CHECK(p.r == row.r);
        CHECK(p.b == row.b);
        CHECK(flag_tx_feasible(p.r, row.l, p.r * 1000, row.v).clauses.size() == 3);
    }
}

TEST_CASE("flag-transitivity arithmetic")
{
    // Suzuki q = 8: r = 64 divides gcd(|G_a|, v - 1) = gcd(448, 64)
    CHECK(flag_tx_feasible(64, 7, 448, 65).ok());
    auto v = flag_tx_feasible(6, 3, 36, 7);
    CHECK_FALSE(v.ok());
    CHECK(v.failing().find("gcd(r,lambda)=1") != std::string::npos);
    CHECK(flag_tx_feasible(5, 1, 4, 11).failing().find("r|gcd(|Ga|,v-1)") != std::string::npos);
    CHECK(flag_tx_feasible(3, 1, 9, 10).failing().find("lambda*v<r^2") != std::string::npos);
    CHECK_THROWS_AS(flag_tx_feasible(0, 1, 1, 1), sieve_error);
}

TEST_CASE("p-parts")
{
    auto [a, b] = p_part(720, 2);
    CHECK(a == 16);
    CHECK(b == 45);
    CHECK(p_part(19683, 3).first == 19683);
    CHECK(p_part(19683, 3).second == 1);
    CHECK(p_part(1, 5).first == 1);
    CHECK_THROWS_AS(p_part(0, 2), sieve_error);
}

TEST_CASE("prime powers")
{
    CHECK(prime_power(27) == std::pair<std::uint64_t, unsigned>{3, 3});
    CHECK(prime_power(2) == std::pair<std::uint64_t, unsigned>{2, 1});
    CHECK(prime_power(BigInt(1) << 40) == std::pair<std::uint64_t, unsigned>{2, 40});
    CHECK_THROWS_AS(prime_power(12), sieve_error);
    CHECK_THROWS_AS(prime_power(1), sieve_error);
}

TEST_CASE("group orders")
{
    // ATLAS orders
    CHECK(group_order(Socle::G2, 3) == 4245696);
    CHECK(group_order(Socle::D4Twisted, 2) == 211341312);
    CHECK(group_order(Socle::F4, 2) == BigInt("3311126603366400"));
    CHECK(group_order(Socle::F4Twisted, 2) == 35942400);
    CHECK(group_order(Socle::E6, 2) == BigInt("214841575522005575270400"));
    CHECK(group_order(Socle::Suzuki, 8) == 29120);
    CHECK(group_order(Socle::Suzuki, 32) == 32537600);
    CHECK(group_order(Socle::Ree, 3) == 1512);
    CHECK(group_order(Socle::Ree, 27) == BigInt("10073444472"));
    CHECK_THROWS_AS(group_order(Socle::Ree, 9), sieve_error);
    CHECK_THROWS_AS(group_order(Socle::Suzuki, 27), sieve_error);
    CHECK_THROWS_AS(group_order(Socle::F4Twisted, 4), sieve_error);
    for (const char* n : {"2G2", "2B2", "G2", "3D4", "2F4", "F4", "E6", "2E6", "E7", "E8"}) CHECK(socle_name(parse_socle(n)) == std::string(n));
    CHECK(parse_socle("ree") == Socle::Ree);
    CHECK(parse_socle("suzuki") == Socle::Suzuki);
    CHECK_THROWS_AS(parse_socle("A5"), sieve_error);
}

TEST_CASE("order bounds")
{
    Candidate m1{Socle::Ree, 27, 1, BigInt(19683) * 26, true};
    CHECK(order_bounds(m1).ok());
    CHECK(order_bounds(m1).clauses.size() == 1);
    Candidate tiny{Socle::Ree, 27, 1, 6, false};
    auto t = order_bounds(tiny);
    CHECK_FALSE(t.ok());
    CHECK(t.clauses.size() == 2);
    // |G_a| = 4 * 7 * 145 for Sz(128) with field automorphisms
    Candidate big{Socle::Suzuki, 128, 7, 4 * 7 * 145, false};
    CHECK_FALSE(order_bounds(big).clauses[0].ok);
    Candidate unknown{Socle::Suzuki, 8, 1, 56, std::nullopt};
    CHECK(order_bounds(unknown).clauses.size() == 1);
}

TEST_CASE("elimination")
{
    Candidate m1{Socle::Ree, 27, 1, BigInt(19683) * 26, true};
    auto e1 = eliminate(m1);
    CHECK(e1.survives());
    CHECK(*e1.v == 19684);
    CHECK(e1.gcd == 19683);

    Candidate m2{Socle::Ree, 27, 1, 27 * 728, false};
    auto e2 = eliminate(m2);
    CHECK_FALSE(e2.survives());
    CHECK(e2.gcd == 26);
    CHECK(e2.verdict.failing() == "gcd(|Ga|,v-1)^2>v");

    Candidate nd{Socle::Ree, 27, 1, 12 * 28, false};
    auto e3 = eliminate(nd);
    CHECK_FALSE(e3.survives());
    CHECK_FALSE(e3.v);
    CHECK(e3.verdict.failing().find("|Ga| divides |G|") != std::string::npos);
}

TEST_CASE("Ree field degrees")
{
    CHECK(ree_k_enumeration(27) == std::vector<std::uint64_t>{27, 729});
    CHECK(ree_k_enumeration(243) == std::vector<std::uint64_t>{243, 59049});
    CHECK(ree_k_enumeration(3) == std::vector<std::uint64_t>{3, 9});
    CHECK_THROWS_AS(ree_k_enumeration(9), sieve_error);
}

TEST_CASE("Suzuki point stabilizer cases")
{
    for (std::uint64_t q : {8, 32, 128, 512}) {
        for (unsigned c = 1; c <= 4; ++c) {
            auto sc = suzuki_case_elimination(q, c);
            INFO("q=", q, " case ", c);
            CHECK(sc.survives() == (c == 1));
            if (c == 4) CHECK(sc.vacuous == (q != 512));
            else CHECK_FALSE(sc.vacuous);
        }
    }
    // every clause is evaluated even after the first failure
    auto c3 = suzuki_case_elimination(32, 3);
    REQUIRE(c3.lines.size() == 4); // f = 1, 5
    CHECK(*c3.lines[0].result.v == 198400);
    CHECK(*c3.lines[1].result.v == 325376);
    CHECK(c3.lines[0].result.verdict.clauses.size() == 4);
    auto c8 = suzuki_case_elimination(8, 3);
    REQUIRE(c8.lines.size() == 4); // f = 1, 3
    CHECK(*c8.lines[0].result.v == 560);
    CHECK(*c8.lines[1].result.v == 1456);
    CHECK_THROWS_AS(suzuki_case_elimination(16, 1), sieve_error);
    CHECK_THROWS_AS(suzuki_case_elimination(8, 5), sieve_error);
}

TEST_CASE("E6 subdegree gcd")
{
    auto r = e6_subdegree_gcd(2);
    CHECK(r.d == 4590);
    CHECK(r.dprime == 134912);
    CHECK(r.gcd == 34);
    CHECK(r.identity);
    CHECK(r.square_below_v);
    CHECK(1 + r.d + r.dprime == r.v);
    CHECK(r.v == 139503);
    auto r3 = e6_subdegree_gcd(3);
    CHECK(r3.gcd == 246);
    CHECK(1 + r3.d + r3.dprime == r3.v);
    for (std::uint64_t q : {4, 5, 7, 8, 9}) CHECK(e6_subdegree_gcd(q).identity);
}

TEST_CASE("F4 stabilizer indices")
{
    for (std::uint64_t q = 3; q <= 27; q += 2) {
        if (q == 15 || q == 21) continue;
        auto checks = f4_spot_checks(q);
        REQUIRE(checks.size() == 2);
        for (const auto& c : checks) {
            INFO("q=", q, " ", c.label);
            CHECK(c.ok);
        }
    }
}

TEST_CASE("Ree maximal subgroups")
{
    for (std::uint64_t q : {27, 243}) {
        BigInt G = group_order(Socle::Ree, q);
        auto t = ree_maximal_subgroups(q);
        CHECK(t.size() == 6);
        for (const auto& m : t) CHECK(G % m.order == 0);
        for (const auto& l : ree_table_elimination(q)) {
            INFO(q, " ", l.m.name, " f=", l.f);
            CHECK(l.result.survives() == (l.m.name == "M1"));
        }
        // reading D_((q+1)/2) as having order q+1 gives a non-divisor
        CHECK(G % (12 * BigInt(q + 1)) != 0);
        CHECK(ree_m3_dihedral_order(q) == 6 * BigInt(q + 1));
    }
    auto t27 = ree_maximal_subgroups(27);
    CHECK(t27[5].structure == "2G2(3^1)");
    CHECK(t27[5].order == 1512);
    CHECK(ree_maximal_subgroups(2187).size() == 6);
    CHECK_THROWS_AS(ree_maximal_subgroups(3), sieve_error);
}

TEST_CASE("factored numbers")
{
    CHECK(parse_factored("4*7*2^6") == 1792);
    CHECK(parse_factored("3^20") == BigInt("3486784401"));
    CHECK(parse_factored("17") == 17);
    for (const char* bad : {"", "*3", "3*", "2^", "x", "2^^3", "-4"}) CHECK_THROWS_AS(parse_factored(bad), sieve_error);
}

TEST_CASE("batch runs")
{
    std::string out = batch("# header\n2G2 27 1 19683*26 parabolic\n\n2G2 27 1 27*728 nonparabolic # M2\n2B2 8 1 56\n");
    CHECK(out ==
          "CANDIDATE line=2 family=2G2 q=27 f=1 stab=511758 v=19684 SURVIVES gcd=19683\n"
          "CANDIDATE line=4 family=2G2 q=27 f=1 stab=19656 v=512487 ELIMINATED by gcd(|Ga|,v-1)^2>v [gcd = 26, v = 512487]\n"
          "CANDIDATE line=5 family=2B2 q=8 f=1 stab=56 v=520 ELIMINATED by gcd(|Ga|,v-1)^2>v [gcd = 1, v = 520]\n"
          "SUMMARY candidates=3 survive=1 eliminated=2\n");
    CHECK(batch("").empty());
    CHECK(batch("# nothing\n\n").empty());
    CHECK_THROWS_WITH_AS(batch("2G2 27 1\n"), doctest::Contains("line 1"), sieve_error);
    CHECK_THROWS_WITH_AS(batch("\n2G2 9 1 5\n"), doctest::Contains("line 2"), sieve_error);
    CHECK_THROWS_WITH_AS(batch("2G2 27 1 5 sometimes\n"), doctest::Contains("unknown flag"), sieve_error);
    CHECK_THROWS_WITH_AS(batch("A5 4 1 5\n"), doctest::Contains("line 1"), sieve_error);
}

TEST_CASE("replays")
{
    auto r = twisted::sieve_replays();
    INFO(r.first_failure());
    CHECK(r.ok());
    CHECK(r.find("sieve.e6_subdegree_gcd") != nullptr);
}

}
