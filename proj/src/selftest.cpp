#include "twisted/selftest.hpp"

#include "twisted/sieve.hpp"

#include <algorithm>
#include <random>

namespace twisted {

namespace {

std::string num(std::uint64_t x) { return std::to_string(x); }

void append_prefixed(Report& into, const Report& r, const std::string& prefix)
{
    for (const auto& c : r.checks) into.checks.push_back({prefix + c.name, c.status, c.details});
}

}

Report field_axioms(const FieldSpec& f, std::uint64_t seed)
{
    Report rep;
    using E = FieldSpec::elem;
    unsigned q = f.q();
    std::string tag = "GF(" + num(q) + ")";

    bool add_ok = true, inv_ok = true;
    for (unsigned x = 0; x < q; ++x) {
        add_ok = add_ok && f.add(E(x), 0) == x && f.add(E(x), f.neg(E(x))) == 0;
        if (x) inv_ok = inv_ok && f.mul(E(x), f.inv(E(x))) == 1;
    }
    rep.add("field.additive_group", add_ok, tag);
    rep.add("field.inverses", inv_ok, tag + ", every nonzero element");

    bool ring = true;
    auto triple = [&](E x, E y, E z) {
        ring = ring && f.add(x, y) == f.add(y, x) && f.mul(x, y) == f.mul(y, x) && f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)) &&
               f.add(f.add(x, y), z) == f.add(x, f.add(y, z)) && f.mul(x, f.add(y, z)) == f.add(f.mul(x, y), f.mul(x, z));
    };
    std::string how;
    if (q <= 128) {
        for (unsigned x = 0; x < q; ++x)
            for (unsigned y = 0; y < q; ++y)
                for (unsigned z = 0; z < q; ++z) triple(E(x), E(y), E(z));
        how = "exhaustive";
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<unsigned> d(0, q - 1);
        for (int i = 0; i < 20000; ++i) triple(E(d(rng)), E(d(rng)), E(d(rng)));
        how = "20000 random triples";
    }
    rep.add("field.ring_axioms", ring, tag + ", " + how);

    E g = f.primitive();
    bool prim = f.pow(g, q - 1) == 1;
    for (unsigned d = 1; d < q - 1 && prim; ++d)
        if ((q - 1) % d == 0) prim = f.pow(g, d) != 1;
    rep.add("field.primitive", prim, tag + ", generator of order " + num(q - 1));

    bool twist = true;
    std::vector<char> hit(q, 0);
    for (unsigned x = 0; x < q; ++x) {
        E t = f.twist(E(x));
        hit[t] = 1;
        twist = twist && f.twist(t) == f.pow(E(x), f.p());
        for (unsigned y = 0; y < q && twist; y += 1 + q / 16)
            twist = f.twist(f.mul(E(x), E(y))) == f.mul(t, f.twist(E(y))) && f.twist(f.add(E(x), E(y))) == f.add(t, f.twist(E(y)));
    }
    twist = twist && std::all_of(hit.begin(), hit.end(), [](char c) { return c; });
    rep.add("field.twist", twist, tag + ", automorphism whose square is the Frobenius, m = " + num(f.m()));
    return rep;
}

Report unipotent_oracles(Family fam, unsigned q, std::uint64_t seed)
{
    Report rep;
    const FieldSpec& f = field_for_q(q);
    UnipotentLaw law(fam, f);
    ucode N = law.order();
    std::string tag = std::string(family_name(fam)) + " q=" + num(q);
    bool assoc = true, inv = true, ident = true, kaut = true;
    auto check = [&](ucode x, ucode y, ucode z) {
        assoc = assoc && law.mul(law.mul(x, y), z) == law.mul(x, law.mul(y, z));
        inv = inv && law.mul(x, law.inv(x)) == 0 && law.mul(law.inv(x), x) == 0;
        ident = ident && law.mul(x, 0) == x && law.mul(0, x) == x;
    };
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<ucode> d(0, N - 1);
    std::uniform_int_distribution<unsigned> dt(1, q - 1);
    std::string how;
    if (std::uint64_t(N) * N * N <= 300000) {
        for (ucode x = 0; x < N; ++x)
            for (ucode y = 0; y < N; ++y)
                for (ucode z = 0; z < N; ++z) check(x, y, z);
        how = "exhaustive over " + num(N) + "^3 triples";
    } else {
        for (int i = 0; i < 2000; ++i) check(d(rng), d(rng), d(rng));
        how = "2000 random triples";
    }
    for (int i = 0; i < 2000; ++i) {
        ucode x = d(rng), y = d(rng);
        auto t = FieldSpec::elem(dt(rng));
        kaut = kaut && law.conj_k(law.mul(x, y), t) == law.mul(law.conj_k(x, t), law.conj_k(y, t));
    }
    rep.add("unipotent.associative", assoc, tag + ", " + how);
    rep.add("unipotent.identity", ident, tag);
    rep.add("unipotent.inverse", inv, tag);
    rep.add("unipotent.k_automorphism", kaut, tag + ", 2000 random pairs");
    return rep;
}

Report ree_structure(unsigned q)
{
    Report rep;
    UnipotentLaw law(Family::Ree, field_for_q(q));
    auto cd = compute_center_and_derived(law);
    auto q1 = members(law, Subgroup::Q1), qp = members(law, Subgroup::Qprime);
    std::sort(cd.center.begin(), cd.center.end());
    std::sort(cd.derived.begin(), cd.derived.end());
    std::sort(q1.begin(), q1.end());
    std::sort(qp.begin(), qp.end());
    rep.add("structure.center_is_Q1", cd.center == q1, "|Z(Q)| = " + num(cd.center.size()) + ", |Q1| = " + num(q1.size()));
    rep.add("structure.derived_is_Q1xQ2", cd.derived == qp, "|Q'| = " + num(cd.derived.size()) + ", |Q1 x Q2| = " + num(qp.size()));

    bool elab = true;
    for (ucode x : cd.derived) {
        elab = elab && law.mul(x, law.mul(x, x)) == 0;
        for (ucode y : cd.derived)
            if (law.mul(x, y) != law.mul(y, x)) {
                elab = false;
                break;
            }
        if (!elab) break;
    }
    rep.add("structure.derived_elementary_abelian", elab, "commuting elements of exponent 3");

    bool cubes = true;
    for (ucode x = 0; x < law.order() && cubes; ++x) {
        auto t = law.ree(law.mul(x, law.mul(x, x)));
        cubes = t.alpha.is_zero() && t.beta.is_zero();
    }
    rep.add("structure.cubes_in_Q1", cubes, "x^3 in Q1 for all " + num(law.order()) + " elements");

    auto sizes = [](const std::vector<std::vector<ucode>>& o) {
        std::vector<std::size_t> s;
        for (const auto& v : o) s.push_back(v.size());
        std::sort(s.begin(), s.end());
        return s;
    };
    auto render = [](const std::vector<std::size_t>& s) {
        std::string r;
        for (auto x : s) r += (r.empty() ? "" : "+") + std::to_string(x);
        return r;
    };
    auto o1 = sizes(k_orbits(law, Subgroup::Q1)), o2 = sizes(k_orbits(law, Subgroup::Q2));
    rep.add("structure.k_orbits_Q1", o1 == std::vector<std::size_t>{q - 1}, "orbit sizes " + render(o1));
    rep.add("structure.k_orbits_Q2", o2 == std::vector<std::size_t>{(q - 1) / 2, (q - 1) / 2}, "orbit sizes " + render(o2));
    return rep;
}

Report cross_model_gate()
{
    Report rep;
    append_prefixed(rep, Action::gate_only(Family::Ree, 3), "ree3.");
    append_prefixed(rep, Action::gate_only(Family::Ree, 27), "ree27.");
    append_prefixed(rep, Action::gate_only(Family::Suzuki, 8), "sz8.");
    return rep;
}

PipelineResult run_pipeline(const Action& a, DesignId d, Mode mode, const PipelineOptions& opt)
{
    PipelineResult res;
    res.construction = construct(a, d, mode, ConstructOptions{opt.seed, opt.cap_indices});
    const auto& c = res.construction;
    if (c.involution)
        res.report.add("unital.involution_fixed_points", c.seed_block.size() == a.q() + 1,
                       "|Fix(j)| = " + num(c.seed_block.size()) + ", q + 1 = " + num(a.q() + 1));
    res.report.add("construct.block_count", true, num(c.design.blocks.size()) + " blocks in " + mode_name(mode) + " mode");
    res.report.append(verify_design(a, c.design, c, opt.threads));
    return res;
}

Report sieve_replays()
{
    using namespace sieve;
    Report rep;

    auto ks = [](std::uint64_t q) {
        std::string s;
        for (auto k : ree_k_enumeration(q)) s += (s.empty() ? "" : ",") + std::to_string(k);
        return s;
    };
    rep.add("sieve.ree_k_27", ree_k_enumeration(27) == std::vector<std::uint64_t>{27, 729}, "{" + ks(27) + "}");
    rep.add("sieve.ree_k_243", ree_k_enumeration(243) == std::vector<std::uint64_t>{243, 59049}, "{" + ks(243) + "}");

    for (std::uint64_t q : {8, 32, 128, 512}) {
        std::string got;
        bool ok = true;
        for (unsigned c = 1; c <= 4; ++c) {
            auto sc = suzuki_case_elimination(q, c);
            bool surv = sc.survives();
            ok = ok && surv == (c == 1) && (c != 4 || sc.vacuous == (q != 512));
            got += " case" + std::to_string(c) + "=" + (sc.vacuous ? "vacuous" : surv ? "survives" : "eliminated");
        }
        rep.add("sieve.suzuki_cases_q" + std::to_string(q), ok, "q=" + std::to_string(q) + got);
    }
    auto case3_v = [](std::uint64_t q) {
        std::vector<BigInt> v;
        for (const auto& l : suzuki_case_elimination(q, 3).lines)
            if (l.f == 1) v.push_back(*l.result.v);
        return v;
    };
    auto v32 = case3_v(32), v8 = case3_v(8);
    rep.add("sieve.suzuki_case3_v_q32", v32 == std::vector<BigInt>{198400, 325376}, "v = " + v32.at(0).str() + ", " + v32.at(1).str());
    rep.add("sieve.suzuki_case3_v_q8", v8 == std::vector<BigInt>{560, 1456}, "v = " + v8.at(0).str() + ", " + v8.at(1).str());

    Candidate big{Socle::Suzuki, 128, 7, 4 * 7 * (128 + 16 + 1), false};
    auto b = order_bounds(big);
    rep.add("sieve.order_bound_q128", !b.clauses.at(0).ok, "|G_a| = 4060: " + b.clauses.at(0).details);

    bool e6 = true;
    std::string e6d;
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
        auto r = e6_subdegree_gcd(q);
        e6 = e6 && r.identity && r.square_below_v;
        e6d += " q=" + std::to_string(q) + ":" + r.gcd.str();
    }
    rep.add("sieve.e6_subdegree_gcd", e6, "gcd(d, d') = q(q^4+1) and its square < v;" + e6d);

    bool f4 = true;
    for (std::uint64_t q : {3, 5, 7, 9})
        for (const auto& c : f4_spot_checks(q)) f4 = f4 && c.ok;
    rep.add("sieve.f4_indices", f4, "two stabilizer indices at q = 3, 5, 7, 9");

    bool unital = true;
    for (std::uint64_t q : {27, 243}) {
        BigInt Q = q;
        BigInt v = Q * Q * (Q * Q - Q + 1);
        auto vd = flag_tx_feasible(Q * Q, 1, Q * (Q * Q - 1), v);
        unital = unital && boost::multiprecision::gcd(Q * (Q * Q - 1), v - 1) == Q - 1 && !vd.ok();
    }
    rep.add("sieve.ree_unital_point_stabilizer", unital, "gcd(q(q^2-1), v-1) = q-1 for q = 27, 243");

    for (std::uint64_t q : {27, 243}) {
        bool only_m1 = true, divides = true;
        BigInt G = group_order(Socle::Ree, q);
        for (const auto& m : ree_maximal_subgroups(q)) divides = divides && G % m.order == 0;
        for (const auto& l : ree_table_elimination(q)) only_m1 = only_m1 && l.result.survives() == (l.m.name == "M1");
        rep.add("sieve.ree_table_q" + std::to_string(q), only_m1 && divides, "subgroup orders divide |G|; only M1 survives");
    }

    rep.add("sieve.group_orders",
            group_order(Socle::Ree, 27) == BigInt("10073444472") && group_order(Socle::Suzuki, 8) == 29120 &&
                group_order(Socle::G2, 3) == 4245696 && group_order(Socle::D4Twisted, 2) == 211341312 &&
                group_order(Socle::F4, 2) == BigInt("3311126603366400") && group_order(Socle::F4Twisted, 2) == 35942400,
            "2G2(27), 2B2(8), G2(3), 3D4(2), F4(2), 2F4(2)");
    return rep;
}

Report distinguish_report(const Action& a, const std::vector<std::uint64_t>& conjugate_seeds)
{
    Report rep;
    std::size_t half = (a.q() - 1) / 2;
    for (auto s : conjugate_seeds) {
        auto d = distinguish_d1_d2(a, s);
        bool ok = d.h1_orbits == 1 && d.h2_orbits == 2 && d.h1_sizes == std::vector<std::size_t>{a.q() - 1} &&
                  d.h2_sizes == std::vector<std::size_t>{half, half};
        std::string det = "(" + num(d.h1_orbits) + ", " + num(d.h2_orbits) + ") sizes " + num(d.h1_sizes.at(0));
        for (std::size_t i = 0; i < d.h2_sizes.size(); ++i) det += (i ? "+" : " vs ") + num(d.h2_sizes[i]);
        det += ", |H1| = " + num(d.h1_order) + ", |H2| = " + num(d.h2_order);
        rep.add(s ? "distinguish.conjugated_" + num(s) : std::string("distinguish.base"), ok, det);
    }
    return rep;
}

}
