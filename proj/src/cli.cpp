#include "twisted/cli.hpp"

#include "twisted/selftest.hpp"
#include "twisted/sieve.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

namespace twisted {

namespace {

struct RunConfig {
    std::string family, design, mode = "full", out_path, in_path, level = "quick", batch, replay;
    unsigned q = 0;
    unsigned threads = 1;
    std::uint64_t seed = 1;
    std::uint64_t cap = std::uint64_t(1) << 27;
    bool perturb = false;
};

class Timer {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int status_of(const Report& r) { return r.ok() ? exit_pass : exit_check_failed; }

Action build_action(Family fam, unsigned q, bool perturb, std::ostream& out)
{
    ActionOptions opt;
    opt.perturb = perturb;
    Report gate = Action::gate_only(fam, q, opt);
    if (!gate.ok()) {
        out << gate;
        throw validation_failure("generator validation gate failed: " + gate.first_failure());
    }
    return Action::build(fam, q, opt);
}

void check_family_q(Family fam, unsigned q)
{
    if (!supported_q(q)) throw usage_error("unsupported q = " + std::to_string(q));
    if (field_for_q(q).p() != family_char(fam))
        throw usage_error(std::string("q = ") + std::to_string(q) + " is not a power of " + std::to_string(family_char(fam)) +
                          ", as the " + family_name(fam) + " family requires");
}

int cmd_construct(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    Family fam = parse_family(cfg.family);
    check_family_q(fam, cfg.q);
    DesignId id = parse_design(cfg.design);
    if (design_family(id) != fam) throw usage_error("design " + cfg.design + " does not belong to family " + cfg.family);
    Mode mode = parse_mode(cfg.mode);

    Timer t;
    Action a = build_action(fam, cfg.q, cfg.perturb, out);
    out << a.gate();
    err << "time gate " << t.seconds() << " s\n";
    auto c = construct(a, id, mode, ConstructOptions{cfg.seed, cfg.cap});
    err << "time construct " << t.seconds() << " s\n";
    out << "CONSTRUCT family=" << family_name(fam) << " q=" << cfg.q << " design=" << design_name(id) << " mode=" << mode_name(mode)
        << " seed=" << cfg.seed << '\n';
    out << "CONSTRUCT degree=" << a.degree() << " seed_block_size=" << c.seed_block.size() << " H=" << c.h.label
        << " blocks=" << c.design.blocks.size() << '\n';
    out << "CONSTRUCT expected=" << c.expected.str() << '\n';
    if (!cfg.out_path.empty()) {
        export_design(c.design, cfg.out_path);
        out << "CONSTRUCT wrote " << cfg.out_path << '\n';
    }
    return status_of(a.gate());
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    Timer t;
    if (!std::ifstream(cfg.in_path)) throw usage_error("cannot open " + cfg.in_path);
    Design d = import_design(cfg.in_path);
    err << "time load " << t.seconds() << " s\n";
    Action a = build_action(d.family, d.q, cfg.perturb, out);
    auto prep = prepare(a, d.id, cfg.seed);
    out << "VERIFY family=" << family_name(d.family) << " q=" << d.q << " design=" << design_name(d.id) << " mode=" << mode_name(d.mode)
        << " blocks=" << d.blocks.size() << '\n';
    out << "VERIFY expected=" << prep.expected.str() << " header=" << d.header.str() << '\n';
    Report rep = verify_design(a, d, prep, cfg.threads);
    out << rep;
    err << "time verify " << t.seconds() << " s\n";
    out << "VERDICT " << (rep.ok() ? "PASS" : "FAIL") << '\n';
    return status_of(rep);
}

Report replay(const std::string& which)
{
    using namespace sieve;
    if (which == "all") return sieve_replays();
    Report rep;
    if (which == "e6") {
        for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9}) {
            auto r = e6_subdegree_gcd(q);
            rep.add("e6.q" + std::to_string(q), r.identity && r.square_below_v,
                    "d=" + r.d.str() + " d'=" + r.dprime.str() + " gcd=" + r.gcd.str() + " q(q^4+1)=" + r.expected.str() + " v=" + r.v.str());
        }
    } else if (which == "suzuki") {
        for (std::uint64_t q : {8, 32, 128, 512})
            for (unsigned c = 1; c <= 4; ++c) {
                auto sc = suzuki_case_elimination(q, c);
                std::string name = "suzuki.q" + std::to_string(q) + ".case" + std::to_string(c);
                if (sc.vacuous) {
                    rep.add(name, c != 1, "no subfield subgroup");
                    continue;
                }
                std::string det;
                for (const auto& l : sc.lines)
                    det += "[" + l.label + " v=" + (l.result.v ? l.result.v->str() : "-") + " " +
                           (l.result.survives() ? "survives" : "eliminated by " + l.result.verdict.failing()) + "] ";
                rep.add(name, sc.survives() == (c == 1), det);
            }
    } else if (which == "ree") {
        for (std::uint64_t q : {27, 243})
            for (const auto& l : ree_table_elimination(q))
                rep.add("ree.q" + std::to_string(q) + "." + l.m.name + ".f" + l.f.str(), l.result.survives() == l.m.parabolic,
                        l.m.structure + " order " + l.m.order.str() + ": " +
                            (l.result.survives() ? "survives" : "eliminated by " + l.result.verdict.failing()));
    } else {
        throw usage_error("unknown replay '" + which + "' (all, e6, suzuki, ree)");
    }
    return rep;
}

int cmd_sieve(const RunConfig& cfg, std::ostream& out)
{
    int status = exit_pass;
    if (!cfg.batch.empty()) {
        std::ifstream in(cfg.batch);
        if (!in) throw usage_error("cannot open " + cfg.batch);
        try {
            sieve::run_batch(in, out);
        } catch (const sieve::sieve_error& e) {
            throw usage_error(e.what());
        }
    }
    if (!cfg.replay.empty()) {
        Report r = replay(cfg.replay);
        out << r;
        status = status_of(r);
    }
    if (cfg.batch.empty() && cfg.replay.empty()) throw usage_error("sieve needs a batch file or --replay");
    return status;
}

int cmd_selftest(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    Timer t;
    Report rep;
    for (unsigned q : {3u, 8u, 27u, 32u}) rep.append(field_axioms(field_for_q(q)));
    rep.append(unipotent_oracles(Family::Ree, 3));
    rep.append(unipotent_oracles(Family::Ree, 27));
    rep.append(unipotent_oracles(Family::Suzuki, 8));
    if (cfg.perturb) {
        ActionOptions opt;
        opt.perturb = true;
        rep.append(Action::gate_only(Family::Suzuki, 8, opt));
        out << rep;
        return status_of(rep);
    }
    PipelineOptions po{cfg.threads, cfg.seed, cfg.cap};
    Action sz8 = Action::build(Family::Suzuki, 8);
    rep.append(run_pipeline(sz8, DesignId::SuzukiMain, Mode::Full, po).report);
    err << "time quick " << t.seconds() << " s\n";
    if (cfg.level == "full") {
        Action sz32 = Action::build(Family::Suzuki, 32);
        rep.append(run_pipeline(sz32, DesignId::SuzukiMain, Mode::Full, po).report);
        Action ree = Action::build(Family::Ree, 27);
        for (auto d : {DesignId::D1, DesignId::D2, DesignId::D3, DesignId::Unital})
            rep.append(run_pipeline(ree, d, Mode::Stabilizer, po).report);
        rep.append(ree_structure(27));
        rep.append(distinguish_report(ree, {0}));
        err << "time full " << t.seconds() << " s\n";
    }
    out << rep;
    out << "VERDICT " << (rep.ok() ? "PASS" : "FAIL") << '\n';
    return status_of(rep);
}

}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Flag-transitive 2-designs from the Ree and Suzuki groups", "twisted"};
    app.require_subcommand(1);
    app.add_option("--threads", cfg.threads, "Worker threads for pair counts and slice histograms")->check(CLI::Range(1u, 256u));
    app.add_option("--seed", cfg.seed, "Seed for randomized steps");
    app.add_option("--cap", cfg.cap, "Maximum stored block entries")->check(CLI::PositiveNumber);

    auto* con = app.add_subcommand("construct", "Construct a design or its slice through point 0");
    con->add_option("--family", cfg.family, "ree or suzuki")->required();
    con->add_option("--q", cfg.q, "Field size")->required();
    con->add_option("--design", cfg.design, "d1, d2, d3, unital or suzuki_main")->required();
    con->add_option("--mode", cfg.mode, "full or stabilizer");
    con->add_option("--out", cfg.out_path, "Design file to write");
    con->add_flag("--perturb", cfg.perturb, "Perturb one unipotent matrix (negative control)");

    auto* ver = app.add_subcommand("verify", "Verify a design file");
    ver->add_option("input", cfg.in_path, "Design file")->required();

    auto* sv = app.add_subcommand("sieve", "Arithmetic feasibility checks");
    sv->add_option("batch", cfg.batch, "Batch file: family q f stab_order [parabolic|nonparabolic]");
    sv->add_option("--replay", cfg.replay, "Replay: all, e6, suzuki, ree");

    auto* st = app.add_subcommand("selftest", "Built-in checks");
    st->add_option("level", cfg.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
    st->add_flag("--perturb", cfg.perturb, "Run the gate on a perturbed model (expected to fail)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (*con) return cmd_construct(cfg, out, err);
        if (*ver) return cmd_verify(cfg, out, err);
        if (*sv) return cmd_sieve(cfg, out);
        if (*st) return cmd_selftest(cfg, out, err);
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const format_error& e) {
        err << "format error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const field_error& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const cap_exceeded& e) {
        err << "cap exceeded: " << e.what() << '\n';
        return exit_cap;
    } catch (const validation_failure& e) {
        err << "FAIL: " << e.what() << '\n';
        return exit_check_failed;
    } catch (const std::exception& e) {
        err << "FAIL: " << e.what() << '\n';
        return exit_check_failed;
    }
    return exit_usage;
}

}
