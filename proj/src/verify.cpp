#include "twisted/verify.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <thread>
#include <unordered_map>

namespace twisted {

namespace {

// f(tid, begin, end) over [0, n); results must be combined by the caller in tid order
template <class F>
void parallel_chunks(std::size_t n, unsigned threads, F f)
{
    threads = std::max(1u, std::min<unsigned>(threads, unsigned(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        f(0u, std::size_t(0), n);
        return;
    }
    std::vector<std::thread> pool;
    std::size_t step = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t b = std::min(n, t * step), e = std::min(n, b + step);
        pool.emplace_back(f, t, b, e);
    }
    for (auto& th : pool) th.join();
}

std::uint64_t pair_index(point_t i, point_t j)
{
    if (i > j) std::swap(i, j);
    return std::uint64_t(j) * (j - 1) / 2 + i;
}

std::string fmt(std::uint64_t x) { return std::to_string(x); }

}

ParamsResult compute_params(const Design& d, std::uint64_t pair_cap, unsigned threads)
{
    if (d.mode != Mode::Full) throw verify_error("compute_params expects a full design");
    if (d.blocks.empty()) throw verify_error("design has no blocks");
    std::uint64_t v = d.v(), k = d.blocks[0].size();
    for (std::size_t i = 0; i < d.blocks.size(); ++i) {
        if (d.blocks[i].size() != k)
            throw verify_error("non-uniform block size: block " + fmt(i) + " has " + fmt(d.blocks[i].size()) + " points, block 0 has " + fmt(k));
        if (i && !(d.blocks[i - 1] < d.blocks[i])) throw verify_error("blocks repeated or not canonical at block " + fmt(i));
    }
    std::vector<std::uint64_t> deg(v, 0);
    for (const auto& b : d.blocks)
        for (point_t x : b) {
            if (x >= v) throw verify_error("point index " + fmt(x) + " out of range");
            ++deg[x];
        }
    for (std::uint64_t x = 1; x < v; ++x)
        if (deg[x] != deg[0])
            throw verify_error("non-constant replication: point " + fmt(x) + " lies in " + fmt(deg[x]) + " blocks, point 0 in " + fmt(deg[0]));

    ParamsResult res;
    res.params = {v, d.blocks.size(), deg[0], k, 0};
    if (v * (v - 1) / 2 <= pair_cap) {
        auto pr = verify_pairs_exhaustive(d, threads);
        if (!pr.constant)
            throw verify_error("non-constant pair count: pair (" + fmt(pr.witness->first) + "," + fmt(pr.witness->second) + ") lies in " +
                               fmt(pr.witness_count) + " blocks, expected " + fmt(pr.lambda));
        res.params.lambda = pr.lambda;
        res.lambda_exhaustive = true;
    }
    return res;
}

PairResult verify_pairs_exhaustive(const Design& d, unsigned threads)
{
    std::uint64_t v = d.v();
    std::uint64_t npairs = v * (v - 1) / 2;
    unsigned nt = std::max(1u, threads);
    std::vector<std::vector<std::uint32_t>> counts(nt);
    parallel_chunks(d.blocks.size(), nt, [&](unsigned t, std::size_t b, std::size_t e) {
        auto& c = counts[t];
        c.assign(npairs, 0);
        for (std::size_t i = b; i < e; ++i) {
            const auto& blk = d.blocks[i];
            for (std::size_t x = 0; x < blk.size(); ++x)
                for (std::size_t y = x + 1; y < blk.size(); ++y) ++c[pair_index(blk[x], blk[y])];
        }
    });
    for (unsigned t = 1; t < counts.size(); ++t)
        if (!counts[t].empty())
            for (std::uint64_t i = 0; i < npairs; ++i) counts[0][i] += counts[t][i];
    auto& c = counts[0];
    if (c.empty()) c.assign(npairs, 0);
    PairResult r;
    r.lambda = npairs ? c[0] : 0;
    r.constant = true;
    for (std::uint64_t j = 1, idx = 0; j < v; ++j)
        for (std::uint64_t i = 0; i < j; ++i, ++idx)
            if (c[idx] != r.lambda) {
                r.constant = false;
                r.witness = {point_t(i), point_t(j)};
                r.witness_count = c[idx];
                return r;
            }
    return r;
}

SliceResult verify_via_point_stabilizer(const Action& a, const std::vector<Block>& slice, const DesignParams& expected,
                                        unsigned threads)
{
    SliceResult res;
    Report& rep = res.report;
    std::size_t v = a.degree();

    auto cert = two_transitivity_certificate(a);
    rep.add("stab.premise_two_transitive", cert.ok(), cert.ok() ? "certificate passed" : cert.first_failure());

    bool through = !slice.empty();
    std::size_t bad_block = 0;
    for (std::size_t i = 0; i < slice.size() && through; ++i)
        if (slice[i].empty() || slice[i][0] != 0) {
            through = false;
            bad_block = i;
        }
    rep.add("stab.through_point0", through, through ? fmt(slice.size()) + " blocks contain 0" : "block " + fmt(bad_block) + " misses 0");

    bool uniform = true;
    for (const auto& b : slice) uniform = uniform && b.size() == expected.k;
    rep.add("stab.uniform", uniform, "k = " + fmt(expected.k));

    bool single = false;
    if (through) {
        std::vector<Block> sorted(slice);
        std::sort(sorted.begin(), sorted.end());
        try {
            auto orb = block_orbit(a.stabilizer_perms(), sorted[0], (sorted.size() + 1) * expected.k);
            single = orb == sorted;
            rep.add("stab.premise_single_orbit", single,
                    "stabilizer orbit of the first block has " + fmt(orb.size()) + " blocks, slice has " + fmt(sorted.size()));
        } catch (const cap_exceeded&) {
            rep.add("stab.premise_single_orbit", false, "stabilizer orbit of the first block is larger than the slice");
        }
    } else {
        rep.skip("stab.premise_single_orbit", "slice is not through point 0");
    }

    rep.add("stab.slice_size", slice.size() == expected.r, "|slice| = " + fmt(slice.size()) + ", r = " + fmt(expected.r));

    unsigned nt = std::max(1u, threads);
    std::vector<std::vector<std::uint64_t>> hist(nt);
    parallel_chunks(slice.size(), nt, [&](unsigned t, std::size_t b, std::size_t e) {
        auto& h = hist[t];
        h.assign(v, 0);
        for (std::size_t i = b; i < e; ++i)
            for (point_t x : slice[i])
                if (x < v) ++h[x];
    });
    std::vector<std::uint64_t> h(v, 0);
    for (const auto& part : hist)
        for (std::size_t x = 0; x < part.size(); ++x) h[x] += part[x];
    bool constant = v > 1;
    std::size_t witness = 0;
    for (std::size_t x = 2; x < v && constant; ++x)
        if (h[x] != h[1]) {
            constant = false;
            witness = x;
        }
    std::uint64_t lambda = v > 1 ? h[1] : 0;
    rep.add("stab.histogram_constant", constant,
            constant ? "h(x) = " + fmt(lambda) + " for every x != 0"
                     : "h(1) = " + fmt(h[1]) + " but h(" + fmt(witness) + ") = " + fmt(h[witness]));
    rep.add("stab.lambda", constant && lambda == expected.lambda, "h = " + fmt(lambda) + ", lambda = " + fmt(expected.lambda));

    if (rep.ok()) {
        std::uint64_t r = slice.size(), k = expected.k;
        bool integral = k && (std::uint64_t(v) * r) % k == 0;
        rep.add("stab.b_integral", integral, "b = v r / k");
        if (integral) res.derived = DesignParams{v, std::uint64_t(v) * r / k, r, k, lambda};
    }
    return res;
}

bool verify_rlambda_coprime(const DesignParams& p) { return std::gcd(p.r, p.lambda) == 1; }

Report param_identities(const DesignParams& p)
{
    Report rep;
    rep.add("params.bk_eq_vr", p.b * p.k == p.v * p.r, fmt(p.b) + "*" + fmt(p.k) + " vs " + fmt(p.v) + "*" + fmt(p.r));
    rep.add("params.lambda_identity", p.lambda * (p.v - 1) == p.r * (p.k - 1), "lambda(v-1) = r(k-1)");
    // lambda v < r^2, compared in 128 bits
    unsigned __int128 lhs = (unsigned __int128)p.lambda * p.v, rhs = (unsigned __int128)p.r * p.r;
    rep.add("params.lambda_v_lt_r2", lhs < rhs, "lambda v < r^2");
    rep.add("params.non_symmetric", p.v < p.b, "v < b");
    return rep;
}

Report verify_flag_transitive(const Action& a, const Design& d, const SubgroupGens& h, const Block& seed, const DesignParams& params)
{
    Report rep;
    auto orb = seed.empty() ? Block{} : orbit(h.gens, seed[0], a.degree());
    rep.add("flag.block_is_h_orbit", !seed.empty() && orb == seed,
            "H = " + h.label + " orbit of a block point has " + fmt(orb.size()) + " points, block has " + fmt(seed.size()));
    bool inside = true;
    for (const auto& g : h.gens) inside = inside && block_image(g, seed) == seed;
    rep.add("flag.h_in_block_stabilizer", inside, fmt(h.gens.size()) + " generators preserve the block");

    bool single = false;
    std::string det;
    try {
        std::uint64_t cap = (d.blocks.size() + 1) * std::max<std::size_t>(1, d.blocks.empty() ? 1 : d.blocks[0].size());
        if (d.mode == Mode::Full) {
            auto o = block_orbit(a.perms(), d.blocks.at(0), cap);
            single = o == d.blocks && std::binary_search(d.blocks.begin(), d.blocks.end(), seed);
            det = "group orbit of block 0 has " + fmt(o.size()) + " blocks, design has " + fmt(d.blocks.size());
        } else {
            auto o = block_orbit(a.stabilizer_perms(), d.blocks.at(0), cap);
            auto moved = through_seed(a, seed);
            single = o == d.blocks && std::binary_search(d.blocks.begin(), d.blocks.end(), moved);
            det = "stabilizer orbit of block 0 has " + fmt(o.size()) + " blocks, slice has " + fmt(d.blocks.size());
        }
        if (!single && det.find("has " + fmt(d.blocks.size()) + " blocks") != std::string::npos) det += "; seed block not in the set";
    } catch (const cap_exceeded&) {
        det = "block orbit is larger than the block set";
    } catch (const std::out_of_range&) {
        det = "no blocks";
    }
    rep.add("flag.single_block_orbit", single, det);
    rep.add("flag.transitive", rep.ok(), "block is an H-orbit with H <= T_B and blocks form one orbit");

    auto cert = two_transitivity_certificate(a);
    bool cop = verify_rlambda_coprime(params);
    rep.add("flag.two_transitive_coprime", cert.ok() && cop,
            std::string(cert.ok() ? "2-transitive" : "not 2-transitive") + ", gcd(r, lambda) = " + fmt(std::gcd(params.r, params.lambda)));
    return rep;
}

std::uint64_t twisted_group_order(Family fam, unsigned qq)
{
    std::uint64_t q = qq;
    if (fam == Family::Ree) return (q * q * q + 1) * q * q * q * (q - 1);
    return (q * q + 1) * q * q * (q - 1);
}

BlockStabilizer block_stabilizer_order(const Action& a, DesignId id, const Block& seed, const SubgroupGens& h,
                                       const DesignParams& params)
{
    BlockStabilizer bs;
    Report& rep = bs.report;
    std::uint64_t T = twisted_group_order(a.family(), a.q());
    bool divides = params.b && T % params.b == 0;
    bs.tb = divides ? T / params.b : 0;
    std::uint64_t want = expected_block_stabilizer_order(id, a.q());
    rep.add("block_stabilizer.order", divides && bs.tb == want,
            "|T_B| = " + fmt(T) + " / " + fmt(params.b) + " = " + fmt(bs.tb) + ", expected " + fmt(want));

    // |T_B| = k |T_inf| / r, from the flag count through one point
    std::uint64_t Tinf = T / params.v;
    bool cross = params.r && (params.k * Tinf) % params.r == 0 && params.k * Tinf / params.r == bs.tb;
    rep.add("block_stabilizer.flag_count", cross, "k |T_inf| / r = " + (params.r ? fmt(params.k * Tinf / params.r) : std::string("?")));

    // H acting on the block
    std::vector<std::int32_t> pos(a.degree(), -1);
    for (std::size_t i = 0; i < seed.size(); ++i) pos[seed[i]] = std::int32_t(i);
    std::vector<Perm> restricted;
    bool preserves = true;
    for (const auto& g : h.gens) {
        std::vector<point_t> img(seed.size());
        for (std::size_t i = 0; i < seed.size(); ++i) {
            auto p = pos[g(seed[i])];
            if (p < 0) {
                preserves = false;
                break;
            }
            img[i] = point_t(p);
        }
        if (!preserves) break;
        restricted.emplace_back(std::move(img));
    }
    if (!preserves) {
        rep.add("block_stabilizer.h_on_block", false, "H does not preserve the block");
        return bs;
    }
    auto g = enumerate_group(restricted, seed.size(), 2000000);
    bs.on_block = g.overflow ? 0 : g.order;
    bool ok = !g.overflow && bs.tb && bs.tb % bs.on_block == 0 && orbit(restricted, 0, seed.size()).size() == seed.size();
    rep.add("block_stabilizer.h_on_block", ok,
            "H acts transitively on the block as a group of order " + (g.overflow ? std::string("overflow") : fmt(bs.on_block)) +
                " dividing |T_B|");
    return bs;
}

namespace {

void sylow_conjugation_orbits(const std::vector<Perm>& gens, std::size_t degree, unsigned& norbits,
                              std::vector<std::size_t>& sizes, std::size_t& order)
{
    auto el = group_elements(gens, degree, 200000);
    if (!el) throw cap_exceeded("subgroup too large to enumerate");
    order = el->size();
    std::unordered_map<Perm, std::size_t, PermHash> idx;
    std::vector<std::size_t> sylow;
    for (std::size_t i = 0; i < el->size(); ++i) {
        auto o = (*el)[i].order();
        while (o % 3 == 0) o /= 3;
        if (o == 1 && !(*el)[i].is_identity()) {
            idx.emplace((*el)[i], sylow.size());
            sylow.push_back(i);
        }
    }
    std::vector<char> done(sylow.size(), 0);
    std::vector<Perm> ginv;
    for (const auto& g : gens) ginv.push_back(g.inverse());
    sizes.clear();
    for (std::size_t s = 0; s < sylow.size(); ++s) {
        if (done[s]) continue;
        std::vector<std::size_t> queue{s};
        done[s] = 1;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Perm& x = (*el)[sylow[queue[head]]];
            for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                auto it = idx.find(ginv[gi] * x * gens[gi]);
                if (it == idx.end()) throw std::logic_error("Sylow subgroup not normal");
                if (!done[it->second]) {
                    done[it->second] = 1;
                    queue.push_back(it->second);
                }
            }
        }
        sizes.push_back(queue.size());
    }
    std::sort(sizes.begin(), sizes.end());
    norbits = unsigned(sizes.size());
}

}

Distinguish distinguish_d1_d2(const Action& a, std::uint64_t conjugate_seed)
{
    if (a.family() != Family::Ree) throw std::invalid_argument("distinguish_d1_d2 needs the Ree family");
    auto h1 = subgroup_gens(a, DesignId::D1).gens;
    auto h2 = subgroup_gens(a, DesignId::D2).gens;
    if (conjugate_seed) {
        std::mt19937_64 rng(conjugate_seed);
        Perm g1 = random_element(a.perms(), rng), g2 = random_element(a.perms(), rng);
        for (auto& x : h1) x = conjugate(x, g1);
        for (auto& x : h2) x = conjugate(x, g2);
    }
    Distinguish d;
    sylow_conjugation_orbits(h1, a.degree(), d.h1_orbits, d.h1_sizes, d.h1_order);
    sylow_conjugation_orbits(h2, a.degree(), d.h2_orbits, d.h2_sizes, d.h2_order);
    return d;
}

Report verify_design(const Action& a, const Design& d, const Construction& prep, unsigned threads)
{
    Report rep;
    auto cert = two_transitivity_certificate(a);
    rep.append(cert);

    DesignParams expected = expected_params(d.id, d.q);
    rep.add("design.family", d.family == a.family() && d.q == a.q(), std::string(family_name(d.family)) + " q=" + fmt(d.q));
    rep.add("design.header_v", d.header.v == a.degree(), "v = " + fmt(d.header.v) + ", degree " + fmt(a.degree()));

    std::optional<DesignParams> measured;
    if (d.mode == Mode::Full) {
        try {
            auto pr = compute_params(d, std::uint64_t(1) << 26, threads);
            rep.add("design.uniform_simple_replication", true,
                    "k = " + fmt(pr.params.k) + ", r = " + fmt(pr.params.r) + ", b = " + fmt(pr.params.b));
            if (pr.lambda_exhaustive) {
                rep.add("pairs.exhaustive", true, "every pair lies in exactly " + fmt(pr.params.lambda) + " blocks");
            } else {
                rep.skip("pairs.exhaustive", "v(v-1)/2 exceeds the pair cap");
            }
            // reduction through point 0 on the same design
            std::vector<Block> slice;
            for (const auto& b : d.blocks)
                if (b[0] == 0) slice.push_back(b);
            DesignParams want = pr.params;
            want.lambda = pr.lambda_exhaustive ? pr.params.lambda : expected.lambda;
            auto sr = verify_via_point_stabilizer(a, slice, want, threads);
            rep.append(sr.report);
            if (sr.derived) {
                bool agree = sr.derived->b == pr.params.b && (!pr.lambda_exhaustive || sr.derived->lambda == pr.params.lambda);
                rep.add("pairs.paths_agree", agree, "exhaustive and point-stabilizer results coincide");
                if (agree) measured = DesignParams{pr.params.v, pr.params.b, pr.params.r, pr.params.k, sr.derived->lambda};
            }
        } catch (const verify_error& e) {
            rep.add("design.uniform_simple_replication", false, e.what());
        }
    } else {
        auto sr = verify_via_point_stabilizer(a, d.blocks, expected, threads);
        rep.append(sr.report);
        measured = sr.derived;
    }

    if (!measured) {
        rep.add("params.measured", false, "parameters could not be established");
        return rep;
    }
    const DesignParams& p = *measured;
    rep.add("params.expected", p == expected, "measured " + p.str() + ", expected " + expected.str());
    DesignParams hdr = d.header;
    if (d.mode == Mode::Stabilizer) hdr.b = p.b;
    rep.add("params.header", hdr == p, "header " + d.header.str());
    rep.append(param_identities(p));
    rep.add("params.r_lambda_coprime", verify_rlambda_coprime(p), "gcd(" + fmt(p.r) + ", " + fmt(p.lambda) + ") = " + fmt(std::gcd(p.r, p.lambda)));
    rep.append(verify_flag_transitive(a, d, prep.h, prep.seed_block, p));
    rep.append(block_stabilizer_order(a, d.id, prep.seed_block, prep.h, p).report);
    return rep;
}

}
