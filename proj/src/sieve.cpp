#include "twisted/sieve.hpp"

#include <boost/multiprecision/integer.hpp>

#include <cctype>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace twisted::sieve {

namespace {

BigInt ipow(const BigInt& b, unsigned e) { return boost::multiprecision::pow(b, e); }

BigInt gcd_of(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

std::string str(const BigInt& x) { return x.str(); }

std::vector<unsigned> divisors(unsigned e)
{
    std::vector<unsigned> d;
    for (unsigned i = 1; i <= e; ++i)
        if (e % i == 0) d.push_back(i);
    return d;
}

bool is_prime(unsigned n)
{
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// exponent e with q = p^e for the given p, or 0
unsigned log_exact(std::uint64_t q, std::uint64_t p)
{
    unsigned e = 0;
    while (q > 1 && q % p == 0) {
        q /= p;
        ++e;
    }
    return q == 1 ? e : 0;
}

}

const char* socle_name(Socle s)
{
    switch (s) {
    case Socle::Ree: return "2G2";
    case Socle::Suzuki: return "2B2";
    case Socle::G2: return "G2";
    case Socle::D4Twisted: return "3D4";
    case Socle::F4Twisted: return "2F4";
    case Socle::F4: return "F4";
    case Socle::E6: return "E6";
    case Socle::E6Twisted: return "2E6";
    case Socle::E7: return "E7";
    case Socle::E8: return "E8";
    }
    return "?";
}

Socle parse_socle(const std::string& s)
{
    for (auto x : {Socle::Ree, Socle::Suzuki, Socle::G2, Socle::D4Twisted, Socle::F4Twisted, Socle::F4, Socle::E6, Socle::E6Twisted,
                   Socle::E7, Socle::E8})
        if (s == socle_name(x)) return x;
    if (s == "ree") return Socle::Ree;
    if (s == "suzuki") return Socle::Suzuki;
    throw sieve_error("unknown family '" + s + "'");
}

std::pair<std::uint64_t, unsigned> prime_power(const BigInt& q)
{
    if (q < 2 || q > BigInt(std::numeric_limits<std::uint64_t>::max())) throw sieve_error("q = " + str(q) + " out of range");
    auto n = q.convert_to<std::uint64_t>();
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            p = d;
            break;
        }
    if (!p) p = n;
    unsigned e = log_exact(n, p);
    if (!e) throw sieve_error("q = " + str(q) + " is not a prime power");
    return {p, e};
}

BigInt group_order(Socle s, const BigInt& q)
{
    auto [p, e] = prime_power(q);
    auto odd_power_of = [&, p = p, e = e](std::uint64_t want) {
        if (p != want || e % 2 == 0)
            throw sieve_error(std::string(socle_name(s)) + " needs q = " + std::to_string(want) + "^(2n+1), got " + str(q));
    };
    auto P = [&](unsigned k) { return ipow(q, k); };
    switch (s) {
    case Socle::Ree: odd_power_of(3); return (P(3) + 1) * P(3) * (q - 1);
    case Socle::Suzuki: odd_power_of(2); return (P(2) + 1) * P(2) * (q - 1);
    case Socle::G2: return P(6) * (P(2) - 1) * (P(6) - 1);
    case Socle::D4Twisted: return P(12) * (P(2) - 1) * (P(6) - 1) * (P(8) + P(4) + 1);
    case Socle::F4Twisted: odd_power_of(2); return P(12) * (q - 1) * (P(3) + 1) * (P(4) - 1) * (P(6) + 1);
    case Socle::F4: return P(24) * (P(2) - 1) * (P(6) - 1) * (P(8) - 1) * (P(12) - 1);
    case Socle::E6: {
        BigInt n = P(36) * (P(2) - 1) * (P(5) - 1) * (P(6) - 1) * (P(8) - 1) * (P(9) - 1) * (P(12) - 1);
        return n / gcd_of(3, q - 1);
    }
    case Socle::E6Twisted: {
        BigInt n = P(36) * (P(2) - 1) * (P(5) + 1) * (P(6) - 1) * (P(8) - 1) * (P(9) + 1) * (P(12) - 1);
        return n / gcd_of(3, q + 1);
    }
    case Socle::E7: {
        BigInt n = P(63) * (P(2) - 1) * (P(6) - 1) * (P(8) - 1) * (P(10) - 1) * (P(12) - 1) * (P(14) - 1) * (P(18) - 1);
        return n / gcd_of(2, q - 1);
    }
    case Socle::E8:
        return P(120) * (P(2) - 1) * (P(8) - 1) * (P(12) - 1) * (P(14) - 1) * (P(18) - 1) * (P(20) - 1) * (P(24) - 1) * (P(30) - 1);
    }
    throw sieve_error("unsupported family");
}

std::pair<BigInt, BigInt> p_part(const BigInt& n, const BigInt& p)
{
    if (n < 1 || p < 2) throw sieve_error("p_part needs n >= 1 and p >= 2");
    BigInt a = 1, rest = n;
    while (rest % p == 0) {
        rest /= p;
        a *= p;
    }
    return {a, rest};
}

VklResult params_from_vkl(const BigInt& v, const BigInt& k, const BigInt& lambda)
{
    VklResult res;
    if (!(k > 2 && k < v - 1) || lambda < 1) {
        res.reason = "need 2 < k < v-1 and lambda >= 1";
        return res;
    }
    BigInt num = lambda * (v - 1);
    if (num % (k - 1) != 0) {
        res.reason = "r = lambda(v-1)/(k-1) = " + str(num) + "/" + str(k - 1) + " not integral";
        return res;
    }
    res.r = num / (k - 1);
    if ((v * res.r) % k != 0) {
        res.reason = "b = vr/k = " + str(v * res.r) + "/" + str(k) + " not integral";
        return res;
    }
    res.b = v * res.r / k;
    if (res.b <= v) {
        res.reason = "b = " + str(res.b) + " <= v, not non-symmetric";
        return res;
    }
    res.feasible = true;
    return res;
}

bool Verdict::ok() const
{
    for (const auto& c : clauses)
        if (!c.ok) return false;
    return true;
}

std::string Verdict::failing() const
{
    std::string s;
    for (const auto& c : clauses)
        if (!c.ok) s += (s.empty() ? "" : ",") + c.name;
    return s;
}

Verdict flag_tx_feasible(const BigInt& r, const BigInt& lambda, const BigInt& stab_order, const BigInt& v)
{
    if (r < 1) throw sieve_error("r must be positive");
    Verdict vd;
    BigInt g = gcd_of(r, lambda);
    vd.clauses.push_back({"gcd(r,lambda)=1", g == 1, "gcd = " + str(g)});
    BigInt h = gcd_of(stab_order, v - 1);
    vd.clauses.push_back({"r|gcd(|Ga|,v-1)", h % r == 0, "gcd(|Ga|, v-1) = " + str(h)});
    vd.clauses.push_back({"lambda*v<r^2", lambda * v < r * r, str(lambda * v) + " vs " + str(r * r)});
    return vd;
}

BigInt candidate_group_order(const Candidate& c)
{
    if (c.f < 1) throw sieve_error("f must be positive");
    return c.f * group_order(c.family, c.q);
}

Verdict order_bounds(const Candidate& c)
{
    Verdict vd;
    BigInt G = candidate_group_order(c);
    BigInt cube = ipow(c.stab_order, 3);
    vd.clauses.push_back({"|G|<|Ga|^3", G < cube, "|G| = " + str(G) + ", |Ga|^3 = " + str(cube)});
    if (c.parabolic && !*c.parabolic) {
        auto p = prime_power(c.q).first;
        BigInt pp = p_part(c.stab_order, p).second;
        BigInt bound = c.stab_order * pp * pp;
        vd.clauses.push_back({"|G|<|Ga||Ga|_p'^2", G < bound, "|Ga||Ga|_p'^2 = " + str(bound)});
    }
    return vd;
}

Elimination eliminate(const Candidate& c)
{
    Elimination el;
    BigInt G = candidate_group_order(c);
    if (c.stab_order < 1) throw sieve_error("stabilizer order must be positive");
    bool divides = G % c.stab_order == 0;
    el.verdict.clauses.push_back({"|Ga| divides |G|", divides, divides ? "v = " + str(G / c.stab_order) : "v not integral"});
    auto b = order_bounds(c);
    el.verdict.clauses.insert(el.verdict.clauses.end(), b.clauses.begin(), b.clauses.end());
    if (divides) {
        el.v = G / c.stab_order;
        el.gcd = gcd_of(c.stab_order, *el.v - 1);
        el.verdict.clauses.push_back({"gcd(|Ga|,v-1)^2>v", el.gcd * el.gcd > *el.v, "gcd = " + str(el.gcd) + ", v = " + str(*el.v)});
    }
    return el;
}

std::vector<std::uint64_t> ree_k_enumeration(std::uint64_t q)
{
    unsigned e = log_exact(q, 3);
    if (!e || e % 2 == 0) throw sieve_error("q must be an odd power of 3");
    std::uint64_t half = (q - 1) / 2;
    std::vector<std::uint64_t> ks;
    std::uint64_t k = 3;
    for (unsigned j = 1; j < 3 * e; ++j, k *= 3)
        if ((k - 1) % half == 0) ks.push_back(k);
    return ks;
}

bool SuzukiCase::survives() const
{
    for (const auto& l : lines)
        if (l.result.survives()) return true;
    return false;
}

SuzukiCase suzuki_case_elimination(std::uint64_t q, unsigned case_no)
{
    unsigned e = log_exact(q, 2);
    if (!e || e % 2 == 0 || q < 8) throw sieve_error("q must be 2^(2n+1) >= 8");
    if (case_no < 1 || case_no > 4) throw sieve_error("case must be 1..4");
    SuzukiCase sc;
    sc.case_no = case_no;
    BigInt Q = q;
    BigInt root = BigInt(1) << ((e + 1) / 2); // sqrt(2q)
    for (unsigned f : divisors(e)) {
        auto add = [&](const std::string& label, const BigInt& stab, bool parabolic) {
            Candidate c{Socle::Suzuki, Q, f, stab * f, parabolic};
            sc.lines.push_back({label, BigInt(f), eliminate(c)});
        };
        std::string fl = "f=" + std::to_string(f);
        switch (case_no) {
        case 1: add(fl, Q * Q * (Q - 1), true); break;
        case 2: add(fl, 2 * (Q - 1), false); break;
        case 3:
            add(fl + " +", 4 * (Q + root + 1), false);
            add(fl + " -", 4 * (Q - root + 1), false);
            break;
        case 4:
            for (unsigned l : divisors(e)) {
                if (!is_prime(l) || e / l < 3) continue;
                BigInt q0 = BigInt(1) << (e / l);
                add(fl + " q0=" + str(q0), (q0 * q0 + 1) * q0 * q0 * (q0 - 1), false);
            }
            break;
        }
    }
    sc.vacuous = sc.lines.empty();
    return sc;
}

E6Gcd e6_subdegree_gcd(std::uint64_t qq)
{
    if (qq < 2) throw sieve_error("q must be at least 2");
    prime_power(qq);
    BigInt q = qq;
    E6Gcd r;
    r.d = q * (ipow(q, 3) + 1) * (ipow(q, 8) - 1) / (q - 1);
    r.dprime = ipow(q, 8) * (ipow(q, 4) + 1) * (ipow(q, 5) - 1) / (q - 1);
    r.v = (ipow(q, 8) + ipow(q, 4) + 1) * (ipow(q, 9) - 1) / (q - 1);
    r.gcd = gcd_of(r.d, r.dprime);
    r.expected = q * (ipow(q, 4) + 1);
    r.identity = r.gcd == r.expected;
    r.square_below_v = r.expected * r.expected < r.v;
    return r;
}

std::vector<F4Check> f4_spot_checks(std::uint64_t qq)
{
    prime_power(qq);
    BigInt q = qq;
    auto P = [&](unsigned k) { return ipow(q, k); };
    BigInt T = group_order(Socle::F4, q);
    std::vector<F4Check> out;
    auto add = [&](std::string label, BigInt stab, BigInt expected) {
        F4Check c{std::move(label), stab, 0, std::move(expected), false};
        if (T % stab == 0) {
            c.v = T / stab;
            c.ok = c.v == c.expected_v;
        }
        out.push_back(std::move(c));
    };
    add("2.(L2(q) x PSp6(q)).2", P(10) * (P(2) - 1) * (P(2) - 1) * (P(4) - 1) * (P(6) - 1), P(14) * (P(4) + 1) * (P(4) + P(2) + 1) * (P(6) + 1));
    add("2.POmega9(q)", P(16) * (P(2) - 1) * (P(4) - 1) * (P(6) - 1) * (P(8) - 1), P(8) * (P(8) + P(4) + 1));
    return out;
}

BigInt ree_m3_dihedral_order(const BigInt& q) { return 4 * ((q + 1) / 2) * 3; }

std::vector<MaximalSubgroup> ree_maximal_subgroups(std::uint64_t qq)
{
    unsigned e = log_exact(qq, 3);
    if (!e || e % 2 == 0 || qq < 27) throw sieve_error("q must be 3^(2n+1) >= 27");
    BigInt q = qq;
    BigInt m = ipow(BigInt(3), (e + 1) / 2);
    std::vector<MaximalSubgroup> t;
    t.push_back({"M1", "[q^3]:Z_(q-1)", ipow(q, 3) * (q - 1), true});
    t.push_back({"M2", "Z2 x L2(q)", q * (q * q - 1), false});
    t.push_back({"M3", "(Z2^2 x D_((q+1)/2)):Z3", ree_m3_dihedral_order(q), false});
    t.push_back({"M4", "Z_(q+m+1):Z6", 6 * (q + m + 1), false});
    t.push_back({"M5", "Z_(q-m+1):Z6", 6 * (q - m + 1), false});
    for (unsigned l : divisors(e)) {
        if (l == e || !is_prime(e / l)) continue;
        BigInt s = ipow(BigInt(3), l);
        t.push_back({"M6", "2G2(3^" + std::to_string(l) + ")", (ipow(s, 3) + 1) * ipow(s, 3) * (s - 1), false});
    }
    return t;
}

std::vector<TableLine> ree_table_elimination(std::uint64_t q)
{
    std::vector<TableLine> out;
    unsigned e = log_exact(q, 3);
    for (const auto& m : ree_maximal_subgroups(q))
        for (unsigned f : divisors(e)) {
            Candidate c{Socle::Ree, q, f, m.order * f, m.parabolic};
            out.push_back({m, f, eliminate(c)});
        }
    return out;
}

BigInt parse_factored(const std::string& s)
{
    if (s.empty()) throw sieve_error("empty number");
    BigInt acc = 1;
    std::size_t pos = 0;
    auto digits = [&](std::size_t& i) {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw sieve_error("bad number '" + s + "'");
        return BigInt(s.substr(start, i - start));
    };
    while (true) {
        BigInt base = digits(pos);
        if (pos < s.size() && s[pos] == '^') {
            ++pos;
            BigInt ex = digits(pos);
            if (ex > 4096) throw sieve_error("exponent too large in '" + s + "'");
            base = ipow(base, ex.convert_to<unsigned>());
        }
        acc *= base;
        if (pos == s.size()) break;
        if (s[pos] != '*') throw sieve_error("bad number '" + s + "'");
        ++pos;
    }
    return acc;
}

BatchSummary run_batch(std::istream& in, std::ostream& out)
{
    BatchSummary sum;
    std::string line;
    std::size_t ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream is(line);
        std::vector<std::string> tok;
        for (std::string t; is >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        auto bad = [&](const std::string& msg) { return sieve_error("line " + std::to_string(ln) + ": " + msg); };
        if (tok.size() < 4 || tok.size() > 5) throw bad("expected 'family q f stab_order [parabolic|nonparabolic]'");
        Candidate c;
        try {
            c.family = parse_socle(tok[0]);
            c.q = parse_factored(tok[1]);
            c.f = parse_factored(tok[2]);
            c.stab_order = parse_factored(tok[3]);
            if (tok.size() == 5) {
                if (tok[4] == "parabolic") c.parabolic = true;
                else if (tok[4] == "nonparabolic") c.parabolic = false;
                else throw sieve_error("unknown flag '" + tok[4] + "'");
            }
            group_order(c.family, c.q);
        } catch (const sieve_error& e) {
            throw bad(e.what());
        }
        auto el = eliminate(c);
        ++sum.candidates;
        el.survives() ? ++sum.survive : ++sum.eliminated;
        out << "CANDIDATE line=" << ln << " family=" << socle_name(c.family) << " q=" << c.q << " f=" << c.f << " stab=" << c.stab_order
            << " v=" << (el.v ? str(*el.v) : std::string("-")) << ' ';
        if (el.survives()) out << "SURVIVES gcd=" << el.gcd << '\n';
        else {
            out << "ELIMINATED by " << el.verdict.failing();
            for (const auto& cl : el.verdict.clauses)
                if (!cl.ok) out << " [" << cl.details << ']';
            out << '\n';
        }
    }
    if (sum.candidates) out << "SUMMARY candidates=" << sum.candidates << " survive=" << sum.survive << " eliminated=" << sum.eliminated << '\n';
    return sum;
}

}
