#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twisted::sieve {

using BigInt = boost::multiprecision::cpp_int;

class sieve_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Socle { Ree, Suzuki, G2, D4Twisted, F4Twisted, F4, E6, E6Twisted, E7, E8 };

const char* socle_name(Socle s); // 2G2, 2B2, G2, 3D4, 2F4, F4, E6, 2E6, E7, E8
Socle parse_socle(const std::string& s);

// prime p and exponent e with q = p^e; throws unless q is a prime power > 1
std::pair<std::uint64_t, unsigned> prime_power(const BigInt& q);

BigInt group_order(Socle s, const BigInt& q);

std::pair<BigInt, BigInt> p_part(const BigInt& n, const BigInt& p);

struct VklResult {
    bool feasible = false;
    BigInt r, b;
    std::string reason; // failing clause when infeasible
};

VklResult params_from_vkl(const BigInt& v, const BigInt& k, const BigInt& lambda);

struct Clause {
    std::string name;
    bool ok;
    std::string details;
};

struct Verdict {
    std::vector<Clause> clauses;
    bool ok() const;
    std::string failing() const; // comma separated names, empty when ok
};

// gcd(r, lambda) = 1, r | gcd(|G_a|, v - 1), lambda v < r^2
Verdict flag_tx_feasible(const BigInt& r, const BigInt& lambda, const BigInt& stab_order, const BigInt& v);

struct Candidate {
    Socle family = Socle::Ree;
    BigInt q, f, stab_order;
    std::optional<bool> parabolic; // unknown: the p'-bound is not applied
};

BigInt candidate_group_order(const Candidate& c);

// |G| < |G_a|^3, and |G| < |G_a| |G_a|_{p'}^2 for non-parabolic G_a
Verdict order_bounds(const Candidate& c);

// all checks a point stabilizer must pass: divisibility, both order bounds and
// gcd(|G_a|, v - 1)^2 > v (needed since r divides that gcd and r^2 > v)
struct Elimination {
    Verdict verdict;
    std::optional<BigInt> v;
    BigInt gcd;
    bool survives() const { return verdict.ok(); }
};

Elimination eliminate(const Candidate& c);

std::vector<std::uint64_t> ree_k_enumeration(std::uint64_t q);

struct CaseLine {
    std::string label; // f and sign
    BigInt f;
    Elimination result;
};

struct SuzukiCase {
    unsigned case_no = 0;
    bool vacuous = false;
    std::vector<CaseLine> lines;
    bool survives() const;
};

// q in {8, 32, 128, 512}; every divisor f of e is tried
SuzukiCase suzuki_case_elimination(std::uint64_t q, unsigned case_no);

struct E6Gcd {
    BigInt d, dprime, gcd, expected, v;
    bool identity = false;
    bool square_below_v = false;
};

E6Gcd e6_subdegree_gcd(std::uint64_t q);

struct F4Check {
    std::string label;
    BigInt stab_order, v, expected_v;
    bool ok = false;
};

// two point-stabilizer orders and their indices in F4(q)
std::vector<F4Check> f4_spot_checks(std::uint64_t q);

struct MaximalSubgroup {
    std::string name, structure;
    BigInt order;
    bool parabolic = false;
};

// M3 = (Z2^2 x D_{(q+1)/2}) : Z3, where D_{(q+1)/2} is read as dihedral of order (q+1)/2
BigInt ree_m3_dihedral_order(const BigInt& q);

std::vector<MaximalSubgroup> ree_maximal_subgroups(std::uint64_t q);

struct TableLine {
    MaximalSubgroup m;
    BigInt f;
    Elimination result;
};

std::vector<TableLine> ree_table_elimination(std::uint64_t q);

// batch lines: family q f stab_order [parabolic|nonparabolic]; '#' starts a comment.
// stab_order may be a product of powers such as 4*7*2^6.
BigInt parse_factored(const std::string& s);

struct BatchSummary {
    std::size_t candidates = 0, survive = 0, eliminated = 0;
};

// throws sieve_error("line N: ...") on malformed input
BatchSummary run_batch(std::istream& in, std::ostream& out);

}
