#include "twisted/field.hpp"

#include <map>
#include <mutex>

namespace twisted {

namespace {

unsigned ipow(unsigned b, unsigned e)
{
    unsigned r = 1;
    while (e--) r *= b;
    return r;
}

// remainder of a by monic b over GF(p); both low to high
std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& b, unsigned p)
{
    std::size_t db = b.size() - 1;
    while (a.size() > db) {
        unsigned c = a.back() % p;
        std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] = (a[shift + i] + p * p - c * b[i] % p) % p;
        a.pop_back();
    }
    return a;
}

}

bool is_irreducible(unsigned p, const std::vector<unsigned>& poly)
{
    std::size_t deg = poly.size() - 1;
    if (deg < 1 || poly.back() % p == 0) return false;
    if (deg == 1) return true;
    // trial division by every monic polynomial of degree 1..deg/2
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        unsigned count = ipow(p, unsigned(d));
        for (unsigned code = 0; code < count; ++code) {
            std::vector<unsigned> f(d + 1);
            unsigned c = code;
            for (std::size_t i = 0; i < d; ++i) { f[i] = c % p; c /= p; }
            f[d] = 1;
            auto r = poly_mod(poly, f, p);
            bool zero = true;
            for (unsigned x : r) zero = zero && (x % p == 0);
            if (zero) return false;
        }
    }
    return true;
}

FieldSpec::FieldSpec(unsigned p, unsigned n, std::vector<unsigned> modulus)
    : p_(p), n_(n), e_(2 * n + 1), q_(ipow(p, 2 * n + 1)), m_(ipow(p, n + 1)), modulus_(std::move(modulus))
{
    if (p != 2 && p != 3) throw field_error("characteristic must be 2 or 3");
    if (modulus_.size() != e_ + 1 || modulus_.back() != 1)
        throw field_error("modulus must be monic of degree " + std::to_string(e_));
    for (unsigned c : modulus_)
        if (c >= p) throw field_error("modulus coefficient out of range");
    if (!is_irreducible(p, modulus_)) throw field_error("modulus is reducible");
    if (q_ > (1u << 16)) throw field_error("field too large");

    add_.resize(std::size_t(q_) * q_);
    mul_.resize(std::size_t(q_) * q_);
    neg_.resize(q_);
    for (unsigned x = 0; x < q_; ++x) {
        auto cx = coeffs(elem(x));
        std::vector<unsigned> cn(e_);
        for (unsigned i = 0; i < e_; ++i) cn[i] = (p_ - cx[i]) % p_;
        neg_[x] = from_coeffs(cn);
        for (unsigned y = 0; y < q_; ++y) {
            auto cy = coeffs(elem(y));
            std::vector<unsigned> s(e_);
            for (unsigned i = 0; i < e_; ++i) s[i] = (cx[i] + cy[i]) % p_;
            add_[x * q_ + y] = from_coeffs(s);
            mul_[x * q_ + y] = slow_mul(elem(x), elem(y));
        }
    }

    inv_.assign(q_, 0);
    for (unsigned x = 1; x < q_; ++x)
        for (unsigned y = 1; y < q_; ++y)
            if (mul_[x * q_ + y] == 1) { inv_[x] = elem(y); break; }

    twist_.resize(q_);
    for (unsigned x = 0; x < q_; ++x) twist_[x] = pow(elem(x), m_);

    for (unsigned g = 1; g < q_ && primitive_ == 0; ++g) {
        unsigned order = 1;
        elem acc = elem(g);
        while (acc != 1) { acc = mul(acc, elem(g)); ++order; }
        if (order == q_ - 1) primitive_ = elem(g);
    }
}

FieldSpec::elem FieldSpec::slow_mul(elem x, elem y) const
{
    auto a = coeffs(x), b = coeffs(y);
    std::vector<unsigned> r(2 * e_ - 1, 0);
    for (unsigned i = 0; i < e_; ++i)
        for (unsigned j = 0; j < e_; ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p_;
    r = poly_mod(r, modulus_, p_);
    r.resize(e_, 0);
    return from_coeffs(r);
}

FieldSpec::elem FieldSpec::inv(elem x) const
{
    if (x == 0) throw field_error("zero is not invertible");
    return inv_[x];
}

FieldSpec::elem FieldSpec::pow(elem x, long long k) const
{
    if (k < 0) {
        x = inv(x);
        k = -k;
    }
    elem r = 1;
    while (k) {
        if (k & 1) r = mul(r, x);
        x = mul(x, x);
        k >>= 1;
    }
    return r;
}

FieldSpec::elem FieldSpec::from_int(long long c) const
{
    long long r = c % (long long)p_;
    if (r < 0) r += p_;
    return elem(r);
}

std::vector<unsigned> FieldSpec::coeffs(elem x) const
{
    std::vector<unsigned> c(e_);
    unsigned v = x;
    for (unsigned i = 0; i < e_; ++i) { c[i] = v % p_; v /= p_; }
    return c;
}

FieldSpec::elem FieldSpec::from_coeffs(const std::vector<unsigned>& c) const
{
    unsigned v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = v * p_ + c[i] % p_;
    return elem(v);
}

std::string FieldSpec::render(elem x) const
{
    auto c = coeffs(x);
    std::string s;
    for (std::size_t i = e_; i-- > 0;) s += char('0' + c[i]);
    return s;
}

namespace {

struct Shipped {
    unsigned p, n;
    std::vector<unsigned> modulus;
};

const std::map<unsigned, Shipped>& shipped()
{
    static const std::map<unsigned, Shipped> t = {
        {3, {3, 0, {0, 1}}},
        {27, {3, 1, {1, 2, 0, 1}}},
        {243, {3, 2, {1, 2, 0, 0, 0, 1}}},
        {8, {2, 1, {1, 1, 0, 1}}},
        {32, {2, 2, {1, 0, 1, 0, 0, 1}}},
        {128, {2, 3, {1, 1, 0, 0, 0, 0, 0, 1}}},
    };
    return t;
}

}

bool supported_q(unsigned q) { return shipped().count(q) != 0; }

const FieldSpec& field_for_q(unsigned q)
{
    static std::mutex mu;
    static std::map<unsigned, std::unique_ptr<FieldSpec>> cache;
    auto it = shipped().find(q);
    if (it == shipped().end()) throw field_error("unsupported field order " + std::to_string(q));
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[q];
    if (!slot) slot = std::make_unique<FieldSpec>(it->second.p, it->second.n, it->second.modulus);
    return *slot;
}

namespace {

void same_field(const FieldElement& x, const FieldElement& y)
{
    if (&x.spec() != &y.spec() && !(x.spec() == y.spec())) throw field_error("field mismatch");
}

}

FieldElement operator+(const FieldElement& x, const FieldElement& y)
{
    same_field(x, y);
    return {*x.f_, x.f_->add(x.v_, y.v_)};
}

FieldElement operator-(const FieldElement& x, const FieldElement& y)
{
    same_field(x, y);
    return {*x.f_, x.f_->sub(x.v_, y.v_)};
}

FieldElement operator*(const FieldElement& x, const FieldElement& y)
{
    same_field(x, y);
    return {*x.f_, x.f_->mul(x.v_, y.v_)};
}

FieldElement add(const FieldElement& x, const FieldElement& y) { return x + y; }
FieldElement mul(const FieldElement& x, const FieldElement& y) { return x * y; }
FieldElement inv(const FieldElement& x) { return {x.spec(), x.spec().inv(x.code())}; }
FieldElement pow(const FieldElement& x, long long k) { return {x.spec(), x.spec().pow(x.code(), k)}; }
FieldElement twist(const FieldElement& x) { return {x.spec(), x.spec().twist(x.code())}; }

std::vector<FieldElement> enumerate(const FieldSpec& f, unsigned cap)
{
    if (f.q() > cap) throw field_error("field order exceeds enumeration cap");
    std::vector<FieldElement> out;
    out.reserve(f.q());
    for (unsigned x = 0; x < f.q(); ++x) out.emplace_back(f, FieldSpec::elem(x));
    return out;
}

}
