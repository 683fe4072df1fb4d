#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace twisted {

class field_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// GF(p^e), p in {2,3}, e = 2n+1. Elements are coded as integers whose base-p
// digits are the polynomial coefficients (digit i = coefficient of x^i), so
// code order is the lexicographic order of the string c_{e-1}...c_0.
class FieldSpec {
public:
    // modulus: monic, coefficients low to high, length e+1
    FieldSpec(unsigned p, unsigned n, std::vector<unsigned> modulus);

    unsigned p() const { return p_; }
    unsigned n() const { return n_; }
    unsigned e() const { return e_; }
    unsigned q() const { return q_; }
    unsigned m() const { return m_; }
    const std::vector<unsigned>& modulus() const { return modulus_; }

    using elem = std::uint16_t;

    elem add(elem x, elem y) const { return add_[x * q_ + y]; }
    elem sub(elem x, elem y) const { return add_[x * q_ + neg_[y]]; }
    elem neg(elem x) const { return neg_[x]; }
    elem mul(elem x, elem y) const { return mul_[x * q_ + y]; }
    elem inv(elem x) const;
    elem pow(elem x, long long k) const;
    elem twist(elem x) const { return twist_[x]; }
    elem from_int(long long c) const; // image of an integer in the prime field
    elem primitive() const { return primitive_; }

    std::vector<unsigned> coeffs(elem x) const;
    elem from_coeffs(const std::vector<unsigned>& c) const;
    std::string render(elem x) const;

    bool operator==(const FieldSpec& o) const { return p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_; }

private:
    unsigned p_, n_, e_, q_, m_;
    std::vector<unsigned> modulus_;
    std::vector<elem> add_, mul_, neg_, inv_, twist_;
    elem primitive_ = 0;

    elem slow_mul(elem x, elem y) const;
};

bool is_irreducible(unsigned p, const std::vector<unsigned>& poly);

// Shipped field for a supported q; throws field_error otherwise.
const FieldSpec& field_for_q(unsigned q);
bool supported_q(unsigned q);

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(const FieldSpec& f, FieldSpec::elem v) : f_(&f), v_(v) {}

    const FieldSpec& spec() const { return *f_; }
    FieldSpec::elem code() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    friend FieldElement operator+(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y);
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y);
    FieldElement operator-() const { return {*f_, f_->neg(v_)}; }
    bool operator==(const FieldElement& o) const { return v_ == o.v_ && (f_ == o.f_ || *f_ == *o.f_); }

    std::string str() const { return f_->render(v_); }

private:
    const FieldSpec* f_ = nullptr;
    FieldSpec::elem v_ = 0;
};

FieldElement add(const FieldElement& x, const FieldElement& y);
FieldElement mul(const FieldElement& x, const FieldElement& y);
FieldElement inv(const FieldElement& x);
FieldElement pow(const FieldElement& x, long long k);
FieldElement twist(const FieldElement& x);

std::vector<FieldElement> enumerate(const FieldSpec& f, unsigned cap = 1u << 16);

}
