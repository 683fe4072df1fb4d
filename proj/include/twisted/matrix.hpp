#pragma once

#include "twisted/field.hpp"

#include <vector>

namespace twisted {

// square matrix over a shipped field, row-major element codes
class Matrix {
public:
    using elem = FieldSpec::elem;

    Matrix() = default;
    Matrix(const FieldSpec& f, unsigned n) : f_(&f), n_(n), a_(std::size_t(n) * n, 0) {}

    static Matrix identity(const FieldSpec& f, unsigned n);
    static Matrix diag(const FieldSpec& f, const std::vector<elem>& d);

    const FieldSpec& field() const { return *f_; }
    unsigned size() const { return n_; }
    elem operator()(unsigned i, unsigned j) const { return a_[i * n_ + j]; }
    elem& operator()(unsigned i, unsigned j) { return a_[i * n_ + j]; }

    friend Matrix operator*(const Matrix& x, const Matrix& y);
    bool operator==(const Matrix& o) const { return n_ == o.n_ && a_ == o.a_; }

    std::vector<elem> apply(const std::vector<elem>& v) const;
    Matrix inverse() const;
    bool is_identity() const;

private:
    const FieldSpec* f_ = nullptr;
    unsigned n_ = 0;
    std::vector<elem> a_;
};

// basis of {v : M v = 0} for an r x n matrix given row-major
std::vector<std::vector<FieldSpec::elem>> nullspace(const FieldSpec& f, std::vector<std::vector<FieldSpec::elem>> rows,
                                                    unsigned ncols);

}
