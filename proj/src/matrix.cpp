#include "twisted/matrix.hpp"

#include <stdexcept>

namespace twisted {

Matrix Matrix::identity(const FieldSpec& f, unsigned n)
{
    Matrix m(f, n);
    for (unsigned i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

Matrix Matrix::diag(const FieldSpec& f, const std::vector<elem>& d)
{
    Matrix m(f, unsigned(d.size()));
    for (unsigned i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix operator*(const Matrix& x, const Matrix& y)
{
    if (x.n_ != y.n_) throw std::invalid_argument("matrix size mismatch");
    const FieldSpec& f = *x.f_;
    unsigned n = x.n_;
    Matrix r(f, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < n; ++k) {
            auto a = x(i, k);
            if (!a) continue;
            for (unsigned j = 0; j < n; ++j) r(i, j) = f.add(r(i, j), f.mul(a, y(k, j)));
        }
    return r;
}

std::vector<Matrix::elem> Matrix::apply(const std::vector<elem>& v) const
{
    const FieldSpec& f = *f_;
    std::vector<elem> r(n_, 0);
    for (unsigned i = 0; i < n_; ++i) {
        elem s = 0;
        for (unsigned j = 0; j < n_; ++j) s = f.add(s, f.mul(a_[i * n_ + j], v[j]));
        r[i] = s;
    }
    return r;
}

Matrix Matrix::inverse() const
{
    const FieldSpec& f = *f_;
    unsigned n = n_;
    Matrix a = *this, r = identity(f, n);
    for (unsigned c = 0; c < n; ++c) {
        unsigned piv = c;
        while (piv < n && a(piv, c) == 0) ++piv;
        if (piv == n) throw std::domain_error("singular matrix");
        for (unsigned j = 0; j < n; ++j) {
            std::swap(a(c, j), a(piv, j));
            std::swap(r(c, j), r(piv, j));
        }
        elem s = f.inv(a(c, c));
        for (unsigned j = 0; j < n; ++j) {
            a(c, j) = f.mul(a(c, j), s);
            r(c, j) = f.mul(r(c, j), s);
        }
        for (unsigned i = 0; i < n; ++i) {
            if (i == c || a(i, c) == 0) continue;
            elem t = a(i, c);
            for (unsigned j = 0; j < n; ++j) {
                a(i, j) = f.sub(a(i, j), f.mul(t, a(c, j)));
                r(i, j) = f.sub(r(i, j), f.mul(t, r(c, j)));
            }
        }
    }
    return r;
}

bool Matrix::is_identity() const { return *this == identity(*f_, n_); }

std::vector<std::vector<FieldSpec::elem>> nullspace(const FieldSpec& f, std::vector<std::vector<FieldSpec::elem>> rows,
                                                    unsigned ncols)
{
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (unsigned c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        auto s = f.inv(rows[r][c]);
        for (auto& x : rows[r]) x = f.mul(x, s);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            auto t = rows[i][c];
            for (unsigned j = 0; j < ncols; ++j) rows[i][j] = f.sub(rows[i][j], f.mul(t, rows[r][j]));
        }
        pivot_col.push_back(int(c));
        ++r;
    }
    std::vector<char> is_pivot(ncols, 0);
    for (int c : pivot_col) is_pivot[c] = 1;
    std::vector<std::vector<FieldSpec::elem>> basis;
    for (unsigned free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<FieldSpec::elem> v(ncols, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = f.neg(rows[i][free]);
        basis.push_back(v);
    }
    return basis;
}

}
