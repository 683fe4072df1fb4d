#include "twisted/perm.hpp"

#include <boost/functional/hash.hpp>

#include <numeric>
#include <stdexcept>

namespace twisted {

Perm::Perm(std::size_t degree) : img_(degree)
{
    if (degree > 65536) throw std::length_error("permutation degree exceeds 16-bit points");
    std::iota(img_.begin(), img_.end(), point_t(0));
}

Perm::Perm(std::vector<point_t> images) : img_(std::move(images)) {}

Perm operator*(const Perm& a, const Perm& b)
{
    if (a.degree() != b.degree()) throw std::invalid_argument("permutation degree mismatch");
    std::vector<point_t> r(a.degree());
    for (std::size_t x = 0; x < r.size(); ++x) r[x] = a.img_[b.img_[x]];
    return Perm(std::move(r));
}

Perm Perm::inverse() const
{
    std::vector<point_t> r(img_.size());
    for (std::size_t x = 0; x < r.size(); ++x) r[img_[x]] = point_t(x);
    return Perm(std::move(r));
}

Perm Perm::pow(long long k) const
{
    std::size_t n = img_.size();
    std::vector<point_t> r(n);
    std::vector<char> seen(n, 0);
    std::vector<point_t> cyc;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        cyc.clear();
        for (point_t x = point_t(s); !seen[x]; x = img_[x]) {
            seen[x] = 1;
            cyc.push_back(x);
        }
        long long len = (long long)cyc.size();
        long long sh = ((k % len) + len) % len;
        for (long long i = 0; i < len; ++i) r[cyc[i]] = cyc[(i + sh) % len];
    }
    return Perm(std::move(r));
}

std::uint64_t Perm::order() const
{
    std::size_t n = img_.size();
    std::vector<char> seen(n, 0);
    std::uint64_t o = 1;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::uint64_t len = 0;
        for (point_t x = point_t(s); !seen[x]; x = img_[x]) {
            seen[x] = 1;
            ++len;
        }
        o = std::lcm(o, len);
    }
    return o;
}

bool Perm::is_identity() const
{
    for (std::size_t x = 0; x < img_.size(); ++x)
        if (img_[x] != x) return false;
    return true;
}

bool Perm::is_bijection() const
{
    std::vector<char> hit(img_.size(), 0);
    for (point_t y : img_) {
        if (y >= img_.size() || hit[y]) return false;
        hit[y] = 1;
    }
    return true;
}

std::size_t PermHash::operator()(const Perm& p) const
{
    return boost::hash_range(p.images().begin(), p.images().end());
}

std::vector<point_t> fixed_points(const Perm& p)
{
    std::vector<point_t> r;
    for (std::size_t x = 0; x < p.degree(); ++x)
        if (p(point_t(x)) == x) r.push_back(point_t(x));
    return r;
}

Perm conjugate(const Perm& x, const Perm& g) { return g.inverse() * x * g; }

}
