#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace twisted {

using point_t = std::uint16_t;

// Image table. Products compose as functions: (a * b)(x) = a(b(x)).
class Perm {
public:
    Perm() = default;
    explicit Perm(std::size_t degree);
    explicit Perm(std::vector<point_t> images);

    std::size_t degree() const { return img_.size(); }
    point_t operator()(point_t x) const { return img_[x]; }
    const std::vector<point_t>& images() const { return img_; }

    friend Perm operator*(const Perm& a, const Perm& b);
    bool operator==(const Perm& o) const { return img_ == o.img_; }

    Perm inverse() const;
    Perm pow(long long k) const;
    std::uint64_t order() const;
    bool is_identity() const;
    bool is_bijection() const;

private:
    std::vector<point_t> img_;
};

struct PermHash {
    std::size_t operator()(const Perm& p) const;
};

std::vector<point_t> fixed_points(const Perm& p);

Perm conjugate(const Perm& x, const Perm& g); // g^-1 x g

}
