#include "twisted/action.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace twisted {

namespace {

using imat = std::array<std::array<long, 7>, 7>;

imat unit(int i, int j, long c = 1)
{
    imat m{};
    m[i - 1][j - 1] = c;
    return m;
}

imat operator+(imat a, const imat& b)
{
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) a[i][j] += b[i][j];
    return a;
}

imat operator*(const imat& a, const imat& b)
{
    imat r{};
    for (int i = 0; i < 7; ++i)
        for (int k = 0; k < 7; ++k)
            for (int j = 0; j < 7; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

imat bracket(const imat& a, const imat& b)
{
    imat x = a * b, y = b * a;
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) x[i][j] -= y[i][j];
    return x;
}

imat exact_div(imat a, long d)
{
    for (auto& row : a)
        for (auto& x : row) {
            if (x % d) throw std::logic_error("Chevalley basis entry not divisible");
            x /= d;
        }
    return a;
}

Matrix reduce(const FieldSpec& f, const imat& a)
{
    Matrix m(f, 7);
    for (unsigned i = 0; i < 7; ++i)
        for (unsigned j = 0; j < 7; ++j) m(i, j) = f.from_int(a[i][j]);
    return m;
}

enum { R_A, R_B, R_AB, R_2AB, R_3AB, R_3A2B };

std::string render_triple(const FieldSpec& f, ucode x)
{
    unsigned q = f.q();
    return "x(" + f.render(FieldSpec::elem(x / (q * q))) + "," + f.render(FieldSpec::elem(x / q % q)) + "," +
           f.render(FieldSpec::elem(x % q)) + ")";
}

std::string render_pair(const FieldSpec& f, ucode x)
{
    unsigned q = f.q();
    return "x(" + f.render(FieldSpec::elem(x / q)) + "," + f.render(FieldSpec::elem(x % q)) + ")";
}

}

MatrixModel::MatrixModel(Family fam, const FieldSpec& f, bool perturb) : f_(&f), law_(fam, f), perturb_(perturb)
{
    if (fam != Family::Ree) return;
    // Chevalley basis of the 7-dim G2 module; weights 2a+b, a+b, a, 0, -a, -a-b, -2a-b
    imat ea = unit(1, 2) + unit(3, 4) + unit(4, 5, 2) + unit(6, 7);
    imat eb = unit(2, 3) + unit(5, 6);
    imat eab = bracket(ea, eb);
    imat e2ab = exact_div(bracket(ea, eab), 2);
    imat e3ab = exact_div(bracket(ea, e2ab), 3);
    imat e3a2b = bracket(eb, e3ab);
    for (const imat& e : {ea, eb, eab, e2ab, e3ab, e3a2b}) roots_.push_back({reduce(f, e), reduce(f, exact_div(e * e, 2))});
}

Matrix MatrixModel::root_element(int r, FieldSpec::elem t) const
{
    const FieldSpec& f = *f_;
    Matrix m = Matrix::identity(f, 7);
    auto t2 = f.mul(t, t);
    for (unsigned i = 0; i < 7; ++i)
        for (unsigned j = 0; j < 7; ++j)
            m(i, j) = f.add(m(i, j), f.add(f.mul(roots_[r].e(i, j), t), f.mul(roots_[r].half_sq(i, j), t2)));
    return m;
}

Matrix MatrixModel::map(const ReeTriple& x) const
{
    const FieldSpec& f = *f_;
    if (family() != Family::Ree) throw std::invalid_argument("Ree element given to a Suzuki model");
    long long m = f.m();
    auto Y = [&](FieldSpec::elem b) {
        return root_element(R_AB, f.neg(b)) * root_element(R_3AB, f.pow(b, m));
    };
    auto Z = [&](FieldSpec::elem c) {
        return root_element(R_2AB, c) * root_element(R_3A2B, f.pow(c, m));
    };
    auto a = x.alpha.code(), b = x.beta.code(), c = x.gamma.code();
    Matrix X = root_element(R_A, a) * root_element(R_B, f.pow(a, m)) * root_element(R_3AB, f.neg(f.pow(a, 3 + m))) *
               root_element(R_3A2B, f.neg(f.pow(a, 3 + 2 * m))) * Y(f.pow(a, 1 + m)) * Z(f.pow(a, 2 + m));
    Matrix r = Z(f.add(c, f.mul(a, b))) * Y(b) * X;
    if (perturb_) r(0, 6) = f.add(r(0, 6), f.mul(a, a));
    return r;
}

Matrix MatrixModel::map(const SuzukiPair& x) const
{
    const FieldSpec& f = *f_;
    if (family() != Family::Suzuki) throw std::invalid_argument("Suzuki element given to a Ree model");
    long long s = f.m();
    auto a = x.a.code(), b = x.b.code();
    Matrix r = Matrix::identity(f, 4);
    r(1, 0) = a;
    r(2, 0) = b;
    r(2, 1) = f.pow(a, s);
    r(3, 0) = f.add(f.add(f.mul(a, b), f.pow(a, s + 2)), f.pow(b, s));
    r(3, 1) = f.add(b, f.pow(a, s + 1));
    r(3, 2) = a;
    if (perturb_) r(3, 0) = f.add(r(3, 0), f.pow(a, 3));
    return r;
}

Matrix MatrixModel::map_code(ucode x) const
{
    if (family() == Family::Ree) return map(law_.ree(x));
    return map(law_.suzuki(x));
}

Matrix MatrixModel::torus(FieldSpec::elem t) const
{
    const FieldSpec& f = *f_;
    if (t == 0) throw field_error("torus parameter must be nonzero");
    long long m = f.m();
    if (family() == Family::Ree)
        return Matrix::diag(f, {f.pow(t, -2 - m), f.pow(t, -1 - m), f.pow(t, -1), 1, t, f.pow(t, 1 + m), f.pow(t, 2 + m)});
    // diag(1, t^-1, t^-1-s, t^-2-s) rescaled to determinant 1 so that tau inverts it exactly
    long long h = m / 2;
    return Matrix::diag(f, {f.pow(t, 1 + h), f.pow(t, h), f.pow(t, -h), f.pow(t, -1 - h)});
}

Matrix MatrixModel::weyl() const
{
    const FieldSpec& f = *f_;
    unsigned n = dim();
    Matrix w(f, n);
    for (unsigned i = 0; i < n; ++i)
        w(i, n - 1 - i) = (family() == Family::Ree && i % 2 == 1) ? f.neg(1) : 1;
    return w;
}

std::vector<MatrixGenerator> MatrixModel::generators() const
{
    std::vector<MatrixGenerator> g;
    for (ucode x : law_.generators()) {
        std::string label = family() == Family::Ree ? render_triple(*f_, x) : render_pair(*f_, x);
        g.push_back({map_code(x), label, GenKind::Unipotent});
    }
    auto t0 = f_->primitive();
    g.push_back({torus(t0), "k(" + f_->render(t0) + ")", GenKind::Torus});
    g.push_back({weyl(), "tau", GenKind::Weyl});
    return g;
}

std::vector<MatrixGenerator> build_generators(const FieldSpec& f, Family fam) { return MatrixModel(fam, f).generators(); }

std::size_t expected_degree(Family fam, unsigned q)
{
    std::size_t Q = q;
    return fam == Family::Ree ? Q * Q * Q + 1 : Q * Q + 1;
}

namespace {

Report matrix_checks(const MatrixModel& model, const ActionOptions& opt)
{
    Report rep;
    const FieldSpec& f = model.field();
    const UnipotentLaw& law = model.law();
    std::mt19937_64 rng(opt.seed);

    rep.add("gen.identity", model.map_code(0).is_identity(), "map(1) = I");

    Matrix w = model.weyl();
    rep.add("gen.tau_involution", (w * w).is_identity(), "tau^2 = I");

    bool inverts = true;
    for (unsigned t = 1; t < f.q() && inverts; ++t) {
        Matrix k = model.torus(FieldSpec::elem(t));
        inverts = w * k * w == model.torus(f.inv(FieldSpec::elem(t)));
    }
    rep.add("gen.tau_inverts_torus", inverts, "tau k(t) tau = k(t)^-1 for all t");

    std::uint64_t N = law.order();
    std::uint64_t hom_bad = 0, hom_total = 0;
    std::vector<Matrix> cache;
    bool exhaustive = N * N <= 5000;
    if (exhaustive) {
        for (ucode x = 0; x < N; ++x) cache.push_back(model.map_code(x));
        for (ucode x = 0; x < N; ++x)
            for (ucode y = 0; y < N; ++y, ++hom_total)
                if (!(cache[x] * cache[y] == cache[law.mul(x, y)])) ++hom_bad;
    } else {
        for (unsigned s = 0; s < opt.hom_samples; ++s, ++hom_total) {
            ucode x = ucode(rng() % N), y = ucode(rng() % N);
            if (!(model.map_code(x) * model.map_code(y) == model.map_code(law.mul(x, y)))) ++hom_bad;
        }
    }
    rep.add("gen.homomorphism", hom_bad == 0,
            std::to_string(hom_total - hom_bad) + "/" + std::to_string(hom_total) + (exhaustive ? " pairs (exhaustive)" : " random pairs"));

    std::uint64_t conj_bad = 0, conj_total = 0;
    for (unsigned s = 0; s < 200; ++s, ++conj_total) {
        ucode x = ucode(rng() % N);
        auto t = FieldSpec::elem(1 + rng() % (f.q() - 1));
        Matrix k = model.torus(t);
        if (!(k.inverse() * model.map_code(x) * k == model.map_code(law.conj_k(x, t)))) ++conj_bad;
    }
    rep.add("gen.torus_conjugation", conj_bad == 0,
            std::to_string(conj_total - conj_bad) + "/" + std::to_string(conj_total) + " random (x,t)");
    return rep;
}

}

std::uint64_t Action::key(const std::vector<FieldSpec::elem>& v) const
{
    std::uint64_t k = 0;
    for (std::size_t i = v.size(); i-- > 0;) k = k * q() + v[i];
    return k;
}

bool Action::normalize(std::vector<FieldSpec::elem>& v) const
{
    const FieldSpec& f = field();
    for (auto x : v)
        if (x) {
            auto s = f.inv(x);
            for (auto& y : v) y = f.mul(y, s);
            return true;
        }
    return false;
}

Report Action::construct(const ActionOptions& opt)
{
    Report rep = matrix_checks(model_, opt);
    gens_ = model_.generators();
    const FieldSpec& f = field();
    unsigned n = model_.dim();
    std::size_t want = expected_degree(family(), q());
    if (want > 65536) throw cap_exceeded("point action degree " + std::to_string(want) + " exceeds the 16-bit point cap");

    // common fixed 1-space of the unipotent generators
    std::vector<std::vector<FieldSpec::elem>> rows;
    for (const auto& g : gens_) {
        if (g.kind != GenKind::Unipotent) continue;
        for (unsigned i = 0; i < n; ++i) {
            std::vector<FieldSpec::elem> r(n);
            for (unsigned j = 0; j < n; ++j) r[j] = i == j ? f.sub(g.m(i, j), 1) : g.m(i, j);
            rows.push_back(r);
        }
    }
    auto fixed = nullspace(f, rows, n);
    rep.add("action.unique_seed", fixed.size() == 1, "common fixed space of dimension " + std::to_string(fixed.size()));
    if (fixed.size() != 1) {
        rep.skip("action.degree", "no seed");
        return rep;
    }

    auto seed = fixed[0];
    normalize(seed);
    coords_.assign(seed.begin(), seed.end());
    index_.clear();
    index_[key(seed)] = 0;
    std::vector<std::vector<point_t>> imgs(gens_.size());
    tree_gen_.assign(1, -1);
    tree_parent_.assign(1, 0);
    bool overflow = false;
    for (std::size_t head = 0; head < index_.size() && !overflow; ++head) {
        std::vector<FieldSpec::elem> p(coords_.begin() + head * n, coords_.begin() + (head + 1) * n);
        for (std::size_t gi = 0; gi < gens_.size(); ++gi) {
            auto img = gens_[gi].m.apply(p);
            normalize(img);
            auto k = key(img);
            auto it = index_.find(k);
            std::uint32_t idx;
            if (it == index_.end()) {
                if (index_.size() >= want) {
                    overflow = true;
                    break;
                }
                idx = std::uint32_t(index_.size());
                index_.emplace(k, idx);
                coords_.insert(coords_.end(), img.begin(), img.end());
                tree_gen_.push_back(std::int32_t(gi));
                tree_parent_.push_back(point_t(head));
            } else {
                idx = it->second;
            }
            imgs[gi].push_back(point_t(idx));
        }
    }
    degree_ = index_.size();
    rep.add("action.degree", !overflow && degree_ == want,
            "orbit of seed " + std::string(overflow ? "exceeds " : "has size " + std::to_string(degree_) + ", expected ") +
                std::to_string(want));
    if (overflow || degree_ != want) return rep;

    perms_.clear();
    for (auto& im : imgs) perms_.emplace_back(std::move(im));
    bool bij = true;
    for (const auto& p : perms_) bij = bij && p.is_bijection();
    rep.add("action.bijective", bij, "generator images are permutations");

    bool fixes = true;
    for (const auto& p : stabilizer_perms()) fixes = fixes && p(0) == 0;
    rep.add("action.stabilizer_fixes_seed", fixes, "Q and K fix point 0");

    rep.append(two_transitivity_certificate(*this));

    std::uint64_t known = 0;
    if (family() == Family::Suzuki && q() == 8) known = 29120;
    if (family() == Family::Ree && q() == 3) known = 1512;
    if (known) {
        auto g = enumerate_group(perms_, degree_, 2 * known);
        rep.add("action.group_order", !g.overflow && g.order == known,
                "closure " + (g.overflow ? std::string("overflow") : std::to_string(g.order)) + ", expected " + std::to_string(known));
    } else {
        rep.skip("action.group_order", "closure not attempted at this q");
    }
    return rep;
}

Action Action::build(Family fam, unsigned q, const ActionOptions& opt)
{
    const FieldSpec& f = field_for_q(q);
    if (f.p() != family_char(fam))
        throw std::invalid_argument(std::string("q = ") + std::to_string(q) + " does not match family " + family_name(fam));
    Action a(MatrixModel(fam, f, opt.perturb));
    a.gate_ = a.construct(opt);
    if (!a.gate_.ok()) throw validation_failure("generator validation gate failed: " + a.gate_.first_failure());
    return a;
}

Report Action::gate_only(Family fam, unsigned q, const ActionOptions& opt)
{
    const FieldSpec& f = field_for_q(q);
    if (f.p() != family_char(fam))
        throw std::invalid_argument(std::string("q = ") + std::to_string(q) + " does not match family " + family_name(fam));
    Action a(MatrixModel(fam, f, opt.perturb));
    return a.construct(opt);
}

std::vector<Perm> Action::stabilizer_perms() const
{
    std::vector<Perm> r;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].kind != GenKind::Weyl) r.push_back(perms_[i]);
    return r;
}

std::vector<Perm> Action::unipotent_perms() const
{
    std::vector<Perm> r;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].kind == GenKind::Unipotent) r.push_back(perms_[i]);
    return r;
}

std::vector<Perm> Action::torus_perms() const
{
    std::vector<Perm> r;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].kind == GenKind::Torus) r.push_back(perms_[i]);
    return r;
}

std::vector<FieldSpec::elem> Action::point(point_t i) const
{
    unsigned n = model_.dim();
    return {coords_.begin() + std::size_t(i) * n, coords_.begin() + (std::size_t(i) + 1) * n};
}

std::optional<point_t> Action::find_point(std::vector<FieldSpec::elem> v) const
{
    if (!normalize(v)) return std::nullopt;
    auto it = index_.find(key(v));
    if (it == index_.end()) return std::nullopt;
    return point_t(it->second);
}

Perm Action::perm_of(const Matrix& m) const
{
    std::vector<point_t> img(degree_);
    for (std::size_t i = 0; i < degree_; ++i) {
        auto p = find_point(m.apply(point(point_t(i))));
        if (!p) throw std::invalid_argument("matrix does not preserve the point set");
        img[i] = *p;
    }
    return Perm(std::move(img));
}

Perm Action::transversal_to(point_t target) const
{
    if (target >= degree_) throw std::out_of_range("target point out of range");
    Perm r(degree_);
    for (point_t x = target; x != 0; x = tree_parent_[x]) r = r * perms_[tree_gen_[x]];
    return r;
}

std::string Action::dump() const
{
    std::ostringstream os;
    os << "family=" << family_name(family()) << " q=" << q() << " degree=" << degree_ << '\n';
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        os << "gen " << i << ' ' << gens_[i].label << ':';
        for (point_t y : perms_[i].images()) os << ' ' << y;
        os << '\n';
    }
    for (std::size_t i = 0; i < degree_; ++i) {
        os << i;
        for (auto c : point(point_t(i))) os << ' ' << field().render(c);
        os << '\n';
    }
    return os.str();
}

std::vector<point_t> orbit(const std::vector<Perm>& gens, point_t start, std::size_t degree)
{
    std::vector<char> seen(degree, 0);
    std::vector<point_t> out{start};
    seen[start] = 1;
    for (std::size_t head = 0; head < out.size(); ++head)
        for (const auto& g : gens) {
            point_t y = g(out[head]);
            if (!seen[y]) {
                seen[y] = 1;
                out.push_back(y);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

Report two_transitivity_certificate(std::size_t degree, const std::vector<Perm>& full, const std::vector<Perm>& stab)
{
    Report rep;
    auto o = orbit(full, 0, degree);
    rep.add("cert.transitive", o.size() == degree,
            "orbit of 0 under all generators has size " + std::to_string(o.size()) + " of " + std::to_string(degree));
    if (degree < 2) {
        rep.skip("cert.stabilizer_transitive", "degree < 2");
        return rep;
    }
    auto s = orbit(stab, 1, degree);
    bool ok = s.size() == degree - 1 && !std::binary_search(s.begin(), s.end(), point_t(0));
    rep.add("cert.stabilizer_transitive", ok,
            "orbit of 1 under stabilizer generators has size " + std::to_string(s.size()) + " of " + std::to_string(degree - 1));
    return rep;
}

Report two_transitivity_certificate(const Action& a)
{
    return two_transitivity_certificate(a.degree(), a.perms(), a.stabilizer_perms());
}

std::optional<std::vector<Perm>> group_elements(const std::vector<Perm>& gens, std::size_t degree, std::uint64_t cap)
{
    std::unordered_set<Perm, PermHash> seen;
    std::vector<Perm> out{Perm(degree)};
    seen.insert(out[0]);
    for (std::size_t head = 0; head < out.size(); ++head)
        for (const auto& g : gens) {
            Perm y = out[head] * g;
            if (seen.insert(y).second) {
                if (out.size() >= cap) return std::nullopt;
                out.push_back(std::move(y));
            }
        }
    return out;
}

GroupSize enumerate_group(const std::vector<Perm>& gens, std::size_t degree, std::uint64_t cap)
{
    auto el = group_elements(gens, degree, cap);
    if (!el) return {true, 0};
    return {false, el->size()};
}

Perm random_element(const std::vector<Perm>& gens, std::mt19937_64& rng, unsigned length)
{
    Perm r(gens.at(0).degree());
    for (unsigned i = 0; i < length; ++i) r = r * gens[rng() % gens.size()];
    return r;
}

}
