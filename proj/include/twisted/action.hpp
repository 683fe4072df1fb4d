#pragma once

#include "twisted/matrix.hpp"
#include "twisted/perm.hpp"
#include "twisted/report.hpp"
#include "twisted/unipotent.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

namespace twisted {

enum class GenKind { Unipotent, Torus, Weyl };

struct MatrixGenerator {
    Matrix m;
    std::string label;
    GenKind kind;
};

// Matrix realisation of the unipotent group, the torus and the Weyl involution.
// Ree: 7-dim module, column vectors, unipotent elements upper unitriangular.
// Suzuki: 4-dim, column vectors (1,x,y,z), unipotent elements lower unitriangular.
class MatrixModel {
public:
    MatrixModel(Family fam, const FieldSpec& f, bool perturb = false);

    Family family() const { return law_.family(); }
    const FieldSpec& field() const { return *f_; }
    const UnipotentLaw& law() const { return law_; }
    unsigned dim() const { return family() == Family::Ree ? 7 : 4; }

    Matrix map(const ReeTriple& x) const;
    Matrix map(const SuzukiPair& x) const;
    Matrix map_code(ucode x) const;
    Matrix torus(FieldSpec::elem t) const;
    Matrix weyl() const;

    std::vector<MatrixGenerator> generators() const;

private:
    const FieldSpec* f_;
    UnipotentLaw law_;
    bool perturb_;
    // root element data for the Ree model: e_r and e_r^2/2 reduced mod 3
    struct Root {
        Matrix e, half_sq;
    };
    std::vector<Root> roots_;

    Matrix root_element(int r, FieldSpec::elem t) const;
};

std::vector<MatrixGenerator> build_generators(const FieldSpec& f, Family fam);

struct ActionOptions {
    bool perturb = false;
    std::uint64_t seed = 20240601;
    unsigned hom_samples = 1000;
};

class Action {
public:
    // Builds the point action and runs the validation gate; throws
    // validation_failure if any gate check fails.
    static Action build(Family fam, unsigned q, const ActionOptions& opt = {});
    // Same construction, returning the gate report instead of throwing.
    static Report gate_only(Family fam, unsigned q, const ActionOptions& opt = {});

    Family family() const { return model_.family(); }
    const FieldSpec& field() const { return model_.field(); }
    const MatrixModel& model() const { return model_; }
    unsigned q() const { return field().q(); }
    std::size_t degree() const { return degree_; }

    const std::vector<MatrixGenerator>& generators() const { return gens_; }
    const std::vector<Perm>& perms() const { return perms_; }
    std::vector<Perm> stabilizer_perms() const;
    std::vector<Perm> unipotent_perms() const;
    std::vector<Perm> torus_perms() const;

    Perm perm_of(const Matrix& m) const;
    std::vector<FieldSpec::elem> point(point_t i) const;
    std::optional<point_t> find_point(std::vector<FieldSpec::elem> v) const;

    Perm transversal_to(point_t target) const;
    const Report& gate() const { return gate_; }

    std::string dump() const;

private:
    explicit Action(MatrixModel model) : model_(std::move(model)) {}

    MatrixModel model_;
    std::vector<MatrixGenerator> gens_;
    std::vector<Perm> perms_;
    std::size_t degree_ = 0;
    std::vector<FieldSpec::elem> coords_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
    std::vector<std::int32_t> tree_gen_;
    std::vector<point_t> tree_parent_;
    Report gate_;

    std::uint64_t key(const std::vector<FieldSpec::elem>& v) const;
    bool normalize(std::vector<FieldSpec::elem>& v) const;
    Report construct(const ActionOptions& opt);
};

std::size_t expected_degree(Family fam, unsigned q);

// BFS orbit, sorted
std::vector<point_t> orbit(const std::vector<Perm>& gens, point_t start, std::size_t degree);

Report two_transitivity_certificate(const Action& a);
Report two_transitivity_certificate(std::size_t degree, const std::vector<Perm>& full, const std::vector<Perm>& stab);

struct GroupSize {
    bool overflow = false;
    std::uint64_t order = 0;
};

GroupSize enumerate_group(const std::vector<Perm>& gens, std::size_t degree, std::uint64_t cap);
// all elements, or nullopt past the cap
std::optional<std::vector<Perm>> group_elements(const std::vector<Perm>& gens, std::size_t degree, std::uint64_t cap);

Perm random_element(const std::vector<Perm>& gens, std::mt19937_64& rng, unsigned length = 40);

}
