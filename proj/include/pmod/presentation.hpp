#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmod/graded_linalg.hpp"

namespace pmod {

/// Module F / i(G) given by the map i : G -> F (relations -> generators).
class Presentation {
public:
    explicit Presentation(GradedMatrix incl);

    static Presentation free(Field field, BasisPtr gens);
    static Presentation empty(Field field);

    Field field() const noexcept { return incl_.field(); }
    const BasisPtr& gens() const noexcept { return incl_.target(); }
    const BasisPtr& rels() const noexcept { return incl_.source(); }
    const GradedMatrix& incl() const noexcept { return incl_; }

    bool operator==(const Presentation& other) const { return incl_ == other.incl_; }

private:
    GradedMatrix incl_;
};

struct PresentationMorphism {
    Presentation src;
    Presentation dst;
    GradedMatrix phi;  // src.gens -> dst.gens
};

/// True iff phi maps every relation of src into the relation submodule of dst.
/// Throws std::invalid_argument when phi is not over the right bases.
bool validate_morphism(const PresentationMorphism& f);

PresentationMorphism identity_morphism(const Presentation& p);
PresentationMorphism zero_morphism(const Presentation& src, const Presentation& dst);

struct Bar {
    std::optional<int> dim;
    int birth = 0;
    std::optional<int> death;  // nullopt = infinity

    bool ephemeral() const { return death && *death == birth; }
    bool alive_at(int d) const { return birth <= d && (!death || d < *death); }

    bool operator==(const Bar&) const = default;
};

/// Orders by (dim, birth, death) with unset dims first and infinite deaths last.
bool bar_less(const Bar& a, const Bar& b);

class Barcode {
public:
    Barcode() = default;
    explicit Barcode(std::vector<Bar> bars);

    void add(Bar bar);
    void merge(const Barcode& other);

    const std::vector<Bar>& bars() const noexcept { return bars_; }
    std::size_t size() const noexcept { return bars_.size(); }
    bool empty() const noexcept { return bars_.empty(); }

    Barcode without_ephemeral() const;
    Barcode in_dimension(int dim) const;

    /// Bars with b <= d < e.
    int dimension_at(int d) const;
    /// Bars with b <= d and d + j < e.
    int rank_t_power(int d, int j) const;

    bool operator==(const Barcode&) const = default;

private:
    std::vector<Bar> bars_;  // sorted by bar_less
};

/// Bars read off the graded Smith normal form of the relation map.
Barcode barcode(const Presentation& p, std::optional<int> dim = std::nullopt);
/// Each bar takes the dimension of the generator it is read from.
Barcode barcode(const Presentation& p, const std::vector<int>& gen_dims);

/// Diagonal presentation with monic relations t^a on the new generators.
struct SnfForm {
    Presentation presentation;
    std::vector<std::optional<int>> annihilators;  // per generator; nullopt = free
    GradedMatrix to_new;                           // old gens -> new gens
    GradedMatrix from_new;                         // new gens -> old gens
};

/// Zero relations are dropped. Generators killed by a unit relation are
/// dropped unless keep_ephemeral is set.
SnfForm snf_form(const Presentation& p, bool keep_ephemeral = true);

Presentation minimize(const Presentation& p, bool keep_ephemeral = false);

/// dim_k of the degree-d slice, by plain Gaussian elimination on scalars.
int dimension_at(const Presentation& p, int d);

/// Rank of multiplication by t^j from the degree-d slice to degree d + j.
int rank_t_power(const Presentation& p, int d, int j);

}  // namespace pmod
