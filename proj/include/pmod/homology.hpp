#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pmod/constructions.hpp"
#include "pmod/presentation.hpp"

namespace pmod {

struct Simplex {
    std::vector<int> vertices;  // sorted, distinct
    int birth = 0;
    std::optional<int> removal;  // nullopt = never removed

    int dim() const { return static_cast<int>(vertices.size()) - 1; }
    bool operator==(const Simplex&) const = default;
};

/// `0-1-2` for the triangle on vertices 0, 1, 2.
std::string simplex_label(const std::vector<int>& vertices);

/// Simplices with birth grades and optional removal grades. The constructor
/// sorts vertex lists and throws ValidationError for a missing face, a
/// duplicate, a face born after its coface, a face removed before its coface,
/// or a removal before the birth.
class FilteredComplex {
public:
    FilteredComplex() = default;
    explicit FilteredComplex(std::vector<Simplex> simplices);

    const std::vector<Simplex>& simplices() const noexcept { return simplices_; }
    std::size_t size() const noexcept { return simplices_.size(); }
    bool empty() const noexcept { return simplices_.empty(); }
    int max_dim() const;
    bool has_removals() const;
    std::optional<std::size_t> find(const std::vector<int>& vertices) const;

    /// Input indices sorted by (birth, dimension, input position).
    std::vector<std::size_t> filtration_order() const;

    bool operator==(const FilteredComplex& other) const { return simplices_ == other.simplices_; }

private:
    std::vector<Simplex> simplices_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Square matrix on all simplices in filtration order; the (face, simplex)
/// entry is (-1)^i t^(birth(simplex) - birth(face)) for the face omitting vertex i.
GradedMatrix graded_boundary(const FilteredComplex& c, Field k = Field::rationals());

/// Dimension of each basis element of graded_boundary(c).
std::vector<int> simplex_dimensions(const FilteredComplex& c);

struct ReductionState {
    GradedMatrix boundary;  // the input
    GradedMatrix reduced;   // boundary * chains
    GradedMatrix chains;
    GradedMatrix cycles;      // Z: columns over the chain basis, labelled z1, z2, ...
    GradedMatrix boundaries;  // B: nonzero input columns, labelled r1, r2, ...
    std::vector<std::size_t> cycle_columns;
    std::vector<std::size_t> boundary_columns;
    std::unordered_map<std::size_t, std::size_t> pivots;  // low row -> reduced column
};

ReductionState reduce_boundary(const GradedMatrix& m);

struct CyclePresentation {
    Presentation presentation;  // generators Z, relations B written in Z
    std::vector<int> gen_dims;  // empty when no dimensions were supplied
};

/// `dims` gives the dimension of every chain basis element (may be empty).
/// Throws std::logic_error if a boundary is not a combination of cycles.
CyclePresentation boundaries_in_cycles(const ReductionState& state, const std::vector<int>& dims = {});

/// Throws ValidationError if the complex has removals.
Barcode persistent_homology(const FilteredComplex& c, Field k = Field::rationals());

struct TorsionChainComplex {
    Presentation chains;
    GradedMatrix boundary;  // endomorphism of chains.gens()
    std::vector<int> dims;  // per generator
};

/// One generator per simplex and a relation t^(removal - birth) per removal.
TorsionChainComplex relative_complex(const FilteredComplex& c, Field k = Field::rationals());

/// Whether the boundary maps the relation submodule into itself.
bool descends_to_quotient(const TorsionChainComplex& tcc);

struct TorsionHomology {
    Barcode barcode;
    std::vector<KernelResult> kernels;       // per dimension, before minimizing
    std::vector<Presentation> homology;      // per dimension
};

/// Per dimension p: kernel of the boundary C_p -> C_(p-1), minimized, with the
/// boundaries of (p+1)-simplices added as relations. Throws ValidationError
/// if the boundary does not square to zero.
TorsionHomology torsion_homology(const TorsionChainComplex& tcc);

}  // namespace pmod
