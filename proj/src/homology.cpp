#include "pmod/homology.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pmod/errors.hpp"

namespace pmod {

std::string simplex_label(const std::vector<int>& vertices) {
    std::string out;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(vertices[i]);
    }
    return out;
}

namespace {

std::string describe(const Simplex& s) {
    return "simplex [" + simplex_label(s.vertices) + "]";
}

std::vector<int> drop_vertex(const std::vector<int>& v, std::size_t i) {
    std::vector<int> face = v;
    face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
    return face;
}

}  // namespace

FilteredComplex::FilteredComplex(std::vector<Simplex> simplices) : simplices_(std::move(simplices)) {
    for (std::size_t i = 0; i < simplices_.size(); ++i) {
        Simplex& s = simplices_[i];
        if (s.vertices.empty()) throw ValidationError("empty simplex");
        std::sort(s.vertices.begin(), s.vertices.end());
        if (std::adjacent_find(s.vertices.begin(), s.vertices.end()) != s.vertices.end())
            throw ValidationError(describe(s) + " repeats a vertex");
        if (s.vertices.front() < 0) throw ValidationError(describe(s) + " has a negative vertex");
        if (s.birth < 0) throw ValidationError(describe(s) + " has a negative birth");
        if (s.removal && *s.removal < s.birth) throw ValidationError(describe(s) + " is removed before it is born");
        if (!index_.emplace(simplex_label(s.vertices), i).second)
            throw ValidationError("duplicate " + describe(s));
    }
    for (const Simplex& s : simplices_) {
        if (s.vertices.size() < 2) continue;
        for (std::size_t i = 0; i < s.vertices.size(); ++i) {
            const auto face_idx = find(drop_vertex(s.vertices, i));
            if (!face_idx)
                throw ValidationError("missing face [" + simplex_label(drop_vertex(s.vertices, i)) + "] of " +
                                      describe(s));
            const Simplex& face = simplices_[*face_idx];
            if (face.birth > s.birth)
                throw ValidationError("face " + describe(face) + " is born after its coface " + describe(s));
            if (face.removal && (!s.removal || *face.removal < *s.removal))
                throw ValidationError("face " + describe(face) + " is removed before its coface " + describe(s));
        }
    }
}

int FilteredComplex::max_dim() const {
    int d = -1;
    for (const auto& s : simplices_) d = std::max(d, s.dim());
    return d;
}

bool FilteredComplex::has_removals() const {
    return std::any_of(simplices_.begin(), simplices_.end(), [](const Simplex& s) { return s.removal.has_value(); });
}

std::optional<std::size_t> FilteredComplex::find(const std::vector<int>& vertices) const {
    auto it = index_.find(simplex_label(vertices));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> FilteredComplex::filtration_order() const {
    std::vector<std::size_t> order(simplices_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const Simplex& x = simplices_[a];
        const Simplex& y = simplices_[b];
        if (x.birth != y.birth) return x.birth < y.birth;
        return x.dim() < y.dim();
    });
    return order;
}

namespace {

BasisPtr chain_basis(const FilteredComplex& c, const std::vector<std::size_t>& order) {
    std::vector<BasisElement> elems;
    for (std::size_t i : order) elems.push_back({simplex_label(c.simplices()[i].vertices), c.simplices()[i].birth});
    return make_basis(std::move(elems));
}

}  // namespace

GradedMatrix graded_boundary(const FilteredComplex& c, Field k) {
    const auto order = c.filtration_order();
    BasisPtr basis = chain_basis(c, order);
    GradedMatrix m(k, basis, basis);
    for (std::size_t j = 0; j < order.size(); ++j) {
        const Simplex& s = c.simplices()[order[j]];
        if (s.vertices.size() < 2) continue;
        for (std::size_t i = 0; i < s.vertices.size(); ++i) {
            const auto row = basis->find(simplex_label(drop_vertex(s.vertices, i)));
            m.set(*row, j, Scalar(k, i % 2 == 0 ? 1L : -1L));
        }
    }
    return m;
}

std::vector<int> simplex_dimensions(const FilteredComplex& c) {
    std::vector<int> dims;
    for (std::size_t i : c.filtration_order()) dims.push_back(c.simplices()[i].dim());
    return dims;
}

ReductionState reduce_boundary(const GradedMatrix& m) {
    EchelonForm form = row_echelon(m);
    std::vector<std::size_t> cycle_cols, boundary_cols;
    std::unordered_map<std::size_t, std::size_t> pivots;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (form.lows[j])
            pivots.emplace(*form.lows[j], j);
        else
            cycle_cols.push_back(j);
        if (!m.column(j).empty()) boundary_cols.push_back(j);
    }
    auto labelled = [&](const GradedMatrix& src, const std::vector<std::size_t>& cols, const std::string& prefix) {
        GradedMatrix sel = select_columns(src, cols);
        std::vector<BasisElement> elems;
        for (std::size_t i = 0; i < cols.size(); ++i)
            elems.push_back({prefix + std::to_string(i + 1), sel.source()->degree(i)});
        return GradedMatrix::from_columns(m.field(), make_basis(std::move(elems)), sel.target(), sel.columns());
    };
    GradedMatrix cycles = labelled(form.change, cycle_cols, "z");
    GradedMatrix boundaries = labelled(m, boundary_cols, "r");
    return ReductionState{m,
                          std::move(form.echelon),
                          std::move(form.change),
                          std::move(cycles),
                          std::move(boundaries),
                          std::move(cycle_cols),
                          std::move(boundary_cols),
                          std::move(pivots)};
}

CyclePresentation boundaries_in_cycles(const ReductionState& state, const std::vector<int>& dims) {
    const Field k = state.boundary.field();
    const EchelonForm zform = row_echelon(state.cycles);
    std::vector<SparseVector> cols;
    for (std::size_t j = 0; j < state.boundaries.cols(); ++j) {
        auto y = express(state.boundaries.column_element(j), zform);
        if (!y) throw std::logic_error("boundary " + state.boundaries.source()->label(j) + " is not a sum of cycles");
        cols.push_back(y->coords());
    }
    Presentation p(GradedMatrix::from_columns(k, state.boundaries.source(), state.cycles.source(), std::move(cols)));
    std::vector<int> gen_dims;
    if (!dims.empty())
        for (std::size_t j : state.cycle_columns) gen_dims.push_back(dims.at(j));
    return CyclePresentation{std::move(p), std::move(gen_dims)};
}

Barcode persistent_homology(const FilteredComplex& c, Field k) {
    if (c.has_removals()) throw ValidationError("complex has removals; use the relative pipeline");
    const ReductionState state = reduce_boundary(graded_boundary(c, k));
    const CyclePresentation cp = boundaries_in_cycles(state, simplex_dimensions(c));
    return barcode(cp.presentation, cp.gen_dims);
}

TorsionChainComplex relative_complex(const FilteredComplex& c, Field k) {
    GradedMatrix boundary = graded_boundary(c, k);
    BasisPtr gens = boundary.source();
    const auto order = c.filtration_order();
    std::vector<BasisElement> rels;
    std::vector<SparseVector> cols;
    for (std::size_t j = 0; j < order.size(); ++j) {
        const Simplex& s = c.simplices()[order[j]];
        if (!s.removal) continue;
        rels.push_back({"r(" + gens->label(j) + ")", *s.removal});
        SparseVector v;
        v.set(j, Scalar::one(k));
        cols.push_back(std::move(v));
    }
    Presentation chains(GradedMatrix::from_columns(k, make_basis(std::move(rels)), gens, std::move(cols)));
    return TorsionChainComplex{std::move(chains), std::move(boundary), simplex_dimensions(c)};
}

bool descends_to_quotient(const TorsionChainComplex& tcc) {
    const EchelonForm rels = row_echelon(tcc.chains.incl());
    const GradedMatrix images = tcc.boundary * tcc.chains.incl();
    for (std::size_t j = 0; j < images.cols(); ++j)
        if (!membership(images.column_element(j), rels)) return false;
    return true;
}

namespace {

struct DimensionSlice {
    std::vector<std::size_t> gens;  // indices into the chain generators
    Presentation chains;
};

DimensionSlice slice_dimension(const TorsionChainComplex& tcc, int p) {
    const GradedMatrix& incl = tcc.chains.incl();
    const GradedBasis& gens = *tcc.chains.gens();
    std::vector<std::size_t> idx;
    std::vector<std::size_t> local(gens.size(), SIZE_MAX);
    std::vector<BasisElement> gen_elems;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (tcc.dims[i] == p) {
            local[i] = idx.size();
            idx.push_back(i);
            gen_elems.push_back(gens[i]);
        }
    std::vector<BasisElement> rel_elems;
    std::vector<SparseVector> cols;
    for (std::size_t j = 0; j < incl.cols(); ++j) {
        const SparseVector& c = incl.column(j);
        if (c.empty() || tcc.dims[c.begin()->index] != p) continue;
        SparseVector v;
        for (const auto& t : c) {
            if (tcc.dims[t.index] != p) throw ValidationError("relation mixes chain dimensions");
            v.set(local[t.index], t.value);
        }
        rel_elems.push_back((*tcc.chains.rels())[j]);
        cols.push_back(std::move(v));
    }
    Presentation chains(GradedMatrix::from_columns(incl.field(), make_basis(std::move(rel_elems)),
                                                   make_basis(std::move(gen_elems)), std::move(cols)));
    return DimensionSlice{std::move(idx), std::move(chains)};
}

// Block of the boundary from dimension-p chains into dimension-(p-1) chains.
GradedMatrix boundary_block(const TorsionChainComplex& tcc, const DimensionSlice& from, const DimensionSlice& to) {
    std::vector<std::size_t> local(tcc.dims.size(), SIZE_MAX);
    for (std::size_t i = 0; i < to.gens.size(); ++i) local[to.gens[i]] = i;
    std::vector<SparseVector> cols;
    for (std::size_t g : from.gens) {
        SparseVector v;
        for (const auto& t : tcc.boundary.column(g)) {
            if (local[t.index] == SIZE_MAX) throw ValidationError("boundary does not lower dimension by one");
            v.set(local[t.index], t.value);
        }
        cols.push_back(std::move(v));
    }
    return GradedMatrix::from_columns(tcc.boundary.field(), from.chains.gens(), to.chains.gens(), std::move(cols));
}

}  // namespace

TorsionHomology torsion_homology(const TorsionChainComplex& tcc) {
    const GradedBasis& gens = *tcc.chains.gens();
    if (!same_basis(tcc.boundary.source(), tcc.chains.gens()) || !same_basis(tcc.boundary.target(), tcc.chains.gens()))
        throw std::invalid_argument("boundary is not an endomorphism of the chain generators");
    if (tcc.dims.size() != gens.size()) throw std::invalid_argument("one dimension per chain generator expected");
    if (!(tcc.boundary * tcc.boundary).is_zero()) throw ValidationError("boundary does not square to zero");

    const Field k = tcc.chains.field();
    const int top = gens.empty() ? -1 : *std::max_element(tcc.dims.begin(), tcc.dims.end());
    std::vector<DimensionSlice> slices;
    for (int p = 0; p <= top + 1; ++p) slices.push_back(slice_dimension(tcc, p));
    DimensionSlice below{{}, Presentation::empty(k)};

    TorsionHomology out;
    for (int p = 0; p <= top; ++p) {
        const DimensionSlice& cur = slices[p];
        const DimensionSlice& prev = p == 0 ? below : slices[p - 1];
        KernelResult ker = kernel_unchecked(PresentationMorphism{cur.chains, prev.chains, boundary_block(tcc, cur, prev)});
        const SnfForm minimal = snf_form(ker.module, false);
        const EchelonForm kgens = row_echelon(ker.inclusion.phi);

        const GradedMatrix up = boundary_block(tcc, slices[p + 1], cur);
        const GradedMatrix& base = minimal.presentation.incl();
        std::vector<BasisElement> rels = base.source()->elements();
        std::vector<SparseVector> cols = base.columns();
        for (std::size_t j = 0; j < up.cols(); ++j) {
            auto y = express(up.column_element(j), kgens);
            if (!y) throw std::logic_error("boundary of " + up.source()->label(j) + " is not a kernel element");
            HomogeneousElement z = apply(minimal.to_new, *y);
            if (z.is_zero()) continue;
            rels.push_back({"d(" + up.source()->label(j) + ")", up.source()->degree(j)});
            cols.push_back(z.coords());
        }
        Presentation h(GradedMatrix::from_columns(k, make_basis(std::move(rels)), minimal.presentation.gens(),
                                                  std::move(cols)));
        out.barcode.merge(barcode(h, p));
        out.kernels.push_back(std::move(ker));
        out.homology.push_back(std::move(h));
    }
    return out;
}

}  // namespace pmod
