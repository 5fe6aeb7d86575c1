#include "pmod/presentation.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace pmod {

Presentation::Presentation(GradedMatrix incl) : incl_(std::move(incl)) {}

Presentation Presentation::free(Field field, BasisPtr gens) {
    return Presentation(GradedMatrix(field, make_basis({}), std::move(gens)));
}

Presentation Presentation::empty(Field field) {
    return free(field, make_basis({}));
}

bool validate_morphism(const PresentationMorphism& f) {
    if (f.src.field() != f.dst.field() || f.phi.field() != f.src.field())
        throw std::invalid_argument("morphism field mismatch");
    if (!same_basis(f.phi.source(), f.src.gens()) || !same_basis(f.phi.target(), f.dst.gens()))
        throw std::invalid_argument("morphism matrix is not over the presentation generators");
    const EchelonForm target_rels = row_echelon(f.dst.incl());
    const GradedMatrix images = f.phi * f.src.incl();
    for (std::size_t j = 0; j < images.cols(); ++j)
        if (!membership(images.column_element(j), target_rels)) return false;
    return true;
}

PresentationMorphism identity_morphism(const Presentation& p) {
    return PresentationMorphism{p, p, GradedMatrix::identity(p.field(), p.gens())};
}

PresentationMorphism zero_morphism(const Presentation& src, const Presentation& dst) {
    return PresentationMorphism{src, dst, GradedMatrix(src.field(), src.gens(), dst.gens())};
}

// ---- barcodes ----------------------------------------------------------------

bool bar_less(const Bar& a, const Bar& b) {
    if (a.dim != b.dim) return !a.dim || (b.dim && *a.dim < *b.dim);
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.death == b.death) return false;
    return a.death && (!b.death || *a.death < *b.death);
}

Barcode::Barcode(std::vector<Bar> bars) : bars_(std::move(bars)) {
    for (const auto& b : bars_)
        if (b.death && *b.death < b.birth) throw std::invalid_argument("bar dies before it is born");
    std::sort(bars_.begin(), bars_.end(), bar_less);
}

void Barcode::add(Bar bar) {
    if (bar.death && *bar.death < bar.birth) throw std::invalid_argument("bar dies before it is born");
    bars_.insert(std::upper_bound(bars_.begin(), bars_.end(), bar, bar_less), bar);
}

void Barcode::merge(const Barcode& other) {
    for (const auto& b : other.bars_) add(b);
}

Barcode Barcode::without_ephemeral() const {
    Barcode out;
    for (const auto& b : bars_)
        if (!b.ephemeral()) out.bars_.push_back(b);
    return out;
}

Barcode Barcode::in_dimension(int dim) const {
    Barcode out;
    for (const auto& b : bars_)
        if (b.dim == dim) out.bars_.push_back(b);
    return out;
}

int Barcode::dimension_at(int d) const {
    return static_cast<int>(std::count_if(bars_.begin(), bars_.end(), [d](const Bar& b) { return b.alive_at(d); }));
}

int Barcode::rank_t_power(int d, int j) const {
    return static_cast<int>(std::count_if(bars_.begin(), bars_.end(), [&](const Bar& b) {
        return b.birth <= d && (!b.death || d + j < *b.death);
    }));
}

namespace {

template <class DimOf>
Barcode read_bars(const Presentation& p, DimOf dim_of) {
    const SnfResult snf = graded_snf(p.incl());
    const GradedBasis& gens = *p.gens();
    const GradedBasis& rels = *p.rels();
    Barcode out;
    for (const auto& piv : snf.diagonal) out.add(Bar{dim_of(piv.row), gens.degree(piv.row), rels.degree(piv.col)});
    for (std::size_t i : snf.free_rows) out.add(Bar{dim_of(i), gens.degree(i), std::nullopt});
    return out;
}

}  // namespace

Barcode barcode(const Presentation& p, std::optional<int> dim) {
    return read_bars(p, [dim](std::size_t) { return dim; });
}

Barcode barcode(const Presentation& p, const std::vector<int>& gen_dims) {
    if (gen_dims.size() != p.gens()->size()) throw std::invalid_argument("one dimension per generator expected");
    return read_bars(p, [&](std::size_t i) { return std::optional<int>(gen_dims[i]); });
}

// ---- normal forms ------------------------------------------------------------

SnfForm snf_form(const Presentation& p, bool keep_ephemeral) {
    const Field k = p.field();
    const SnfResult snf = graded_snf(p.incl());
    const GradedBasis& gens = *p.gens();
    const GradedBasis& rels = *p.rels();

    // kept old row -> relation column (if any)
    std::map<std::size_t, std::optional<std::size_t>> kept;
    for (const auto& piv : snf.diagonal)
        if (keep_ephemeral || piv.value.exponent() > 0) kept.emplace(piv.row, piv.col);
    for (std::size_t i : snf.free_rows) kept.emplace(i, std::nullopt);

    std::vector<BasisElement> new_gens, new_rels;
    std::vector<std::size_t> rows;
    std::vector<std::optional<int>> annihilators;
    std::vector<std::size_t> rel_rows;
    for (const auto& [row, col] : kept) {
        const std::size_t idx = rows.size();
        rows.push_back(row);
        new_gens.push_back(gens[row]);
        if (col) {
            new_rels.push_back(rels[*col]);
            rel_rows.push_back(idx);
            annihilators.push_back(rels.degree(*col) - gens.degree(row));
        } else {
            annihilators.push_back(std::nullopt);
        }
    }
    BasisPtr gens_ptr = make_basis(std::move(new_gens));
    BasisPtr rels_ptr = make_basis(std::move(new_rels));

    GradedMatrix incl(k, rels_ptr, gens_ptr);
    for (std::size_t j = 0; j < rel_rows.size(); ++j) incl.set(rel_rows[j], j, Scalar::one(k));

    GradedMatrix to_new(k, p.gens(), gens_ptr);
    GradedMatrix from_new(k, gens_ptr, p.gens());
    for (std::size_t idx = 0; idx < rows.size(); ++idx) {
        from_new.set_column(idx, snf.row_change_inverse.column(rows[idx]));
    }
    for (std::size_t j = 0; j < gens.size(); ++j) {
        const SparseVector& col = snf.row_change.column(j);
        for (std::size_t idx = 0; idx < rows.size(); ++idx)
            if (const Scalar* s = col.find(rows[idx])) to_new.set(idx, j, *s);
    }
    return SnfForm{Presentation(std::move(incl)), std::move(annihilators), std::move(to_new), std::move(from_new)};
}

Presentation minimize(const Presentation& p, bool keep_ephemeral) {
    return snf_form(p, keep_ephemeral).presentation;
}

// ---- brute-force slice oracles -------------------------------------------------

namespace {

using Dense = std::vector<std::vector<Scalar>>;

int dense_rank(Dense m) {
    int rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
        std::size_t r = rank;
        while (r < rows && m[r][c].is_zero()) ++r;
        if (r == rows) continue;
        std::swap(m[r], m[rank]);
        const Scalar inv = m[rank][c].inverse();
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == static_cast<std::size_t>(rank) || m[i][c].is_zero()) continue;
            const Scalar f = m[i][c] * inv;
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[rank][j];
        }
        ++rank;
    }
    return rank;
}

// Rows: generators alive at degree d. Columns: relations alive at d, then
// (optionally) generators alive at degree e as extra vectors.
Dense slice(const Presentation& p, int d, std::optional<int> extra_gens_at) {
    const Field k = p.field();
    const GradedBasis& gens = *p.gens();
    const GradedBasis& rels = *p.rels();
    std::vector<std::size_t> row_of(gens.size(), SIZE_MAX);
    std::size_t nrows = 0;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (gens.degree(i) <= d) row_of[i] = nrows++;
    std::vector<std::vector<Scalar>> cols;
    for (std::size_t j = 0; j < rels.size(); ++j) {
        if (rels.degree(j) > d) continue;
        std::vector<Scalar> col(nrows, Scalar::zero(k));
        for (const auto& t : p.incl().column(j)) col[row_of[t.index]] = t.value;
        cols.push_back(std::move(col));
    }
    if (extra_gens_at)
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (gens.degree(i) > *extra_gens_at) continue;
            std::vector<Scalar> col(nrows, Scalar::zero(k));
            col[row_of[i]] = Scalar::one(k);
            cols.push_back(std::move(col));
        }
    Dense m(nrows, std::vector<Scalar>(cols.size(), Scalar::zero(k)));
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (std::size_t i = 0; i < nrows; ++i) m[i][j] = cols[j][i];
    return m;
}

int alive_gens(const Presentation& p, int d) {
    const auto& e = p.gens()->elements();
    return static_cast<int>(std::count_if(e.begin(), e.end(), [d](const BasisElement& b) { return b.degree <= d; }));
}

}  // namespace

int dimension_at(const Presentation& p, int d) {
    return alive_gens(p, d) - dense_rank(slice(p, d, std::nullopt));
}

int rank_t_power(const Presentation& p, int d, int j) {
    if (j < 0) throw std::invalid_argument("negative power of t");
    const int relations = dense_rank(slice(p, d + j, std::nullopt));
    const int with_image = dense_rank(slice(p, d + j, d));
    return with_image - relations;
}

}  // namespace pmod
