#include "pmod/constructions.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "pmod/errors.hpp"

namespace pmod {

namespace {

BasisPtr relabel(const GradedBasis& basis, const std::string& prefix) {
    std::vector<BasisElement> elems;
    for (std::size_t i = 0; i < basis.size(); ++i) elems.push_back({prefix + std::to_string(i), basis.degree(i)});
    return make_basis(std::move(elems));
}

GradedMatrix with_source(const GradedMatrix& m, BasisPtr source) {
    return GradedMatrix::from_columns(m.field(), std::move(source), m.target(), m.columns());
}

// Presentation with one generator per entry; a finite annihilator a gives the
// relation t^a on that generator.
Presentation diagonal_presentation(Field k, std::vector<BasisElement> gens,
                                   const std::vector<std::optional<int>>& annihilators) {
    std::vector<BasisElement> rels;
    std::vector<SparseVector> cols;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (!annihilators[i]) continue;
        rels.push_back({"r(" + gens[i].label + ")", gens[i].degree + *annihilators[i]});
        SparseVector v;
        v.set(i, Scalar::one(k));
        cols.push_back(std::move(v));
    }
    return Presentation(GradedMatrix::from_columns(k, make_basis(std::move(rels)), make_basis(std::move(gens)),
                                                   std::move(cols)));
}

std::optional<int> min_annihilator(std::optional<int> a, std::optional<int> b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

void require_same_field(const Presentation& p, const Presentation& q) {
    if (p.field() != q.field()) throw std::invalid_argument("presentations over different fields");
}

void require_valid(const PresentationMorphism& f) {
    if (!validate_morphism(f)) throw ValidationError("morphism does not map relations into relations");
}

// [a ; b] from a common source into basis_sum(a.target, b.target)
GradedMatrix vconcat(const GradedMatrix& a, const GradedMatrix& b) {
    if (!same_basis(a.source(), b.source())) throw std::invalid_argument("vconcat: source mismatch");
    std::vector<SparseVector> cols = a.columns();
    for (std::size_t j = 0; j < cols.size(); ++j)
        for (const auto& t : b.column(j)) cols[j].set(t.index + a.rows(), t.value);
    return GradedMatrix::from_columns(a.field(), a.source(), basis_sum(*a.target(), *b.target()), std::move(cols));
}

}  // namespace

Presentation direct_sum(const Presentation& p, const Presentation& q) {
    require_same_field(p, q);
    return Presentation(block_diagonal(p.incl(), q.incl()));
}

ImageResult image_data(const PresentationMorphism& f) {
    require_valid(f);
    const Field k = f.src.field();
    const EchelonForm form = row_echelon(hconcat(f.phi, f.dst.incl()));
    std::vector<BasisElement> gens;
    std::vector<SparseVector> gen_cols;
    for (std::size_t j = 0; j < form.echelon.cols(); ++j) {
        if (!form.lows[j]) continue;
        gens.push_back({"im" + std::to_string(gens.size()), form.echelon.source()->degree(j)});
        gen_cols.push_back(form.echelon.column(j));
    }
    BasisPtr gen_basis = make_basis(std::move(gens));
    GradedMatrix into_q = GradedMatrix::from_columns(k, gen_basis, f.dst.gens(), std::move(gen_cols));

    // i_Q(G_Q) written in the new generators
    const EchelonForm span = row_echelon(into_q);
    std::vector<BasisElement> rels;
    std::vector<SparseVector> rel_cols;
    const GradedMatrix& iq = f.dst.incl();
    for (std::size_t j = 0; j < iq.cols(); ++j) {
        if (iq.column(j).empty()) continue;
        auto y = express(iq.column_element(j), span);
        if (!y) throw std::logic_error("image: relation outside the combined span");
        rels.push_back((*f.dst.rels())[j]);
        rel_cols.push_back(y->coords());
    }
    Presentation module(GradedMatrix::from_columns(k, make_basis(std::move(rels)), gen_basis, std::move(rel_cols)));
    PresentationMorphism inclusion{module, f.dst, std::move(into_q)};
    return ImageResult{std::move(module), std::move(inclusion)};
}

Presentation image(const PresentationMorphism& f) {
    return image_data(f).module;
}

Presentation cokernel(const PresentationMorphism& f) {
    require_valid(f);
    return Presentation(hconcat(f.dst.incl(), f.phi));
}

KernelResult kernel(const PresentationMorphism& f) {
    require_valid(f);
    return kernel_unchecked(f);
}

KernelResult kernel_unchecked(const PresentationMorphism& f) {
    const std::size_t np = f.src.gens()->size();

    // generators: f in F_P with phi(f) in i_Q(G_Q)
    const GradedMatrix step1 = free_kernel(hconcat(f.phi, -f.dst.incl()));
    const GradedMatrix gens_in_p = column_basis(row_block(step1, 0, np, f.src.gens()));
    BasisPtr gen_basis = relabel(*gens_in_p.source(), "k");
    GradedMatrix incl_k = with_source(gens_in_p, gen_basis);

    // relations: combinations of generators landing in i_P(G_P)
    const std::size_t nk = gen_basis->size();
    const GradedMatrix step2 = free_kernel(hconcat(incl_k, -f.src.incl()));
    const GradedMatrix rels_in_k = column_basis(row_block(step2, 0, nk, gen_basis));
    GradedMatrix rel_map = with_source(rels_in_k, relabel(*rels_in_k.source(), "rk"));

    Presentation module(std::move(rel_map));
    PresentationMorphism inclusion{module, f.src, std::move(incl_k)};
    return KernelResult{std::move(module), std::move(inclusion)};
}

FreePullback free_pullback(const GradedMatrix& f, const GradedMatrix& g) {
    if (!same_basis(f.target(), g.target())) throw std::invalid_argument("free_pullback: target mismatch");
    const GradedMatrix ker = free_kernel(hconcat(f, -g), "pb");
    return FreePullback{ker.source(), row_block(ker, 0, f.cols(), f.source()),
                        row_block(ker, f.cols(), f.cols() + g.cols(), g.source())};
}

PullbackResult pullback(const PresentationMorphism& f, const PresentationMorphism& g) {
    if (!(f.dst == g.dst)) throw ValidationError("pullback: morphisms have different targets");
    require_valid(f);
    require_valid(g);
    Presentation sum = direct_sum(f.src, g.src);
    GradedMatrix diff = with_source(hconcat(f.phi, -g.phi), sum.gens());
    KernelResult ker = kernel_unchecked(PresentationMorphism{sum, f.dst, std::move(diff)});
    const std::size_t np = f.src.gens()->size(), nq = g.src.gens()->size();
    const GradedMatrix& incl = ker.inclusion.phi;
    PresentationMorphism proj_p{ker.module, f.src, row_block(incl, 0, np, f.src.gens())};
    PresentationMorphism proj_q{ker.module, g.src, row_block(incl, np, np + nq, g.src.gens())};
    return PullbackResult{std::move(ker.module), std::move(proj_p), std::move(proj_q)};
}

Presentation pushout(const PresentationMorphism& f, const PresentationMorphism& g) {
    if (!(f.src == g.src)) throw ValidationError("pushout: morphisms have different sources");
    require_valid(f);
    require_valid(g);
    Presentation sum = direct_sum(f.dst, g.dst);
    GradedMatrix combined = vconcat(f.phi, -g.phi);
    PresentationMorphism h{f.src, sum, GradedMatrix::from_columns(sum.field(), f.src.gens(), sum.gens(),
                                                                   combined.columns())};
    return cokernel(h);
}

Presentation tensor(const Presentation& p, const Presentation& q) {
    require_same_field(p, q);
    const SnfForm sp = snf_form(p, false), sq = snf_form(q, false);
    const GradedBasis& a = *sp.presentation.gens();
    const GradedBasis& b = *sq.presentation.gens();
    std::vector<BasisElement> gens;
    std::vector<std::optional<int>> ann;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) {
            gens.push_back({a.label(i) + "|" + b.label(j), a.degree(i) + b.degree(j)});
            ann.push_back(min_annihilator(sp.annihilators[i], sq.annihilators[j]));
        }
    return diagonal_presentation(p.field(), std::move(gens), ann);
}

Presentation shift(const Presentation& p, int k) {
    auto shifted = [k](const GradedBasis& basis) {
        std::vector<BasisElement> elems = basis.elements();
        for (auto& e : elems) e.degree += k;
        return make_basis(std::move(elems));
    };
    return Presentation(
        GradedMatrix::from_columns(p.field(), shifted(*p.rels()), shifted(*p.gens()), p.incl().columns()));
}

Presentation tensor_over_k(const Presentation& p, const Presentation& q, Side acting) {
    require_same_field(p, q);
    const Presentation& moving = acting == Side::left ? p : q;
    const SnfForm fixed = snf_form(acting == Side::left ? q : p, false);
    const GradedBasis& fixed_gens = *fixed.presentation.gens();

    std::vector<BasisElement> gens, rels;
    std::vector<SparseVector> cols;
    for (std::size_t g = 0; g < fixed_gens.size(); ++g) {
        if (!fixed.annihilators[g])
            throw ValidationError("tensor over k: '" + fixed_gens.label(g) +
                                  "' has an infinite bar, the result would have infinite rank");
        const int birth = fixed_gens.degree(g);
        for (int d = birth; d < birth + *fixed.annihilators[g]; ++d) {
            const std::string tag = fixed_gens.label(g) + "@" + std::to_string(d);
            auto label = [&](const std::string& x) { return acting == Side::left ? x + "|" + tag : tag + "|" + x; };
            const std::size_t offset = gens.size();
            for (const auto& e : moving.gens()->elements()) gens.push_back({label(e.label), e.degree + d});
            for (const auto& e : moving.rels()->elements()) rels.push_back({label(e.label), e.degree + d});
            for (const auto& c : moving.incl().columns()) {
                SparseVector v;
                for (const auto& t : c) v.set(t.index + offset, t.value);
                cols.push_back(std::move(v));
            }
        }
    }
    return Presentation(GradedMatrix::from_columns(p.field(), make_basis(std::move(rels)),
                                                   make_basis(std::move(gens)), std::move(cols)));
}

Presentation dual(const Presentation& p) {
    const SnfForm sp = snf_form(p, false);
    std::vector<BasisElement> gens;
    for (const auto& e : sp.presentation.gens()->elements()) gens.push_back({e.label + "*", -e.degree});
    return diagonal_presentation(p.field(), std::move(gens), sp.annihilators);
}

Presentation hom(const Presentation& p, const Presentation& q) {
    return tensor(dual(p), q);
}

HomElement hom_element(const PresentationMorphism& f) {
    require_valid(f);
    const Field k = f.src.field();
    Presentation module = hom(f.src, f.dst);
    const SnfForm sp = snf_form(f.src, false), sq = snf_form(f.dst, false);
    // images of the new source generators in the new target coordinates
    const GradedMatrix images = sq.to_new * f.phi * sp.from_new;
    const std::size_t nq = sq.presentation.gens()->size();
    SparseVector coords;
    for (std::size_t i = 0; i < images.cols(); ++i)
        for (const auto& t : images.column(i)) coords.set(i * nq + t.index, t.value);
    HomogeneousElement element(k, module.gens(), 0, std::move(coords));
    return HomElement{std::move(module), std::move(element)};
}

int normalize_wedge(std::vector<std::size_t>& indices) {
    int sign = 1;
    for (std::size_t i = 1; i < indices.size(); ++i)
        for (std::size_t j = i; j > 0 && indices[j - 1] >= indices[j]; --j) {
            if (indices[j - 1] == indices[j]) return 0;
            std::swap(indices[j - 1], indices[j]);
            sign = -sign;
        }
    return sign;
}

namespace {

// Enumerates nondecreasing (or strictly increasing) index tuples of length m.
void for_each_tuple(std::size_t n, int m, bool strict, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (static_cast<int>(cur.size()) == m) {
            fn(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            rec(strict ? i + 1 : i);
            cur.pop_back();
        }
    };
    rec(0);
}

Presentation power(const Presentation& p, int m, bool exterior) {
    if (m < 1) throw std::invalid_argument("power degree must be at least 1");
    if (m == 1) return p;
    const SnfForm sp = snf_form(p, false);
    const GradedBasis& a = *sp.presentation.gens();
    std::vector<BasisElement> gens;
    std::vector<std::optional<int>> ann;
    for_each_tuple(a.size(), m, exterior, [&](const std::vector<std::size_t>& tuple) {
        std::string label;
        int degree = 0;
        std::optional<int> alpha;
        for (std::size_t i : tuple) {
            if (!label.empty()) label += exterior ? "&" : ".";
            label += a.label(i);
            degree += a.degree(i);
            alpha = min_annihilator(alpha, sp.annihilators[i]);
        }
        gens.push_back({std::move(label), degree});
        ann.push_back(alpha);
    });
    return diagonal_presentation(p.field(), std::move(gens), ann);
}

}  // namespace

Presentation exterior_power(const Presentation& p, int m) {
    return power(p, m, true);
}

Presentation symmetric_power(const Presentation& p, int m) {
    return power(p, m, false);
}

}  // namespace pmod
