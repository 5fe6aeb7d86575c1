#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "pmod/errors.hpp"
#include "pmod/homology.hpp"
#include "pmod/text_format.hpp"

using namespace pmod;

namespace {

const Field Q = Field::rationals();

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(PMOD_DATA_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Bar bar(int dim, int b, std::optional<int> d) { return Bar{dim, b, d}; }

// every persistent rank of every dimension agrees with dense linear algebra
void check_rank_invariant(const FilteredComplex& c, const Barcode& b, unsigned long p) {
    int top = 0;
    for (const auto& s : c.simplices()) top = std::max(top, s.birth);
    for (int q = 0; q <= c.max_dim(); ++q) {
        const Barcode bq = b.in_dimension(q);
        for (int a = 0; a <= top + 1; ++a)
            for (int e = a; e <= top + 1; ++e) CHECK(bq.rank_t_power(a, e - a) == oracle::persistent_rank(c, p, q, a, e));
    }
}

}  // namespace

TEST_CASE("complex validation") {
    CHECK_NOTHROW(FilteredComplex({{{0}, 0, {}}, {{1}, 0, {}}, {{1, 0}, 1, {}}}));
    CHECK_THROWS_AS(FilteredComplex({{{0, 1}, 1, {}}, {{0}, 0, {}}}), ValidationError);              // missing face
    CHECK_THROWS_AS(FilteredComplex({{{0}, 0, {}}, {{0}, 1, {}}}), ValidationError);                 // duplicate
    CHECK_THROWS_AS(FilteredComplex({{{0}, 2, {}}, {{1}, 0, {}}, {{0, 1}, 1, {}}}), ValidationError);  // face born later
    CHECK_THROWS_AS(FilteredComplex({{{0}, 0, 1}, {{1}, 0, {}}, {{0, 1}, 0, 3}}), ValidationError);    // face removed first
    CHECK_THROWS_AS(FilteredComplex({{{0}, 3, 1}}), ValidationError);
    CHECK_THROWS_AS(FilteredComplex({{{0, 0}, 0, {}}}), ValidationError);
    const FilteredComplex c({{{0}, 0, {}}, {{1}, 0, {}}, {{1, 0}, 1, {}}});
    CHECK(c.find({0, 1}) == 2u);
    CHECK(c.max_dim() == 1);
    CHECK_FALSE(c.has_removals());
}

TEST_CASE("graded boundary entries") {
    const FilteredComplex c = parse_complex(slurp("fig2.flt")).complex;
    const GradedMatrix d = graded_boundary(c);
    const auto& basis = *d.source();
    const std::size_t ab = *basis.find("0-1"), a = *basis.find("0"), b = *basis.find("1");
    const std::size_t abc = *basis.find("0-1-2"), ac = *basis.find("0-2"), bc = *basis.find("1-2");
    CHECK(d.entry(a, ab) == Monomial(Scalar(Q, -1L), 1));  // face omitting vertex 1 carries the minus sign
    CHECK(d.entry(b, ab) == Monomial(Scalar(Q, 1L), 1));
    CHECK(d.entry(bc, abc) == Monomial(Scalar(Q, 1L), 3));
    CHECK(d.entry(ac, abc) == Monomial(Scalar(Q, -1L), 1));
    CHECK((d * d).is_zero());
    CHECK(simplex_dimensions(c).size() == c.size());
}

TEST_CASE("chains written in the graded basis") {
    const FilteredComplex c = parse_complex(slurp("fig2.flt")).complex;
    const GradedMatrix d = graded_boundary(c);
    const BasisPtr basis = d.source();
    auto elem = [&](int degree, std::vector<std::pair<std::string, long>> terms) {
        SparseVector v;
        for (const auto& [label, coeff] : terms) v.set(*basis->find(label), Scalar(Q, coeff));
        return HomogeneousElement(Q, basis, degree, v);
    };
    // ab + ac + cd at step 5
    CHECK(elem(5, {{"0-1", 1}, {"0-2", 1}, {"2-3", 1}}).to_string().find("1t^3*0-1") != std::string::npos);
    // z = ad - cd - t ab - t bc and w = ac - t^2 ab - t^2 bc are cycles; so is w - t z
    const auto z = elem(3, {{"0-3", 1}, {"2-3", -1}, {"0-1", -1}, {"1-2", -1}});
    const auto w = elem(4, {{"0-2", 1}, {"0-1", -1}, {"1-2", -1}});
    CHECK(apply(d, z).is_zero());
    CHECK(apply(d, w).is_zero());
    CHECK(w - z.shifted(1) == elem(4, {{"0-2", 1}, {"0-3", -1}, {"2-3", 1}}));
}

TEST_CASE("persistent homology of the two-triangle filtration") {
    const FilteredComplex c = parse_complex(slurp("fig2.flt")).complex;
    const Barcode b = persistent_homology(c);
    CHECK(b == Barcode({bar(0, 1, std::nullopt), bar(0, 1, 2), bar(0, 2, 2), bar(0, 2, 3), bar(1, 3, 6), bar(1, 4, 5)}));
    check_rank_invariant(c, b, 0);
}

TEST_CASE("reduction state bookkeeping") {
    const FilteredComplex c = parse_complex(slurp("fig2.flt")).complex;
    const ReductionState s = reduce_boundary(graded_boundary(c));
    CHECK(s.reduced == s.boundary * s.chains);
    CHECK((s.boundary * s.cycles).is_zero());
    CHECK(s.cycles.cols() + s.pivots.size() == c.size());
    CHECK(s.cycles.source()->label(0) == "z1");
    CHECK(s.boundaries.source()->label(0) == "r1");
    const CyclePresentation cp = boundaries_in_cycles(s, simplex_dimensions(c));
    CHECK(cp.gen_dims.size() == s.cycles.cols());
}

TEST_CASE("persistent homology matches dense rank invariants") {
    oracle::Rng rng(51);
    for (int trial = 0; trial < 60; ++trial) {
        const FilteredComplex c(oracle::random_simplices(rng, 20, 8));
        const unsigned long p = trial % 3 == 0 ? 2 : 0;
        const Field f = p ? Field::prime(2) : Q;
        check_rank_invariant(c, persistent_homology(c, f), p);
    }
}

TEST_CASE("coefficients matter: projective plane over Z/2 and Q") {
    // six-vertex projective plane
    const std::vector<std::vector<int>> tris = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                                {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}};
    std::vector<Simplex> s;
    std::set<std::vector<int>> seen;
    for (const auto& t : tris)
        for (int mask = 1; mask < 8; ++mask) {
            std::vector<int> face;
            for (int i = 0; i < 3; ++i)
                if (mask >> i & 1) face.push_back(t[static_cast<std::size_t>(i)]);
            if (seen.insert(face).second) s.push_back({face, static_cast<int>(face.size()) - 1, {}});
        }
    const FilteredComplex c(s);
    const Barcode q = persistent_homology(c, Q);
    const Barcode z2 = persistent_homology(c, Field::prime(2));
    auto infinite = [](const Barcode& b, int dim) {
        int n = 0;
        for (const auto& x : b.in_dimension(dim).bars()) n += !x.death;
        return n;
    };
    CHECK(infinite(q, 0) == 1);
    CHECK(infinite(q, 1) == 0);
    CHECK(infinite(q, 2) == 0);
    CHECK(infinite(z2, 0) == 1);
    CHECK(infinite(z2, 1) == 1);
    CHECK(infinite(z2, 2) == 1);
    check_rank_invariant(c, q, 0);
    check_rank_invariant(c, z2, 2);
}

TEST_CASE("persistent homology rejects removals") {
    const FilteredComplex c({{{0}, 0, 3}});
    CHECK_THROWS_AS(persistent_homology(c), ValidationError);
}

TEST_CASE("relative pipeline without removals reproduces persistent homology") {
    oracle::Rng rng(52);
    for (int trial = 0; trial < 60; ++trial) {
        const FilteredComplex c(oracle::random_simplices(rng, 20, 8));
        const TorsionHomology th = torsion_homology(relative_complex(c));
        CHECK(th.barcode.without_ephemeral() == persistent_homology(c).without_ephemeral());
    }
}

TEST_CASE("triangle with every face removed in reverse order") {
    const FilteredComplex c = parse_complex(slurp("triangle_relative.flt")).complex;
    const TorsionChainComplex tcc = relative_complex(c);
    CHECK(tcc.chains.rels()->size() == 7);
    CHECK_FALSE(descends_to_quotient(tcc));
    // relations t^13 s0, t^11 s1, t^9 s2, t^7 s01, t^5 s02, t^3 s12, t s012
    std::multiset<int> exps;
    for (std::size_t j = 0; j < tcc.chains.rels()->size(); ++j) {
        const auto& col = tcc.chains.incl().column(j);
        exps.insert(tcc.chains.rels()->degree(j) - tcc.chains.gens()->degree(col.begin()->index));
    }
    CHECK(exps == std::multiset<int>{1, 3, 5, 7, 9, 11, 13});

    const TorsionHomology th = torsion_homology(tcc);
    std::multiset<int> degrees;
    for (const auto& k : th.kernels)
        for (const auto& g : k.module.gens()->elements()) degrees.insert(g.degree);
    CHECK(degrees == std::multiset<int>{0, 1, 2, 5, 10, 12, 13});

    // dim-1 kernel has generators at 5, 12, 13; dim-2 has one at 10 that is
    // already zero in the quotient
    REQUIRE(th.kernels.size() == 3);
    const Barcode k1 = barcode(th.kernels[1].module, 1);
    CHECK(k1 == Barcode({bar(1, 5, 10), bar(1, 12, 12), bar(1, 13, 13)}));
    CHECK(barcode(th.kernels[2].module, 2) == Barcode({bar(2, 10, 10)}));
    const Barcode k0 = barcode(th.kernels[0].module, 0);
    CHECK(k0 == Barcode({bar(0, 0, 13), bar(0, 1, 12), bar(0, 2, 11)}));

    // dim-0 homology is C_0 modulo relations and edge boundaries; dense slices
    // of that quotient are the reference
    std::string text = "gen a 0\ngen b 1\ngen c 2\nrel t^13*a\nrel t^11*b\nrel t^9*c\n"
                       "rel t^3*a + -1t^2*b\nrel t^4*a + -1t^2*c\nrel t^4*b + -1t^3*c\n";
    const Presentation h0 = parse_presentation(text, Q);
    const Barcode got0 = th.barcode.in_dimension(0);
    for (int d = 0; d <= 14; ++d) CHECK(got0.dimension_at(d) == oracle::slice_dim(h0, d));
    CHECK(th.barcode.without_ephemeral() ==
          Barcode({bar(0, 0, 11), bar(0, 1, 3), bar(0, 2, 4), bar(1, 5, 6)}));
}

TEST_CASE("torsion homology rejects a boundary that does not square to zero") {
    const FilteredComplex c = parse_complex(slurp("fig2.flt")).complex;
    TorsionChainComplex tcc = relative_complex(c);
    // break one entry: ∂(0-1-2) loses its 1-2 face
    const std::size_t abc = *tcc.boundary.source()->find("0-1-2");
    const std::size_t bc = *tcc.boundary.source()->find("1-2");
    tcc.boundary.set(bc, abc, Scalar::zero(Q));
    CHECK_THROWS_AS(torsion_homology(tcc), ValidationError);
}
