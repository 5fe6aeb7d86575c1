#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oracle.hpp"
#include "pmod/errors.hpp"
#include "pmod/presentation.hpp"
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

Bar bar(int b, std::optional<int> d) { return Bar{std::nullopt, b, d}; }

void check_against_slices(const Presentation& p) {
    const Barcode b = barcode(p);
    for (int d = -1; d <= 13; ++d) {
        CHECK(b.dimension_at(d) == oracle::slice_dim(p, d));
        CHECK(dimension_at(p, d) == oracle::slice_dim(p, d));
        for (int j = 0; j <= 4; ++j) {
            CHECK(b.rank_t_power(d, j) == oracle::slice_rank_t(p, d, j));
            CHECK(rank_t_power(p, d, j) == oracle::slice_rank_t(p, d, j));
        }
    }
}

}  // namespace

TEST_CASE("bars and barcodes") {
    CHECK(bar(2, 2).ephemeral());
    CHECK_FALSE(bar(2, 3).ephemeral());
    CHECK(bar(1, 3).alive_at(2));
    CHECK_FALSE(bar(1, 3).alive_at(3));
    CHECK(bar(1, std::nullopt).alive_at(100));
    Barcode b({bar(3, std::nullopt), bar(1, 4), Bar{0, 5, 6}, bar(1, 2)});
    REQUIRE(b.size() == 4);
    CHECK(b.bars()[0] == bar(1, 2));
    CHECK(b.bars()[3] == Bar{0, 5, 6});
    CHECK(b.in_dimension(0).size() == 1);
    b.add(bar(2, 2));
    CHECK(b.without_ephemeral().size() == 4);
}

TEST_CASE("free module has only infinite bars") {
    const Presentation p = Presentation::free(Q, make_basis({{"a", 0}, {"b", 3}}));
    CHECK(barcode(p) == Barcode({bar(0, std::nullopt), bar(3, std::nullopt)}));
    CHECK(barcode(Presentation::empty(Q)).empty());
}

TEST_CASE("worked example: five generators, four relations") {
    const Presentation p = parse_presentation(slurp("fig3.pmod"), Q);
    const Barcode b = barcode(p);
    CHECK(b == Barcode({bar(1, 4), bar(1, std::nullopt), bar(2, 2), bar(3, 3), bar(3, 4)}));

    const SnfResult snf = graded_snf(p.incl());
    std::vector<int> exps;
    for (const auto& piv : snf.diagonal) exps.push_back(piv.value.exponent());
    std::sort(exps.begin(), exps.end());
    CHECK(exps == std::vector<int>{0, 0, 1, 3});
    CHECK(snf.free_rows == std::vector<std::size_t>{0});

    // new basis, as columns of S^-1 over x, y, z, u, v
    const auto y_new = snf.row_change_inverse.column_element(1);
    CHECK(y_new.to_string() == "2t^0*x + 1t^0*y");
    const auto z_new = snf.row_change_inverse.column_element(2);
    CHECK(z_new.to_string() == "1t^1*x + 1t^1*y + 1t^0*z");
    const auto u_new = snf.row_change_inverse.column_element(3);
    CHECK(u_new.to_string() == "1t^2*x + 1t^2*y + 1t^0*u");
    const auto v_new = snf.row_change_inverse.column_element(4);
    CHECK(v_new.to_string() == "-1t^2*x + 1t^0*v");
    check_against_slices(p);
}

TEST_CASE("barcode agrees with slice dimensions and t-power ranks") {
    oracle::Rng rng(21);
    for (const Field f : {Q, Field::prime(5)})
        for (int trial = 0; trial < 150; ++trial) check_against_slices(oracle::random_presentation(rng, f));
}

TEST_CASE("snf_form keeps the module and makes relations monic monomials") {
    oracle::Rng rng(22);
    for (int trial = 0; trial < 150; ++trial) {
        const Field f = trial % 2 ? Q : Field::prime(5);
        const Presentation p = oracle::random_presentation(rng, f);
        for (bool keep : {true, false}) {
            const SnfForm s = snf_form(p, keep);
            const auto& np = s.presentation;
            for (std::size_t j = 0; j < np.rels()->size(); ++j) {
                const auto& col = np.incl().column(j);
                REQUIRE(col.size() == 1);
                CHECK(col.terms()[0].value.is_one());
                const std::size_t g = col.terms()[0].index;
                CHECK(s.annihilators[g] == np.rels()->degree(j) - np.gens()->degree(g));
                if (!keep) CHECK(*s.annihilators[g] > 0);
            }
            for (int d = 0; d <= 12; ++d) CHECK(oracle::slice_dim(np, d) == oracle::slice_dim(p, d));
            // to_new and from_new are mutually inverse on the module: from_new
            // followed by to_new is the identity on the new generators
            const GradedMatrix round = s.to_new * s.from_new;
            for (std::size_t i = 0; i < round.cols(); ++i) {
                const auto diff = round.column_element(i) - HomogeneousElement::generator(f, np.gens(), i);
                CHECK(membership(diff, np.incl()));
            }
            // and the old relations go to relations
            const GradedMatrix moved = s.to_new * p.incl();
            for (std::size_t j = 0; j < moved.cols(); ++j) CHECK(membership(moved.column_element(j), np.incl()));
        }
    }
}

TEST_CASE("minimize drops unit relations but not bars") {
    oracle::Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        const Presentation p = oracle::random_presentation(rng, Q);
        const Presentation m = minimize(p);
        CHECK(barcode(m) == barcode(p).without_ephemeral());
        CHECK(barcode(minimize(p, true)) == barcode(p));
    }
}

TEST_CASE("morphism validation") {
    const Presentation a = parse_presentation("gen x 0\nrel t^2*x\n", Q);
    const Presentation b = parse_presentation("gen y 0\nrel t^1*y\n", Q);
    const Presentation free_y = Presentation::free(Q, b.gens());
    GradedMatrix phi(Q, a.gens(), b.gens());
    phi.set(0, 0, Scalar::one(Q));
    CHECK(validate_morphism({a, b, phi}));       // t^2 x -> t^2 y = 0 in b
    CHECK_FALSE(validate_morphism({a, free_y, phi}));
    GradedMatrix back(Q, b.gens(), a.gens());
    back.set(0, 0, Scalar::one(Q));
    CHECK_FALSE(validate_morphism({b, a, back}));  // t y = 0 but t x != 0
    CHECK(validate_morphism(identity_morphism(a)));
    CHECK(validate_morphism(zero_morphism(b, a)));
    CHECK_THROWS_AS(validate_morphism({b, b, phi}), std::invalid_argument);
}
