#include <doctest.h>

#include <algorithm>

#include "oracle.hpp"
#include "pmod/errors.hpp"
#include "pmod/streaming.hpp"

using namespace pmod;

namespace {

Barcode fold(const std::vector<BarcodeDelta>& deltas) {
    std::vector<Bar> bars;
    for (const auto& d : deltas) {
        for (const auto& b : d.removed) {
            auto it = std::find(bars.begin(), bars.end(), b);
            REQUIRE(it != bars.end());
            bars.erase(it);
        }
        bars.insert(bars.end(), d.added.begin(), d.added.end());
    }
    return Barcode(bars);
}

}  // namespace

TEST_CASE("empty stream") {
    StreamState s;
    CHECK(s.current_barcode().empty());
    CHECK(s.pairs().empty());
    CHECK(s.audit());
}

TEST_CASE("narrated triangle stream re-pairs a vertex") {
    StreamState s;
    s.add_simplex({1}, 1);
    s.add_simplex({2}, 4);
    s.add_simplex({1, 2}, 6);
    CHECK(s.partner("2") == "1-2");
    s.add_simplex({3}, 2);
    s.add_simplex({1, 3}, 3);
    CHECK(s.partner("2") == "1-2");
    const BarcodeDelta d = s.add_simplex({2, 3}, 5);
    CHECK(s.partner("2") == "2-3");
    CHECK(s.partner("1-2") == std::nullopt);  // now creates a cycle
    CHECK(d.removed == std::vector<Bar>{Bar{0, 4, 6}});
    s.add_simplex({1, 2, 3}, 7);
    CHECK(s.partner("1-2") == "1-2-3");
    CHECK(s.audit());
    CHECK(s.current_barcode() ==
          Barcode({Bar{0, 1, std::nullopt}, Bar{0, 2, 3}, Bar{0, 4, 5}, Bar{1, 6, 7}}));
    const FilteredComplex batch({{{1}, 1, {}}, {{2}, 4, {}}, {{3}, 2, {}}, {{1, 2}, 6, {}},
                                 {{1, 3}, 3, {}}, {{2, 3}, 5, {}}, {{1, 2, 3}, 7, {}}});
    CHECK(s.current_barcode() == persistent_homology(batch));
}

TEST_CASE("insertion errors") {
    StreamState s;
    s.add_simplex({0}, 2);
    CHECK_THROWS_AS(s.add_simplex({0}, 3), ValidationError);
    CHECK_THROWS_AS(s.add_simplex({0, 1}, 3), ValidationError);
    s.add_simplex({1}, 0);
    CHECK_THROWS_AS(s.add_simplex({0, 1}, 1), ValidationError);  // face value 2 exceeds 1
    CHECK_NOTHROW(s.add_simplex({1, 0}, 2));
    CHECK(s.size() == 3);
}

TEST_CASE("random insertion orders match the batch barcode; deltas fold to it") {
    oracle::Rng rng(61);
    for (int trial = 0; trial < 150; ++trial) {
        const auto simplices = oracle::random_simplices(rng, 30, 10);
        const FilteredComplex batch(simplices);
        const Field f = trial % 2 ? Field::rationals() : Field::prime(3);
        const Barcode expected = persistent_homology(batch, f);
        StreamState s(f);
        std::vector<BarcodeDelta> deltas;
        for (const auto& x : oracle::random_insertion_order(rng, simplices)) {
            deltas.push_back(s.add_simplex(x.vertices, x.birth));
            CHECK(s.audit());
        }
        CHECK(s.current_barcode() == expected);
        CHECK(fold(deltas) == s.current_barcode());
    }
}
