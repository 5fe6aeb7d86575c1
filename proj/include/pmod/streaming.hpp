#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pmod/graded_linalg.hpp"
#include "pmod/presentation.hpp"

namespace pmod {

struct BarcodeDelta {
    std::vector<Bar> added;
    std::vector<Bar> removed;
};

/// Persistence pairing maintained under insertions in any order that puts
/// faces before cofaces. Simplices are ordered by (value, insertion number).
class StreamState {
public:
    explicit StreamState(Field field = Field::rationals());

    /// Throws ValidationError for a duplicate, a missing face, or a face whose
    /// value exceeds the new simplex's value.
    BarcodeDelta add_simplex(std::vector<int> vertices, int value);

    Barcode current_barcode() const;

    /// (creator, destroyer) labels such as ("2", "1-2").
    std::vector<std::pair<std::string, std::string>> pairs() const;
    std::optional<std::string> partner(const std::string& label) const;

    std::size_t size() const noexcept { return cells_.size(); }

    /// Recomputes the pairing from scratch in sorted order and compares.
    bool audit() const;

private:
    struct Cell {
        std::vector<int> vertices;
        std::string label;
        int value;
        int dim;
    };

    bool key_less(std::size_t a, std::size_t b) const;
    std::optional<std::size_t> low(const SparseVector& column) const;
    SparseVector boundary_of(std::size_t id) const;

    Field field_;
    std::vector<Cell> cells_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<SparseVector> reduced_;
    std::unordered_map<std::size_t, std::size_t> owner_;  // low row -> column
};

}  // namespace pmod
