#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmod/homology.hpp"
#include "pmod/presentation.hpp"

namespace pmod {

/// Complex files: one simplex per line, `v0 v1 ... vk ; birth [; removal|inf]`,
/// `#` starts a comment. When some value is not a nonnegative integer, all
/// values are replaced by their rank among the distinct values, and
/// `value_map` lists the substitutions in increasing order.
struct ParsedComplex {
    FilteredComplex complex;
    std::vector<std::pair<std::string, int>> value_map;
};

/// Throws ParseError for malformed lines and ValidationError for violated
/// complex invariants.
ParsedComplex parse_complex(std::string_view text);
/// Parsing only, in file order; streams check faces on insertion instead.
std::vector<Simplex> parse_simplices(std::string_view text, std::vector<std::pair<std::string, int>>* value_map);
std::string print_complex(const FilteredComplex& c);

/// Presentation files:
///   gen <name> <degree>
///   rel <term> + <term> + ...          (degree inferred from the terms)
///   rel <label> <degree> : <terms|0>
/// with term = [coeff]t^<e>*<name>.
Presentation parse_presentation(std::string_view text, Field field);
std::string print_presentation(const Presentation& p);

/// Morphism files: a `source` section and a `target` section in the
/// presentation format, then `map <name> -> <terms|0>` lines. Unmapped
/// generators go to zero. Compatibility is checked (ValidationError).
PresentationMorphism parse_morphism(std::string_view text, Field field);
std::string print_morphism(const PresentationMorphism& f);

/// `<dim|-> <birth> <death|inf>` per line, sorted by (dim, birth, death).
std::string print_barcode(const Barcode& b);

}  // namespace pmod
