#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pmod/coefficients.hpp"

namespace pmod {

struct Term {
    std::size_t index;
    Scalar value;

    bool operator==(const Term&) const = default;
};

/// Sorted list of nonzero (index, scalar) pairs.
class SparseVector {
public:
    SparseVector() = default;

    const std::vector<Term>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    auto begin() const noexcept { return terms_.begin(); }
    auto end() const noexcept { return terms_.end(); }

    /// nullptr when the coordinate is zero.
    const Scalar* find(std::size_t index) const;
    void set(std::size_t index, const Scalar& value);
    void add(std::size_t index, const Scalar& value);
    /// this += a * x
    void axpy(const Scalar& a, const SparseVector& x);
    void scale(const Scalar& a);
    /// Largest index with a nonzero coordinate.
    std::optional<std::size_t> last_index() const;

    bool operator==(const SparseVector&) const = default;

private:
    std::vector<Term> terms_;
};

struct BasisElement {
    std::string label;
    int degree = 0;

    bool operator==(const BasisElement&) const = default;
};

/// Ordered generators of a free graded module. Labels are unique.
class GradedBasis {
public:
    GradedBasis() = default;
    explicit GradedBasis(std::vector<BasisElement> elements);

    /// Throws ValidationError on a duplicate label.
    std::size_t add(std::string label, int degree);

    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    const BasisElement& operator[](std::size_t i) const { return elements_.at(i); }
    int degree(std::size_t i) const { return elements_.at(i).degree; }
    const std::string& label(std::size_t i) const { return elements_.at(i).label; }
    const std::vector<BasisElement>& elements() const noexcept { return elements_; }
    std::optional<std::size_t> find(std::string_view label) const;

    /// Indices sorted by (degree, index).
    std::vector<std::size_t> ascending_order() const;

    /// `base` if free, otherwise `base'`, `base''`, ...
    std::string unique_label(const std::string& base) const;

    bool operator==(const GradedBasis& other) const { return elements_ == other.elements_; }

private:
    std::vector<BasisElement> elements_;
    std::unordered_map<std::string, std::size_t> index_;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;

BasisPtr make_basis(std::vector<BasisElement> elements);
bool same_basis(const BasisPtr& a, const BasisPtr& b);

/// a followed by b; clashing labels of b get primes appended.
BasisPtr basis_sum(const GradedBasis& a, const GradedBasis& b);

/// True when (deg(i), i) < (deg(j), j).
bool degree_less(const GradedBasis& basis, std::size_t i, std::size_t j);

/// Sum of c_i t^(d - deg_i) basis[i]; every nonzero coordinate needs d >= deg_i.
class HomogeneousElement {
public:
    /// Throws ValidationError when an implied exponent is negative.
    HomogeneousElement(Field field, BasisPtr basis, int degree, SparseVector coords = {});

    static HomogeneousElement generator(Field field, BasisPtr basis, std::size_t i);

    Field field() const noexcept { return field_; }
    const BasisPtr& basis() const noexcept { return basis_; }
    int degree() const noexcept { return degree_; }
    const SparseVector& coords() const noexcept { return coords_; }
    bool is_zero() const noexcept { return coords_.empty(); }

    int exponent(std::size_t i) const { return degree_ - basis_->degree(i); }
    Monomial coefficient(std::size_t i) const;

    /// Multiplication by t^k.
    HomogeneousElement shifted(int k) const;

    HomogeneousElement operator+(const HomogeneousElement& other) const;
    HomogeneousElement operator-(const HomogeneousElement& other) const;
    HomogeneousElement operator-() const;
    HomogeneousElement operator*(const Scalar& c) const;

    bool operator==(const HomogeneousElement& other) const;

    /// e.g. `1t^1*b + -1t^1*a`, `0` for zero.
    std::string to_string() const;

private:
    void check_compatible(const HomogeneousElement& other) const;

    Field field_;
    BasisPtr basis_;
    int degree_;
    SparseVector coords_;
};

/// Degree-0 map between free graded modules. Column j is the image of
/// source generator j; entry (i, j) is a scalar whose exponent is
/// deg(source j) - deg(target i).
class GradedMatrix {
public:
    GradedMatrix(Field field, BasisPtr source, BasisPtr target);

    static GradedMatrix identity(Field field, BasisPtr basis);
    static GradedMatrix from_columns(Field field, BasisPtr source, BasisPtr target,
                                     std::vector<SparseVector> columns);

    Field field() const noexcept { return field_; }
    const BasisPtr& source() const noexcept { return source_; }
    const BasisPtr& target() const noexcept { return target_; }
    std::size_t rows() const noexcept { return target_->size(); }
    std::size_t cols() const noexcept { return source_->size(); }

    const SparseVector& column(std::size_t j) const { return columns_.at(j); }
    const std::vector<SparseVector>& columns() const noexcept { return columns_; }
    HomogeneousElement column_element(std::size_t j) const;

    /// Throw ValidationError for an entry whose exponent would be negative.
    void set(std::size_t i, std::size_t j, const Scalar& value);
    void add(std::size_t i, std::size_t j, const Scalar& value);
    void set_column(std::size_t j, SparseVector column);

    Scalar scalar(std::size_t i, std::size_t j) const;
    Monomial entry(std::size_t i, std::size_t j) const;
    int exponent(std::size_t i, std::size_t j) const { return source_->degree(j) - target_->degree(i); }

    bool is_zero() const;
    std::size_t nonzeros() const;

    /// Composition this * rhs; rhs.target must equal this.source.
    GradedMatrix operator*(const GradedMatrix& rhs) const;
    GradedMatrix operator-() const;

    bool operator==(const GradedMatrix& other) const;

private:
    void check_entry(std::size_t i, std::size_t j) const;

    Field field_;
    BasisPtr source_;
    BasisPtr target_;
    std::vector<SparseVector> columns_;
};

HomogeneousElement apply(const GradedMatrix& m, const HomogeneousElement& x);

/// [a | b] on the source basis_sum(a.source, b.source).
GradedMatrix hconcat(const GradedMatrix& a, const GradedMatrix& b);
/// diag(a, b) from basis_sum of sources to basis_sum of targets.
GradedMatrix block_diagonal(const GradedMatrix& a, const GradedMatrix& b);
/// Rows [begin, end) of m as a map into `target` (which has end - begin elements).
GradedMatrix row_block(const GradedMatrix& m, std::size_t begin, std::size_t end, BasisPtr target);
/// Keep the listed columns; the new source is made of those elements.
GradedMatrix select_columns(const GradedMatrix& m, const std::vector<std::size_t>& cols);

/// Column reduction in (degree, index) order. echelon = m * change, change is
/// unitriangular; nonzero echelon columns have distinct lows, where the low of
/// a column is its nonzero row maximal in (degree, index) order.
struct EchelonForm {
    GradedMatrix echelon;
    GradedMatrix change;
    std::vector<std::optional<std::size_t>> lows;  // per column; nullopt = zero column
};

EchelonForm row_echelon(const GradedMatrix& m);

/// Removes from x every coordinate that a legal multiple of an echelon column
/// can cancel.
HomogeneousElement normal_form(const HomogeneousElement& x, const EchelonForm& basis);
HomogeneousElement normal_form(const HomogeneousElement& x, const GradedMatrix& echelon);

bool membership(const HomogeneousElement& x, const EchelonForm& sub);
bool membership(const HomogeneousElement& x, const GradedMatrix& sub);

/// y over m.source with m * y = x, or nullopt if x is not in the column span.
std::optional<HomogeneousElement> express(const HomogeneousElement& x, const EchelonForm& form);

/// Free basis of ker(m) as columns into m.source. New labels are prefix0, prefix1, ...
GradedMatrix free_kernel(const GradedMatrix& m, std::string_view prefix = "k");

/// Free basis of the column span (the nonzero echelon columns).
GradedMatrix column_basis(const GradedMatrix& m);

struct SnfPivot {
    std::size_t row;
    std::size_t col;
    Monomial value;
};

/// reduced = row_change * m * col_change.
struct SnfResult {
    GradedMatrix reduced;
    GradedMatrix row_change;
    GradedMatrix row_change_inverse;
    GradedMatrix col_change;
    GradedMatrix col_change_inverse;
    std::vector<SnfPivot> diagonal;
    std::vector<std::size_t> free_rows;
    std::vector<std::size_t> zero_cols;
};

/// Columns are treated in (degree, index) order; the pivot of a column is its
/// entry of smallest exponent, ties going to the row largest in (degree, index).
SnfResult graded_snf(const GradedMatrix& m);

}  // namespace pmod
