#include "pmod/graded_linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "pmod/errors.hpp"

namespace pmod {

// ---- SparseVector ----------------------------------------------------------

namespace {

auto lower(std::vector<Term>& terms, std::size_t index) {
    return std::lower_bound(terms.begin(), terms.end(), index,
                            [](const Term& t, std::size_t i) { return t.index < i; });
}

}  // namespace

const Scalar* SparseVector::find(std::size_t index) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), index,
                               [](const Term& t, std::size_t i) { return t.index < i; });
    return it != terms_.end() && it->index == index ? &it->value : nullptr;
}

void SparseVector::set(std::size_t index, const Scalar& value) {
    auto it = lower(terms_, index);
    const bool present = it != terms_.end() && it->index == index;
    if (value.is_zero()) {
        if (present) terms_.erase(it);
    } else if (present) {
        it->value = value;
    } else {
        terms_.insert(it, Term{index, value});
    }
}

void SparseVector::add(std::size_t index, const Scalar& value) {
    if (value.is_zero()) return;
    auto it = lower(terms_, index);
    if (it != terms_.end() && it->index == index) {
        it->value += value;
        if (it->value.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, Term{index, value});
    }
}

void SparseVector::axpy(const Scalar& a, const SparseVector& x) {
    if (a.is_zero() || x.empty()) return;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + x.terms_.size());
    auto i = terms_.begin();
    auto j = x.terms_.begin();
    while (i != terms_.end() || j != x.terms_.end()) {
        if (j == x.terms_.end() || (i != terms_.end() && i->index < j->index)) {
            merged.push_back(std::move(*i++));
        } else if (i == terms_.end() || j->index < i->index) {
            merged.push_back(Term{j->index, a * j->value});
            ++j;
        } else {
            Scalar v = i->value + a * j->value;
            if (!v.is_zero()) merged.push_back(Term{i->index, std::move(v)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(merged);
}

void SparseVector::scale(const Scalar& a) {
    if (a.is_zero()) {
        terms_.clear();
        return;
    }
    for (auto& t : terms_) t.value *= a;
}

std::optional<std::size_t> SparseVector::last_index() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.back().index;
}

// ---- GradedBasis -----------------------------------------------------------

GradedBasis::GradedBasis(std::vector<BasisElement> elements) {
    for (auto& e : elements) add(std::move(e.label), e.degree);
}

std::size_t GradedBasis::add(std::string label, int degree) {
    if (index_.contains(label)) throw ValidationError("duplicate basis label '" + label + "'");
    const std::size_t i = elements_.size();
    index_.emplace(label, i);
    elements_.push_back(BasisElement{std::move(label), degree});
    return i;
}

std::optional<std::size_t> GradedBasis::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::size_t> GradedBasis::ascending_order() const {
    std::vector<std::size_t> order(elements_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return elements_[a].degree < elements_[b].degree; });
    return order;
}

std::string GradedBasis::unique_label(const std::string& base) const {
    std::string label = base;
    while (index_.contains(label)) label += '\'';
    return label;
}

BasisPtr make_basis(std::vector<BasisElement> elements) {
    return std::make_shared<const GradedBasis>(std::move(elements));
}

bool same_basis(const BasisPtr& a, const BasisPtr& b) {
    return a == b || (a && b && *a == *b);
}

BasisPtr basis_sum(const GradedBasis& a, const GradedBasis& b) {
    GradedBasis out = a;
    for (const auto& e : b.elements()) out.add(out.unique_label(e.label), e.degree);
    return std::make_shared<const GradedBasis>(std::move(out));
}

bool degree_less(const GradedBasis& basis, std::size_t i, std::size_t j) {
    const int di = basis.degree(i), dj = basis.degree(j);
    return di != dj ? di < dj : i < j;
}

// ---- HomogeneousElement ----------------------------------------------------

HomogeneousElement::HomogeneousElement(Field field, BasisPtr basis, int degree, SparseVector coords)
    : field_(field), basis_(std::move(basis)), degree_(degree), coords_(std::move(coords)) {
    if (!basis_) throw std::invalid_argument("element without a basis");
    for (const auto& t : coords_) {
        if (t.index >= basis_->size()) throw std::out_of_range("coordinate index out of range");
        if (t.value.field() != field_) throw std::invalid_argument("coordinate field mismatch");
        if (exponent(t.index) < 0)
            throw ValidationError("element of degree " + std::to_string(degree_) + " cannot involve '" +
                                  basis_->label(t.index) + "' of degree " +
                                  std::to_string(basis_->degree(t.index)));
    }
}

HomogeneousElement HomogeneousElement::generator(Field field, BasisPtr basis, std::size_t i) {
    SparseVector v;
    v.set(i, Scalar::one(field));
    const int d = basis->degree(i);
    return HomogeneousElement(field, std::move(basis), d, std::move(v));
}

Monomial HomogeneousElement::coefficient(std::size_t i) const {
    const Scalar* c = coords_.find(i);
    if (!c) return Monomial::zero(field_);
    return Monomial(*c, exponent(i));
}

HomogeneousElement HomogeneousElement::shifted(int k) const {
    if (k < 0) throw std::invalid_argument("negative shift");
    return HomogeneousElement(field_, basis_, degree_ + k, coords_);
}

void HomogeneousElement::check_compatible(const HomogeneousElement& other) const {
    if (field_ != other.field_) throw std::invalid_argument("element field mismatch");
    if (!same_basis(basis_, other.basis_)) throw std::invalid_argument("element basis mismatch");
    if (degree_ != other.degree_ && !is_zero() && !other.is_zero())
        throw std::domain_error("sum of elements of different degree");
}

HomogeneousElement HomogeneousElement::operator+(const HomogeneousElement& other) const {
    check_compatible(other);
    if (is_zero()) return other;
    SparseVector v = coords_;
    v.axpy(Scalar::one(field_), other.coords_);
    return HomogeneousElement(field_, basis_, degree_, std::move(v));
}

HomogeneousElement HomogeneousElement::operator-(const HomogeneousElement& other) const {
    return *this + (-other);
}

HomogeneousElement HomogeneousElement::operator-() const {
    return *this * -Scalar::one(field_);
}

HomogeneousElement HomogeneousElement::operator*(const Scalar& c) const {
    SparseVector v = coords_;
    v.scale(c);
    return HomogeneousElement(field_, basis_, degree_, std::move(v));
}

bool HomogeneousElement::operator==(const HomogeneousElement& other) const {
    return field_ == other.field_ && same_basis(basis_, other.basis_) && degree_ == other.degree_ &&
           coords_ == other.coords_;
}

std::string HomogeneousElement::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (const auto& t : coords_) {
        if (!out.empty()) out += " + ";
        out += t.value.to_string() + "t^" + std::to_string(exponent(t.index)) + "*" + basis_->label(t.index);
    }
    return out;
}

// ---- GradedMatrix ----------------------------------------------------------

GradedMatrix::GradedMatrix(Field field, BasisPtr source, BasisPtr target)
    : field_(field), source_(std::move(source)), target_(std::move(target)) {
    if (!source_ || !target_) throw std::invalid_argument("matrix without a basis");
    columns_.resize(source_->size());
}

GradedMatrix GradedMatrix::identity(Field field, BasisPtr basis) {
    GradedMatrix m(field, basis, basis);
    for (std::size_t i = 0; i < basis->size(); ++i) m.columns_[i].set(i, Scalar::one(field));
    return m;
}

GradedMatrix GradedMatrix::from_columns(Field field, BasisPtr source, BasisPtr target,
                                        std::vector<SparseVector> columns) {
    GradedMatrix m(field, std::move(source), std::move(target));
    if (columns.size() != m.cols()) throw std::invalid_argument("column count does not match source basis");
    for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, std::move(columns[j]));
    return m;
}

void GradedMatrix::check_entry(std::size_t i, std::size_t j) const {
    if (i >= rows() || j >= cols()) throw std::out_of_range("matrix entry out of range");
    if (exponent(i, j) < 0)
        throw ValidationError("entry (" + target_->label(i) + ", " + source_->label(j) +
                              ") would need exponent " + std::to_string(exponent(i, j)));
}

HomogeneousElement GradedMatrix::column_element(std::size_t j) const {
    return HomogeneousElement(field_, target_, source_->degree(j), columns_.at(j));
}

void GradedMatrix::set(std::size_t i, std::size_t j, const Scalar& value) {
    if (!value.is_zero()) check_entry(i, j);
    columns_.at(j).set(i, value);
}

void GradedMatrix::add(std::size_t i, std::size_t j, const Scalar& value) {
    if (!value.is_zero()) check_entry(i, j);
    columns_.at(j).add(i, value);
}

void GradedMatrix::set_column(std::size_t j, SparseVector column) {
    for (const auto& t : column) check_entry(t.index, j);
    columns_.at(j) = std::move(column);
}

Scalar GradedMatrix::scalar(std::size_t i, std::size_t j) const {
    const Scalar* s = columns_.at(j).find(i);
    return s ? *s : Scalar::zero(field_);
}

Monomial GradedMatrix::entry(std::size_t i, std::size_t j) const {
    const Scalar* s = columns_.at(j).find(i);
    if (!s) return Monomial::zero(field_);
    return Monomial(*s, exponent(i, j));
}

bool GradedMatrix::is_zero() const {
    return std::all_of(columns_.begin(), columns_.end(), [](const SparseVector& c) { return c.empty(); });
}

std::size_t GradedMatrix::nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
}

GradedMatrix GradedMatrix::operator*(const GradedMatrix& rhs) const {
    if (field_ != rhs.field_) throw std::invalid_argument("matrix field mismatch");
    if (!same_basis(source_, rhs.target_)) throw std::invalid_argument("composition of incompatible matrices");
    GradedMatrix out(field_, rhs.source_, target_);
    for (std::size_t j = 0; j < rhs.cols(); ++j)
        for (const auto& t : rhs.columns_[j]) out.columns_[j].axpy(t.value, columns_[t.index]);
    return out;
}

GradedMatrix GradedMatrix::operator-() const {
    GradedMatrix out = *this;
    for (auto& c : out.columns_) c.scale(-Scalar::one(field_));
    return out;
}

bool GradedMatrix::operator==(const GradedMatrix& other) const {
    return field_ == other.field_ && same_basis(source_, other.source_) && same_basis(target_, other.target_) &&
           columns_ == other.columns_;
}

HomogeneousElement apply(const GradedMatrix& m, const HomogeneousElement& x) {
    if (!same_basis(m.source(), x.basis())) throw std::invalid_argument("apply: element is not over the source basis");
    SparseVector v;
    for (const auto& t : x.coords()) v.axpy(t.value, m.column(t.index));
    return HomogeneousElement(m.field(), m.target(), x.degree(), std::move(v));
}

GradedMatrix hconcat(const GradedMatrix& a, const GradedMatrix& b) {
    if (!same_basis(a.target(), b.target())) throw std::invalid_argument("hconcat: target mismatch");
    std::vector<SparseVector> cols = a.columns();
    cols.insert(cols.end(), b.columns().begin(), b.columns().end());
    return GradedMatrix::from_columns(a.field(), basis_sum(*a.source(), *b.source()), a.target(), std::move(cols));
}

GradedMatrix block_diagonal(const GradedMatrix& a, const GradedMatrix& b) {
    std::vector<SparseVector> cols = a.columns();
    const std::size_t offset = a.rows();
    for (const auto& c : b.columns()) {
        SparseVector shifted;
        for (const auto& t : c) shifted.set(t.index + offset, t.value);
        cols.push_back(std::move(shifted));
    }
    return GradedMatrix::from_columns(a.field(), basis_sum(*a.source(), *b.source()),
                                      basis_sum(*a.target(), *b.target()), std::move(cols));
}

GradedMatrix row_block(const GradedMatrix& m, std::size_t begin, std::size_t end, BasisPtr target) {
    if (end < begin || end > m.rows() || target->size() != end - begin)
        throw std::invalid_argument("row_block: bad range");
    std::vector<SparseVector> cols;
    for (const auto& c : m.columns()) {
        SparseVector v;
        for (const auto& t : c)
            if (t.index >= begin && t.index < end) v.set(t.index - begin, t.value);
        cols.push_back(std::move(v));
    }
    return GradedMatrix::from_columns(m.field(), m.source(), std::move(target), std::move(cols));
}

GradedMatrix select_columns(const GradedMatrix& m, const std::vector<std::size_t>& cols) {
    std::vector<BasisElement> elems;
    std::vector<SparseVector> data;
    for (std::size_t j : cols) {
        elems.push_back((*m.source())[j]);
        data.push_back(m.column(j));
    }
    return GradedMatrix::from_columns(m.field(), make_basis(std::move(elems)), m.target(), std::move(data));
}

// ---- echelon forms ---------------------------------------------------------

namespace {

std::optional<std::size_t> column_low(const SparseVector& v, const GradedBasis& rows) {
    std::optional<std::size_t> best;
    for (const auto& t : v)
        if (!best || degree_less(rows, *best, t.index)) best = t.index;
    return best;
}

// row -> echelon column owning it as low
std::unordered_map<std::size_t, std::size_t> low_table(const std::vector<std::optional<std::size_t>>& lows) {
    std::unordered_map<std::size_t, std::size_t> table;
    for (std::size_t j = 0; j < lows.size(); ++j)
        if (lows[j]) table.emplace(*lows[j], j);
    return table;
}

}  // namespace

EchelonForm row_echelon(const GradedMatrix& m) {
    const Field k = m.field();
    std::vector<SparseVector> ech(m.cols()), change(m.cols());
    std::vector<std::optional<std::size_t>> lows(m.cols());
    std::unordered_map<std::size_t, std::size_t> owner;
    const GradedBasis& rows = *m.target();

    for (std::size_t j : m.source()->ascending_order()) {
        SparseVector col = m.column(j);
        SparseVector ch;
        ch.set(j, Scalar::one(k));
        while (auto low = column_low(col, rows)) {
            auto it = owner.find(*low);
            if (it == owner.end()) {
                owner.emplace(*low, j);
                lows[j] = low;
                break;
            }
            const std::size_t p = it->second;
            const Scalar lambda = -(*col.find(*low) / *ech[p].find(*low));
            col.axpy(lambda, ech[p]);
            ch.axpy(lambda, change[p]);
        }
        ech[j] = std::move(col);
        change[j] = std::move(ch);
    }
    return EchelonForm{GradedMatrix::from_columns(k, m.source(), m.target(), std::move(ech)),
                       GradedMatrix::from_columns(k, m.source(), m.source(), std::move(change)), std::move(lows)};
}

HomogeneousElement normal_form(const HomogeneousElement& x, const EchelonForm& basis) {
    const GradedMatrix& e = basis.echelon;
    if (!same_basis(e.target(), x.basis())) throw std::invalid_argument("normal_form: basis mismatch");
    const GradedBasis& rows = *e.target();
    const auto owner = low_table(basis.lows);
    SparseVector v = x.coords();
    std::optional<std::size_t> bound;
    // a reduction by a column with low r touches only rows below r
    for (;;) {
        std::optional<std::size_t> pick;
        for (const auto& t : v) {
            if (bound && !degree_less(rows, t.index, *bound)) continue;
            auto it = owner.find(t.index);
            if (it == owner.end() || e.source()->degree(it->second) > x.degree()) continue;
            if (!pick || degree_less(rows, *pick, t.index)) pick = t.index;
        }
        if (!pick) break;
        const std::size_t p = owner.at(*pick);
        v.axpy(-(*v.find(*pick) / *e.column(p).find(*pick)), e.column(p));
        bound = pick;
    }
    return HomogeneousElement(x.field(), x.basis(), x.degree(), std::move(v));
}

HomogeneousElement normal_form(const HomogeneousElement& x, const GradedMatrix& echelon) {
    std::vector<std::optional<std::size_t>> lows(echelon.cols());
    std::unordered_map<std::size_t, std::size_t> seen;
    for (std::size_t j = 0; j < echelon.cols(); ++j) {
        lows[j] = column_low(echelon.column(j), *echelon.target());
        if (lows[j] && !seen.emplace(*lows[j], j).second)
            throw std::invalid_argument("normal_form: matrix is not in echelon form");
    }
    EchelonForm form{echelon, GradedMatrix::identity(echelon.field(), echelon.source()), std::move(lows)};
    return normal_form(x, form);
}

bool membership(const HomogeneousElement& x, const EchelonForm& sub) {
    return express(x, sub).has_value();
}

bool membership(const HomogeneousElement& x, const GradedMatrix& sub) {
    return membership(x, row_echelon(sub));
}

std::optional<HomogeneousElement> express(const HomogeneousElement& x, const EchelonForm& form) {
    const GradedMatrix& e = form.echelon;
    if (!same_basis(e.target(), x.basis())) throw std::invalid_argument("express: basis mismatch");
    const GradedBasis& rows = *e.target();
    const auto owner = low_table(form.lows);
    SparseVector v = x.coords();
    SparseVector y;
    while (auto low = column_low(v, rows)) {
        auto it = owner.find(*low);
        if (it == owner.end() || e.source()->degree(it->second) > x.degree()) return std::nullopt;
        const std::size_t p = it->second;
        const Scalar lambda = *v.find(*low) / *e.column(p).find(*low);
        v.axpy(-lambda, e.column(p));
        y.axpy(lambda, form.change.column(p));
    }
    return HomogeneousElement(x.field(), e.source(), x.degree(), std::move(y));
}

GradedMatrix free_kernel(const GradedMatrix& m, std::string_view prefix) {
    EchelonForm form = row_echelon(m);
    std::vector<BasisElement> elems;
    std::vector<SparseVector> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        if (form.lows[j]) continue;
        elems.push_back(BasisElement{std::string(prefix) + std::to_string(elems.size()), m.source()->degree(j)});
        cols.push_back(form.change.column(j));
    }
    return GradedMatrix::from_columns(m.field(), make_basis(std::move(elems)), m.source(), std::move(cols));
}

GradedMatrix column_basis(const GradedMatrix& m) {
    EchelonForm form = row_echelon(m);
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < m.cols(); ++j)
        if (form.lows[j]) keep.push_back(j);
    return select_columns(form.echelon, keep);
}

// ---- graded Smith normal form ----------------------------------------------

namespace {

using Dense = std::vector<std::vector<Scalar>>;

Dense to_dense(const GradedMatrix& m) {
    Dense d(m.rows(), std::vector<Scalar>(m.cols(), Scalar::zero(m.field())));
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (const auto& t : m.column(j)) d[t.index][j] = t.value;
    return d;
}

Dense dense_identity(Field k, std::size_t n) {
    Dense d(n, std::vector<Scalar>(n, Scalar::zero(k)));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = Scalar::one(k);
    return d;
}

GradedMatrix from_dense(Field k, const Dense& d, BasisPtr source, BasisPtr target) {
    GradedMatrix m(k, source, target);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d[i].size(); ++j)
            if (!d[i][j].is_zero()) m.set(i, j, d[i][j]);
    return m;
}

// row a += lambda * row b
void row_op(Dense& d, std::size_t a, std::size_t b, const Scalar& lambda) {
    for (std::size_t j = 0; j < d[b].size(); ++j)
        if (!d[b][j].is_zero()) d[a][j] += lambda * d[b][j];
}

// col a += lambda * col b
void col_op(Dense& d, std::size_t a, std::size_t b, const Scalar& lambda) {
    for (auto& row : d)
        if (!row[b].is_zero()) row[a] += lambda * row[b];
}

}  // namespace

SnfResult graded_snf(const GradedMatrix& m) {
    const Field k = m.field();
    const GradedBasis& rows = *m.target();
    const GradedBasis& cols = *m.source();
    Dense a = to_dense(m);
    Dense s = dense_identity(k, m.rows()), s_inv = s;
    Dense t = dense_identity(k, m.cols()), t_inv = t;
    std::vector<bool> row_done(m.rows(), false);
    SnfResult result{m, m, m, m, m, {}, {}, {}};

    for (std::size_t c : cols.ascending_order()) {
        std::optional<std::size_t> p;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (row_done[i] || a[i][c].is_zero()) continue;
            if (!p || degree_less(rows, *p, i)) p = i;
        }
        if (!p) {
            result.zero_cols.push_back(c);
            continue;
        }
        const Scalar pivot = a[*p][c];
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == *p || a[i][c].is_zero()) continue;
            const Scalar lambda = -(a[i][c] / pivot);
            row_op(a, i, *p, lambda);
            row_op(s, i, *p, lambda);
            col_op(s_inv, *p, i, -lambda);
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j == c || a[*p][j].is_zero()) continue;
            const Scalar lambda = -(a[*p][j] / pivot);
            col_op(a, j, c, lambda);
            col_op(t, j, c, lambda);
            row_op(t_inv, c, j, -lambda);
        }
        row_done[*p] = true;
        result.diagonal.push_back(SnfPivot{*p, c, Monomial(pivot, cols.degree(c) - rows.degree(*p))});
    }
    for (std::size_t i = 0; i < m.rows(); ++i)
        if (!row_done[i]) result.free_rows.push_back(i);

    result.reduced = from_dense(k, a, m.source(), m.target());
    result.row_change = from_dense(k, s, m.target(), m.target());
    result.row_change_inverse = from_dense(k, s_inv, m.target(), m.target());
    result.col_change = from_dense(k, t, m.source(), m.source());
    result.col_change_inverse = from_dense(k, t_inv, m.source(), m.source());
    return result;
}

}  // namespace pmod
