#include "pmod/coefficients.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace pmod {

namespace {

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

std::int64_t reduce_mod(const mpz_class& value, std::uint32_t p) {
    mpz_class r = value % p;
    if (r < 0) r += p;
    return r.get_si();
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
    // extended Euclid on (a, p)
    std::int64_t old_r = a, r = p, old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::pair{r, old_r - q * r};
        std::tie(old_s, s) = std::pair{s, old_s - q * s};
    }
    old_s %= p;
    return old_s < 0 ? old_s + p : old_s;
}

}  // namespace

Field Field::prime(std::uint32_t p) {
    if (!is_prime(p))
        throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    return Field(p);
}

Field Field::parse(std::string_view spec) {
    if (spec == "Q") return rationals();
    constexpr std::string_view prefix = "Zp:";
    if (spec.starts_with(prefix)) {
        const auto digits = spec.substr(prefix.size());
        std::uint32_t p = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty()) return prime(p);
    }
    throw std::invalid_argument("unknown field '" + std::string(spec) + "' (expected Q or Zp:<p>)");
}

std::string Field::name() const {
    return is_rational() ? "Q" : "Zp:" + std::to_string(p_);
}

Scalar::Scalar(Field field, long value) : field_(field) {
    if (field.is_rational())
        rational_ = value;
    else
        residue_ = reduce_mod(mpz_class(value), field.characteristic());
}

Scalar::Scalar(Field field, const mpq_class& value) : field_(field) {
    if (field.is_rational()) {
        rational_ = value;
        rational_.canonicalize();
        return;
    }
    const std::uint32_t p = field.characteristic();
    const std::int64_t den = reduce_mod(value.get_den(), p);
    if (den == 0) throw std::domain_error("denominator vanishes modulo " + std::to_string(p));
    residue_ = static_cast<std::int64_t>(static_cast<std::uint64_t>(reduce_mod(value.get_num(), p)) *
                                         static_cast<std::uint64_t>(inverse_mod(den, p)) % p);
}

bool Scalar::is_zero() const noexcept {
    return field_.is_rational() ? sgn(rational_) == 0 : residue_ == 0;
}

bool Scalar::is_one() const noexcept {
    return field_.is_rational() ? rational_ == 1 : residue_ == 1;
}

void Scalar::check_same_field(const Scalar& other) const {
    if (field_ != other.field_)
        throw std::invalid_argument("scalar field mismatch: " + field_.name() + " vs " + other.field_.name());
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    Scalar result = *this;
    if (field_.is_rational())
        result.rational_ = 1 / rational_;
    else
        result.residue_ = inverse_mod(residue_, field_.characteristic());
    return result;
}

Scalar Scalar::operator-() const {
    Scalar result = *this;
    if (field_.is_rational())
        result.rational_ = -rational_;
    else if (residue_ != 0)
        result.residue_ = field_.characteristic() - residue_;
    return result;
}

Scalar& Scalar::operator+=(const Scalar& other) {
    check_same_field(other);
    if (field_.is_rational())
        rational_ += other.rational_;
    else
        residue_ = (residue_ + other.residue_) % field_.characteristic();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar& Scalar::operator*=(const Scalar& other) {
    check_same_field(other);
    if (field_.is_rational())
        rational_ *= other.rational_;
    else
        // residues are below p < 2^32, so the product fits in 64 unsigned bits
        residue_ = static_cast<std::int64_t>(static_cast<std::uint64_t>(residue_) *
                                             static_cast<std::uint64_t>(other.residue_) % field_.characteristic());
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
    check_same_field(other);
    return *this *= other.inverse();
}

bool Scalar::operator==(const Scalar& other) const {
    if (field_ != other.field_) return false;
    return field_.is_rational() ? rational_ == other.rational_ : residue_ == other.residue_;
}

mpq_class Scalar::to_rational() const {
    return field_.is_rational() ? rational_ : mpq_class(residue_);
}

std::string Scalar::to_string() const {
    return field_.is_rational() ? rational_.get_str() : std::to_string(residue_);
}

Monomial::Monomial(Scalar coeff, int exponent) : coeff_(std::move(coeff)), exponent_(exponent) {
    if (exponent < 0) throw std::invalid_argument("negative exponent in monomial");
    if (coeff_.is_zero()) exponent_ = 0;
}

bool Monomial::divides(const Monomial& other) const {
    if (other.is_zero()) return true;
    if (is_zero()) return false;
    return exponent_ <= other.exponent_;
}

Monomial Monomial::operator*(const Monomial& other) const {
    return Monomial(coeff_ * other.coeff_, exponent_ + other.exponent_);
}

Monomial Monomial::operator+(const Monomial& other) const {
    if (is_zero()) return Monomial(coeff_ + other.coeff_, other.exponent_);
    if (other.is_zero()) return Monomial(coeff_ + other.coeff_, exponent_);
    if (exponent_ != other.exponent_)
        throw std::domain_error("sum of monomials of different degree is not homogeneous");
    return Monomial(coeff_ + other.coeff_, exponent_);
}

bool Monomial::operator==(const Monomial& other) const {
    return coeff_ == other.coeff_ && exponent_ == other.exponent_;
}

std::string Monomial::to_string() const {
    return coeff_.to_string() + "t^" + std::to_string(exponent_);
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
    if (a.is_zero() && b.is_zero()) throw std::domain_error("gcd of two zero monomials");
    const Field field = a.is_zero() ? b.coeff().field() : a.coeff().field();
    if (a.is_zero()) return Monomial(Scalar::one(field), b.exponent());
    if (b.is_zero()) return Monomial(Scalar::one(field), a.exponent());
    if (a.coeff().field() != b.coeff().field()) throw std::invalid_argument("monomial field mismatch");
    return Monomial(Scalar::one(field), std::min(a.exponent(), b.exponent()));
}

Scalar parse_scalar(Field field, std::string_view text) {
    if (text.empty()) throw std::invalid_argument("empty coefficient");
    std::string s(text);
    if (s.front() == '+') s.erase(0, 1);
    mpq_class value;
    if (s.empty() || value.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed coefficient '" + std::string(text) + "'");
    if (value.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value.canonicalize();
    return Scalar(field, value);
}

}  // namespace pmod
