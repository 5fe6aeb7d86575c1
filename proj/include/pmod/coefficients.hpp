#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace pmod {

/// Coefficient field: the rationals or a prime field Z/p.
class Field {
public:
    constexpr Field() noexcept = default;

    static constexpr Field rationals() noexcept { return Field{}; }

    /// Throws std::invalid_argument unless p is prime.
    static Field prime(std::uint32_t p);

    /// Parses `Q` or `Zp:<p>`.
    static Field parse(std::string_view spec);

    constexpr bool is_rational() const noexcept { return p_ == 0; }
    constexpr std::uint32_t characteristic() const noexcept { return p_; }
    std::string name() const;

    friend constexpr bool operator==(Field, Field) noexcept = default;

private:
    constexpr explicit Field(std::uint32_t p) noexcept : p_(p) {}
    std::uint32_t p_ = 0;
};

/// An exact element of a Field. Mixing fields in one operation throws.
class Scalar {
public:
    /// Zero of the rationals.
    Scalar() = default;
    Scalar(Field field, long value);
    Scalar(Field field, const mpq_class& value);

    static Scalar zero(Field field) { return Scalar(field, 0L); }
    static Scalar one(Field field) { return Scalar(field, 1L); }

    Field field() const noexcept { return field_; }
    bool is_zero() const noexcept;
    bool is_one() const noexcept;

    /// Throws std::domain_error for zero.
    Scalar inverse() const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& other);
    Scalar& operator-=(const Scalar& other);
    Scalar& operator*=(const Scalar& other);
    Scalar& operator/=(const Scalar& other);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    bool operator==(const Scalar& other) const;

    /// Rational value (the residue in [0, p) for prime fields).
    mpq_class to_rational() const;
    std::string to_string() const;

private:
    void check_same_field(const Scalar& other) const;

    Field field_;
    std::int64_t residue_ = 0;  // used when field_ is Z/p
    mpq_class rational_;        // used when field_ is Q
};

/// A homogeneous element c * t^e of k[t]. Zero is normalized to exponent 0.
class Monomial {
public:
    Monomial() = default;
    /// Throws std::invalid_argument for a negative exponent.
    Monomial(Scalar coeff, int exponent);

    static Monomial zero(Field field) { return Monomial(Scalar::zero(field), 0); }

    const Scalar& coeff() const noexcept { return coeff_; }
    int exponent() const noexcept { return exponent_; }
    bool is_zero() const noexcept { return coeff_.is_zero(); }

    /// Nonzero a divides b iff exp(a) <= exp(b); everything divides zero.
    bool divides(const Monomial& other) const;

    Monomial operator*(const Monomial& other) const;
    /// Sum of monomials of equal exponent; std::domain_error otherwise.
    Monomial operator+(const Monomial& other) const;
    Monomial operator-() const { return Monomial(-coeff_, exponent_); }
    Monomial operator-(const Monomial& other) const { return *this + (-other); }

    bool operator==(const Monomial& other) const;

    /// `<coeff>t^<e>`, e.g. `-2t^3`.
    std::string to_string() const;

private:
    Scalar coeff_;
    int exponent_ = 0;
};

/// Monic generator of the ideal (a, b): t^min(e_a, e_b).
/// Throws std::domain_error when both inputs are zero.
Monomial monomial_gcd(const Monomial& a, const Monomial& b);

/// Parses an integer or `p/q` rational into the field. A denominator
/// divisible by p throws std::domain_error.
Scalar parse_scalar(Field field, std::string_view text);

}  // namespace pmod
