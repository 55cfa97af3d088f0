#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "novbar/rational.hpp"

namespace novbar {

enum class FieldKind { Rationals, Prime, PrimeWithU };

/// Selectable ground field: Q, F_p, or F_p(u) with u transcendental.
/// F_p(u) is the computable stand-in for a Laurent-series extension of F_p;
/// the Tate and deformation machinery only ever produces rational functions
/// of u.
struct GroundField {
    FieldKind kind = FieldKind::Rationals;
    std::uint64_t p = 0;

    static GroundField rationals() { return {FieldKind::Rationals, 0}; }
    static GroundField prime(std::uint64_t p);
    static GroundField prime_with_u(std::uint64_t p);

    bool operator==(const GroundField&) const = default;

    std::string str() const;
    static GroundField parse(const std::string& text);
};

bool is_prime(std::uint64_t n);

// Polynomials in u over F_p: ascending coefficients, no trailing zeros,
// empty vector = 0.
using UPoly = std::vector<std::uint64_t>;

namespace fp {
std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p);
std::uint64_t inv(std::uint64_t a, std::uint64_t p);
}  // namespace fp

namespace upoly {
UPoly add(const UPoly& a, const UPoly& b, std::uint64_t p);
UPoly sub(const UPoly& a, const UPoly& b, std::uint64_t p);
UPoly mul(const UPoly& a, const UPoly& b, std::uint64_t p);
// Euclidean division; requires b != 0.
void divmod(const UPoly& a, const UPoly& b, std::uint64_t p, UPoly& q, UPoly& r);
UPoly gcd(UPoly a, UPoly b, std::uint64_t p);  // monic
UPoly make_monic(UPoly a, std::uint64_t p);
// Order of vanishing at u = 0 (index of first nonzero coefficient).
std::size_t order(const UPoly& a);
std::string str(const UPoly& a);
UPoly parse(const std::string& text, std::uint64_t p);
}  // namespace upoly

/// Reduced fraction of u-polynomials over F_p; denominator monic, nonzero.
struct URat {
    UPoly num;
    UPoly den{1};

    bool operator==(const URat&) const = default;
};

/// One element of a GroundField. Arithmetic is exact; mixing fields throws.
class GroundScalar {
  public:
    GroundScalar() : field_(GroundField::rationals()), value_(Rational(0)) {}

    static GroundScalar zero(const GroundField& f);
    static GroundScalar one(const GroundField& f);
    static GroundScalar from_int(const GroundField& f, long n);
    static GroundScalar from_rational(Rational q);                     // over Q
    static GroundScalar from_residue(std::uint64_t p, std::uint64_t a);  // over F_p
    static GroundScalar u_variable(const GroundField& f);              // over F_p(u)

    const GroundField& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    GroundScalar operator-() const;
    friend GroundScalar operator+(const GroundScalar& a, const GroundScalar& b);
    friend GroundScalar operator-(const GroundScalar& a, const GroundScalar& b);
    friend GroundScalar operator*(const GroundScalar& a, const GroundScalar& b);
    friend GroundScalar operator/(const GroundScalar& a, const GroundScalar& b);
    GroundScalar inverse() const;

    bool operator==(const GroundScalar&) const = default;

    /// Coefficientwise reduction Q -> F_p. Throws if p divides the
    /// denominator of the (canonical) rational.
    GroundScalar reduce_mod(std::uint64_t p) const;

    /// Embedding F_p -> F_p(u); identity on Q and F_p(u).
    GroundScalar extend_to_u() const;

    /// u-adic valuation of an F_p(u) element (ord at u = 0); for the other
    /// fields this is 0 for nonzero values. Throws on zero.
    long u_valuation() const;

    const Rational& rational_value() const { return std::get<Rational>(value_); }
    std::uint64_t residue_value() const { return std::get<std::uint64_t>(value_); }
    const URat& urational_value() const { return std::get<URat>(value_); }

    std::string str() const;
    static GroundScalar parse(const GroundField& f, const std::string& text);

  private:
    GroundScalar(GroundField f, std::variant<Rational, std::uint64_t, URat> v)
        : field_(f), value_(std::move(v)) {}
    static void require_same(const GroundScalar& a, const GroundScalar& b);

    GroundField field_;
    std::variant<Rational, std::uint64_t, URat> value_;
};

}  // namespace novbar
