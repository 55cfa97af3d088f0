#pragma once

#include <vector>

#include "novbar/ground.hpp"
#include "novbar/rational.hpp"

namespace novbar {

/// One term c*T^(e) of a finite Novikov sum. Terms are kept sorted by
/// exponent with distinct exponents and nonzero coefficients.
struct NovTerm {
    GroundScalar coeff;
    Rational exp;

    bool operator==(const NovTerm&) const = default;
};

using NovPoly = std::vector<NovTerm>;

/// Element of the fraction field of finite Novikov sums Σ a_j T^(λ_j) over a
/// selectable ground field, with exact rational exponents.
///
/// This is a deliberate model choice: the completed Novikov field contains
/// infinite series (e.g. inverses of valuation-0 sums), but every in-scope
/// construction only produces finite data, and the fraction representation
/// keeps all arithmetic exact and terminating.
///
/// Canonical form: numerator/denominator coprime as Laurent-style
/// polynomials in T (so equality is structural), the denominator's minimal
/// exponent is 0 and its lowest coefficient is 1. Zero has an empty
/// numerator. Values are immutable once constructed.
class NovikovScalar {
  public:
    NovikovScalar() : field_(GroundField::rationals()) { den_.push_back({GroundScalar::one(field_), Rational(0)}); }

    static NovikovScalar zero(const GroundField& f);
    static NovikovScalar one(const GroundField& f);
    static NovikovScalar from_ground(const GroundScalar& c);
    /// c * T^(e)
    static NovikovScalar monomial(const GroundScalar& c, const Rational& e);
    /// T^(e)
    static NovikovScalar t_power(const GroundField& f, const Rational& e);
    static NovikovScalar from_fraction(GroundField f, NovPoly num, NovPoly den);

    const GroundField& field() const { return field_; }
    const NovPoly& numerator() const { return num_; }
    const NovPoly& denominator() const { return den_; }

    bool is_zero() const { return num_.empty(); }
    bool is_one() const;
    bool is_monomial() const { return num_.size() == 1 && den_.size() == 1; }

    /// T-adic valuation: min numerator exponent minus min denominator
    /// exponent; +infinity iff zero.
    Valuation val() const;

    NovikovScalar operator-() const;
    friend NovikovScalar operator+(const NovikovScalar& a, const NovikovScalar& b);
    friend NovikovScalar operator-(const NovikovScalar& a, const NovikovScalar& b);
    friend NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b);
    friend NovikovScalar operator/(const NovikovScalar& a, const NovikovScalar& b);
    NovikovScalar inverse() const;

    bool operator==(const NovikovScalar&) const = default;

    /// Coefficientwise reduction to F_p after jointly clearing integer
    /// content; fails loudly when p divides what is left in the denominator.
    NovikovScalar reduce_mod(std::uint64_t p) const;

    /// F_p -> F_p(u) coefficient embedding (identity on the other fields).
    NovikovScalar extend_to_u() const;

    /// True when every coefficient of the canonical fraction has
    /// nonnegative u-adic valuation; with the denominator's unit
    /// normalization this certifies the value lies in F_p[[u]]-land.
    bool has_nonnegative_u_degree() const;

    std::string str() const;
    static NovikovScalar parse(const GroundField& f, const std::string& text);

  private:
    NovikovScalar(GroundField f, NovPoly num, NovPoly den)
        : field_(std::move(f)), num_(std::move(num)), den_(std::move(den)) {}
    void canonicalize();

    GroundField field_;
    NovPoly num_;
    NovPoly den_;
};

namespace novpoly {
NovPoly add(const NovPoly& a, const NovPoly& b);
NovPoly neg(NovPoly a);
NovPoly mul(const NovPoly& a, const NovPoly& b);
/// Exact division (throws if not exact).
NovPoly div_exact(const NovPoly& a, const NovPoly& b);
/// Euclidean gcd in the Laurent-polynomial ring K[T^Q]; result normalized to
/// minimal exponent 0 and lowest coefficient 1.
NovPoly gcd(NovPoly a, NovPoly b);
}  // namespace novpoly

}  // namespace novbar
