#include "novbar/novikov.hpp"

#include <algorithm>
#include <sstream>

namespace novbar {

namespace novpoly {

NovPoly add(const NovPoly& a, const NovPoly& b) {
    NovPoly r;
    r.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i].exp < b[j].exp) {
            r.push_back(a[i++]);
        } else if (b[j].exp < a[i].exp) {
            r.push_back(b[j++]);
        } else {
            GroundScalar c = a[i].coeff + b[j].coeff;
            if (!c.is_zero()) r.push_back({std::move(c), a[i].exp});
            ++i;
            ++j;
        }
    }
    for (; i < a.size(); ++i) r.push_back(a[i]);
    for (; j < b.size(); ++j) r.push_back(b[j]);
    return r;
}

NovPoly neg(NovPoly a) {
    for (auto& t : a) t.coeff = -t.coeff;
    return a;
}

NovPoly mul(const NovPoly& a, const NovPoly& b) {
    if (a.empty() || b.empty()) return {};
    if (a.size() == 1) {
        NovPoly r;
        r.reserve(b.size());
        for (const auto& t : b) {
            GroundScalar c = a[0].coeff * t.coeff;
            if (!c.is_zero()) r.push_back({std::move(c), a[0].exp + t.exp});
        }
        return r;
    }
    NovPoly r;
    for (const auto& t : a) {
        NovPoly part;
        part.reserve(b.size());
        for (const auto& s : b) {
            GroundScalar c = t.coeff * s.coeff;
            if (!c.is_zero()) part.push_back({std::move(c), t.exp + s.exp});
        }
        r = add(r, part);
    }
    return r;
}

static NovPoly shifted(NovPoly a, const Rational& s) {
    for (auto& t : a) t.exp += s;
    return a;
}

// Division tracking the top (largest-exponent) terms. Monomials are units
// here, so both sides are stripped to minimal exponent 0 first; otherwise
// exact Laurent quotients with negative exponents would be missed.
static void divmod(NovPoly a, const NovPoly& b, NovPoly& q, NovPoly& r) {
    if (b.empty()) throw std::domain_error("Novikov polynomial division by zero");
    Rational a_shift = a.empty() ? Rational(0) : a.front().exp;
    Rational b_shift = b.front().exp;
    a = shifted(std::move(a), -a_shift);
    NovPoly b0 = shifted(b, -b_shift);
    q.clear();
    GroundScalar lead_inv = b0.back().coeff.inverse();
    while (!a.empty() && !(a.back().exp < b0.back().exp)) {
        NovTerm t{a.back().coeff * lead_inv, a.back().exp - b0.back().exp};
        q.push_back(t);
        a = add(a, neg(mul(NovPoly{t}, b0)));
    }
    std::reverse(q.begin(), q.end());
    q = shifted(std::move(q), a_shift - b_shift);
    r = shifted(std::move(a), a_shift);
}

NovPoly div_exact(const NovPoly& a, const NovPoly& b) {
    NovPoly q, r;
    divmod(a, b, q, r);
    if (!r.empty()) throw std::logic_error("inexact Novikov polynomial division");
    return q;
}

static NovPoly normalize_unit(NovPoly a) {
    if (a.empty()) return a;
    Rational shift = a.front().exp;
    GroundScalar scale = a.front().coeff.inverse();
    for (auto& t : a) {
        t.exp -= shift;
        t.coeff = t.coeff * scale;
    }
    return a;
}

NovPoly gcd(NovPoly a, NovPoly b) {
    while (!b.empty()) {
        b = normalize_unit(std::move(b));
        NovPoly q, r;
        divmod(std::move(a), b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return normalize_unit(std::move(a));
}

}  // namespace novpoly

void NovikovScalar::canonicalize() {
    if (num_.empty()) {
        den_.clear();
        den_.push_back({GroundScalar::one(field_), Rational(0)});
        return;
    }
    if (den_.empty()) throw std::domain_error("division by zero Novikov scalar");
    if (den_.size() > 1 && num_.size() > 1) {
        NovPoly g = novpoly::gcd(num_, den_);
        if (g.size() > 1) {
            num_ = novpoly::div_exact(num_, g);
            den_ = novpoly::div_exact(den_, g);
        }
    }
    // Unit-normalize the denominator: minimal exponent 0, lowest coefficient 1.
    Rational shift = den_.front().exp;
    GroundScalar scale = den_.front().coeff.inverse();
    bool trivial = shift == 0 && scale.is_one();
    if (!trivial) {
        for (auto& t : den_) {
            t.exp -= shift;
            t.coeff = t.coeff * scale;
        }
        for (auto& t : num_) {
            t.exp -= shift;
            t.coeff = t.coeff * scale;
        }
    }
}

NovikovScalar NovikovScalar::zero(const GroundField& f) {
    return NovikovScalar(f, {}, {{GroundScalar::one(f), Rational(0)}});
}

NovikovScalar NovikovScalar::one(const GroundField& f) {
    return from_ground(GroundScalar::one(f));
}

NovikovScalar NovikovScalar::from_ground(const GroundScalar& c) {
    return monomial(c, Rational(0));
}

NovikovScalar NovikovScalar::monomial(const GroundScalar& c, const Rational& e) {
    NovPoly num;
    if (!c.is_zero()) num.push_back({c, e});
    return NovikovScalar(c.field(), std::move(num), {{GroundScalar::one(c.field()), Rational(0)}});
}

NovikovScalar NovikovScalar::t_power(const GroundField& f, const Rational& e) {
    return monomial(GroundScalar::one(f), e);
}

NovikovScalar NovikovScalar::from_fraction(GroundField f, NovPoly num, NovPoly den) {
    NovikovScalar r(std::move(f), std::move(num), std::move(den));
    // Defensive ordering check on externally supplied term lists.
    for (const NovPoly* part : {&r.num_, &r.den_})
        for (std::size_t i = 1; i < part->size(); ++i)
            if (!((*part)[i - 1].exp < (*part)[i].exp))
                throw std::invalid_argument("Novikov terms must be sorted with distinct exponents");
    r.canonicalize();
    return r;
}

bool NovikovScalar::is_one() const {
    return num_.size() == 1 && den_.size() == 1 && num_[0].exp == 0 && num_[0].coeff.is_one();
}

Valuation NovikovScalar::val() const {
    if (num_.empty()) return Valuation::infinity();
    return Valuation(num_.front().exp - den_.front().exp);
}

NovikovScalar NovikovScalar::operator-() const {
    return NovikovScalar(field_, novpoly::neg(num_), den_);
}

NovikovScalar operator+(const NovikovScalar& a, const NovikovScalar& b) {
    if (!(a.field_ == b.field_))
        throw std::invalid_argument("Novikov field mismatch: " + a.field_.str() + " vs " + b.field_.str());
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) {
        NovikovScalar r(a.field_, novpoly::add(a.num_, b.num_), a.den_);
        r.canonicalize();
        return r;
    }
    NovPoly num = novpoly::add(novpoly::mul(a.num_, b.den_), novpoly::mul(b.num_, a.den_));
    NovikovScalar r(a.field_, std::move(num), novpoly::mul(a.den_, b.den_));
    r.canonicalize();
    return r;
}

NovikovScalar operator-(const NovikovScalar& a, const NovikovScalar& b) { return a + (-b); }

NovikovScalar operator*(const NovikovScalar& a, const NovikovScalar& b) {
    if (!(a.field_ == b.field_))
        throw std::invalid_argument("Novikov field mismatch: " + a.field_.str() + " vs " + b.field_.str());
    if (a.is_zero() || b.is_zero()) return NovikovScalar::zero(a.field_);
    NovikovScalar r(a.field_, novpoly::mul(a.num_, b.num_), novpoly::mul(a.den_, b.den_));
    r.canonicalize();
    return r;
}

NovikovScalar NovikovScalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero Novikov scalar");
    NovikovScalar r(field_, den_, num_);
    r.canonicalize();
    return r;
}

NovikovScalar operator/(const NovikovScalar& a, const NovikovScalar& b) { return a * b.inverse(); }

NovikovScalar NovikovScalar::reduce_mod(std::uint64_t p) const {
    if (field_.kind != FieldKind::Rationals)
        throw std::invalid_argument("reduce_mod applies to scalars over Q");
    GroundField target = GroundField::prime(p);
    if (is_zero()) return zero(target);
    // Clear integer content jointly: multiply through by the lcm of all
    // coefficient denominators, divide by the gcd of all numerators.
    mpz_class lcm = 1, gcd = 0;
    for (const NovPoly* part : {&num_, &den_})
        for (const auto& t : *part)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coeff.rational_value().get_den().get_mpz_t());
    for (const NovPoly* part : {&num_, &den_})
        for (const auto& t : *part) {
            mpz_class scaled = t.coeff.rational_value().get_num() *
                               (lcm / t.coeff.rational_value().get_den());
            mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), scaled.get_mpz_t());
        }
    Rational unit(lcm, gcd);  // multiply both parts by lcm/gcd
    unit.canonicalize();
    auto reduce_part = [&](const NovPoly& part) {
        NovPoly out;
        for (const auto& t : part) {
            Rational c = t.coeff.rational_value() * unit;
            c.canonicalize();
            // c is an integer by construction of lcm/gcd.
            std::uint64_t residue = mpz_fdiv_ui(c.get_num().get_mpz_t(), p);
            if (residue != 0) out.push_back({GroundScalar::from_residue(p, residue), t.exp});
        }
        return out;
    };
    NovPoly num = reduce_part(num_);
    NovPoly den = reduce_part(den_);
    if (den.empty())
        throw std::domain_error(std::to_string(p) + " divides a coefficient denominator");
    NovikovScalar r(target, std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

NovikovScalar NovikovScalar::extend_to_u() const {
    if (field_.kind != FieldKind::Prime) return *this;
    GroundField target = GroundField::prime_with_u(field_.p);
    auto embed = [&](const NovPoly& part) {
        NovPoly out;
        out.reserve(part.size());
        for (const auto& t : part) out.push_back({t.coeff.extend_to_u(), t.exp});
        return out;
    };
    return NovikovScalar(target, embed(num_), embed(den_));
}

bool NovikovScalar::has_nonnegative_u_degree() const {
    if (field_.kind != FieldKind::PrimeWithU) return true;
    for (const NovPoly* part : {&num_, &den_})
        for (const auto& t : *part)
            if (t.coeff.u_valuation() < 0) return false;
    return true;
}

static std::string poly_str(const NovPoly& p) {
    std::ostringstream os;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << " + ";
        os << p[i].coeff.str() << "*T^(" << to_string(p[i].exp) << ")";
    }
    return os.str();
}

std::string NovikovScalar::str() const {
    if (is_zero()) return "0";
    std::string s = poly_str(num_);
    if (!(den_.size() == 1 && den_[0].exp == 0 && den_[0].coeff.is_one()))
        s += " / " + poly_str(den_);
    return s;
}

static NovPoly parse_poly(const GroundField& f, const std::string& text) {
    NovPoly terms;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(" + ", pos);
        std::string term = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? text.size() + 1 : next + 3;
        std::size_t star = term.rfind("*T^(");
        if (star == std::string::npos || term.back() != ')')
            throw std::invalid_argument("bad Novikov term: '" + term + "'");
        GroundScalar c = GroundScalar::parse(f, term.substr(0, star));
        Rational e = parse_rational(term.substr(star + 4, term.size() - star - 5));
        if (!c.is_zero()) terms.push_back({std::move(c), std::move(e)});
    }
    std::sort(terms.begin(), terms.end(),
              [](const NovTerm& a, const NovTerm& b) { return a.exp < b.exp; });
    for (std::size_t i = 1; i < terms.size(); ++i)
        if (terms[i - 1].exp == terms[i].exp)
            throw std::invalid_argument("duplicate exponent in Novikov literal");
    return terms;
}

NovikovScalar NovikovScalar::parse(const GroundField& f, const std::string& text) {
    if (text == "0") return zero(f);
    std::size_t slash = text.find(" / ");
    NovPoly num = parse_poly(f, slash == std::string::npos ? text : text.substr(0, slash));
    NovPoly den{{GroundScalar::one(f), Rational(0)}};
    if (slash != std::string::npos) den = parse_poly(f, text.substr(slash + 3));
    return from_fraction(f, std::move(num), std::move(den));
}

}  // namespace novbar
