#include "novbar/ground.hpp"

#include <algorithm>
#include <sstream>

namespace novbar {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

GroundField GroundField::prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime: " + std::to_string(p));
    if (p >= (1ULL << 31)) throw std::invalid_argument("prime too large");
    return {FieldKind::Prime, p};
}

GroundField GroundField::prime_with_u(std::uint64_t p) {
    GroundField f = prime(p);
    f.kind = FieldKind::PrimeWithU;
    return f;
}

std::string GroundField::str() const {
    switch (kind) {
        case FieldKind::Rationals: return "Q";
        case FieldKind::Prime: return "F" + std::to_string(p);
        case FieldKind::PrimeWithU: return "F" + std::to_string(p) + "(u)";
    }
    return "?";
}

GroundField GroundField::parse(const std::string& text) {
    if (text == "Q") return rationals();
    if (text.size() >= 2 && text[0] == 'F') {
        bool with_u = false;
        std::string digits = text.substr(1);
        if (digits.size() > 3 && digits.substr(digits.size() - 3) == "(u)") {
            with_u = true;
            digits = digits.substr(0, digits.size() - 3);
        }
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
            std::uint64_t p = std::stoull(digits);
            return with_u ? prime_with_u(p) : prime(p);
        }
    }
    throw std::invalid_argument("unknown field: '" + text + "' (expected Q, F<p> or F<p>(u))");
}

namespace fp {

std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a + b) % p; }
std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return (a + p - b) % p; }
std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t inv(std::uint64_t a, std::uint64_t p) {
    if (a % p == 0) throw std::domain_error("division by zero in F_" + std::to_string(p));
    // Fermat: a^(p-2) mod p.
    std::uint64_t base = a % p, e = p - 2, acc = 1;
    while (e) {
        if (e & 1) acc = mul(acc, base, p);
        base = mul(base, base, p);
        e >>= 1;
    }
    return acc;
}

}  // namespace fp

namespace upoly {

static void trim(UPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

UPoly add(const UPoly& a, const UPoly& b, std::uint64_t p) {
    UPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = fp::add(x, y, p);
    }
    trim(r);
    return r;
}

UPoly sub(const UPoly& a, const UPoly& b, std::uint64_t p) {
    UPoly r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint64_t x = i < a.size() ? a[i] : 0, y = i < b.size() ? b[i] : 0;
        r[i] = fp::sub(x, y, p);
    }
    trim(r);
    return r;
}

UPoly mul(const UPoly& a, const UPoly& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = fp::add(r[i + j], fp::mul(a[i], b[j], p), p);
    }
    trim(r);
    return r;
}

void divmod(const UPoly& a, const UPoly& b, std::uint64_t p, UPoly& q, UPoly& r) {
    if (b.empty()) throw std::domain_error("u-polynomial division by zero");
    r = a;
    q.assign(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
    std::uint64_t lead_inv = fp::inv(b.back(), p);
    while (r.size() >= b.size() && !r.empty()) {
        std::size_t shift = r.size() - b.size();
        std::uint64_t c = fp::mul(r.back(), lead_inv, p);
        q[shift] = fp::add(q[shift], c, p);
        for (std::size_t i = 0; i < b.size(); ++i)
            r[shift + i] = fp::sub(r[shift + i], fp::mul(c, b[i], p), p);
        trim(r);
    }
    trim(q);
}

UPoly make_monic(UPoly a, std::uint64_t p) {
    if (a.empty()) return a;
    std::uint64_t s = fp::inv(a.back(), p);
    for (auto& c : a) c = fp::mul(c, s, p);
    return a;
}

UPoly gcd(UPoly a, UPoly b, std::uint64_t p) {
    while (!b.empty()) {
        UPoly q, r;
        divmod(a, b, p, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(std::move(a), p);
}

std::size_t order(const UPoly& a) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0) return i;
    return 0;
}

std::string str(const UPoly& a) {
    if (a.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = a.size(); k-- > 0;) {
        if (a[k] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (k == 0) {
            os << a[k];
        } else {
            if (a[k] != 1) os << a[k] << "*";
            os << "u";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

UPoly parse(const std::string& text, std::uint64_t p) {
    // Terms "c", "u", "u^k", "c*u^k" joined by '+'.
    UPoly r;
    std::size_t pos = 0;
    if (text.empty()) throw std::invalid_argument("empty u-polynomial");
    if (text == "0") return r;
    while (pos < text.size()) {
        std::size_t next = text.find('+', pos);
        std::string term = text.substr(pos, next == std::string::npos ? next : next - pos);
        pos = next == std::string::npos ? text.size() : next + 1;
        std::uint64_t coeff = 1;
        std::size_t deg = 0;
        std::size_t upos = term.find('u');
        std::string cpart = upos == std::string::npos ? term : term.substr(0, upos);
        if (!cpart.empty() && cpart.back() == '*') cpart.pop_back();
        if (!cpart.empty()) coeff = std::stoull(cpart) % p;
        if (upos != std::string::npos) {
            deg = 1;
            std::size_t caret = term.find('^', upos);
            if (caret != std::string::npos) deg = std::stoull(term.substr(caret + 1));
        }
        if (r.size() <= deg) r.resize(deg + 1, 0);
        r[deg] = fp::add(r[deg], coeff, p);
    }
    trim(r);
    return r;
}

}  // namespace upoly

static URat urat_canonical(UPoly num, UPoly den, std::uint64_t p) {
    if (den.empty()) throw std::domain_error("zero denominator in F_p(u)");
    if (num.empty()) return URat{{}, {1}};
    UPoly g = upoly::gcd(num, den, p);
    if (g.size() > 1 || (g.size() == 1 && g[0] != 1)) {
        UPoly q, r;
        upoly::divmod(num, g, p, q, r);
        num = q;
        upoly::divmod(den, g, p, q, r);
        den = q;
    }
    std::uint64_t s = fp::inv(den.back(), p);
    for (auto& c : den) c = fp::mul(c, s, p);
    for (auto& c : num) c = fp::mul(c, s, p);
    return URat{std::move(num), std::move(den)};
}

GroundScalar GroundScalar::zero(const GroundField& f) {
    switch (f.kind) {
        case FieldKind::Rationals: return {f, Rational(0)};
        case FieldKind::Prime: return {f, std::uint64_t{0}};
        case FieldKind::PrimeWithU: return {f, URat{}};
    }
    throw std::logic_error("bad field kind");
}

GroundScalar GroundScalar::one(const GroundField& f) { return from_int(f, 1); }

GroundScalar GroundScalar::from_int(const GroundField& f, long n) {
    switch (f.kind) {
        case FieldKind::Rationals: return {f, Rational(n)};
        case FieldKind::Prime: {
            long m = n % static_cast<long>(f.p);
            if (m < 0) m += static_cast<long>(f.p);
            return {f, static_cast<std::uint64_t>(m)};
        }
        case FieldKind::PrimeWithU: {
            long m = n % static_cast<long>(f.p);
            if (m < 0) m += static_cast<long>(f.p);
            if (m == 0) return {f, URat{}};
            return {f, URat{{static_cast<std::uint64_t>(m)}, {1}}};
        }
    }
    throw std::logic_error("bad field kind");
}

GroundScalar GroundScalar::from_rational(Rational q) {
    q.canonicalize();
    return {GroundField::rationals(), std::move(q)};
}

GroundScalar GroundScalar::from_residue(std::uint64_t p, std::uint64_t a) {
    return {GroundField::prime(p), a % p};
}

GroundScalar GroundScalar::u_variable(const GroundField& f) {
    if (f.kind != FieldKind::PrimeWithU)
        throw std::invalid_argument("u lives in F_p(u) only");
    return {f, URat{{0, 1}, {1}}};
}

bool GroundScalar::is_zero() const {
    switch (field_.kind) {
        case FieldKind::Rationals: return rational_value() == 0;
        case FieldKind::Prime: return residue_value() == 0;
        case FieldKind::PrimeWithU: return urational_value().num.empty();
    }
    return false;
}

bool GroundScalar::is_one() const {
    switch (field_.kind) {
        case FieldKind::Rationals: return rational_value() == 1;
        case FieldKind::Prime: return residue_value() == 1;
        case FieldKind::PrimeWithU: {
            const URat& v = urational_value();
            return v.num == UPoly{1} && v.den == UPoly{1};
        }
    }
    return false;
}

void GroundScalar::require_same(const GroundScalar& a, const GroundScalar& b) {
    if (!(a.field_ == b.field_))
        throw std::invalid_argument("ground field mismatch: " + a.field_.str() + " vs " + b.field_.str());
}

GroundScalar GroundScalar::operator-() const {
    switch (field_.kind) {
        case FieldKind::Rationals: return {field_, Rational(-rational_value())};
        case FieldKind::Prime:
            return {field_, residue_value() == 0 ? std::uint64_t{0} : field_.p - residue_value()};
        case FieldKind::PrimeWithU: {
            URat v = urational_value();
            for (auto& c : v.num) c = c == 0 ? 0 : field_.p - c;
            return {field_, std::move(v)};
        }
    }
    throw std::logic_error("bad field kind");
}

GroundScalar operator+(const GroundScalar& a, const GroundScalar& b) {
    GroundScalar::require_same(a, b);
    const GroundField& f = a.field_;
    switch (f.kind) {
        case FieldKind::Rationals: return {f, Rational(a.rational_value() + b.rational_value())};
        case FieldKind::Prime: return {f, fp::add(a.residue_value(), b.residue_value(), f.p)};
        case FieldKind::PrimeWithU: {
            const URat &x = a.urational_value(), &y = b.urational_value();
            UPoly num = upoly::add(upoly::mul(x.num, y.den, f.p), upoly::mul(y.num, x.den, f.p), f.p);
            return {f, urat_canonical(std::move(num), upoly::mul(x.den, y.den, f.p), f.p)};
        }
    }
    throw std::logic_error("bad field kind");
}

GroundScalar operator-(const GroundScalar& a, const GroundScalar& b) { return a + (-b); }

GroundScalar operator*(const GroundScalar& a, const GroundScalar& b) {
    GroundScalar::require_same(a, b);
    const GroundField& f = a.field_;
    switch (f.kind) {
        case FieldKind::Rationals: return {f, Rational(a.rational_value() * b.rational_value())};
        case FieldKind::Prime: return {f, fp::mul(a.residue_value(), b.residue_value(), f.p)};
        case FieldKind::PrimeWithU: {
            const URat &x = a.urational_value(), &y = b.urational_value();
            return {f, urat_canonical(upoly::mul(x.num, y.num, f.p), upoly::mul(x.den, y.den, f.p), f.p)};
        }
    }
    throw std::logic_error("bad field kind");
}

GroundScalar GroundScalar::inverse() const {
    if (is_zero()) throw std::domain_error("division by zero in " + field_.str());
    switch (field_.kind) {
        case FieldKind::Rationals: return {field_, Rational(1 / rational_value())};
        case FieldKind::Prime: return {field_, fp::inv(residue_value(), field_.p)};
        case FieldKind::PrimeWithU: {
            const URat& v = urational_value();
            return {field_, urat_canonical(v.den, v.num, field_.p)};
        }
    }
    throw std::logic_error("bad field kind");
}

GroundScalar operator/(const GroundScalar& a, const GroundScalar& b) { return a * b.inverse(); }

GroundScalar GroundScalar::reduce_mod(std::uint64_t p) const {
    if (field_.kind != FieldKind::Rationals)
        throw std::invalid_argument("reduce_mod applies to rationals");
    GroundField target = GroundField::prime(p);
    const Rational& q = rational_value();
    mpz_class num = q.get_num(), den = q.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), p))
        throw std::domain_error(std::to_string(p) + " divides a coefficient denominator");
    std::uint64_t n = mpz_fdiv_ui(num.get_mpz_t(), p);
    std::uint64_t d = mpz_fdiv_ui(den.get_mpz_t(), p);
    return {target, fp::mul(n, fp::inv(d, p), p)};
}

GroundScalar GroundScalar::extend_to_u() const {
    switch (field_.kind) {
        case FieldKind::Rationals:
        case FieldKind::PrimeWithU: return *this;
        case FieldKind::Prime: {
            GroundField target = GroundField::prime_with_u(field_.p);
            if (residue_value() == 0) return {target, URat{}};
            return {target, URat{{residue_value()}, {1}}};
        }
    }
    throw std::logic_error("bad field kind");
}

long GroundScalar::u_valuation() const {
    if (is_zero()) throw std::domain_error("u-valuation of zero");
    if (field_.kind != FieldKind::PrimeWithU) return 0;
    const URat& v = urational_value();
    return static_cast<long>(upoly::order(v.num)) - static_cast<long>(upoly::order(v.den));
}

std::string GroundScalar::str() const {
    switch (field_.kind) {
        case FieldKind::Rationals: return to_string(rational_value());
        case FieldKind::Prime:
            return "[" + std::to_string(residue_value()) + "]_" + std::to_string(field_.p);
        case FieldKind::PrimeWithU: {
            const URat& v = urational_value();
            std::string s = "(" + upoly::str(v.num) + ")";
            if (!(v.den == UPoly{1})) s += "/(" + upoly::str(v.den) + ")";
            return s;
        }
    }
    return "?";
}

GroundScalar GroundScalar::parse(const GroundField& f, const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty scalar literal");
    switch (f.kind) {
        case FieldKind::Rationals: return from_rational(parse_rational(text));
        case FieldKind::Prime: {
            // "[a]_p" or a plain integer.
            std::string body = text;
            if (text.front() == '[') {
                std::size_t close = text.find("]_");
                if (close == std::string::npos)
                    throw std::invalid_argument("bad F_p literal: '" + text + "'");
                std::uint64_t lit_p = std::stoull(text.substr(close + 2));
                if (lit_p != f.p)
                    throw std::invalid_argument("F_p literal for wrong characteristic: '" + text + "'");
                body = text.substr(1, close - 1);
            }
            long v = std::stol(body);
            return from_int(f, v);
        }
        case FieldKind::PrimeWithU: {
            // "(num)" or "(num)/(den)".
            if (text.front() != '(')
                return from_int(f, std::stol(text));
            std::size_t close = text.find(')');
            if (close == std::string::npos)
                throw std::invalid_argument("bad F_p(u) literal: '" + text + "'");
            UPoly num = upoly::parse(text.substr(1, close - 1), f.p);
            UPoly den{1};
            if (close + 1 < text.size()) {
                if (text.substr(close + 1, 2) != "/(" || text.back() != ')')
                    throw std::invalid_argument("bad F_p(u) literal: '" + text + "'");
                den = upoly::parse(text.substr(close + 3, text.size() - close - 4), f.p);
            }
            return {f, urat_canonical(std::move(num), std::move(den), f.p)};
        }
    }
    throw std::logic_error("bad field kind");
}

}  // namespace novbar
