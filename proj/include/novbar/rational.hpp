#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace novbar {

// Exact rationals. All exponents, actions and bar lengths in the library
// are mpq_class values; nothing is ever rounded.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& r);

/// A T-adic valuation value: a rational, or +infinity (the valuation of 0).
class Valuation {
  public:
    Valuation() : infinite_(true) {}
    explicit Valuation(Rational v) : infinite_(false), value_(std::move(v)) {}

    static Valuation infinity() { return Valuation(); }

    bool is_infinite() const { return infinite_; }
    const Rational& value() const {
        if (infinite_) throw std::domain_error("valuation is +infinity");
        return value_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }
    friend bool operator!=(const Valuation& a, const Valuation& b) { return !(a == b); }
    friend bool operator<(const Valuation& a, const Valuation& b) {
        if (a.infinite_) return false;
        if (b.infinite_) return true;
        return a.value_ < b.value_;
    }
    friend bool operator<=(const Valuation& a, const Valuation& b) { return !(b < a); }
    friend bool operator>(const Valuation& a, const Valuation& b) { return b < a; }
    friend bool operator>=(const Valuation& a, const Valuation& b) { return !(a < b); }

    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return Valuation(a.value_ + b.value_);
    }

    // Compares against a plain rational bound (finite).
    bool at_least(const Rational& bound) const { return infinite_ || value_ >= bound; }
    bool greater_than(const Rational& bound) const { return infinite_ || value_ > bound; }

    std::string str() const { return infinite_ ? "inf" : to_string(value_); }

  private:
    bool infinite_;
    Rational value_;
};

// Deterministic 64-bit PRNG (splitmix64). std::uniform_int_distribution is
// not reproducible across standard libraries, so seeded generation rolls its
// own bounded draws.
struct Rng {
    std::uint64_t state;

    explicit Rng(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n), n >= 1. Modulo bias is irrelevant at these sizes
    // but determinism is not, so keep the arithmetic fixed.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    long range(long lo, long hi) {  // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }
};

}  // namespace novbar
