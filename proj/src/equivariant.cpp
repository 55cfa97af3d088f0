#include "novbar/equivariant.hpp"

#include <algorithm>

namespace novbar {

namespace {

std::vector<std::size_t> word_of(std::size_t w, std::size_t n, std::uint64_t p) {
    std::vector<std::size_t> word(p);
    for (std::size_t k = p; k-- > 0;) {
        word[k] = w % n;
        w /= n;
    }
    return word;
}

}  // namespace

ChainMap cyclic_permutation(const FilteredComplex& base, std::uint64_t p, std::size_t cap) {
    FilteredComplex power = tensor_power(base, p, cap);
    const std::size_t n = base.rank();
    const std::size_t total = power.rank();
    Matrix t(base.field, total, total);
    NovikovScalar plus = NovikovScalar::one(base.field);
    NovikovScalar minus = -plus;
    for (std::size_t w = 0; w < total; ++w) {
        std::vector<std::size_t> word = word_of(w, n, p);
        int last_deg = base.basis[word[p - 1]].degree;
        int rest = 0;
        for (std::size_t k = 0; k + 1 < p; ++k) rest += base.basis[word[k]].degree;
        std::vector<std::size_t> rotated(p);
        rotated[0] = word[p - 1];
        for (std::size_t k = 0; k + 1 < p; ++k) rotated[k + 1] = word[k];
        bool negative = (last_deg % 2 != 0) && (rest % 2 != 0);
        t.at(word_index(rotated, n), w) = negative ? minus : plus;
    }
    return ChainMap{power, power, std::move(t), Rational(0)};
}

TateComplex build_tate(const FilteredComplex& input, std::uint64_t p, std::size_t cap) {
    if (input.field.kind != FieldKind::Prime || input.field.p != p)
        throw std::invalid_argument("build_tate needs a complex over F_" + std::to_string(p));
    FilteredComplex c = orthonormalize(input);
    {
        ValidationReport v = validate(c);
        if (!v.pass) throw std::invalid_argument("build_tate: invalid complex: " + v.message);
        if (!v.strict) throw std::invalid_argument("build_tate needs a strict complex");
    }
    const std::size_t n = c.rank();
    double words_estimate = 1;
    for (std::uint64_t k = 0; k < p; ++k) words_estimate *= static_cast<double>(n);
    if (2 * words_estimate > static_cast<double>(cap))
        throw std::length_error("Tate complex exceeds the rank cap of " + std::to_string(cap));

    ChainMap tau = cyclic_permutation(c, p, cap);
    const FilteredComplex& power = tau.source;
    const std::size_t w = power.rank();

    GroundField ku = GroundField::prime_with_u(p);
    Matrix dpow = power.diff.extend_to_u();
    Matrix tau_u = tau.matrix.extend_to_u();
    Matrix one_minus_tau = Matrix::identity(ku, w) - tau_u;
    Matrix norm(ku, w, w);
    {
        Matrix acc = Matrix::identity(ku, w);
        for (std::uint64_t k = 0; k < p; ++k) {
            norm = norm + acc;
            acc = acc * tau_u;
        }
    }
    NovikovScalar u = NovikovScalar::from_ground(GroundScalar::u_variable(ku));

    TateComplex out;
    out.p = p;
    out.input = input;
    out.words = w;
    out.underlying.field = ku;
    out.underlying.convention = Convention::Orthonormalized;
    out.underlying.basis.reserve(2 * w);
    for (std::size_t i = 0; i < w; ++i) {
        out.underlying.basis.push_back(power.basis[i]);
        out.underlying.basis.push_back(
            {power.basis[i].label + "~theta", power.basis[i].degree + 1, Rational(0)});
    }
    Matrix d(ku, 2 * w, 2 * w);
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < w; ++j) {
            if (!dpow.at(i, j).is_zero()) {
                d.at(2 * i, 2 * j) = dpow.at(i, j);
                d.at(2 * i + 1, 2 * j + 1) = -dpow.at(i, j);
            }
            if (!one_minus_tau.at(i, j).is_zero()) d.at(2 * i + 1, 2 * j) = one_minus_tau.at(i, j);
            if (!norm.at(i, j).is_zero()) d.at(2 * i, 2 * j + 1) = u * norm.at(i, j);
        }
    out.underlying.diff = std::move(d);
    return out;
}

BarSpectrum rescale_spectrum(const BarSpectrum& s, std::uint64_t p) {
    BarSpectrum out;
    out.B = 2 * s.B;
    out.concise = s.concise;
    out.torsion.reserve(2 * s.torsion.size());
    for (const auto& b : s.torsion) {
        Rational scaled = b * static_cast<long>(p);
        out.torsion.push_back(scaled);
        out.torsion.push_back(scaled);
    }
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

QuasiFrobeniusReport verify_quasi_frobenius(const FilteredComplex& c, std::uint64_t p,
                                            std::size_t cap) {
    QuasiFrobeniusReport rep;
    TateComplex tate = build_tate(c, p, cap);
    rep.tate = spectrum(tate.underlying);
    rep.expected = rescale_spectrum(spectrum(c), p);
    // The Tate side carries extra verbose zeros; the positive parts and the
    // free ranks must agree exactly.
    BarSpectrum lhs = rep.tate.make_concise();
    BarSpectrum rhs = rep.expected.make_concise();
    if (lhs.B != rhs.B) {
        rep.message = "free rank mismatch";
        return rep;
    }
    if (lhs.torsion != rhs.torsion) {
        rep.message = "torsion mismatch";
        return rep;
    }
    rep.pass = true;
    rep.message = "ok";
    return rep;
}

}  // namespace novbar
