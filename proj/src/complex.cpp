#include "novbar/complex.hpp"

#include <cmath>
#include <sstream>

namespace novbar {

static std::string entry_name(const FilteredComplex& c, std::size_t i, std::size_t j) {
    std::ostringstream os;
    os << "d[" << i << "," << j << "] (d(" << c.basis[j].label << ") -> " << c.basis[i].label << ")";
    return os.str();
}

ValidationReport validate(const FilteredComplex& c) {
    const std::size_t n = c.rank();
    if (c.diff.rows() != n || c.diff.cols() != n)
        return {false, false, "differential shape does not match basis size"};
    if (!(c.diff.field() == c.field)) return {false, false, "differential field mismatch"};

    Matrix sq = c.diff * c.diff;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!sq.at(i, j).is_zero())
                return {false, false, "d*d != 0 at " + entry_name(c, i, j)};

    // A complex whose basis degrees are all equal carries no usable grading;
    // the parity check is skipped for it.
    bool graded = false;
    for (std::size_t i = 1; i < n; ++i)
        if (c.basis[i].degree != c.basis[0].degree) graded = true;

    bool strict = true;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const NovikovScalar& e = c.diff.at(i, j);
            if (e.is_zero()) continue;
            // Degrees count modulo 2 only.
            int want = ((c.basis[j].degree - 1) % 2 + 2) % 2;
            if (graded && ((c.basis[i].degree % 2) + 2) % 2 != want)
                return {false, false, "degree parity violated at " + entry_name(c, i, j)};
            Rational bound = c.convention == Convention::Raw
                                 ? Rational(c.basis[j].action - c.basis[i].action)
                                 : Rational(0);
            Valuation v = e.val();
            if (!v.at_least(bound))
                return {false, false, "filtration violated at " + entry_name(c, i, j)};
            if (!v.greater_than(bound)) strict = false;
        }
    }
    if (c.convention == Convention::Orthonormalized)
        for (const auto& b : c.basis)
            if (b.action != 0)
                return {false, false, "orthonormalized complex with nonzero action on " + b.label};
    return {true, strict, "ok"};
}

FilteredComplex orthonormalize(const FilteredComplex& c) {
    if (c.convention == Convention::Orthonormalized) return c;
    FilteredComplex out = c;
    const std::size_t n = c.rank();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const NovikovScalar& e = c.diff.at(i, j);
            if (e.is_zero()) continue;
            out.diff.at(i, j) =
                e * NovikovScalar::t_power(c.field, c.basis[j].action - c.basis[i].action);
        }
    for (auto& b : out.basis) b.action = 0;
    out.convention = Convention::Orthonormalized;
    return out;
}

std::size_t word_index(const std::vector<std::size_t>& word, std::size_t n) {
    std::size_t idx = 0;
    for (std::size_t slot : word) idx = idx * n + slot;
    return idx;
}

FilteredComplex tensor_power(const FilteredComplex& c, std::uint64_t p, std::size_t cap) {
    if (c.convention != Convention::Orthonormalized)
        throw std::invalid_argument("tensor_power requires the orthonormalized convention");
    const std::size_t n = c.rank();
    double size_estimate = std::pow(static_cast<double>(n), static_cast<double>(p));
    if (size_estimate > static_cast<double>(cap))
        throw std::length_error("tensor power exceeds the rank cap of " + std::to_string(cap));
    std::size_t total = 1;
    for (std::uint64_t k = 0; k < p; ++k) total *= n;

    FilteredComplex out;
    out.field = c.field;
    out.convention = Convention::Orthonormalized;
    out.basis.reserve(total);
    std::vector<std::size_t> word(p, 0);
    for (std::size_t w = 0; w < total; ++w) {
        std::size_t rem = w;
        for (std::size_t k = p; k-- > 0;) {
            word[k] = rem % n;
            rem /= n;
        }
        std::string label;
        int degree = 0;
        for (std::size_t k = 0; k < p; ++k) {
            if (k) label += "*";
            label += c.basis[word[k]].label;
            degree += c.basis[word[k]].degree;
        }
        out.basis.push_back({std::move(label), degree, Rational(0)});
    }

    out.diff = Matrix(c.field, total, total);
    for (std::size_t w = 0; w < total; ++w) {
        std::size_t rem = w;
        for (std::size_t k = p; k-- > 0;) {
            word[k] = rem % n;
            rem /= n;
        }
        int sign_parity = 0;  // sum of degrees left of the active slot
        std::size_t stride = total / n;
        for (std::size_t k = 0; k < p; ++k) {
            std::size_t slot = word[k];
            std::size_t base = w - slot * stride;
            for (std::size_t i = 0; i < n; ++i) {
                const NovikovScalar& e = c.diff.at(i, slot);
                if (e.is_zero()) continue;
                std::size_t target = base + i * stride;
                NovikovScalar v = (sign_parity % 2 == 0) ? e : -e;
                out.diff.at(target, w) = out.diff.at(target, w) + v;
            }
            sign_parity += c.basis[slot].degree % 2 == 0 ? 0 : 1;
            stride /= n;
        }
    }
    return out;
}

FilteredComplex direct_sum(const FilteredComplex& a, const FilteredComplex& b) {
    if (!(a.field == b.field)) throw std::invalid_argument("direct_sum field mismatch");
    if (a.convention != b.convention)
        throw std::invalid_argument("direct_sum convention mismatch");
    FilteredComplex out;
    out.field = a.field;
    out.convention = a.convention;
    out.basis = a.basis;
    out.basis.insert(out.basis.end(), b.basis.begin(), b.basis.end());
    const std::size_t na = a.rank(), nb = b.rank();
    out.diff = Matrix(a.field, na + nb, na + nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) out.diff.at(i, j) = a.diff.at(i, j);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) out.diff.at(na + i, na + j) = b.diff.at(i, j);
    return out;
}

FilteredComplex shift_action(const FilteredComplex& c, const Rational& s) {
    FilteredComplex out = c;
    for (auto& b : out.basis) b.action += s;
    out.convention = Convention::Raw;
    return out;
}

FilteredComplex extend_field(const FilteredComplex& c, const GroundField& target) {
    if (c.field == target) return c;
    bool ok = c.field.kind == FieldKind::Prime && target.kind == FieldKind::PrimeWithU &&
              c.field.p == target.p;
    if (!ok)
        throw std::invalid_argument("extend_field supports Q->Q, F_p->F_p and F_p->F_p(u) only (got " +
                                    c.field.str() + " -> " + target.str() + ")");
    FilteredComplex out = c;
    out.field = target;
    out.diff = c.diff.extend_to_u();
    return out;
}

FilteredComplex scale_differential(const FilteredComplex& c, const Rational& delta) {
    if (delta < 0) throw std::invalid_argument("scale_differential needs delta >= 0");
    FilteredComplex out = c;
    out.diff = c.diff.t_scaled(delta);
    return out;
}

ChainMapReport verify_chain_map(const ChainMap& f) {
    if (f.matrix.rows() != f.target.rank() || f.matrix.cols() != f.source.rank())
        return {false, "chain map shape mismatch"};
    if (!(f.source.field == f.target.field) || !(f.matrix.field() == f.source.field))
        return {false, "chain map field mismatch"};
    Matrix lhs = f.target.diff * f.matrix;
    Matrix rhs = f.matrix * f.source.diff;
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < lhs.cols(); ++j)
            if (!(lhs.at(i, j) == rhs.at(i, j))) {
                std::ostringstream os;
                os << "not a chain map at [" << i << "," << j << "]";
                return {false, os.str()};
            }
    Rational bound = -f.shift;
    for (std::size_t i = 0; i < f.matrix.rows(); ++i)
        for (std::size_t j = 0; j < f.matrix.cols(); ++j)
            if (!f.matrix.at(i, j).val().at_least(bound)) {
                std::ostringstream os;
                os << "entry [" << i << "," << j << "] has valuation below " << to_string(bound);
                return {false, os.str()};
            }
    return {true, "ok"};
}

}  // namespace novbar
