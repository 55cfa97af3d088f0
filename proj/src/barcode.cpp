#include "novbar/barcode.hpp"

#include <algorithm>
#include <sstream>

namespace novbar {

Rational BarSpectrum::beta_total() const {
    Rational s(0);
    for (const auto& b : torsion) s += b;
    return s;
}

Rational BarSpectrum::beta_max() const {
    return torsion.empty() ? Rational(0) : torsion.back();
}

BarSpectrum BarSpectrum::make_concise() const {
    BarSpectrum out;
    out.B = B;
    out.concise = true;
    for (const auto& b : torsion)
        if (b != 0) out.torsion.push_back(b);
    return out;
}

std::string BarSpectrum::str() const {
    std::ostringstream os;
    os << "B=" << B << " torsion={";
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        if (i) os << ", ";
        os << to_string(torsion[i]);
    }
    os << "}";
    return os.str();
}

namespace {

void record_entry_primes(const NovikovScalar& x, std::uint64_t bound,
                         std::set<std::uint64_t>& primes) {
    auto record_int = [&](const mpz_class& z) {
        if (z == 0) return;
        for (std::uint64_t p = 2; p <= bound; ++p) {
            if (!is_prime(p)) continue;
            if (mpz_divisible_ui_p(z.get_mpz_t(), p)) primes.insert(p);
        }
    };
    for (const NovPoly* part : {&x.numerator(), &x.denominator()})
        for (const auto& t : *part) {
            record_int(t.coeff.rational_value().get_num());
            record_int(t.coeff.rational_value().get_den());
        }
}

}  // namespace

Elimination eliminate(const FilteredComplex& input, const EliminationOptions& opts) {
    const FilteredComplex c = orthonormalize(input);
    const std::size_t n = c.rank();
    Matrix m = c.diff;
    Elimination out;
    if (opts.track_basis) {
        out.basis = Matrix::identity(c.field, n);
        out.basis_inv = Matrix::identity(c.field, n);
    }
    std::vector<bool> alive(n, true);

    auto col_axpy = [&](Matrix& mat, std::size_t dst, std::size_t src, const NovikovScalar& f) {
        // col_dst += f * col_src
        for (std::size_t i = 0; i < mat.rows(); ++i) {
            if (mat.at(i, src).is_zero()) continue;
            mat.at(i, dst) = mat.at(i, dst) + f * mat.at(i, src);
        }
    };
    auto row_axpy = [&](Matrix& mat, std::size_t dst, std::size_t src, const NovikovScalar& f) {
        for (std::size_t j = 0; j < mat.cols(); ++j) {
            if (mat.at(src, j).is_zero()) continue;
            mat.at(dst, j) = mat.at(dst, j) + f * mat.at(src, j);
        }
    };

    while (true) {
        if (opts.record_primes && c.field.kind == FieldKind::Rationals) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    if (alive[i] && alive[j] && !m.at(i, j).is_zero())
                        record_entry_primes(m.at(i, j), opts.prime_bound, out.coefficient_primes);
        }
        // Minimal-valuation pivot, ties by lowest (row, column). Diagonal
        // entries never host a pivot; when d*d = 0 the minimum is always
        // attained off the diagonal.
        bool found = false;
        std::size_t pr = 0, pc = 0;
        Valuation best = Valuation::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (!alive[j] || i == j) continue;
                const NovikovScalar& e = m.at(i, j);
                if (e.is_zero()) continue;
                Valuation v = e.val();
                if (!found || v < best) {
                    found = true;
                    best = v;
                    pr = i;
                    pc = j;
                }
            }
        }
        if (!found) break;

        const Rational beta = best.value();
        NovikovScalar pivot = m.at(pr, pc);
        NovikovScalar pivot_inv = pivot.inverse();

        // Clear the pivot row: x_j <- x_j - (m[pr][j]/pivot) x_pc.
        for (std::size_t j = 0; j < n; ++j) {
            if (j == pc || m.at(pr, j).is_zero()) continue;
            NovikovScalar lam = m.at(pr, j) * pivot_inv;
            col_axpy(m, j, pc, -lam);
            row_axpy(m, pc, j, lam);
            if (opts.track_basis) {
                col_axpy(out.basis, j, pc, -lam);
                row_axpy(out.basis_inv, pc, j, lam);
            }
        }
        // Clear the pivot column: x_pr <- x_pr + (m[i][pc]/pivot) x_i.
        for (std::size_t i = 0; i < n; ++i) {
            if (i == pr || m.at(i, pc).is_zero()) continue;
            NovikovScalar mu = m.at(i, pc) * pivot_inv;
            col_axpy(m, pr, i, mu);
            row_axpy(m, i, pr, -mu);
            if (opts.track_basis) {
                col_axpy(out.basis, pr, i, mu);
                row_axpy(out.basis_inv, i, pr, -mu);
            }
        }
        // Normalize the pair entry to exactly T^beta (unit rescale of x_pr).
        NovikovScalar unit = pivot / NovikovScalar::t_power(c.field, beta);
        NovikovScalar unit_inv = unit.inverse();
        for (std::size_t i = 0; i < n; ++i)
            if (!m.at(i, pr).is_zero()) m.at(i, pr) = m.at(i, pr) * unit;
        for (std::size_t j = 0; j < n; ++j)
            if (!m.at(pr, j).is_zero()) m.at(pr, j) = m.at(pr, j) * unit_inv;
        if (opts.track_basis) {
            for (std::size_t i = 0; i < n; ++i) {
                if (!out.basis.at(i, pr).is_zero())
                    out.basis.at(i, pr) = out.basis.at(i, pr) * unit;
                if (!out.basis_inv.at(pr, i).is_zero())
                    out.basis_inv.at(pr, i) = out.basis_inv.at(pr, i) * unit_inv;
            }
        }

        out.pivot_vals.push_back(beta);
        out.pairs.push_back({pr, pc, beta});
        alive[pr] = alive[pc] = false;
    }

    for (std::size_t i = 0; i < n; ++i)
        if (alive[i]) out.unpaired.push_back(i);
    std::sort(out.pivot_vals.begin(), out.pivot_vals.end());
    return out;
}

BarSpectrum spectrum(const FilteredComplex& c) {
    Elimination e = eliminate(c);
    BarSpectrum s;
    s.torsion = e.pivot_vals;
    s.B = static_cast<long long>(c.rank()) - 2 * static_cast<long long>(e.pairs.size());
    s.concise = false;
    return s;
}

namespace {

// Determinant over the fraction field of the submatrix rows x cols.
NovikovScalar minor_det(const Matrix& m, const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) {
    const std::size_t k = rows.size();
    Matrix sub(m.field(), k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rows[i], cols[j]);
    NovikovScalar det = NovikovScalar::one(m.field());
    bool negate = false;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        while (pivot < k && sub.at(pivot, col).is_zero()) ++pivot;
        if (pivot == k) return NovikovScalar::zero(m.field());
        if (pivot != col) {
            for (std::size_t j = 0; j < k; ++j) std::swap(sub.at(pivot, j), sub.at(col, j));
            negate = !negate;
        }
        det = det * sub.at(col, col);
        NovikovScalar inv = sub.at(col, col).inverse();
        for (std::size_t i = col + 1; i < k; ++i) {
            if (sub.at(i, col).is_zero()) continue;
            NovikovScalar f = sub.at(i, col) * inv;
            for (std::size_t j = col; j < k; ++j) {
                if (sub.at(col, j).is_zero()) continue;
                sub.at(i, j) = sub.at(i, j) - f * sub.at(col, j);
            }
        }
    }
    return negate ? -det : det;
}

void subsets_of_size(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur;
    cur.reserve(k);
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    }

}  // namespace

BarSpectrum spectrum_via_minors(const FilteredComplex& input, std::size_t cap) {
    const FilteredComplex c = orthonormalize(input);
    const std::size_t n = c.rank();
    if (n > cap)
        throw std::length_error("minors oracle capped at rank " + std::to_string(cap));
    std::vector<Valuation> gamma(n + 1, Valuation(Rational(0)));
    std::size_t rank = 0;
    for (std::size_t j = 1; j <= n; ++j) {
        std::vector<std::vector<std::size_t>> sets;
        subsets_of_size(n, j, sets);
        Valuation best = Valuation::infinity();
        for (const auto& rows : sets)
            for (const auto& cols : sets) {
                Valuation v = minor_det(c.diff, rows, cols).val();
                if (v < best) best = v;
            }
        gamma[j] = best;
        if (!best.is_infinite()) rank = j;
    }
    BarSpectrum s;
    for (std::size_t j = 1; j <= rank; ++j)
        s.torsion.push_back(gamma[j].value() - gamma[j - 1].value());
    std::sort(s.torsion.begin(), s.torsion.end());
    s.B = static_cast<long long>(n) - 2 * static_cast<long long>(rank);
    s.concise = false;
    return s;
}

IntervalData intervals_of(const FilteredComplex& c) {
    Elimination e = eliminate(c);
    IntervalData out;
    for (const auto& pr : e.pairs) {
        if (pr.beta == 0) continue;
        Rational start = c.basis[pr.eta].action;
        out.finite.push_back({start, start + pr.beta});
    }
    for (std::size_t i : e.unpaired) out.infinite.push_back(c.basis[i].action);
    std::sort(out.finite.begin(), out.finite.end());
    std::sort(out.infinite.begin(), out.infinite.end());
    return out;
}

}  // namespace novbar
