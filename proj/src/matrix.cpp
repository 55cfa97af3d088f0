#include "novbar/matrix.hpp"

#include <stdexcept>

namespace novbar {

Matrix Matrix::identity(const GroundField& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = NovikovScalar::one(f);
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : a_)
        if (!x.is_zero()) return false;
    return true;
}

static void require_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || !(a.field() == b.field()))
        throw std::invalid_argument("matrix shape/field mismatch");
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix r(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) + b.at(i, j);
    return r;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require_same_shape(a, b);
    Matrix r(a.field(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j) - b.at(i, j);
    return r;
}

Matrix Matrix::operator-() const {
    Matrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = -a_[i];
    return r;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows() || !(a.field() == b.field()))
        throw std::invalid_argument("matrix product shape/field mismatch");
    Matrix r(a.field(), a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const NovikovScalar& aik = a.at(i, k);
            if (aik.is_zero()) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const NovikovScalar& bkj = b.at(k, j);
                if (bkj.is_zero()) continue;
                r.at(i, j) = r.at(i, j) + aik * bkj;
            }
        }
    return r;
}

Matrix Matrix::scaled(const NovikovScalar& s) const {
    Matrix r(field_, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
        if (!a_[i].is_zero()) r.a_[i] = a_[i] * s;
    return r;
}

Matrix Matrix::t_scaled(const Rational& delta) const {
    return scaled(NovikovScalar::t_power(field_, delta));
}

Valuation Matrix::min_val() const {
    Valuation best = Valuation::infinity();
    for (const auto& x : a_) {
        Valuation v = x.val();
        if (v < best) best = v;
    }
    return best;
}

bool Matrix::entries_in_valuation_ring() const {
    for (const auto& x : a_)
        if (!x.val().at_least(Rational(0))) return false;
    return true;
}

Matrix Matrix::extend_to_u() const {
    GroundField target = field_.kind == FieldKind::Prime ? GroundField::prime_with_u(field_.p) : field_;
    Matrix r(target, rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].extend_to_u();
    return r;
}

Matrix Matrix::reduce_mod(std::uint64_t p) const {
    Matrix r(GroundField::prime(p), rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i].reduce_mod(p);
    return r;
}

namespace {

// Fraction-field elimination is extremely sensitive to pivot choice: a
// first-nonzero rule compounds rational-function denominators until entries
// have hundreds of terms. Preferring the structurally simplest entry keeps
// the multipliers small. Any nonzero pivot is mathematically valid.
std::size_t entry_weight(const NovikovScalar& x) {
    std::size_t w = 0;
    for (const NovPoly* part : {&x.numerator(), &x.denominator()})
        for (const auto& t : *part) {
            ++w;
            if (t.coeff.field().kind == FieldKind::PrimeWithU)
                w += t.coeff.urational_value().num.size() + t.coeff.urational_value().den.size();
        }
    return w;
}

}  // namespace

std::size_t Matrix::rank() const {
    Matrix m = *this;
    std::size_t rank = 0;
    std::vector<bool> row_done(m.rows(), false), col_done(m.cols(), false);
    while (true) {
        bool found = false;
        std::size_t pr = 0, pc = 0;
        std::size_t best = 0;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (row_done[i]) continue;
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (col_done[j] || m.at(i, j).is_zero()) continue;
                std::size_t w = entry_weight(m.at(i, j));
                if (!found || w < best) {
                    found = true;
                    best = w;
                    pr = i;
                    pc = j;
                }
            }
        }
        if (!found) break;
        NovikovScalar inv = m.at(pr, pc).inverse();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == pr || row_done[i] || m.at(i, pc).is_zero()) continue;
            NovikovScalar f = m.at(i, pc) * inv;
            for (std::size_t j = 0; j < m.cols(); ++j) {
                if (col_done[j] || m.at(pr, j).is_zero()) continue;
                m.at(i, j) = m.at(i, j) - f * m.at(pr, j);
            }
        }
        row_done[pr] = true;
        col_done[pc] = true;
        ++rank;
    }
    return rank;
}

// Row-reduce [A | B]; returns echelon form and pivot columns. Columns are
// processed left to right (kernel extraction needs that), rows picked by
// entry simplicity.
static Matrix echelon(const Matrix& m, std::vector<std::size_t>& pivot_cols) {
    Matrix e = m;
    pivot_cols.clear();
    std::size_t row = 0;
    for (std::size_t col = 0; col < e.cols() && row < e.rows(); ++col) {
        std::size_t pivot = e.rows();
        std::size_t best = 0;
        for (std::size_t i = row; i < e.rows(); ++i) {
            if (e.at(i, col).is_zero()) continue;
            std::size_t w = entry_weight(e.at(i, col));
            if (pivot == e.rows() || w < best) {
                pivot = i;
                best = w;
            }
        }
        if (pivot == e.rows()) continue;
        for (std::size_t j = 0; j < e.cols(); ++j) std::swap(e.at(row, j), e.at(pivot, j));
        NovikovScalar inv = e.at(row, col).inverse();
        for (std::size_t j = col; j < e.cols(); ++j)
            if (!e.at(row, j).is_zero()) e.at(row, j) = e.at(row, j) * inv;
        for (std::size_t i = 0; i < e.rows(); ++i) {
            if (i == row || e.at(i, col).is_zero()) continue;
            NovikovScalar f = e.at(i, col);
            for (std::size_t j = col; j < e.cols(); ++j)
                if (!e.at(row, j).is_zero()) e.at(i, j) = e.at(i, j) - f * e.at(row, j);
        }
        pivot_cols.push_back(col);
        ++row;
    }
    return e;
}

bool columns_in_span(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("span test shape mismatch");
    Matrix joined(a.field(), a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) joined.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) joined.at(i, a.cols() + j) = b.at(i, j);
    }
    return joined.rank() == a.rank();
}

Matrix kernel_basis(const Matrix& a) {
    std::vector<std::size_t> pivot_cols;
    Matrix e = echelon(a, pivot_cols);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : pivot_cols) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < a.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    Matrix k(a.field(), a.cols(), free_cols.size());
    for (std::size_t idx = 0; idx < free_cols.size(); ++idx) {
        std::size_t fc = free_cols[idx];
        k.at(fc, idx) = NovikovScalar::one(a.field());
        for (std::size_t r = 0; r < pivot_cols.size(); ++r)
            k.at(pivot_cols[r], idx) = -e.at(r, fc);
    }
    return k;
}

}  // namespace novbar
