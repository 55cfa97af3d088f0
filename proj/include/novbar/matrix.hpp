#pragma once

#include <cstddef>
#include <vector>

#include "novbar/novikov.hpp"

namespace novbar {

/// Dense matrix over the Novikov fraction field. Row-major; small sizes
/// (desk-scale exact elimination), so no sparse machinery.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0), field_(GroundField::rationals()) {}
    Matrix(const GroundField& f, std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), field_(f), a_(rows * cols, NovikovScalar::zero(f)) {}

    static Matrix identity(const GroundField& f, std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const GroundField& field() const { return field_; }

    NovikovScalar& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const NovikovScalar& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const Matrix&) const = default;

    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    Matrix operator-() const;

    Matrix scaled(const NovikovScalar& s) const;
    /// Multiplies every entry by T^(delta).
    Matrix t_scaled(const Rational& delta) const;

    /// Minimal valuation over all entries (+infinity for the zero matrix).
    Valuation min_val() const;
    /// All entries in the valuation ring (val >= 0).
    bool entries_in_valuation_ring() const;

    Matrix extend_to_u() const;
    Matrix reduce_mod(std::uint64_t p) const;

    /// Rank over the fraction field (plain Gaussian elimination).
    std::size_t rank() const;

  private:
    std::size_t rows_, cols_;
    GroundField field_;
    std::vector<NovikovScalar> a_;
};

/// Solvability of  span(columns of A) ∋ each column of B  over the fraction
/// field; used for homology-vanishing hypotheses.
bool columns_in_span(const Matrix& a, const Matrix& b);

/// Basis of ker(A) as matrix columns.
Matrix kernel_basis(const Matrix& a);

}  // namespace novbar
