#pragma once

#include <string>
#include <vector>

#include "novbar/matrix.hpp"

namespace novbar {

struct BasisElement {
    std::string label;
    int degree = 0;
    Rational action = Rational(0);

    bool operator==(const BasisElement&) const = default;
};

/// Raw: the differential respects the action filtration,
///      val(d_ij) >= action(x_j) - action(x_i).
/// Orthonormalized: actions are all 0 and entries lie in the valuation ring.
enum class Convention { Raw, Orthonormalized };

inline constexpr std::size_t kDefaultRankCap = 4096;

/// Filtered, graded free complex over the Novikov ring. Column j of `diff`
/// is the differential of basis element j. Degrees matter modulo 2 only
/// (Koszul signs); immutable value semantics throughout.
struct FilteredComplex {
    GroundField field;
    std::vector<BasisElement> basis;
    Matrix diff;
    Convention convention = Convention::Orthonormalized;

    std::size_t rank() const { return basis.size(); }
    bool operator==(const FilteredComplex&) const = default;
};

struct ValidationReport {
    bool pass = false;
    bool strict = false;
    std::string message;  // first violation, or "ok"
};

ValidationReport validate(const FilteredComplex& c);

/// Conjugates by diag(T^action); actions reset to 0.
FilteredComplex orthonormalize(const FilteredComplex& c);

/// p-fold tensor power with Koszul signs; requires the orthonormalized
/// convention. Refuses when the result exceeds `cap` basis elements.
FilteredComplex tensor_power(const FilteredComplex& c, std::uint64_t p,
                             std::size_t cap = kDefaultRankCap);

FilteredComplex direct_sum(const FilteredComplex& a, const FilteredComplex& b);
FilteredComplex shift_action(const FilteredComplex& c, const Rational& s);
FilteredComplex extend_field(const FilteredComplex& c, const GroundField& target);

/// (C, T^delta d): every differential entry multiplied by T^(delta).
FilteredComplex scale_differential(const FilteredComplex& c, const Rational& delta);

/// Index of the tensor word (i_1, ..., i_p), first slot slowest.
std::size_t word_index(const std::vector<std::size_t>& word, std::size_t n);

/// Chain map between filtered complexes; `shift` is the declared valuation
/// shift (entries must have val >= -shift).
struct ChainMap {
    FilteredComplex source;
    FilteredComplex target;
    Matrix matrix;
    Rational shift = Rational(0);
};

struct ChainMapReport {
    bool pass = false;
    std::string message;
};

ChainMapReport verify_chain_map(const ChainMap& f);

}  // namespace novbar
