#include "novbar/generator.hpp"

#include <algorithm>

namespace novbar {

namespace {

GroundScalar random_unit(Rng& rng, const GroundField& f, bool integer_coefficients) {
    switch (f.kind) {
        case FieldKind::Rationals: {
            long num = rng.range(1, 4) * (rng.chance(1, 2) ? 1 : -1);
            if (integer_coefficients) return GroundScalar::from_int(f, num);
            long den = rng.range(1, 3);
            return GroundScalar::from_rational(rational(num, den));
        }
        case FieldKind::Prime:
            return GroundScalar::from_int(f, rng.range(1, static_cast<long>(f.p - 1)));
        case FieldKind::PrimeWithU: {
            long a = rng.range(1, static_cast<long>(f.p - 1));
            GroundScalar c = GroundScalar::from_int(f, a);
            if (rng.chance(1, 3)) {
                long b = rng.range(0, static_cast<long>(f.p - 1));
                GroundScalar u = GroundScalar::u_variable(f);
                c = c + u * GroundScalar::from_int(f, b);
            }
            return c;
        }
    }
    throw std::logic_error("bad field kind");
}

Rational random_nonneg_exponent(Rng& rng, long den_bound) {
    long den = rng.range(1, std::max(1L, den_bound));
    long num = rng.range(0, 2 * den);
    return rational(num, den);
}

// x_j <- x_j + lam * x_i on the differential (conjugation) only.
void apply_mix(Matrix& diff, std::size_t i, std::size_t j, const NovikovScalar& lam) {
    const std::size_t n = diff.rows();
    for (std::size_t r = 0; r < n; ++r)
        if (!diff.at(r, i).is_zero()) diff.at(r, j) = diff.at(r, j) + lam * diff.at(r, i);
    for (std::size_t cidx = 0; cidx < n; ++cidx)
        if (!diff.at(j, cidx).is_zero()) diff.at(i, cidx) = diff.at(i, cidx) - lam * diff.at(j, cidx);
}

void apply_unit_scale(Matrix& diff, std::size_t i, const GroundScalar& c) {
    NovikovScalar s = NovikovScalar::from_ground(c);
    NovikovScalar inv = s.inverse();
    const std::size_t n = diff.rows();
    for (std::size_t r = 0; r < n; ++r)
        if (!diff.at(r, i).is_zero()) diff.at(r, i) = diff.at(r, i) * s;
    for (std::size_t cidx = 0; cidx < n; ++cidx)
        if (!diff.at(i, cidx).is_zero()) diff.at(i, cidx) = diff.at(i, cidx) * inv;
}

void mix_rounds(FilteredComplex& c, Rng& rng, std::size_t attempts, const Rational& density,
                bool integer_coefficients) {
    const std::size_t n = c.rank();
    if (n < 2) return;
    Rational throttle = density * 1000;
    for (std::size_t k = 0; k < attempts; ++k) {
        if (Rational(static_cast<long>(rng.below(1000))) >= throttle) continue;
        std::size_t i = rng.below(n), j = rng.below(n);
        if (i == j) continue;
        if (((c.basis[i].degree - c.basis[j].degree) % 2 + 2) % 2 != 0) continue;
        NovikovScalar lam = NovikovScalar::monomial(random_unit(rng, c.field, integer_coefficients),
                                                    random_nonneg_exponent(rng, 4));
        apply_mix(c.diff, i, j, lam);
        if (rng.chance(1, 4))
            apply_unit_scale(c.diff, rng.below(n), random_unit(rng, c.field, integer_coefficients));
    }
}

}  // namespace

GeneratedComplex generate(const GeneratorConfig& config) {
    if (config.rank < 1) throw std::invalid_argument("rank must be >= 1");
    if (!(config.min_val > 0)) throw std::invalid_argument("strictness valuation must be positive");
    Rng rng(config.seed * 0x9e3779b97f4a7c15ULL + 0x42ULL);
    const std::size_t n = config.rank;

    long B;
    if (config.forced_B >= 0) {
        B = config.forced_B;
        if (B > static_cast<long>(n) || (static_cast<long>(n) - B) % 2 != 0)
            throw std::invalid_argument("forced free rank incompatible with the rank");
    } else {
        long parity = static_cast<long>(n % 2);
        long options = (static_cast<long>(n) - parity) / 2 + 1;
        B = parity + 2 * rng.range(0, options - 1);
    }
    const std::size_t pairs = (n - static_cast<std::size_t>(B)) / 2;

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    FilteredComplex c;
    c.field = config.field;
    c.convention = Convention::Orthonormalized;
    c.basis.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        c.basis[i] = {"e" + std::to_string(i), 0, Rational(0)};
    c.diff = Matrix(config.field, n, n);

    BarSpectrum truth;
    truth.B = B;
    for (std::size_t k = 0; k < pairs; ++k) {
        std::size_t eta = order[2 * k], zeta = order[2 * k + 1];
        Rational beta;
        if (!config.torsion_pool.empty()) {
            beta = config.torsion_pool[rng.below(config.torsion_pool.size())];
        } else {
            beta = config.min_val + random_nonneg_exponent(rng, config.exponent_denominator_bound);
        }
        int g = static_cast<int>(rng.below(2));
        c.basis[eta].degree = g;
        c.basis[zeta].degree = g + 1;
        c.diff.at(eta, zeta) = NovikovScalar::t_power(config.field, beta);
        truth.torsion.push_back(beta);
    }
    for (std::size_t k = 2 * pairs; k < n; ++k)
        c.basis[order[k]].degree = static_cast<int>(rng.below(2));
    std::sort(truth.torsion.begin(), truth.torsion.end());

    mix_rounds(c, rng, 2 * n, config.density, config.integer_coefficients);
    return {std::move(c), std::move(truth)};
}

FilteredComplex random_conjugate(const FilteredComplex& c, std::uint64_t seed, std::size_t count,
                                 bool integer_coefficients) {
    FilteredComplex out = orthonormalize(c);
    Rng rng(seed ^ 0x636f6e6a7567ULL);
    mix_rounds(out, rng, count, Rational(1), integer_coefficients);
    return out;
}

ChainMap random_null_homotopic_map(const FilteredComplex& input, std::uint64_t seed,
                                   const Rational& gamma) {
    FilteredComplex c = orthonormalize(input);
    Rng rng(seed ^ 0x686f6d6f746f7079ULL);
    const std::size_t n = c.rank();
    Matrix r(c.field, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            // Degree +1 positions only, half of them populated.
            if (((c.basis[i].degree - c.basis[j].degree - 1) % 2 + 2) % 2 != 0) continue;
            if (!rng.chance(1, 2)) continue;
            r.at(i, j) = NovikovScalar::monomial(random_unit(rng, c.field, false),
                                                 random_nonneg_exponent(rng, 4));
        }
    Matrix s = (c.diff * r + r * c.diff).t_scaled(gamma);
    return ChainMap{c, c, std::move(s), Rational(0)};
}

GeneratedSplit generate_split(std::uint64_t seed, const GroundField& field) {
    Rng rng(seed ^ 0x73706c6974ULL);
    const Rational eps0(1);
    const std::vector<Rational> local_pool{rational(1, 10), rational(1, 8), rational(1, 5)};
    const std::vector<Rational> cross_pool{rational(5, 4), rational(3, 2), rational(2), rational(3)};

    const std::size_t nblocks = 2 + rng.below(2);  // 2 or 3 blocks
    std::vector<std::vector<std::size_t>> blocks(nblocks);
    std::vector<BasisElement> basis;
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> pairs;  // eta, zeta, beta

    auto add_element = [&](std::size_t block, int degree) {
        std::size_t idx = basis.size();
        basis.push_back({"e" + std::to_string(idx), degree, Rational(0)});
        blocks[block].push_back(idx);
        return idx;
    };

    std::vector<std::size_t> free_slots;  // one free generator per block
    for (std::size_t b = 0; b < nblocks; ++b) {
        if (rng.chance(2, 3)) {
            int g = static_cast<int>(rng.below(2));
            std::size_t eta = add_element(b, g);
            std::size_t zeta = add_element(b, g + 1);
            pairs.push_back({eta, zeta, local_pool[rng.below(local_pool.size())]});
        }
        std::size_t xi = add_element(b, static_cast<int>(rng.below(2)));
        free_slots.push_back(xi);
    }
    // Cross-block pairs above eps0: eta in an earlier block, zeta later.
    std::size_t crossings = 1 + rng.below(2);
    Rational delta0_local(0);
    for (const auto& [e, z, beta] : pairs) delta0_local = std::max(delta0_local, beta);
    std::vector<Rational> cross_betas;
    for (std::size_t k = 0; k < crossings && free_slots.size() >= 2; ++k) {
        std::size_t a = 0, b = free_slots.size() - 1 - rng.below(free_slots.size() - 1);
        if (b == 0) b = free_slots.size() - 1;
        std::size_t eta = free_slots[a], zeta = free_slots[b];
        free_slots.erase(free_slots.begin() + b);
        free_slots.erase(free_slots.begin() + a);
        Rational beta = cross_pool[rng.below(cross_pool.size())];
        basis[zeta].degree = basis[eta].degree + 1;
        pairs.push_back({eta, zeta, beta});
        cross_betas.push_back(beta);
        if (free_slots.size() < 2) break;
    }

    FilteredComplex c;
    c.field = field;
    c.convention = Convention::Orthonormalized;
    c.basis = basis;
    c.diff = Matrix(field, basis.size(), basis.size());
    BarSpectrum truth;
    for (const auto& [eta, zeta, beta] : pairs) {
        c.diff.at(eta, zeta) = NovikovScalar::t_power(field, beta);
        truth.torsion.push_back(beta);
    }
    std::sort(truth.torsion.begin(), truth.torsion.end());
    truth.B = static_cast<long long>(basis.size()) - 2 * static_cast<long long>(pairs.size());

    // Mixing: free choice inside a block; strictly forward across blocks
    // with valuation >= eps0, keeping the off-block part upper triangular.
    std::vector<std::size_t> owner(basis.size());
    for (std::size_t b = 0; b < nblocks; ++b)
        for (std::size_t i : blocks[b]) owner[i] = b;
    const std::size_t n = basis.size();
    for (std::size_t k = 0; k < 3 * n; ++k) {
        std::size_t i = rng.below(n), j = rng.below(n);
        if (i == j) continue;
        if (((c.basis[i].degree - c.basis[j].degree) % 2 + 2) % 2 != 0) continue;
        if (owner[i] > owner[j]) std::swap(i, j);
        Rational exp = random_nonneg_exponent(rng, 4);
        if (owner[i] != owner[j]) exp += eps0;
        NovikovScalar lam =
            NovikovScalar::monomial(random_unit(rng, field, false), exp);
        apply_mix(c.diff, i, j, lam);
    }

    GeneratedSplit out;
    out.split = make_split(c, blocks, eps0);
    out.truth = truth;
    out.truth_above_eps.B = truth.B;
    std::sort(cross_betas.begin(), cross_betas.end());
    out.truth_above_eps.torsion = cross_betas;
    return out;
}

GeneratedDeformation generate_deformation(std::uint64_t seed, std::uint64_t p) {
    Rng rng(seed ^ 0x75646566ULL);
    GroundField f = GroundField::prime(p);
    GroundField fu = GroundField::prime_with_u(p);
    const std::vector<Rational> pool{rational(1, 2), rational(1), rational(3, 2), rational(2)};

    std::size_t pairs = 1 + rng.below(3);
    std::size_t free_count = rng.below(3);
    const std::size_t n = 2 * pairs + free_count;

    FilteredComplex c0;
    c0.field = f;
    c0.convention = Convention::Orthonormalized;
    c0.basis.resize(n);
    for (std::size_t i = 0; i < n; ++i) c0.basis[i] = {"e" + std::to_string(i), 0, Rational(0)};
    c0.diff = Matrix(f, n, n);
    Matrix deform(fu, n, n);

    bool strict = false;
    for (std::size_t k = 0; k < pairs; ++k) {
        std::size_t eta = 2 * k, zeta = 2 * k + 1;
        int g = static_cast<int>(rng.below(2));
        c0.basis[eta].degree = g;
        c0.basis[zeta].degree = g + 1;
        Rational beta = pool[rng.below(pool.size())];
        c0.diff.at(eta, zeta) = NovikovScalar::t_power(f, beta);
        if (rng.chance(1, 2)) {
            // Deformed entry T^beta + u * unit * T^e with e < beta: the bar
            // shortens to e after deformation.
            Rational e = rational(rng.range(0, 1), 2);
            while (!(e < beta)) e = e / 2;
            deform.at(eta, zeta) =
                NovikovScalar::monomial(random_unit(rng, fu, false), e);
            strict = true;
        }
    }
    for (std::size_t i = 2 * pairs; i < n; ++i) c0.basis[i].degree = static_cast<int>(rng.below(2));

    // Common u-free conjugation of both matrices.
    Rng mix_rng(seed ^ 0x6d6978646566ULL);
    for (std::size_t k = 0; k < 2 * n && n >= 2; ++k) {
        std::size_t i = mix_rng.below(n), j = mix_rng.below(n);
        if (i == j) continue;
        if (((c0.basis[i].degree - c0.basis[j].degree) % 2 + 2) % 2 != 0) continue;
        GroundScalar cf = GroundScalar::from_int(f, mix_rng.range(1, static_cast<long>(p - 1)));
        Rational exp = random_nonneg_exponent(mix_rng, 4);
        apply_mix(c0.diff, i, j, NovikovScalar::monomial(cf, exp));
        apply_mix(deform, i, j, NovikovScalar::monomial(cf.extend_to_u(), exp));
    }

    return {std::move(c0), std::move(deform), strict};
}

}  // namespace novbar
