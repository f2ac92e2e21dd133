#ifndef INVLIFT_TESTS_ORACLES_HPP
#define INVLIFT_TESTS_ORACLES_HPP

// Test-only helpers: independent oracles and seeded random data generators.
// Everything here is deliberately implementation-naive so that it cannot
// share a bug with the library code it checks.

#include <random>
#include <vector>

#include "invlift/series.hpp"
#include "invlift/textio.hpp"

namespace invlift::testing {

using Rng = std::mt19937_64;

inline mpq_class random_rational(Rng& rng, int num_lo = -3, int num_hi = 3) {
    std::uniform_int_distribution<int> num(num_lo, num_hi);
    std::uniform_int_distribution<int> den(1, 2);
    mpq_class q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline GaussianRational random_gaussian(Rng& rng, bool allow_imag = true) {
    GaussianRational g(random_rational(rng));
    if (allow_imag) {
        std::uniform_int_distribution<int> coin(0, 2);
        if (coin(rng) == 0) g.im = random_rational(rng);
    }
    return g;
}

template <class K>
K random_coeff(Rng& rng, bool allow_imag = true);

template <>
inline GaussianRational random_coeff<GaussianRational>(Rng& rng, bool allow_imag) {
    return random_gaussian(rng, allow_imag);
}
template <>
inline ApproxComplex random_coeff<ApproxComplex>(Rng& rng, bool allow_imag) {
    return random_gaussian(rng, allow_imag).to_complex();
}

// Random series with valuation >= val_min and support in degrees <= max_deg.
template <class K>
Series<K> random_series(Rng& rng, unsigned p, int order, int max_deg, int val_min = 0,
                        bool allow_imag = true, double density = 0.7) {
    Series<K> s(p, order);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int d = val_min; d <= max_deg; ++d) {
        for (const auto& m : enumerate_multiindices(p, static_cast<unsigned>(max_deg))) {
            if (static_cast<int>(m.order()) != d) continue;
            if (u(rng) > density) continue;
            s.add_coeff(m.to_exponents(p), random_coeff<K>(rng, allow_imag));
        }
    }
    return s;
}

template <class K>
Poly<K> random_poly(Rng& rng, unsigned p, int max_deg, int val_min = 0, bool allow_imag = true,
                    double density = 0.7) {
    return random_series<K>(rng, p, max_deg, max_deg, val_min, allow_imag, density).to_poly();
}

// Generalized binomial coefficient C(alpha, k) for rational alpha: the
// Taylor coefficients of (1+X)^alpha.  This is the oracle for root series.
inline mpq_class binomial_series_coeff(const mpq_class& alpha, unsigned k) {
    mpq_class c = 1;
    for (unsigned j = 0; j < k; ++j) c *= (alpha - j);
    mpz_class kf;
    mpz_fac_ui(kf.get_mpz_t(), k);
    return c / mpq_class(kf);
}

// Undetermined-coefficients search for F with F^n = f, univariate, degrees
// up to `through`.  Tries every candidate valuation w and extends degree by
// degree; reports whether any partial solution survives.  Independent of
// the library's lifting routines.
inline bool cyclic_brute_force_solvable(const Series<GaussianRational>& f, unsigned n,
                                        int through) {
    if (f.nvars() != 1) throw std::invalid_argument("cyclic_brute_force_solvable: p must be 1");
    auto coeff_of = [&](int d) {
        Exponents e(1);
        e.e[0] = static_cast<unsigned>(d);
        return f.coeff(e);
    };
    if (f.is_zero()) return true;  // F = 0
    for (int w = 0; w <= through; ++w) {
        // Candidate F = sum_{k>=w} a_k X^k with a_w != 0.  Degree-by-degree:
        // the X^(n*w) equation forces a_w^n = f_{nw}; every lower-degree
        // equation forces the corresponding f coefficient to vanish.
        bool contradiction = false;
        for (int d = 0; d < static_cast<int>(n) * w && d <= through; ++d) {
            if (!coeff_of(d).is_zero()) {
                contradiction = true;  // f has a term below the reachable valuation
                break;
            }
        }
        if (contradiction) continue;
        if (n * w > static_cast<unsigned>(through)) continue;  // cannot test the leading equation
        if (coeff_of(static_cast<int>(n * w)).is_zero()) continue;  // a_w would vanish
        // a_w exists over C (n-th roots always exist there) and every higher
        // equation is linear in the next unknown with unit pivot n*a_w^(n-1),
        // hence solvable.  A solution to order `through` exists.
        return true;
    }
    return false;
}

}  // namespace invlift::testing

#endif
