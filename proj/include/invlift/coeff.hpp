#ifndef INVLIFT_COEFF_HPP
#define INVLIFT_COEFF_HPP

#include <complex>
#include <optional>

#include "invlift/rationals.hpp"

namespace invlift {

// Comparison tolerance for the floating coefficient field.  One global knob
// per process; the CLI reads INVLIFT_EPSILON into it.
inline double& approx_epsilon() {
    static double eps = 1e-9;
    return eps;
}

using ApproxComplex = std::complex<double>;

template <class K>
struct FieldOps;

template <>
struct FieldOps<GaussianRational> {
    static constexpr bool exact = true;
    using value_type = GaussianRational;

    static GaussianRational zero() { return GaussianRational(0); }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational imag() { return GaussianRational::imaginary_unit(); }
    static GaussianRational from_ratio(long num, long den) {
        mpq_class q(num, den);
        q.canonicalize();
        return GaussianRational(q);
    }
    static GaussianRational from_rational(const mpq_class& q) { return GaussianRational(q); }
    static bool is_zero(const GaussianRational& a) { return a.is_zero(); }
    static bool eq(const GaussianRational& a, const GaussianRational& b) { return a == b; }
    static GaussianRational inv(const GaussianRational& a) { return GaussianRational(1) / a; }
    static std::optional<GaussianRational> nth_root(const GaussianRational& a, unsigned n) {
        return gaussian_nth_root(a, n);
    }
    static double abs_approx(const GaussianRational& a) { return std::abs(a.to_complex()); }
};

template <>
struct FieldOps<ApproxComplex> {
    static constexpr bool exact = false;
    using value_type = ApproxComplex;

    static ApproxComplex zero() { return {0.0, 0.0}; }
    static ApproxComplex one() { return {1.0, 0.0}; }
    static ApproxComplex imag() { return {0.0, 1.0}; }
    static ApproxComplex from_ratio(long num, long den) {
        return {static_cast<double>(num) / static_cast<double>(den), 0.0};
    }
    static ApproxComplex from_rational(const mpq_class& q) { return {q.get_d(), 0.0}; }
    static bool is_zero(const ApproxComplex& a) { return std::abs(a) <= approx_epsilon(); }
    static bool eq(const ApproxComplex& a, const ApproxComplex& b) {
        double scale = std::max({1.0, std::abs(a), std::abs(b)});
        return std::abs(a - b) <= approx_epsilon() * scale;
    }
    static ApproxComplex inv(const ApproxComplex& a) { return one() / a; }
    static std::optional<ApproxComplex> nth_root(const ApproxComplex& a, unsigned n) {
        if (std::abs(a) == 0.0) return zero();
        return std::pow(a, 1.0 / static_cast<double>(n));
    }
    static double abs_approx(const ApproxComplex& a) { return std::abs(a); }
};

template <class K>
K field_from(const GaussianRational& g) {
    if constexpr (FieldOps<K>::exact)
        return g;
    else
        return g.to_complex();
}

}  // namespace invlift

#endif
