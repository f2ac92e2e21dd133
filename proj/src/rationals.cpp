#include "invlift/rationals.hpp"

namespace invlift {

GaussianRational pow(const GaussianRational& a, unsigned k) {
    GaussianRational r(1);
    GaussianRational base = a;
    while (k) {
        if (k & 1) r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

std::optional<mpq_class> rational_nth_root(const mpq_class& q, unsigned n) {
    if (n == 0) throw std::invalid_argument("rational_nth_root: n must be positive");
    if (q == 0) return mpq_class(0);
    if (n == 1) return q;
    mpq_class v = q;
    bool negate = false;
    if (v < 0) {
        if (n % 2 == 0) return std::nullopt;
        negate = true;
        v = -v;
    }
    mpz_class num_root, den_root;
    if (!mpz_root(num_root.get_mpz_t(), v.get_num().get_mpz_t(), n)) return std::nullopt;
    if (!mpz_root(den_root.get_mpz_t(), v.get_den().get_mpz_t(), n)) return std::nullopt;
    mpq_class r(num_root, den_root);
    r.canonicalize();
    return negate ? mpq_class(-r) : r;
}

std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& c) {
    if (c.is_zero()) return GaussianRational(0);
    if (c.is_real()) {
        if (auto r = rational_nth_root(c.re, 2)) return GaussianRational(*r);
        // sqrt of a negative rational lands on the imaginary axis.
        if (c.re < 0) {
            if (auto r = rational_nth_root(mpq_class(-c.re), 2))
                return GaussianRational(mpq_class(0), *r);
        }
        return std::nullopt;
    }
    // z = x + iy with z^2 = a + ib: x^2 = (a + sqrt(a^2+b^2))/2, y = b/(2x).
    auto rho = rational_nth_root(c.norm(), 2);
    if (!rho) return std::nullopt;
    mpq_class x2 = (c.re + *rho) / 2;
    auto x = rational_nth_root(x2, 2);
    if (!x || *x == 0) return std::nullopt;
    mpq_class y = c.im / (2 * (*x));
    GaussianRational root(*x, y);
    if (pow(root, 2) == c) return root;
    return std::nullopt;
}

mpq_class rationalize(double x, unsigned long max_den) {
    if (!std::isfinite(x)) throw std::domain_error("rationalize: non-finite input");
    bool neg = x < 0;
    double v = std::fabs(x);
    // Continued fraction expansion of v.
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double rem = v;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(rem);
        if (fl > 9e18) break;
        mpz_class a(static_cast<unsigned long>(fl));
        mpz_class p2 = a * p1 + p0;
        mpz_class q2 = a * q1 + q0;
        if (q2 > mpz_class(max_den)) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double approx = p1.get_d() / q1.get_d();
        if (std::fabs(approx - v) <= 1e-14 * std::max(1.0, v)) break;
        double frac = rem - fl;
        if (frac < 1e-15) break;
        rem = 1.0 / frac;
    }
    if (q1 == 0) return mpq_class(0);
    mpq_class r(p1, q1);
    r.canonicalize();
    return neg ? mpq_class(-r) : r;
}

std::optional<GaussianRational> gaussian_nth_root(const GaussianRational& c, unsigned n) {
    if (n == 0) throw std::invalid_argument("gaussian_nth_root: n must be positive");
    if (n == 1) return c;
    if (c.is_zero()) return GaussianRational(0);
    if (c.is_real()) {
        if (auto r = rational_nth_root(c.re, n)) return GaussianRational(*r);
        if (n == 2) return gaussian_sqrt(c);
        // Negative real with even n: try roots of the form y*i (only closes for n = 2 mod 4).
        if (c.re < 0 && n % 4 == 2) {
            if (auto r = rational_nth_root(mpq_class(-c.re), n))
                return GaussianRational(mpq_class(0), *r);
        }
    } else if (n == 2) {
        return gaussian_sqrt(c);
    }
    // Float-seeded candidate, verified exactly.  i^k rotations cover rounding
    // landing on a neighbouring branch.
    std::complex<double> approx = std::pow(c.to_complex(), 1.0 / static_cast<double>(n));
    GaussianRational cand(rationalize(approx.real()), rationalize(approx.imag()));
    GaussianRational rot = GaussianRational::imaginary_unit();
    for (int k = 0; k < 4; ++k) {
        if (pow(cand, n) == c) return cand;
        cand *= rot;
    }
    return std::nullopt;
}

std::string to_string(const mpq_class& q) { return q.get_str(); }

}  // namespace invlift
