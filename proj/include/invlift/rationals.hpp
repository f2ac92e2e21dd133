#ifndef INVLIFT_RATIONALS_HPP
#define INVLIFT_RATIONALS_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace invlift {

// Element of Q(i): a pair of arbitrary-precision rationals.
struct GaussianRational {
    mpq_class re;
    mpq_class im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long r) : re(r), im(0) {}
    GaussianRational(const mpq_class& r) : re(r), im(0) {}
    GaussianRational(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational imaginary_unit() { return GaussianRational(mpq_class(0), mpq_class(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }
    // |z|^2 as a rational.
    mpq_class norm() const { return re * re + im * im; }

    GaussianRational operator-() const { return {-re, -im}; }

    GaussianRational& operator+=(const GaussianRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        mpq_class r = re * o.re - im * o.im;
        mpq_class i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        if (o.is_zero()) throw std::domain_error("GaussianRational: division by zero");
        mpq_class n = o.norm();
        mpq_class r = (re * o.re + im * o.im) / n;
        mpq_class i = (im * o.re - re * o.im) / n;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    // Total order used for deterministic canonical choices (not a field order).
    friend bool lex_less(const GaussianRational& a, const GaussianRational& b) {
        int c = cmp(a.re, b.re);
        if (c != 0) return c < 0;
        return cmp(a.im, b.im) < 0;
    }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

GaussianRational pow(const GaussianRational& a, unsigned k);

// Exact n-th root of a rational, when one exists in Q.
std::optional<mpq_class> rational_nth_root(const mpq_class& q, unsigned n);

// Exact square root in Q(i), complete: returns a root whenever one exists.
std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& c);

// n-th root in Q(i).  Complete for n = 1, 2 and for real arguments whose
// numerator/denominator are perfect n-th powers; otherwise attempts a
// float-seeded rationalization and verifies the candidate exactly.  The
// returned root is deterministic (documented "first representable" choice).
std::optional<GaussianRational> gaussian_nth_root(const GaussianRational& c, unsigned n);

// Nearest rational with bounded denominator (continued fractions), used to
// recognize roots that happen to lie in Q(i).
mpq_class rationalize(double x, unsigned long max_den = (1ul << 48));

std::string to_string(const mpq_class& q);

}  // namespace invlift

#endif
