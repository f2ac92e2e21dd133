#ifndef INVLIFT_POLY_HPP
#define INVLIFT_POLY_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "invlift/coeff.hpp"
#include "invlift/multiindex.hpp"

namespace invlift {

// Exact multivariate polynomial over K.  No truncation; the zero polynomial
// has an empty term map.
template <class K>
class Poly {
  public:
    using Terms = std::map<Exponents, K, GrevlexLess>;

    Poly() : p_(0) {}
    explicit Poly(unsigned nvars) : p_(nvars) {}
    Poly(unsigned nvars, const K& c) : p_(nvars) {
        if (!FieldOps<K>::is_zero(c)) terms_[Exponents(nvars)] = c;
    }

    static Poly constant(unsigned nvars, const K& c) { return Poly(nvars, c); }
    static Poly variable(unsigned nvars, unsigned var1based) {
        Poly r(nvars);
        Exponents e(nvars);
        if (var1based == 0 || var1based > nvars) throw std::out_of_range("Poly::variable");
        e.e[var1based - 1] = 1;
        r.terms_[e] = FieldOps<K>::one();
        return r;
    }
    static Poly monomial(unsigned nvars, const Exponents& e, const K& c) {
        Poly r(nvars);
        if (!FieldOps<K>::is_zero(c)) r.terms_[e] = c;
        return r;
    }

    unsigned nvars() const { return p_; }
    bool is_zero() const { return terms_.empty(); }
    const Terms& terms() const { return terms_; }

    int degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) d = std::max<int>(d, static_cast<int>(e.degree()));
        return d;
    }
    int lowest_degree() const {
        int d = -1;
        for (const auto& [e, c] : terms_) {
            int dd = static_cast<int>(e.degree());
            if (d < 0 || dd < d) d = dd;
        }
        return d;
    }
    bool is_homogeneous() const { return is_zero() || degree() == lowest_degree(); }

    K coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? FieldOps<K>::zero() : it->second;
    }
    K constant_term() const { return coeff(Exponents(p_)); }

    void add_term(const Exponents& e, const K& c) {
        if (FieldOps<K>::is_zero(c)) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (FieldOps<K>::is_zero(it->second)) terms_.erase(it);
        }
    }

    Poly operator-() const {
        Poly r(p_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }
    Poly& operator+=(const Poly& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check_vars(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check_vars(b);
        Poly r(a.p_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly operator*(const K& c) const {
        Poly r(p_);
        if (FieldOps<K>::is_zero(c)) return r;
        for (const auto& [e, v] : terms_) {
            K w = v * c;
            if (!FieldOps<K>::is_zero(w)) r.terms_[e] = w;
        }
        return r;
    }
    Poly& operator*=(const K& c) { return *this = *this * c; }

    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.p_ != b.p_) return false;
        if constexpr (FieldOps<K>::exact) {
            return a.terms_ == b.terms_;
        } else {
            Poly d = a;
            d -= b;
            for (const auto& [e, c] : d.terms_)
                if (!FieldOps<K>::is_zero(c)) return false;
            return true;
        }
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(unsigned k) const {
        Poly r = constant(p_, FieldOps<K>::one());
        Poly base = *this;
        while (k) {
            if (k & 1) r *= base;
            if (k >>= 1) base *= base;
        }
        return r;
    }

    Poly derive(unsigned var1based) const {
        Poly r(p_);
        std::size_t v = var1based - 1;
        for (const auto& [e, c] : terms_) {
            if (e.e[v] == 0) continue;
            Exponents d = e;
            --d.e[v];
            r.add_term(d, c * FieldOps<K>::from_ratio(static_cast<long>(e.e[v]), 1));
        }
        return r;
    }
    Poly derive(const MultiIndex& I) const {
        Poly r = *this;
        for (unsigned a : I.idx) r = r.derive(a);
        return r;
    }

    K eval(const std::vector<K>& point) const {
        if (point.size() != p_) throw std::invalid_argument("Poly::eval: wrong point size");
        K acc = FieldOps<K>::zero();
        for (const auto& [e, c] : terms_) {
            K t = c;
            for (std::size_t i = 0; i < p_; ++i)
                for (unsigned k = 0; k < e.e[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    // Substitution u_i -> args[i] with polynomial arguments.
    Poly compose(const std::vector<Poly>& args) const {
        if (args.size() != p_) throw std::invalid_argument("Poly::compose: arity mismatch");
        unsigned target = args.empty() ? 0 : args[0].nvars();
        Poly acc(target);
        for (const auto& [e, c] : terms_) {
            Poly t = constant(target, c);
            for (std::size_t i = 0; i < p_; ++i)
                if (e.e[i]) t *= args[i].pow(e.e[i]);
            acc += t;
        }
        return acc;
    }

    Poly homogeneous_component(unsigned d) const {
        Poly r(p_);
        for (const auto& [e, c] : terms_)
            if (e.degree() == d) r.terms_[e] = c;
        return r;
    }

    // Largest monomial in grevlex.
    std::pair<Exponents, K> leading_term() const {
        if (is_zero()) throw std::logic_error("Poly::leading_term of zero");
        auto it = std::prev(terms_.end());
        return {it->first, it->second};
    }

    std::size_t term_count() const { return terms_.size(); }

  private:
    void check_vars(const Poly& o) const {
        if (p_ != o.p_) throw std::invalid_argument("Poly: variable count mismatch");
    }

    unsigned p_;
    Terms terms_;
};

template <class K>
struct PolyDivision {
    bool ok = false;
    Poly<K> quotient;
    Poly<K> residual;  // first obstruction, when !ok
};

// Exact division by a single divisor.  For a principal ideal the leading
// term of every multiple is divisible by LT(divisor), so the classical
// reduction loop decides divisibility.
template <class K>
PolyDivision<K> poly_divide_exact(const Poly<K>& num, const Poly<K>& den) {
    if (den.is_zero()) throw std::domain_error("poly_divide_exact: zero divisor");
    PolyDivision<K> out;
    out.quotient = Poly<K>(num.nvars());
    Poly<K> rem = num;
    auto [lde, ldc] = den.leading_term();
    while (!rem.is_zero()) {
        auto [lre, lrc] = rem.leading_term();
        if (!lde.divides(lre)) {
            out.residual = rem;
            return out;
        }
        Exponents q = lre.minus(lde);
        K c = lrc / ldc;
        Poly<K> t = Poly<K>::monomial(num.nvars(), q, c);
        out.quotient += t;
        rem -= t * den;
    }
    out.ok = true;
    return out;
}

// n-th root of a homogeneous polynomial, when it is a perfect power.
template <class K>
std::optional<Poly<K>> poly_nth_root(const Poly<K>& h, unsigned n) {
    if (n == 0) throw std::invalid_argument("poly_nth_root: n must be positive");
    if (h.is_zero()) return Poly<K>(h.nvars());
    if (n == 1) return h;
    if (!h.is_homogeneous()) throw std::invalid_argument("poly_nth_root: argument not homogeneous");
    if (static_cast<unsigned>(h.degree()) % n != 0) return std::nullopt;

    auto [le, lc] = h.leading_term();
    for (unsigned x : le.e)
        if (x % n != 0) return std::nullopt;
    auto rc = FieldOps<K>::nth_root(lc, n);
    if (!rc) return std::nullopt;
    Exponents re(le);
    for (auto& x : re.e) x /= n;
    Poly<K> root = Poly<K>::monomial(h.nvars(), re, *rc);
    Poly<K> lead_pow = Poly<K>::monomial(h.nvars(), le.minus(re), *rc * FieldOps<K>::from_ratio(n, 1));

    std::size_t guard = 4 * (h.term_count() + 4) * (n + 1);
    while (guard--) {
        Poly<K> residual = h - root.pow(n);
        if (residual.is_zero()) return root;
        auto [lre, lrc] = residual.leading_term();
        auto [lpe, lpc] = lead_pow.leading_term();
        if (!lpe.divides(lre)) return std::nullopt;
        root.add_term(lre.minus(lpe), lrc / lpc);
    }
    return std::nullopt;
}

// Vector of polynomial components in a common variable set.
template <class K>
struct PolyVec {
    unsigned nvars = 0;
    std::vector<Poly<K>> comps;

    PolyVec() = default;
    PolyVec(unsigned nv, std::size_t count) : nvars(nv), comps(count, Poly<K>(nv)) {}

    static PolyVec identity(unsigned n) {
        PolyVec r(n, n);
        for (unsigned i = 1; i <= n; ++i) r.comps[i - 1] = Poly<K>::variable(n, i);
        return r;
    }

    std::size_t size() const { return comps.size(); }
    Poly<K>& operator[](std::size_t i) { return comps[i]; }
    const Poly<K>& operator[](std::size_t i) const { return comps[i]; }
};

// Determinant of a square polynomial matrix by cofactor expansion.
template <class K>
Poly<K> poly_det(const std::vector<std::vector<Poly<K>>>& m) {
    std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("poly_det: empty matrix");
    if (n == 1) return m[0][0];
    unsigned nv = m[0][0].nvars();
    Poly<K> acc(nv);
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<Poly<K>>> minor;
        minor.reserve(n - 1);
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Poly<K>> row;
            row.reserve(n - 1);
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Poly<K> term = m[0][j] * poly_det(minor);
        if (j % 2) term = -term;
        acc += term;
    }
    return acc;
}

}  // namespace invlift

#endif
