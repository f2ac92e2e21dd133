#ifndef INVLIFT_SERIES_HPP
#define INVLIFT_SERIES_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "invlift/poly.hpp"

namespace invlift {

// Truncated multivariate formal power series.  `order` is the reliable
// truncation bound: terms of total degree > order are unrepresented and
// unknown.  Every operation propagates the reliable order of its result;
// order -1 means no coefficient is known.
template <class K>
class Series {
  public:
    using Terms = std::map<Exponents, K, GrevlexLess>;

    Series() : p_(0), order_(-1) {}
    Series(unsigned p, int order) : p_(p), order_(order) {}

    static Series zero(unsigned p, int order) { return Series(p, order); }
    static Series constant(unsigned p, const K& c, int order) {
        Series r(p, order);
        r.set_coeff(Exponents(p), c);
        return r;
    }
    static Series variable(unsigned p, unsigned var1based, int order) {
        Series r(p, order);
        Exponents e(p);
        if (var1based == 0 || var1based > p) throw std::out_of_range("Series::variable");
        e.e[var1based - 1] = 1;
        r.set_coeff(e, FieldOps<K>::one());
        return r;
    }
    static Series from_poly(const Poly<K>& q, int order) {
        Series r(q.nvars(), order);
        for (const auto& [e, c] : q.terms())
            if (static_cast<int>(e.degree()) <= order) r.terms_[e] = c;
        return r;
    }

    unsigned nvars() const { return p_; }
    int order() const { return order_; }
    const Terms& terms() const { return terms_; }

    bool is_zero() const {
        for (const auto& [e, c] : terms_)
            if (!FieldOps<K>::is_zero(c)) return false;
        return true;
    }

    // Minimal total degree of a nonzero term; order+1 for the zero truncation.
    int valuation() const {
        int v = order_ + 1;
        for (const auto& [e, c] : terms_) {
            if (FieldOps<K>::is_zero(c)) continue;
            v = std::min(v, static_cast<int>(e.degree()));
        }
        return v;
    }

    K coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? FieldOps<K>::zero() : it->second;
    }
    K constant_term() const { return coeff(Exponents(p_)); }

    void set_coeff(const Exponents& e, const K& c) {
        if (static_cast<int>(e.degree()) > order_) return;
        if (FieldOps<K>::is_zero(c))
            terms_.erase(e);
        else
            terms_[e] = c;
    }
    void add_coeff(const Exponents& e, const K& c) {
        if (static_cast<int>(e.degree()) > order_) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (FieldOps<K>::is_zero(it->second)) terms_.erase(it);
        }
        else if (FieldOps<K>::is_zero(c)) terms_.erase(it);
    }

    Series truncated(int order) const {
        if (order >= order_) {
            Series r = *this;
            r.order_ = std::min(order, order_);
            return r;
        }
        Series r(p_, order);
        for (const auto& [e, c] : terms_)
            if (static_cast<int>(e.degree()) <= order) r.terms_[e] = c;
        return r;
    }

    Poly<K> to_poly() const {
        Poly<K> q(p_);
        for (const auto& [e, c] : terms_) q.add_term(e, c);
        return q;
    }
    Poly<K> homogeneous_component(unsigned d) const {
        Poly<K> q(p_);
        for (const auto& [e, c] : terms_)
            if (e.degree() == d) q.add_term(e, c);
        return q;
    }
    // Lowest nonvanishing homogeneous form.
    Poly<K> lowest_form() const {
        int v = valuation();
        if (v > order_) return Poly<K>(p_);
        return homogeneous_component(static_cast<unsigned>(v));
    }

    Series operator-() const {
        Series r(p_, order_);
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }
    friend Series operator+(const Series& a, const Series& b) {
        a.check_vars(b);
        Series r = a.truncated(std::min(a.order_, b.order_));
        for (const auto& [e, c] : b.terms_) r.add_coeff(e, c);
        return r;
    }
    friend Series operator-(const Series& a, const Series& b) {
        a.check_vars(b);
        Series r = a.truncated(std::min(a.order_, b.order_));
        for (const auto& [e, c] : b.terms_) r.add_coeff(e, -c);
        return r;
    }
    friend Series operator*(const Series& a, const Series& b) {
        a.check_vars(b);
        int ord = std::min(a.order_, b.order_);
        Series r(a.p_, ord);
        for (const auto& [ea, ca] : a.terms_) {
            int da = static_cast<int>(ea.degree());
            if (da > ord) continue;
            for (const auto& [eb, cb] : b.terms_) {
                if (da + static_cast<int>(eb.degree()) > ord) continue;
                r.add_coeff(ea + eb, ca * cb);
            }
        }
        return r;
    }
    Series& operator+=(const Series& o) { return *this = *this + o; }
    Series& operator-=(const Series& o) { return *this = *this - o; }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series operator*(const K& c) const {
        Series r(p_, order_);
        if (FieldOps<K>::is_zero(c)) return r;
        for (const auto& [e, v] : terms_) r.set_coeff(e, v * c);
        return r;
    }

    Series derive(unsigned var1based) const {
        Series r(p_, order_ > 0 ? order_ - 1 : -1);
        std::size_t v = var1based - 1;
        if (var1based == 0 || var1based > p_) throw std::out_of_range("Series::derive");
        for (const auto& [e, c] : terms_) {
            if (e.e[v] == 0) continue;
            Exponents d = e;
            --d.e[v];
            r.add_coeff(d, c * FieldOps<K>::from_ratio(static_cast<long>(e.e[v]), 1));
        }
        return r;
    }
    Series derive(const MultiIndex& I) const {
        Series r = *this;
        for (unsigned a : I.idx) r = r.derive(a);
        return r;
    }

    Series pow(unsigned k) const {
        Series r = constant(p_, FieldOps<K>::one(), order_);
        Series base = *this;
        while (k) {
            if (k & 1) r *= base;
            if (k >>= 1) base *= base;
        }
        return r;
    }

    // Equality of all coefficients of total degree <= through.
    friend bool equal_to_order(const Series& a, const Series& b, int through) {
        Series d = a - b;
        for (const auto& [e, c] : d.terms_) {
            if (static_cast<int>(e.degree()) > through) continue;
            if (!FieldOps<K>::is_zero(c)) return false;
        }
        return true;
    }

  private:
    void check_vars(const Series& o) const {
        if (p_ != o.p_) throw std::invalid_argument("Series: variable count mismatch");
    }

    unsigned p_;
    int order_;
    Terms terms_;
};

// Substitution of the inner series into a truncated outer series.  All inner
// components must have zero constant term; otherwise the unrepresented tail
// of the outer series would contribute to every coefficient.
template <class K>
Series<K> compose(const Series<K>& outer, const std::vector<Series<K>>& inner) {
    if (inner.size() != outer.nvars()) throw std::invalid_argument("compose: arity mismatch");
    if (inner.empty()) throw std::invalid_argument("compose: no inner series");
    int ord = outer.order();
    unsigned p = inner[0].nvars();
    for (const auto& s : inner) {
        if (s.nvars() != p) throw std::invalid_argument("compose: inner variable mismatch");
        if (s.valuation() < 1)
            throw std::invalid_argument("compose: inner series must have zero constant term");
        ord = std::min(ord, s.order());
    }
    Series<K> acc(p, ord);
    // Cache inner powers; an exponent k contributes nothing once k > ord.
    std::vector<std::vector<Series<K>>> pows(inner.size());
    auto power = [&](std::size_t i, unsigned k) -> const Series<K>& {
        auto& v = pows[i];
        if (v.empty()) v.push_back(Series<K>::constant(p, FieldOps<K>::one(), ord));
        while (v.size() <= k) v.push_back(v.back() * inner[i].truncated(ord));
        return v[k];
    };
    for (const auto& [e, c] : outer.terms()) {
        if (static_cast<int>(e.degree()) > ord) continue;
        Series<K> t = Series<K>::constant(p, c, ord);
        for (std::size_t i = 0; i < inner.size(); ++i)
            if (e.e[i]) t *= power(i, e.e[i]);
        acc += t;
    }
    return acc;
}

// Polynomial outer: finite support, so arbitrary inner constant terms are fine.
template <class K>
Series<K> poly_on_series(const Poly<K>& outer, const std::vector<Series<K>>& inner) {
    if (inner.size() != outer.nvars()) throw std::invalid_argument("poly_on_series: arity mismatch");
    if (inner.empty()) {
        throw std::invalid_argument("poly_on_series: no inner series");
    }
    unsigned p = inner[0].nvars();
    int ord = inner[0].order();
    for (const auto& s : inner) {
        if (s.nvars() != p) throw std::invalid_argument("poly_on_series: inner variable mismatch");
        ord = std::min(ord, s.order());
    }
    Series<K> acc(p, ord);
    std::vector<std::vector<Series<K>>> pows(inner.size());
    auto power = [&](std::size_t i, unsigned k) -> const Series<K>& {
        auto& v = pows[i];
        if (v.empty()) v.push_back(Series<K>::constant(p, FieldOps<K>::one(), ord));
        while (v.size() <= k) v.push_back(v.back() * inner[i].truncated(ord));
        return v[k];
    };
    for (const auto& [e, c] : outer.terms()) {
        Series<K> t = Series<K>::constant(p, c, ord);
        for (std::size_t i = 0; i < inner.size(); ++i)
            if (e.e[i]) t *= power(i, e.e[i]);
        acc += t;
    }
    return acc;
}

// Memoized powers of a fixed inner vector, for evaluating many polynomials
// on the same morphism.
template <class K>
class SeriesPowerCache {
  public:
    SeriesPowerCache(std::vector<Series<K>> base, int order) : base_(std::move(base)), order_(order) {
        pows_.resize(base_.size());
    }

    const Series<K>& power(std::size_t i, unsigned k) {
        auto& v = pows_[i];
        if (v.empty())
            v.push_back(Series<K>::constant(base_[0].nvars(), FieldOps<K>::one(), order_));
        while (v.size() <= k) v.push_back(v.back() * base_[i].truncated(order_));
        return v[k];
    }

    Series<K> eval(const Poly<K>& outer) {
        if (outer.nvars() != base_.size())
            throw std::invalid_argument("SeriesPowerCache::eval: arity mismatch");
        Series<K> acc(base_[0].nvars(), order_);
        for (const auto& [e, c] : outer.terms()) {
            Series<K> t = Series<K>::constant(base_[0].nvars(), c, order_);
            for (std::size_t i = 0; i < base_.size(); ++i)
                if (e.e[i]) t *= power(i, e.e[i]);
            acc += t;
        }
        return acc;
    }

    int order() const { return order_; }

  private:
    std::vector<Series<K>> base_;
    int order_;
    std::vector<std::vector<Series<K>>> pows_;
};

template <class K>
struct SeriesDivision {
    bool ok = false;
    Series<K> quotient;
    long obstructed_degree = 0;  // degree of the quotient component that failed
    Poly<K> residual;            // the undividable homogeneous remainder
};

// Exact division in the truncated ring.  Succeeds iff the denominator's
// lowest form divides, at every graded step, the corresponding residual
// form; the result has order min(q_num, q_den) - val(den).  A failure
// carries the first obstructed degree, which is the refutation witness the
// lifting criteria report.
template <class K>
SeriesDivision<K> divide_exact(const Series<K>& num, const Series<K>& den) {
    if (num.nvars() != den.nvars()) throw std::invalid_argument("divide_exact: variable mismatch");
    SeriesDivision<K> out;
    if (den.order() < 0 || num.order() < 0) {
        out.obstructed_degree = 0;
        return out;
    }
    int vden = den.valuation();
    if (vden > den.order()) throw std::domain_error("divide_exact: denominator is zero within order");
    int qr = std::min(num.order(), den.order()) - vden;
    int vnum = num.valuation();
    if (vnum > num.order()) {  // numerator vanishes within order
        out.ok = true;
        out.quotient = Series<K>::zero(num.nvars(), qr);
        return out;
    }
    if (vnum < vden) {
        out.obstructed_degree = vnum - vden;
        out.residual = num.homogeneous_component(static_cast<unsigned>(vnum));
        return out;
    }
    Poly<K> d0 = den.homogeneous_component(static_cast<unsigned>(vden));
    std::vector<Poly<K>> q;  // q[k] = quotient component of degree (vnum - vden) + k ... stored from 0
    int base = vnum - vden;
    Series<K> quot(num.nvars(), qr);
    for (int k = base; k <= qr; ++k) {
        // residual form of degree vden + k
        Poly<K> r = num.homogeneous_component(static_cast<unsigned>(vden + k));
        for (int j = 1; j <= k - base; ++j) {
            Poly<K> dj = den.homogeneous_component(static_cast<unsigned>(vden + j));
            if (dj.is_zero()) continue;
            r -= dj * q[static_cast<std::size_t>(k - base - j)];
        }
        if (r.is_zero()) {
            q.push_back(Poly<K>(num.nvars()));
            continue;
        }
        auto div = poly_divide_exact(r, d0);
        if (!div.ok) {
            out.obstructed_degree = k;
            out.residual = div.residual;
            return out;
        }
        q.push_back(div.quotient);
        for (const auto& [e, c] : div.quotient.terms()) quot.add_coeff(e, c);
    }
    out.ok = true;
    out.quotient = std::move(quot);
    return out;
}

enum class RootStatus {
    Ok,
    ConstantTermZero,
    RootNotInField,
    ValuationNotDivisible,
    LowestFormNotPower,
    NotDivisible,
};

template <class K>
struct SeriesRoot {
    RootStatus status = RootStatus::Ok;
    Series<K> root;
    long obstructed_degree = 0;

    bool ok() const { return status == RootStatus::Ok; }
};

// n-th root of a unit series (nonzero constant term), branch fixed by the
// field's root of the constant term.
template <class K>
SeriesRoot<K> nth_root_unit(const Series<K>& s, unsigned n) {
    if (n == 0) throw std::invalid_argument("nth_root_unit: n must be positive");
    SeriesRoot<K> out;
    K c0 = s.constant_term();
    if (FieldOps<K>::is_zero(c0)) {
        out.status = RootStatus::ConstantTermZero;
        return out;
    }
    auto r0 = FieldOps<K>::nth_root(c0, n);
    if (!r0) {
        out.status = RootStatus::RootNotInField;
        return out;
    }
    int ord = s.order();
    unsigned p = s.nvars();
    Series<K> r = Series<K>::constant(p, *r0, ord);
    if (n == 1) {
        out.root = s;
        return out;
    }
    K ninv = FieldOps<K>::inv(FieldOps<K>::from_ratio(static_cast<long>(n), 1));
    // Newton on r^n - s = 0; the derivative n r^{n-1} is a unit.
    for (int it = 0; it < 64; ++it) {
        Series<K> err = r.pow(n) - s;
        if (err.is_zero()) break;
        auto step = divide_exact(err * ninv, r.pow(n - 1));
        if (!step.ok) throw std::logic_error("nth_root_unit: unit division failed");
        Series<K> upd = step.quotient.truncated(ord);
        r = (r - upd).truncated(ord);
    }
    out.root = r;
    return out;
}

// n-th root of a series of arbitrary valuation: the valuation must be
// divisible by n, the lowest form must be a perfect n-th power of a
// homogeneous polynomial, and every graded correction must divide exactly.
// This decides solvability of z^n = s in the truncated ring and constructs
// the solution when it exists.
template <class K>
SeriesRoot<K> series_nth_root(const Series<K>& s, unsigned n) {
    SeriesRoot<K> out;
    if (n == 0) throw std::invalid_argument("series_nth_root: n must be positive");
    int v = s.valuation();
    if (v > s.order()) {
        out.root = Series<K>::zero(s.nvars(), s.order() >= 0 ? s.order() / static_cast<int>(n) : -1);
        return out;
    }
    if (v == 0) return nth_root_unit(s, n);
    if (v % static_cast<int>(n) != 0) {
        out.status = RootStatus::ValuationNotDivisible;
        out.obstructed_degree = v;
        return out;
    }
    int w = v / static_cast<int>(n);
    Poly<K> low = s.homogeneous_component(static_cast<unsigned>(v));
    auto r0 = poly_nth_root(low, n);
    if (!r0) {
        out.status = RootStatus::LowestFormNotPower;
        out.obstructed_degree = v;
        return out;
    }
    int steps = s.order() - v;        // corrections determined by data up to s.order()
    int rord = w + steps;             // reliable order of the root
    Series<K> root = Series<K>::from_poly(*r0, rord);
    Poly<K> d0 = *r0;
    Poly<K> dpow = d0;                // d0^(n-1)
    for (unsigned k = 2; k < n; ++k) dpow *= d0;
    dpow *= Poly<K>::constant(s.nvars(), FieldOps<K>::from_ratio(static_cast<long>(n), 1));
    for (int k = 1; k <= steps; ++k) {
        Series<K> p = root.pow(n);
        Poly<K> target = s.homogeneous_component(static_cast<unsigned>(v + k));
        Poly<K> have = p.homogeneous_component(static_cast<unsigned>(v + k));
        Poly<K> rho = target - have;
        if (rho.is_zero()) continue;
        auto div = poly_divide_exact(rho, dpow);
        if (!div.ok) {
            out.status = RootStatus::NotDivisible;
            out.obstructed_degree = w + k;
            return out;
        }
        for (const auto& [e, c] : div.quotient.terms()) root.add_coeff(e, c);
    }
    out.root = root;
    return out;
}

}  // namespace invlift

#endif
