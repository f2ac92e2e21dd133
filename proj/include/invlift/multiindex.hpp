#ifndef INVLIFT_MULTIINDEX_HPP
#define INVLIFT_MULTIINDEX_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace invlift {

// Dense exponent vector of a monomial in p variables.
struct Exponents {
    std::vector<unsigned> e;

    Exponents() = default;
    explicit Exponents(std::size_t p) : e(p, 0) {}
    explicit Exponents(std::vector<unsigned> v) : e(std::move(v)) {}

    std::size_t nvars() const { return e.size(); }
    unsigned degree() const { return std::accumulate(e.begin(), e.end(), 0u); }

    friend bool operator==(const Exponents& a, const Exponents& b) { return a.e == b.e; }
    friend bool operator!=(const Exponents& a, const Exponents& b) { return !(a == b); }

    Exponents operator+(const Exponents& o) const {
        Exponents r(*this);
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }
    // Componentwise subtraction; nullopt-style via bool.
    bool divides(const Exponents& o) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    Exponents minus(const Exponents& o) const {
        Exponents r(*this);
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
        return r;
    }
};

// Graded reverse lexicographic order (ascending: constant term first).
struct GrevlexLess {
    bool operator()(const Exponents& a, const Exponents& b) const {
        unsigned da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        for (std::size_t i = a.e.size(); i-- > 0;) {
            if (a.e[i] != b.e[i]) return a.e[i] > b.e[i];
        }
        return false;
    }
};

// Unordered multi-index: a sorted tuple of directions in {1,...,p}.
struct MultiIndex {
    std::vector<unsigned> idx;  // non-decreasing, entries 1-based

    MultiIndex() = default;
    explicit MultiIndex(std::vector<unsigned> v) : idx(std::move(v)) {
        std::sort(idx.begin(), idx.end());
    }
    static MultiIndex empty() { return MultiIndex(); }
    static MultiIndex single(unsigned a) { return MultiIndex({a}); }

    std::size_t order() const { return idx.size(); }
    bool is_empty() const { return idx.empty(); }

    MultiIndex plus(unsigned a) const {
        MultiIndex r(*this);
        r.idx.insert(std::upper_bound(r.idx.begin(), r.idx.end(), a), a);
        return r;
    }
    // Removes one occurrence of a; precondition: a occurs.
    MultiIndex minus(unsigned a) const {
        MultiIndex r(*this);
        auto it = std::find(r.idx.begin(), r.idx.end(), a);
        if (it == r.idx.end()) throw std::logic_error("MultiIndex::minus: entry not present");
        r.idx.erase(it);
        return r;
    }
    std::vector<unsigned> distinct() const {
        std::vector<unsigned> d(idx);
        d.erase(std::unique(d.begin(), d.end()), d.end());
        return d;
    }
    unsigned multiplicity(unsigned a) const {
        return static_cast<unsigned>(std::count(idx.begin(), idx.end(), a));
    }

    Exponents to_exponents(std::size_t p) const {
        Exponents r(p);
        for (unsigned a : idx) {
            if (a == 0 || a > p) throw std::out_of_range("MultiIndex entry out of range");
            ++r.e[a - 1];
        }
        return r;
    }
    static MultiIndex from_exponents(const Exponents& ex) {
        std::vector<unsigned> v;
        for (std::size_t i = 0; i < ex.e.size(); ++i)
            for (unsigned k = 0; k < ex.e[i]; ++k) v.push_back(static_cast<unsigned>(i + 1));
        return MultiIndex(std::move(v));
    }

    // A! = r_1! ... r_p! with r the multiplicities.
    mpz_class factorial() const {
        mpz_class f = 1;
        unsigned run = 1;
        for (std::size_t i = 1; i < idx.size(); ++i) {
            if (idx[i] == idx[i - 1]) {
                ++run;
                f *= run;
            } else {
                run = 1;
            }
        }
        return f;
    }

    friend bool operator==(const MultiIndex& a, const MultiIndex& b) { return a.idx == b.idx; }
    friend bool operator!=(const MultiIndex& a, const MultiIndex& b) { return !(a == b); }
    friend bool operator<(const MultiIndex& a, const MultiIndex& b) {
        if (a.idx.size() != b.idx.size()) return a.idx.size() < b.idx.size();
        return a.idx < b.idx;
    }

    std::string str() const {
        if (idx.empty()) return "()";
        std::string s = "(";
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(idx[i]);
        }
        return s + ")";
    }
};

// All multi-indices over {1..p} of order <= qmax, sorted by (order, lex).
inline std::vector<MultiIndex> enumerate_multiindices(unsigned p, unsigned qmax) {
    std::vector<MultiIndex> out;
    out.push_back(MultiIndex::empty());
    std::vector<MultiIndex> level = {MultiIndex::empty()};
    for (unsigned s = 1; s <= qmax; ++s) {
        std::vector<MultiIndex> next;
        for (const auto& m : level) {
            unsigned lo = m.idx.empty() ? 1 : m.idx.back();
            for (unsigned a = lo; a <= p; ++a) {
                MultiIndex n = m;
                n.idx.push_back(a);
                next.push_back(std::move(n));
            }
        }
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

// Multiset of multi-indices (a profile), kept sorted.
using Profile = std::vector<MultiIndex>;

inline Profile sorted_profile(Profile p) {
    std::sort(p.begin(), p.end());
    return p;
}

// Number of distinct orderings of the multiset.
inline mpz_class profile_permutations(const Profile& p) {
    mpz_class total;
    mpz_fac_ui(total.get_mpz_t(), static_cast<unsigned long>(p.size()));
    std::size_t i = 0;
    while (i < p.size()) {
        std::size_t j = i;
        while (j < p.size() && p[j] == p[i]) ++j;
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(j - i));
        total /= f;
        i = j;
    }
    return total;
}

// All multisets of given size over the index range [0, count).
inline std::vector<std::vector<unsigned>> enumerate_multisets(unsigned count, unsigned size) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    auto rec = [&](auto&& self, unsigned lo, unsigned remaining) -> void {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (unsigned v = lo; v < count; ++v) {
            cur.push_back(v);
            self(self, v, remaining - 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, size);
    return out;
}

inline mpz_class factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

inline mpz_class binomial(unsigned n, unsigned k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return b;
}

}  // namespace invlift

#endif
