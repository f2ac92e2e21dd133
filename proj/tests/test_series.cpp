#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invlift/series.hpp"
#include "invlift/textio.hpp"
#include "oracles.hpp"

using namespace invlift;
using namespace invlift::testing;

using GR = GaussianRational;
using S = Series<GR>;

namespace {

S sp(const std::string& text, unsigned p, int order) {
    return parse_series<GR>(text, make_names("X", p), order);
}
Poly<GR> pp(const std::string& text, unsigned p) { return parse_poly<GR>(text, make_names("X", p)); }

}  // namespace

TEST_CASE("add: cancellation and identity") {
    S a = sp("X1 + X1^2", 1, 8);
    S b = sp("-X1", 1, 8);
    CHECK(to_string(a + b) == "X1^2");

    S z = S::zero(1, 8);
    CHECK(to_string(z + a) == to_string(a));
}

TEST_CASE("add: order bookkeeping against full-polynomial oracle") {
    S a = sp("1 + X1", 1, 3);
    S b = sp("X1^3 + X1^4", 1, 4);
    S sum = a + b;
    CHECK(sum.order() == 3);
    // Oracle: add the full polynomials, then truncate to min order.
    Poly<GR> full = pp("1 + X1", 1) + pp("X1^3 + X1^4", 1);
    CHECK(equal_to_order(sum, S::from_poly(full, 3), 3));
    CHECK(to_string(sum) == "1 + X1 + X1^3");
}

TEST_CASE("mul: basics") {
    CHECK(to_string(sp("1+X1", 1, 8) * sp("1-X1", 1, 8)) == "1 - X1^2");
    CHECK(to_string(sp("X1", 2, 8) * sp("X2", 2, 8)) == "X1*X2");
}

TEST_CASE("mul: geometric series identity to order q") {
    const int q = 11;
    S geo(1, q);
    for (int k = 0; k <= q; ++k) {
        Exponents e(1);
        e.e[0] = static_cast<unsigned>(k);
        geo.set_coeff(e, GR(1));
    }
    S prod = geo * sp("1-X1", 1, q);
    CHECK(to_string(prod) == "1");
    CHECK(prod.order() == q);
}

TEST_CASE("mul: valuation is additive") {
    Rng rng(7);
    for (int t = 0; t < 30; ++t) {
        S a = random_series<GR>(rng, 2, 9, 5, 1);
        S b = random_series<GR>(rng, 2, 9, 5, 2);
        if (a.is_zero() || b.is_zero()) continue;
        S ab = a * b;
        if (ab.valuation() <= ab.order()) CHECK(ab.valuation() == a.valuation() + b.valuation());
    }
}

TEST_CASE("compose: examples") {
    // outer W1^2 on (X1+X2)
    S outer = parse_series<GR>("W1^2", {"W1"}, 8);
    S inner = sp("X1+X2", 2, 8);
    CHECK(to_string(compose(outer, {inner})) == "X2^2 + 2*X1*X2 + X1^2");

    // identity substitution
    S s = sp("X1 + 2*X1^3", 1, 6);
    S w1 = parse_series<GR>("W1", {"W1"}, 6);
    CHECK(to_string(compose(w1, {s})) == to_string(s));

    // W1*W2 on (X1, X1^2)
    S prod = parse_series<GR>("W1*W2", {"W1", "W2"}, 8);
    CHECK(to_string(compose(prod, {sp("X1", 1, 8), sp("X1^2", 1, 8)})) == "X1^3");
}

TEST_CASE("compose: nonzero inner constant term is rejected for series outers") {
    S outer = parse_series<GR>("W1^2", {"W1"}, 8);
    CHECK_THROWS_AS(compose(outer, {sp("1+X1", 1, 8)}), std::invalid_argument);
    // ...but fine through a polynomial outer.
    Poly<GR> po = parse_poly<GR>("W1^2", {"W1"});
    CHECK(to_string(poly_on_series(po, {sp("1+X1", 1, 8)})) == "1 + 2*X1 + X1^2");
}

TEST_CASE("compose: associativity with polynomial outers") {
    Rng rng(11);
    for (int t = 0; t < 10; ++t) {
        Poly<GR> f = random_poly<GR>(rng, 2, 3);
        std::vector<S> g = {random_series<GR>(rng, 2, 8, 4, 1), random_series<GR>(rng, 2, 8, 4, 1)};
        std::vector<S> h = {random_series<GR>(rng, 1, 8, 4, 1), random_series<GR>(rng, 1, 8, 4, 1)};
        // (f o g) o h vs f o (g o h)
        Series<GR> fg_h = [&] {
            Series<GR> fog = poly_on_series(f, g);
            return compose(fog, h);
        }();
        std::vector<S> goh = {compose(g[0], h), compose(g[1], h)};
        Series<GR> f_goh = poly_on_series(f, goh);
        CHECK(equal_to_order(fg_h, f_goh, std::min(fg_h.order(), f_goh.order())));
    }
}

TEST_CASE("derive: examples and commutation") {
    CHECK(to_string(sp("X1^2*X2", 2, 8).derive(1)) == "2*X1*X2");
    CHECK(to_string(sp("X1", 2, 8).derive(2)) == "0");
    CHECK(to_string(sp("X1^3", 1, 8).derive(MultiIndex({1, 1}))) == "6*X1");

    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        S s = random_series<GR>(rng, 2, 8, 6);
        S d12 = s.derive(1).derive(2);
        S d21 = s.derive(2).derive(1);
        CHECK(equal_to_order(d12, d21, d12.order()));
    }
}

TEST_CASE("derive drops the reliable order by one") {
    S s = sp("X1^2", 1, 5);
    CHECK(s.derive(1).order() == 4);
}

TEST_CASE("ring axioms on random series (exact mode)") {
    Rng rng(42);
    for (int t = 0; t < 20; ++t) {
        S a = random_series<GR>(rng, 2, 7, 4);
        S b = random_series<GR>(rng, 2, 7, 4);
        S c = random_series<GR>(rng, 2, 7, 4);
        CHECK(equal_to_order((a * b) * c, a * (b * c), 7));
        CHECK(equal_to_order(a * (b + c), a * b + a * c, 7));
        CHECK(equal_to_order(a + b, b + a, 7));
    }
}

TEST_CASE("divide_exact: examples") {
    auto r = divide_exact(sp("X1^2+X1^3", 1, 8), sp("X1", 1, 8));
    REQUIRE(r.ok);
    CHECK(to_string(r.quotient) == "X1 + X1^2");
    CHECK(r.quotient.order() == 7);

    auto bad = divide_exact(sp("X1", 1, 8), sp("X1^2", 1, 8));
    CHECK(!bad.ok);
    CHECK(bad.obstructed_degree == -1);
}

TEST_CASE("divide_exact: multivariate obstruction witness") {
    // X1^2 + X2^3 is not divisible by X1; obstruction at quotient degree 2.
    auto bad = divide_exact(sp("X1^2 + X2^3", 2, 8), sp("X1", 2, 8));
    CHECK(!bad.ok);
    CHECK(bad.obstructed_degree == 2);
    CHECK(to_string(bad.residual, make_names("X", 2)) == "X2^3");
}

TEST_CASE("divide_exact inverts mul on random data") {
    Rng rng(5);
    for (int t = 0; t < 25; ++t) {
        S a = random_series<GR>(rng, 2, 8, 4);
        S b = random_series<GR>(rng, 2, 8, 4, 0, true, 0.9);
        if (b.is_zero()) continue;
        auto r = divide_exact(a * b, b);
        REQUIRE(r.ok);
        CHECK(equal_to_order(r.quotient, a, r.quotient.order()));
    }
}

TEST_CASE("nth_root_unit: binomial series oracle for sqrt(1+X)") {
    const int q = 10;
    auto r = nth_root_unit(sp("1+X1", 1, q), 2);
    REQUIRE(r.ok());
    // Frozen leading values, computed from C(1/2, k).
    CHECK(to_string(r.root.truncated(3)) == "1 + 1/2*X1 - 1/8*X1^2 + 1/16*X1^3");
    mpq_class half(1, 2);
    for (int k = 0; k <= q; ++k) {
        Exponents e(1);
        e.e[0] = static_cast<unsigned>(k);
        CHECK(r.root.coeff(e) == GR(binomial_series_coeff(half, static_cast<unsigned>(k))));
    }
}

TEST_CASE("nth_root_unit: trivial and derived examples") {
    auto one = nth_root_unit(S::constant(1, GR(1), 6), 5);
    REQUIRE(one.ok());
    CHECK(to_string(one.root) == "1");

    auto r = nth_root_unit(sp("4+8*X1", 1, 8), 2);
    REQUIRE(r.ok());
    CHECK(to_string(r.root.truncated(2)) == "2 + 2*X1 - X1^2");
    CHECK(equal_to_order(r.root * r.root, sp("4+8*X1", 1, 8), 8));
}

TEST_CASE("nth_root_unit: random units, n <= 6") {
    Rng rng(17);
    for (unsigned n = 2; n <= 6; ++n) {
        for (int t = 0; t < 6; ++t) {
            S u = random_series<GR>(rng, 2, 6, 4, 1);
            S s = S::constant(2, GR(1), 6) + u;  // unit with constant term 1
            auto r = nth_root_unit(s, n);
            REQUIRE(r.ok());
            CHECK(equal_to_order(r.root.pow(n), s, 6));
        }
    }
}

TEST_CASE("nth_root_unit: error cases") {
    CHECK(nth_root_unit(sp("X1", 1, 6), 2).status == RootStatus::ConstantTermZero);
    CHECK(nth_root_unit(sp("2+X1", 1, 6), 2).status == RootStatus::RootNotInField);
}

TEST_CASE("series_nth_root: general valuation") {
    auto r = series_nth_root(sp("X1^2+X1^3", 1, 12), 2);
    REQUIRE(r.ok());
    CHECK(equal_to_order(r.root * r.root, sp("X1^2+X1^3", 1, 12), r.root.order() + 1));

    CHECK(series_nth_root(sp("X1", 1, 8), 2).status == RootStatus::ValuationNotDivisible);
    CHECK(series_nth_root(sp("X1*X2", 2, 8), 2).status == RootStatus::LowestFormNotPower);
    auto bad = series_nth_root(sp("X1^2+X2^3", 2, 8), 2);
    CHECK(bad.status == RootStatus::NotDivisible);
}

TEST_CASE("valuation: examples and sentinel") {
    CHECK(sp("X1^2+X2^3", 2, 8).valuation() == 2);
    S z = S::zero(1, 8);
    CHECK(z.valuation() == 9);
}

TEST_CASE("exact gaussian arithmetic is exact") {
    Rng rng(23);
    for (int t = 0; t < 200; ++t) {
        GR a = random_gaussian(rng);
        GR b = random_gaussian(rng);
        CHECK((a + b) - b == a);
        if (!b.is_zero()) CHECK((a * b) / b == a);
    }
}

TEST_CASE("gaussian roots") {
    GR z(mpq_class(3, 2), mpq_class(-5, 7));
    auto s = gaussian_sqrt(pow(z, 2));
    REQUIRE(s.has_value());
    CHECK((*s == z || *s == -z));

    auto c = gaussian_nth_root(pow(z, 3), 3);
    REQUIRE(c.has_value());
    CHECK(pow(*c, 3) == pow(z, 3));

    CHECK(!gaussian_sqrt(GR(2)).has_value());
    CHECK(rational_nth_root(mpq_class(27, 8), 3) == mpq_class(3, 2));
    CHECK(!rational_nth_root(mpq_class(2), 2).has_value());
}
