#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "invlift/groups.hpp"
#include "oracles.hpp"

using namespace invlift;
using namespace invlift::testing;
using GR = GaussianRational;
using S = Series<GR>;

namespace {
Poly<GR> up(const std::string& text, unsigned n) { return parse_poly<GR>(text, make_names("u", n)); }
S xs(const std::string& text, unsigned p, int order) {
    return parse_series<GR>(text, make_names("X", p), order);
}
}  // namespace

TEST_CASE("cyclic systems") {
    auto c2 = make_cyclic<GR>(2);
    CHECK(to_string(c2.sigma[0], "u") == "u1^2");
    CHECK(to_string(c2.jac, "u") == "2*u1");
    CHECK(to_string(c2.delta_w, "W") == "W1");
    // J | delta o sigma with quotient z/n
    CHECK(to_string(c2.jac_complement, "u") == "1/2*u1");

    auto c3 = make_cyclic<GR>(3);
    CHECK(to_string(c3.delta_w, "W") == "W1");
    CHECK(to_string(c3.jac_complement, "u") == "1/3*u1");
    CHECK(c3.group.elements.size() == 1);  // only the identity is Q(i)-representable
    CHECK(!c3.elements_complete);

    auto c4 = make_cyclic<GR>(4);
    CHECK(c4.group.elements.size() == 4);
    CHECK(c4.elements_complete);

    CHECK_THROWS_AS(make_cyclic<GR>(1), std::invalid_argument);
}

TEST_CASE("cyclic invariance: sigma(-z) = sigma(z)") {
    auto c2 = make_cyclic<GR>(2);
    CHECK(is_invariant(c2, up("u1^2", 1)));
    CHECK(is_invariant(c2, up("u1^4 + 3*u1^2", 1)));
    CHECK(!is_invariant(c2, up("u1^3", 1)));
}

TEST_CASE("dihedral systems") {
    auto d3 = make_dihedral<GR>(3);
    CHECK(to_string(d3.sigma[0], "u") == "1/2*u2^2 + 1/2*u1^2");
    CHECK(to_string(d3.sigma[1], "u") == "-u1*u2^2 + 1/3*u1^3");
    CHECK(to_string(d3.delta_w, "W") == "-9*W2^2 + 8*W1^3");
    CHECK(d3.degrees == std::vector<unsigned>{2, 3});
    // Delta = J^2 here, so the certified quotient equals J itself.
    CHECK(d3.jac_complement == d3.jac);

    auto d4 = make_dihedral<GR>(4);
    CHECK(to_string(d4.sigma[1], "u") == "1/4*u2^4 - 3/2*u1^2*u2^2 + 1/4*u1^4");
    CHECK(to_string(d4.delta_w, "W") == "-16*W2^2 + 16*W1^4");

    // sigma_1 invariant under every stored orthogonal element
    for (const auto& sys : {d3, d4})
        CHECK(is_invariant(sys, sys.sigma[0]));
}

TEST_CASE("products") {
    auto c2 = make_cyclic<GR>(2);
    auto prod = make_product<GR>({c2, c2});
    CHECK(prod.n == 2);
    CHECK(prod.m == 2);
    CHECK(to_string(prod.sigma[0], "u") == "u1^2");
    CHECK(to_string(prod.sigma[1], "u") == "u2^2");
    CHECK(to_string(prod.delta_w, "W") == "W2*W1");

    auto single = make_product<GR>({c2});
    CHECK(single.m == 1);
    CHECK(to_string(single.delta_w, "W") == "W1");

    auto mixed = make_product<GR>({c2, make_dihedral<GR>(3)});
    CHECK(mixed.n == 3);
    CHECK(mixed.m == 3);
    CHECK(mixed.blocks.size() == 2);
    CHECK(mixed.blocks[1].u_off == 1);
    CHECK(mixed.blocks[1].w_off == 1);
}

TEST_CASE("choose_invariant_coordinates") {
    auto d3 = make_dihedral<GR>(3);
    // direct-substitution oracle: 8 f1^3 - 9 f2^2 = 6 X^8 - 9 X^10
    auto ch = choose_invariant_coordinates(d3, {xs("1/2*X1^2", 1, 14), xs("1/3*X1^3 - X1^5", 1, 14)});
    CHECK(ch.found);
    CHECK(ch.q == 8);

    auto ch6 = choose_invariant_coordinates(d3, {xs("1/2*X1^2", 1, 12), xs("0", 1, 12)});
    CHECK(ch6.found);
    CHECK(ch6.q == 6);

    auto c2 = make_cyclic<GR>(2);
    CHECK(!choose_invariant_coordinates(c2, {S::zero(1, 10)}).found);

    auto p22 = make_product<GR>({c2, c2});
    CHECK(!choose_invariant_coordinates(p22, {xs("X1^2", 1, 10), S::zero(1, 10)}).found);
}

TEST_CASE("rewrite_invariant: examples") {
    auto c3 = make_cyclic<GR>(3);
    CHECK(to_string(rewrite_invariant(c3, up("u1^6", 1)), "W") == "W1^2");

    auto d3 = make_dihedral<GR>(3);
    CHECK(to_string(rewrite_invariant(d3, up("1/4*(u1^2+u2^2)^2", 2)), "W") == "W1^2");
    // (Im z^3)^2 rewritten is the discriminant
    Poly<GR> imz3 = up("3*u1^2*u2 - u2^3", 2);
    CHECK(rewrite_invariant(d3, imz3 * imz3) == d3.delta_w);

    CHECK_THROWS_AS(rewrite_invariant(make_cyclic<GR>(2), up("u1^3", 1)), NotInvariantError);
}

TEST_CASE("rewrite_invariant is a left inverse of composition with sigma") {
    Rng rng(31);
    auto d3 = make_dihedral<GR>(3);
    std::vector<Poly<GR>> sig(d3.sigma.begin(), d3.sigma.end());
    for (int t = 0; t < 10; ++t) {
        Poly<GR> q = random_poly<GR>(rng, 2, 3);
        Poly<GR> p = q.compose(sig);
        CHECK(rewrite_invariant(d3, p) == q);
    }
    auto p22 = make_product<GR>({make_cyclic<GR>(2), make_cyclic<GR>(2)});
    std::vector<Poly<GR>> sig2(p22.sigma.begin(), p22.sigma.end());
    for (int t = 0; t < 10; ++t) {
        Poly<GR> q = random_poly<GR>(rng, 2, 3);
        CHECK(rewrite_invariant(p22, q.compose(sig2)) == q);
    }
}

TEST_CASE("point_preimage") {
    auto c2 = make_cyclic<GR>(2);
    auto p = point_preimage(c2, {GR(4)});
    REQUIRE(p.ok());
    CHECK(p.point[0] == GR(2));
    CHECK(point_preimage(c2, {GR(0)}).status == PreimageStatus::OnDiscriminant);

    auto d3 = make_dihedral<GR>(3);
    // z = sigma(1,0), a mirror point: the solver still produces an orbit point
    std::vector<GR> z = {GR(mpq_class(1, 2)), GR(mpq_class(1, 3))};
    auto q = point_preimage(d3, z);
    REQUIRE(q.ok());
    for (unsigned j = 0; j < 2; ++j) CHECK(d3.sigma[j].eval(q.point) == z[j]);

    // random rational points: sigma(preimage(sigma(v))) = sigma(v) exactly
    Rng rng(17);
    for (int t = 0; t < 15; ++t) {
        std::vector<GR> v = {GR(random_rational(rng)), GR(random_rational(rng))};
        std::vector<GR> img = {d3.sigma[0].eval(v), d3.sigma[1].eval(v)};
        if (img[0].is_zero() && img[1].is_zero()) continue;
        auto r = point_preimage(d3, img);
        REQUIRE(r.ok());
        for (unsigned j = 0; j < 2; ++j) CHECK(d3.sigma[j].eval(r.point) == img[j]);
    }

    // products solve componentwise; custom systems are rejected
    auto p22 = make_product<GR>({c2, c2});
    auto pr = point_preimage(p22, {GR(4), GR(9)});
    REQUIRE(pr.ok());
    CHECK(pr.point[0] == GR(2));
    CHECK(pr.point[1] == GR(3));
}

TEST_CASE("orbit_match") {
    auto c2 = make_cyclic<GR>(2);
    S f = xs("X1 + X1^2", 1, 10);
    CHECK(orbit_match(c2, {f}, {-f}).found);
    CHECK(orbit_match(c2, {f}, {f}).found);
    CHECK(!orbit_match(c2, {f}, {xs("X1 - X1^2", 1, 10)}).found);

    auto d3 = make_dihedral<GR>(3);
    std::vector<S> F1 = {xs("X1 + X1^3", 1, 10), xs("2*X1^2", 1, 10)};
    std::vector<S> refl = {F1[0], -F1[1]};  // (x, y) -> (x, -y) is in D_l
    CHECK(orbit_match(d3, F1, refl).found);
    CHECK(!orbit_match(d3, F1, {F1[0], F1[0]}).found);

    // float mode: an irrational rotation is recovered
    auto d3f = make_dihedral<ApproxComplex>(3);
    std::vector<Series<ApproxComplex>> G1 = {
        parse_series<ApproxComplex>("X1 + X1^2", {"X1"}, 8),
        parse_series<ApproxComplex>("X1 - 2*X1^2", {"X1"}, 8)};
    const auto& rot = d3f.group.elements[2];
    std::vector<Series<ApproxComplex>> G2;
    for (unsigned a = 0; a < 2; ++a) {
        Series<ApproxComplex> img(1, 8);
        for (unsigned b = 0; b < 2; ++b) img += G1[b] * rot[a][b];
        G2.push_back(img);
    }
    CHECK(orbit_match(d3f, G1, G2).found);
}

TEST_CASE("group verification rejects bad input") {
    // {1, 2} is not closed (2*2 = 4 missing), and 2 has infinite order
    GroupRep<GR> g;
    g.n = 1;
    g.elements = {{{GR(1)}}, {{GR(2)}}};
    CHECK_THROWS_AS(g.verify(), GroupConstructionError);
}

TEST_CASE("custom systems") {
    // C2 supplied explicitly
    std::vector<Matrix<GR>> elems = {{{GR(1)}}, {{GR(-1)}}};
    auto sys = make_custom<GR>(1, elems, {up("u1^2", 1)}, parse_poly<GR>("W1", {"W1"}));
    CHECK(sys.tag == CatalogTag::Custom);
    CHECK(to_string(sys.jac, "u") == "2*u1");
    CHECK(to_string(rewrite_invariant(sys, up("u1^4", 1)), "W") == "W1^2");
    CHECK(point_preimage(sys, {GR(4)}).status == PreimageStatus::CustomUnsupported);

    // non-invariant generator is rejected
    CHECK_THROWS_AS(make_custom<GR>(1, elems, {up("u1", 1)}, parse_poly<GR>("W1", {"W1"})),
                    GroupConstructionError);
}

TEST_CASE("delta valuation example: dihedral f = (X^2/2, 0)") {
    auto d3 = make_dihedral<GR>(3);
    S d = delta_on_f(d3, {xs("1/2*X1^2", 1, 12), S::zero(1, 12)});
    CHECK(d.valuation() == 6);
    CHECK(to_string(d) == "X1^6");
}
