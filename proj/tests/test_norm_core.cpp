#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>

#include "corpus.hpp"
#include "normfiber/norm.hpp"
#include "normfiber/norm_json.hpp"
#include "normfiber/rng.hpp"
#include "normfiber/sampling.hpp"
#include "normfiber/validation.hpp"

using namespace normfiber;
using namespace normfiber::testing;

TEST_CASE("eval of the basic nodes") {
    CHECK(NormExpr::lp(2.0, 2)->eval({3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-12));

    // ((|1+1|^3 + |1-1|^3)/2)^(1/3) = 4^(1/3)
    CHECK(NormExpr::ep2(3.0)->eval({1.0, 1.0}) ==
          doctest::Approx(std::cbrt(4.0)).epsilon(1e-12));

    const auto cross =
        NormExpr::cross(NormExpr::lp(1.0, 2), {NormExpr::lp_inf(2), NormExpr::lp_inf(2)});
    CHECK(cross->eval({1.0, 2.0, 3.0, 4.0}) == doctest::Approx(6.0).epsilon(1e-12));

    // E_1(x,y) = (|x+y| + |x-y|)/2 = max(|x|,|y|)
    const auto e1 = NormExpr::ep2(1.0);
    Rng rng(7);
    for (int t = 0; t < 1000; ++t) {
        const double x = rng.uniform(-3.0, 3.0), y = rng.uniform(-3.0, 3.0);
        CHECK(e1->eval({x, y}) ==
              doctest::Approx(std::max(std::fabs(x), std::fabs(y))).epsilon(1e-12));
    }

    // E_inf(x,y) = max(|x+y|, |x-y|) = |x| + |y|
    const auto einf = NormExpr::ep2_inf();
    CHECK(einf->eval({1.0, -2.0}) == doctest::Approx(3.0));
}

TEST_CASE("dim") {
    CHECK(NormExpr::lp(2.0, 3)->dim() == 3);
    CHECK(NormExpr::cross(NormExpr::lp(1.0, 2), {NormExpr::lp(2.0, 2), NormExpr::ep2(3.0)})->dim() ==
          4);
    CHECK(NormExpr::etransform(NormExpr::lp(3.0, 2))->dim() == 2);
}

TEST_CASE("modulus_reduce") {
    using cd = std::complex<double>;
    const std::vector<cd> z1 = {cd(3.0, 4.0), cd(0.0, 0.0)};
    CHECK(modulus_reduce(z1) == std::vector<double>{5.0, 0.0});
    const std::vector<cd> z2 = {cd(-1.0, 0.0), cd(2.0, 0.0)};
    CHECK(modulus_reduce(z2) == std::vector<double>{1.0, 2.0});
    const std::vector<cd> z3 = {cd(0.0, 1.0), cd(0.0, -1.0)};
    CHECK(modulus_reduce(z3) == std::vector<double>{1.0, 1.0});
}

TEST_CASE("eval rejects bad input") {
    const auto n = NormExpr::lp(2.0, 3);
    CHECK_THROWS_AS(n->eval({1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(n->eval({1.0, 2.0, std::numeric_limits<double>::quiet_NaN()}),
                    std::invalid_argument);
    CHECK_THROWS_AS(n->eval({1.0, 2.0, std::numeric_limits<double>::infinity()}),
                    std::invalid_argument);
}

TEST_CASE("construction invariants") {
    CHECK_THROWS_AS(NormExpr::lp(0.5, 2), std::invalid_argument);
    CHECK_THROWS_AS(ExtendedP(0.99), std::invalid_argument);
    // outer dimension must match the factor count
    CHECK_THROWS_AS(NormExpr::cross(NormExpr::lp(1.0, 3), {NormExpr::lp(2.0, 2), NormExpr::lp(2.0, 2)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(NormExpr::etransform(NormExpr::lp(3.0, 3)), std::invalid_argument);
    // E_2(2) is constructible and carries the normalization note
    const auto e2 = NormExpr::ep2(2.0);
    CHECK(!e2->note().empty());
}

TEST_CASE("validate: axioms hold for lawful norms") {
    const auto rep = validate(*NormExpr::lp(1.5, 4), 10000, 1e-9, 42);
    CHECK(rep.all_passed);
    for (const auto& axiom : rep.axioms) CHECK(axiom.passed);

    const auto rep2 = validate(*NormExpr::ep2(3.0), 10000, 1e-9, 42);
    CHECK(rep2.all_passed);
}

TEST_CASE("validate covers the whole corpus") {
    for (const auto& [name, n] : corpus()) {
        CAPTURE(name);
        CHECK(validate(*n, 2000, 1e-9, 1).all_passed);
    }
}

TEST_CASE("symmetric_check") {
    CHECK(symmetric_check(*NormExpr::lp(3.0, 4), 64, 1e-9, 5).symmetric);
    CHECK(symmetric_check(*NormExpr::ep2(3.0), 64, 1e-9, 5).symmetric);

    const auto mixed =
        NormExpr::cross(NormExpr::lp(1.0, 2), {NormExpr::lp(2.0, 2), NormExpr::lp_inf(2)});
    const auto rep = symmetric_check(*mixed, 64, 1e-9, 5);
    CHECK(!rep.symmetric);
    CHECK(!rep.witness_perm.empty());  // a permutation exchanging coordinates across factors
    // witness is checkable
    std::vector<double> permuted(4);
    for (int i = 0; i < 4; ++i) permuted[i] = rep.witness_vec[rep.witness_perm[i] - 1];
    CHECK(std::fabs(mixed->eval(rep.witness_vec) - mixed->eval(permuted)) > 1e-9);
}

TEST_CASE("absoluteness on sampled sign flips") {
    Rng rng(11);
    for (const auto& [name, n] : corpus()) {
        CAPTURE(name);
        for (int t = 0; t < 200; ++t) {
            std::vector<double> x = sample_mixture(rng, n->dim());
            std::vector<double> flipped = x;
            for (double& v : flipped)
                if (rng.sign() < 0) v = -v;
            CHECK(n->eval(x) == doctest::Approx(n->eval(flipped)).epsilon(1e-9));
        }
    }
}

TEST_CASE("l_p flattening: l_p of l_p blocks is flat l_p") {
    Rng rng(13);
    for (double p : {1.0, 2.0, 3.0, std::numeric_limits<double>::infinity()}) {
        const auto outer = std::isinf(p) ? NormExpr::lp_inf(3) : NormExpr::lp(p, 3);
        const auto mk = [&](int dim) {
            return std::isinf(p) ? NormExpr::lp_inf(dim) : NormExpr::lp(p, dim);
        };
        const auto nested = NormExpr::cross(outer, {mk(2), mk(1), mk(3)});
        const auto flat = mk(6);
        for (int t = 0; t < 1000; ++t) {
            std::vector<double> x = sample_mixture(rng, 6);
            CHECK(std::fabs(nested->eval(x) - flat->eval(x)) <=
                  1e-9 * std::max(1.0, flat->eval(x)));
        }
    }
}

TEST_CASE("E_p is isometric to l_p^2 through T(x,y) = 2^(-1/p)(x+y, x-y)") {
    Rng rng(17);
    for (double p : {1.0, 1.5, 3.0}) {
        const auto ep = NormExpr::ep2(p);
        const auto lp2 = NormExpr::lp(p, 2);
        const double c = std::pow(2.0, -1.0 / p);
        for (int t = 0; t < 1000; ++t) {
            const double x = rng.uniform(-3.0, 3.0), y = rng.uniform(-3.0, 3.0);
            const double lhs = lp2->eval({c * (x + y), c * (x - y)});
            CHECK(std::fabs(lhs - ep->eval({x, y})) <= 1e-9);
        }
    }
    // p = inf: E_inf coincides with l_1 outright
    const auto einf = NormExpr::ep2_inf();
    const auto l1 = NormExpr::lp(1.0, 2);
    for (int t = 0; t < 1000; ++t) {
        Rng rng2(t);
        const double x = rng2.uniform(-3.0, 3.0), y = rng2.uniform(-3.0, 3.0);
        CHECK(std::fabs(einf->eval({x, y}) - l1->eval({x, y})) <= 1e-9);
    }
}

TEST_CASE("positive homogeneity and subadditivity on samples") {
    Rng rng(19);
    for (const auto& [name, n] : corpus()) {
        CAPTURE(name);
        const int d = n->dim();
        for (int t = 0; t < 200; ++t) {
            std::vector<double> x = sample_mixture(rng, d), y = sample_mixture(rng, d);
            const double c = rng.uniform(0.0, 4.0);
            std::vector<double> cx = x, xy = x;
            for (int i = 0; i < d; ++i) {
                cx[i] *= c;
                xy[i] += y[i];
            }
            CHECK(n->eval(cx) == doctest::Approx(c * n->eval(x)).epsilon(1e-9));
            CHECK(n->eval(xy) <= n->eval(x) + n->eval(y) + 1e-9);
        }
    }
}

TEST_CASE("ETransform of l_p^2 reproduces E_p(2)") {
    Rng rng(23);
    for (double p : {1.0, 1.5, 3.0}) {
        const auto et = NormExpr::etransform(NormExpr::lp(p, 2));
        const auto ep = NormExpr::ep2(p);
        for (int t = 0; t < 500; ++t) {
            const double x = rng.uniform(-2.0, 2.0), y = rng.uniform(-2.0, 2.0);
            CHECK(et->eval({x, y}) == doctest::Approx(ep->eval({x, y})).epsilon(1e-9));
        }
    }
    // normalization: unit vectors have norm 1
    const auto et = NormExpr::etransform(NormExpr::ep2(3.0));
    CHECK(et->eval({1.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(et->eval({0.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("norm spec JSON round trip") {
    for (const auto& [name, n] : corpus()) {
        CAPTURE(name);
        const auto j = norm_to_json(n);
        const auto back = norm_from_json(j);
        REQUIRE(back->dim() == n->dim());
        Rng rng(29);
        for (int t = 0; t < 100; ++t) {
            std::vector<double> x = sample_mixture(rng, n->dim());
            CHECK(back->eval(x) == doctest::Approx(n->eval(x)).epsilon(1e-12));
        }
        // byte-identical re-serialization
        CHECK(norm_to_json(back).dump() == j.dump());
    }
    CHECK_THROWS_AS(norm_from_json(nlohmann::json{{"type", "lp"}, {"p", 0.5}, {"dim", 2}}),
                    ParseError);
    CHECK_THROWS_AS(norm_from_json(nlohmann::json{{"type", "nope"}}), ParseError);
    // "inf" literal
    const auto inf = norm_from_json(nlohmann::json{{"type", "lp"}, {"p", "inf"}, {"dim", 2}});
    CHECK(inf->eval({1.0, 2.0}) == doctest::Approx(2.0));
}

TEST_CASE("restricted and induced norms evaluate through zero padding") {
    const auto n = example4_p3();
    auto base = NormPtr(n);
    RestrictedNorm r(base, {4, 5});
    CHECK(r.eval({1.0, 1.0}) == doctest::Approx(NormExpr::ep2(3.0)->eval({1.0, 1.0})).epsilon(1e-12));
    InducedOuterNorm outer(base, {1, 4});
    CHECK(outer.eval({1.0, 1.0}) ==
          doctest::Approx(n->eval({1.0, 0.0, 0.0, 1.0, 0.0})).epsilon(1e-12));
}
