#include <doctest.h>

#include <numbers>

#include "common.hpp"
#include "skewflow/error.hpp"
#include "skewflow/trigpoly.hpp"

using namespace skewflow;

TEST_CASE("cosine and sine evaluate as expected")
{
    const TrigPoly c = TrigPoly::cosine({1, 2}, 3.0);
    const TrigPoly s = TrigPoly::sine({1, 0}, 2.0);
    CHECK(c.size() == 2);
    CHECK(c.is_real());
    CHECK(c.eval({0.1, 0.2}) == doctest::Approx(3.0 * std::cos(2 * std::numbers::pi * 0.5)));
    CHECK(s.eval({0.125, 0.7}) == doctest::Approx(2.0 * std::sin(std::numbers::pi / 4)));
    CHECK(c.degree() == 2);
    CHECK(c.mean() == 0.0);
    CHECK(TrigPoly::constant(2, 1.5).mean() == 1.5);
}

TEST_CASE("addition prunes cancelled terms")
{
    TrigPoly a = TrigPoly::cosine({1, 1});
    a -= TrigPoly::cosine({1, 1});
    CHECK(a.empty());
    TrigPoly b = TrigPoly::cosine({0, 1}) * Coeff(2.0);
    CHECK(b.coeff({0, 1}) == Coeff(1.0));
    CHECK_THROWS_AS(TrigPoly::cosine({1}) + TrigPoly::cosine({1, 1}), Error);
}

TEST_CASE("non-real polynomials are detected")
{
    TrigPoly f(1);
    f.add_term({1}, Coeff(1.0));
    CHECK_FALSE(f.is_real());
    CHECK_THROWS_AS(f.eval({0.1}), Error);
    CHECK(std::abs(f.eval_complex({0.25}) - Coeff(0.0, 1.0)) < 1e-15);
}

TEST_CASE("norms")
{
    const TrigPoly f = TrigPoly::cosine({1, -2}, 0.5);
    CHECK(f.l1_norm() == doctest::Approx(0.5));
    CHECK(f.lipschitz() == doctest::Approx(2 * std::numbers::pi * 3 * 0.5));
    CHECK(f.directional_weight(1) == doctest::Approx(1.0));
}

TEST_CASE("composition with T agrees with pointwise evaluation")
{
    const SkewTranslation t = fixtures::t3();
    const TrigPoly f = fixtures::f3();
    const TrigPoly g = compose_with_T(f, t);
    const TrigPoly g7 = compose_with_power(f, t, 7);
    for (const Point& x : {Point{0.1, 0.2, 0.3}, Point{0.77, 0.01, 0.5}}) {
        CHECK(g.eval(x) == doctest::Approx(f.eval(t.apply(x))).epsilon(1e-13));
        CHECK(g7.eval(x) == doctest::Approx(f.eval(t.iterate(x, 7))).epsilon(1e-12));
    }
}

TEST_CASE("frequencies push forward along l -> A l")
{
    const IntMatrix a = fixtures::t3_matrix();
    Frequency l{0, 0, 1};
    for (std::int64_t k = 1; k <= 10; ++k) {
        l = push_forward(a, l);
        CHECK(l == Frequency{k * k + k, 2 * k, 1});
    }
    const IntMatrix big{{1, std::int64_t(1) << 62}, {0, 1}};
    CHECK_THROWS_AS(push_forward(big, Frequency{0, 4}), Error);
}

TEST_CASE("Birkhoff polynomial matches numeric sum")
{
    const SkewTranslation t = fixtures::t3();
    const TrigPoly f = fixtures::f3();
    const TrigPoly s = birkhoff_poly(f, t, 20);
    const Point x{0.3, 0.6, 0.9};
    CHECK(s.eval(x) == doctest::Approx(birkhoff_sum_numeric(t, f, x, 20)).epsilon(1e-11));
    CHECK_THROWS_AS(birkhoff_poly(f, t, 20, 10), Error);
}

TEST_CASE("decomposition by last nonzero coordinate")
{
    const TrigPoly f = fixtures::f3() + TrigPoly::cosine({1, 0, 0}) + TrigPoly::constant(3, 2.0);
    const Decomposition dec = decompose(f, 1);
    CHECK(dec.base.dim() == 1);
    CHECK(dec.base.mean() == 2.0);
    CHECK(dec.base.coeff({1}) == Coeff(0.5));
    REQUIRE(dec.perps.size() == 2);
    CHECK(dec.perps[0].dim() == 2);
    CHECK(dec.perps[0].coeff({1, 1}) == fixtures::f3().coeff({1, 1, 0}));
    CHECK(dec.perps[1].dim() == 3);
    CHECK(dec.perps[1].size() == 4);
    CHECK(lift(dec.base, 3) + lift(dec.perps[0], 3) + dec.perps[1] == f);
}

TEST_CASE("restriction requires fiber-constant input")
{
    const TrigPoly f = TrigPoly::cosine({1, 2, 0});
    CHECK(depends_only_on_first(f, 2));
    CHECK(restrict_to(f, 2) == TrigPoly::cosine({1, 2}));
    CHECK_THROWS_AS(restrict_to(fixtures::f3(), 2), Error);
}

TEST_CASE("derivatives")
{
    const TrigPoly f = TrigPoly::sine({2, 3}, 1.0);
    const TrigPoly dx = partial_derivative(f, 0);
    // d/dx sin(2 pi (2x + 3y)) = 4 pi cos(...)
    CHECK(dx.eval({0.1, 0.2}) == doctest::Approx(4 * std::numbers::pi * std::cos(2 * std::numbers::pi * 0.8)));
    const TrigPoly dv = directional_derivative(f, {1.0, -1.0});
    CHECK(dv.eval({0.1, 0.2}) == doctest::Approx(-2 * std::numbers::pi * std::cos(2 * std::numbers::pi * 0.8)));
}

TEST_CASE("JSON round trip")
{
    const TrigPoly f = fixtures::f3() + TrigPoly::constant(3, 1.25);
    const auto j = to_json(f);
    CHECK(trigpoly_from_json(j) == f);

    const auto parsed = trigpoly_from_json(nlohmann::json::parse(
        R"({"dim": 2, "terms": [{"l": [0, 1], "re": "0.5"}, {"l": [0, -1], "re": 0.25}, {"l": [0, -1], "re": 0.25}]})"));
    CHECK(parsed.coeff({0, -1}) == Coeff(0.5));
    CHECK(parsed.is_real());
    CHECK_THROWS_AS(trigpoly_from_json(nlohmann::json::parse(R"({"dim": 2, "terms": [{"l": [1]}]})")), Error);
}
