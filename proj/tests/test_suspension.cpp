#include <doctest.h>

#include "common.hpp"
#include "skewflow/error.hpp"
#include "skewflow/suspension.hpp"

using namespace skewflow;

namespace {

SuspensionFlow heisenberg_flow()
{
    return {fixtures::heisenberg2(), RoofFunction(TrigPoly::constant(2, 1.0) + TrigPoly::cosine({0, 1}, 0.4))};
}

} // namespace

TEST_CASE("roof certification")
{
    const RoofFunction roof(TrigPoly::constant(2, 1.0) + TrigPoly::cosine({0, 1}, 0.4));
    CHECK(roof.certified_min() <= 0.6);
    CHECK(roof.certified_min() > 0.5);
    CHECK(roof.certified_max() >= 1.4);
    CHECK(roof.bounds().points_per_axis == 64);
    try {
        RoofFunction(TrigPoly::cosine({1, 0}));
        FAIL("expected NonPositiveRoof");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NonPositiveRoof);
    }
}

TEST_CASE("flow matches the high-precision oracle")
{
    const SuspensionFlow flow = heisenberg_flow();
    const SuspensionPoint p{{0.3, 0.7}, 0.2};
    // tools/oracles.py
    struct Case {
        double t, x, y, r;
        std::int64_t n;
    };
    for (const Case& c : {Case{50.5, 0.59646455628166211715, 0.80531254105155675171, 0.6283407925553098684, 49},
                          Case{-37.25, 0.38831175456857475181, 0.98162284965483692645, 0.0079726255680327946853, -36},
                          Case{0.79, 0.71421356237309513437, 0.57735026918962578657, 0.11360679774997912242, 1}}) {
        const FlowResult res = flow.flow_with_count(p, c.t);
        CHECK(res.n == c.n);
        CHECK(res.point.x[0] == doctest::Approx(c.x).epsilon(1e-12));
        CHECK(res.point.x[1] == doctest::Approx(c.y).epsilon(1e-12));
        CHECK(res.point.r == doctest::Approx(c.r).epsilon(1e-10));
        CHECK(flow.n_t(p.x, p.r, c.t) == c.n);
    }
}

TEST_CASE("group property")
{
    const SuspensionFlow flow = heisenberg_flow();
    const SuspensionPoint p{{0.12, 0.34}, 0.5};
    for (auto [s, t] : {std::pair{3.5, -7.25}, std::pair{-100.0, 250.5}, std::pair{999.0, -998.0}}) {
        const SuspensionPoint a = flow.flow(p, s + t);
        const SuspensionPoint b = flow.flow(flow.flow(p, s), t);
        CHECK(suspension_distance(flow, a, b) < 1e-9);
    }
    const SuspensionPoint back = flow.flow(flow.flow(p, 123.4), -123.4);
    CHECK(suspension_distance(flow, back, p) < 1e-9);
}

TEST_CASE("glued representatives are at distance zero")
{
    const SuspensionFlow flow = heisenberg_flow();
    const Point x{0.25, 0.5};
    const SuspensionPoint top{x, flow.roof_at(x) - 1e-13};
    const SuspensionPoint bottom{flow.base().apply(x), 0.0};
    CHECK(suspension_distance(flow, top, bottom) < 1e-9);
}

TEST_CASE("invariant sampler")
{
    const SuspensionFlow flow = heisenberg_flow();
    const auto pts = flow.sample_invariant(11, 20000, 3);
    REQUIRE(pts.size() == 20000);
    double mean_r = 0.0;
    for (const auto& p : pts) {
        CHECK_FALSE((p.r < 0.0 || p.r >= flow.roof_at(p.x)));
        mean_r += p.r;
    }
    mean_r /= static_cast<double>(pts.size());
    // E[r] = int Psi^2 / (2 int Psi) = (1 + 0.08) / 2
    CHECK(mean_r == doctest::Approx(0.54).epsilon(0.02));
    CHECK(flow.sample_invariant(11, 20000, 1)[777].r == pts[777].r);
}

TEST_CASE("factor consistency")
{
    const SkewTranslation t = fixtures::t3();
    const SuspensionFlow flow(t, RoofFunction(TrigPoly::constant(3, 1.5) + TrigPoly::cosine({0, 1, 0}, 0.5)));
    CHECK(factor_consistency(flow, 2, 200, 3) < 1e-9);
    const SuspensionFlow bad(t, RoofFunction(TrigPoly::constant(3, 1.5) + TrigPoly::cosine({0, 0, 1}, 0.5)));
    CHECK_THROWS_AS(factor_consistency(bad, 2, 10, 3), Error);
}
