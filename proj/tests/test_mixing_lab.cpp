#include <doctest.h>

#include "common.hpp"
#include "skewflow/cohomology.hpp"
#include "skewflow/error.hpp"
#include "skewflow/mixing_lab.hpp"

using namespace skewflow;

namespace {

SuspensionFlow heisenberg_flow(double amp)
{
    return {fixtures::heisenberg2(), RoofFunction(TrigPoly::constant(2, 1.0) + TrigPoly::cosine({0, 1}, amp))};
}

Cube cube(std::vector<std::pair<double, double>> box, double q1, double q2)
{
    Cube c;
    c.box = std::move(box);
    c.q1 = q1;
    c.q2 = q2;
    return c;
}

} // namespace

TEST_CASE("cube validation and measure")
{
    const SuspensionFlow flow = heisenberg_flow(0.4);
    const Cube c = cube({{0.1, 0.3}, {0.5, 0.9}}, 0.1, 0.4);
    CHECK(c.base_volume() == doctest::Approx(0.08));
    CHECK(cube_measure(c, flow) == doctest::Approx(0.08 * 0.3));
    CHECK_THROWS_AS(validate_cube(cube({{0.3, 0.1}, {0.5, 0.9}}, 0.1, 0.4), flow), Error);
    CHECK_THROWS_AS(validate_cube(cube({{0.1, 0.3}, {0.5, 0.9}}, 0.1, 0.9), flow), Error);
}

TEST_CASE("correlation at t = 0 is the measure of the intersection")
{
    const SuspensionFlow flow = heisenberg_flow(0.4);
    const Cube q = cube({{0.1, 0.6}, {0.2, 0.7}}, 0.1, 0.4);
    const Cube r = cube({{0.3, 0.8}, {0.4, 0.9}}, 0.2, 0.5);
    const CorrelationCurve curve = correlation_curve(flow, q, r, {0.0}, 200000, 9, 2);
    // overlap [0.3,0.6] x [0.4,0.7] x [0.2,0.4]
    CHECK(curve.points[0].estimate == doctest::Approx(0.3 * 0.3 * 0.2).epsilon(0.03));
    CHECK(curve.measure_q == doctest::Approx(0.25 * 0.3));
}

TEST_CASE("correlation is reproducible and thread-independent")
{
    const SuspensionFlow flow = heisenberg_flow(0.4);
    const Cube q = cube({{0.1, 0.6}, {0.2, 0.7}}, 0.1, 0.4);
    const Cube r = cube({{0.3, 0.8}, {0.4, 0.9}}, 0.2, 0.5);
    const auto a = correlation_curve(flow, q, r, {5.0, 10.0, 20.0}, 50000, 3, 1);
    const auto b = correlation_curve(flow, q, r, {20.0, 5.0, 10.0}, 50000, 3, 4);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(a.points[i].estimate == b.points[(i + 1) % 3].estimate);
    }
}

TEST_CASE("small cubes switch to direct sampling")
{
    const SuspensionFlow flow = heisenberg_flow(0.4);
    const Cube tiny = cube({{0.1, 0.15}, {0.2, 0.25}}, 0.1, 0.2);
    const auto curve = correlation_curve(flow, tiny, tiny, {0.0}, 20000, 1, 1);
    CHECK(curve.direct_sampling);
    CHECK(curve.points[0].estimate == doctest::Approx(cube_measure(tiny, flow)).epsilon(1e-9));
}

TEST_CASE("growth in measure separates coboundaries")
{
    const SkewTranslation t = fixtures::heisenberg2();
    const TrigPoly psi = TrigPoly::cosine({0, 1}, 0.5);
    const auto rows = growth_in_measure(t, psi, 1.0, {16, 256, 4096}, 20000, 4, 2);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].fraction > rows[1].fraction);
    CHECK(rows[1].fraction > rows[2].fraction);
    const TrigPoly cob = coboundary_apply(TrigPoly::cosine({0, 1}, 0.25), t);
    const auto flat = growth_in_measure(t, cob, 1.0, {4096}, 20000, 4, 2);
    CHECK(flat[0].fraction == 1.0);
    CHECK_THROWS_AS(growth_in_measure(t, TrigPoly::cosine({1, 0}), 1.0, {4}, 10, 1), Error);
}

TEST_CASE("decoupling statistic and the cocycle identity")
{
    const SkewTranslation t = fixtures::t3();
    const TrigPoly psi = TrigPoly::cosine({0, 0, 1}, 0.5) + TrigPoly::cosine({1, 1, 1}, 0.3);
    double prev = 2.0;
    for (std::int64_t big_n : {100, 1000, 10000}) {
        const DecouplingResult r = decoupling_stat(t, psi, 4096, big_n, 2.0, 4000, 8, 2, 200);
        CHECK(r.max_identity_gap < 1e-8);
        CHECK(r.checked == 200);
        CHECK(r.fraction <= prev + 0.05);
        prev = r.fraction;
    }
}

TEST_CASE("stretch agrees with direct evaluation")
{
    const SkewTranslation t = fixtures::heisenberg2();
    const TrigPoly psi = TrigPoly::cosine({0, 1}, 0.5);
    const StretchResult r = stretch(t, psi, {0.3}, 0.1, 0.2, 50);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i <= 20000; ++i) {
        const double s = 0.1 + 0.1 * i / 20000.0;
        const double v = birkhoff_sum_numeric(t, psi, {0.3, s}, 50);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(r.value == doctest::Approx(hi - lo).epsilon(1e-3));
    CHECK(r.value > 0.0);
    const StretchResult zero = stretch(t, TrigPoly(2), {0.3}, 0.1, 0.2, 50);
    CHECK(zero.value == 0.0);
}

TEST_CASE("shear tangent matches finite differences")
{
    const SkewTranslation t = fixtures::t3();
    const TrigPoly roof = TrigPoly::constant(3, 1.5) + TrigPoly::cosine({0, 1, 0}, 0.3) +
                          TrigPoly::cosine({1, 0, 0}, 0.2);
    const SuspensionFlow flow(t, RoofFunction(roof));
    const ShearVector sv = t.shear_vector();
    const SuspensionPoint p{{0.2, 0.4, 0.6}, 0.3};
    const double h = 1e-6;
    int compared = 0;
    for (double time : {3.0, 17.5, 60.0}) {
        const ShearTangent an = shear_tangent(flow, p, sv, time, 0.0);
        // skip points where n_t jumps inside the stencil
        bool constant = false;
        wrap_displacement(flow, p, sv, time, -h, 2 * h, 2, &constant);
        if (!constant)
            continue;
        const auto fd = shear_tangent_fd(flow, p, sv, time, 0.0, h);
        double norm = 0.0;
        for (double v : an.tangent)
            norm = std::max(norm, std::fabs(v));
        for (std::size_t i = 0; i < fd.size(); ++i)
            CHECK(std::fabs(fd[i] - an.tangent[i]) <= h * (1.0 + norm));
        ++compared;
    }
    CHECK(compared >= 2);
}

TEST_CASE("unit wrapping")
{
    const SkewTranslation t = fixtures::t3();
    const SuspensionFlow flow(t, RoofFunction(TrigPoly::constant(3, 1.5) + TrigPoly::cosine({1, 0, 0}, 0.4)));
    const ShearVector sv = t.shear_vector();
    const SuspensionPoint p{{0.2, 0.4, 0.6}, 0.3};
    const double time = 80.0;
    const std::int64_t n = flow.n_t(p.x, p.r, time);
    bool constant = false;
    const double disp =
        wrap_displacement(flow, p, sv, time, 0.0, 1.0 / static_cast<double>(n * sv.a), 4096, &constant);
    CHECK(constant);
    CHECK(disp == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(wrap_displacement(SuspensionFlow(t, RoofFunction(TrigPoly::constant(3, 1.5) +
                                                                      TrigPoly::cosine({0, 0, 1}, 0.4))),
                                      p, sv, time, 0.0, 0.1, 4),
                    Error);
}
