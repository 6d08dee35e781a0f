#include "skewflow/mixing_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "skewflow/rng.hpp"

namespace skewflow {

namespace {

double wrapped(double diff)
{
    diff -= std::floor(diff + 0.5);
    return diff;
}

void check_perp(const TrigPoly& psi, const SkewTranslation& t)
{
    if (psi.dim() != t.dim())
        fail(ErrorKind::DimensionMismatch, "polynomial and map dimensions differ");
    if (!psi.is_real())
        fail(ErrorKind::InvalidArgument, "polynomial must be real-valued");
    for (const auto& [l, c] : psi.terms())
        if (l.back() == 0)
            fail(ErrorKind::NotInZeroMeanSubspace, "polynomial must have zero average in the last coordinate");
}

void draw_point(StreamRng& rng, std::vector<Word>& u)
{
    for (auto& w : u)
        w = to_fixed(rng.uniform());
}

SuspensionPoint shifted(const SuspensionPoint& p, const ShearVector& sv, double s)
{
    SuspensionPoint q = p;
    for (std::size_t i = 0; i < q.x.size(); ++i) {
        q.x[i] += s * static_cast<double>(sv.v[i]);
        q.x[i] -= std::floor(q.x[i]);
        if (q.x[i] >= 1.0)
            q.x[i] = 0.0;
    }
    return q;
}

void check_fiber_constant(const SuspensionFlow& flow, const ShearVector& sv)
{
    if (!depends_only_on_first(flow.roof().poly(), flow.dim() - 1))
        fail(ErrorKind::RoofNotFiberConstant, "roof must not depend on the last coordinate");
    if (sv.v.size() != flow.dim())
        fail(ErrorKind::DimensionMismatch, "shear vector dimension");
}

} // namespace

double Cube::base_volume() const
{
    double v = 1.0;
    for (const auto& [a, b] : box)
        v *= b - a;
    return v;
}

bool Cube::contains(const Word* x, double r) const noexcept
{
    if (r < q1 || r > q2)
        return false;
    for (std::size_t i = 0; i < box.size(); ++i) {
        const double xi = from_fixed(x[i]);
        if (xi < box[i].first || xi > box[i].second)
            return false;
    }
    return true;
}

void validate_cube(const Cube& c, const SuspensionFlow& flow)
{
    if (c.box.size() != flow.dim())
        fail(ErrorKind::EmptyCube, "cube dimension differs from the base");
    for (const auto& [a, b] : c.box)
        if (!(a >= 0.0 && a < b && b < 1.0))
            fail(ErrorKind::EmptyCube, "base intervals must satisfy 0 <= w < w' < 1");
    if (!(c.q1 >= 0.0 && c.q1 < c.q2))
        fail(ErrorKind::EmptyCube, "height interval must satisfy 0 <= q1 < q2");
    if (!(c.q2 < flow.roof().certified_min()))
        fail(ErrorKind::EmptyCube, "cube height must stay below the certified roof minimum");
}

double cube_measure(const Cube& c, const SuspensionFlow& flow)
{
    validate_cube(c, flow);
    return c.base_volume() * (c.q2 - c.q1) / flow.mean_roof();
}

CorrelationCurve correlation_curve(const SuspensionFlow& flow, const Cube& q, const Cube& r,
                                   const std::vector<double>& t_grid, std::size_t samples, std::uint64_t seed,
                                   unsigned threads)
{
    if (samples == 0 || t_grid.empty())
        fail(ErrorKind::InvalidArgument, "need samples and a nonempty time grid");
    CorrelationCurve curve;
    curve.measure_r = cube_measure(r, flow);
    curve.measure_q = cube_measure(q, flow);
    curve.direct_sampling = curve.measure_r < 0.01;

    std::vector<std::size_t> order(t_grid.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t_grid[a] < t_grid[b]; });

    const std::size_t d = flow.dim();
    const std::size_t nt = t_grid.size();
    std::vector<std::size_t> hits(chunk_count(samples) * nt, 0);
    const double cmax = flow.roof().certified_max();

    for_each_chunk(samples, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        StreamRng rng(seed, chunk);
        std::vector<Word> x(d), scratch(d);
        std::size_t* counts = hits.data() + chunk * nt;
        for (std::size_t i = begin; i < end; ++i) {
            double h = 0.0;
            if (curve.direct_sampling) {
                for (std::size_t j = 0; j < d; ++j)
                    x[j] = to_fixed(rng.uniform(r.box[j].first, r.box[j].second));
                h = rng.uniform(r.q1, r.q2);
            } else {
                while (true) {
                    draw_point(rng, x);
                    h = rng.uniform() * cmax;
                    if (h < flow.roof().evaluator().real(x.data()) && r.contains(x.data(), h))
                        break;
                }
            }
            double now = 0.0;
            for (std::size_t k = 0; k < nt; ++k) {
                const double target = t_grid[order[k]];
                flow.flow_fixed(x.data(), h, target - now, scratch.data());
                now = target;
                if (q.contains(x.data(), h))
                    ++counts[order[k]];
            }
        }
    });

    curve.points.resize(nt);
    for (std::size_t k = 0; k < nt; ++k) {
        std::size_t total = 0;
        for (std::size_t c = 0; c < chunk_count(samples); ++c)
            total += hits[c * nt + k];
        const double p = static_cast<double>(total) / static_cast<double>(samples);
        curve.points[k] = {t_grid[k], p * curve.measure_r,
                           curve.measure_r * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)), samples};
    }
    return curve;
}

std::vector<GrowthPoint> growth_in_measure(const SkewTranslation& t, const TrigPoly& psi, double c,
                                           const std::vector<std::int64_t>& n_list, std::size_t samples,
                                           std::uint64_t seed, unsigned threads)
{
    check_perp(psi, t);
    if (samples == 0)
        fail(ErrorKind::InvalidArgument, "sample count must be positive");
    for (auto n : n_list)
        if (n < 0)
            fail(ErrorKind::InvalidArgument, "n must be nonnegative");
    std::vector<std::size_t> order(n_list.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return n_list[a] < n_list[b]; });

    const std::size_t d = t.dim();
    const std::size_t nn = n_list.size();
    const TrigEvaluator eval(psi);
    std::vector<std::size_t> hits(chunk_count(samples) * nn, 0);
    for_each_chunk(samples, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        StreamRng rng(seed, chunk);
        std::vector<Word> x(d), y(d);
        std::size_t* counts = hits.data() + chunk * nn;
        for (std::size_t i = begin; i < end; ++i) {
            draw_point(rng, x);
            double s = 0.0;
            std::int64_t steps = 0;
            for (std::size_t k = 0; k < nn; ++k) {
                const std::int64_t target = n_list[order[k]];
                for (; steps < target; ++steps) {
                    s += eval.real(x.data());
                    t.forward().apply(x.data(), y.data());
                    x.swap(y);
                }
                if (std::fabs(s) < c)
                    ++counts[order[k]];
            }
        }
    });

    std::vector<GrowthPoint> out(nn);
    for (std::size_t k = 0; k < nn; ++k) {
        std::size_t total = 0;
        for (std::size_t ch = 0; ch < chunk_count(samples); ++ch)
            total += hits[ch * nn + k];
        const double p = static_cast<double>(total) / static_cast<double>(samples);
        out[k] = {n_list[k], p, std::sqrt(p * (1.0 - p) / static_cast<double>(samples))};
    }
    return out;
}

DecouplingResult decoupling_stat(const SkewTranslation& t, const TrigPoly& psi, std::int64_t n, std::int64_t big_n,
                                 double c, std::size_t samples, std::uint64_t seed, unsigned threads,
                                 std::size_t check_count)
{
    check_perp(psi, t);
    if (n < 0 || big_n < 0 || samples == 0)
        fail(ErrorKind::InvalidArgument, "n, N must be nonnegative and samples positive");
    const std::size_t d = t.dim();
    const TrigEvaluator eval(psi);
    const AffineMod1 jump_big = t.power_map(big_n);
    const AffineMod1 jump_small = t.power_map(n);

    auto birkhoff = [&](std::vector<Word> x, std::int64_t steps) {
        std::vector<Word> y(d);
        double s = 0.0;
        for (std::int64_t k = 0; k < steps; ++k) {
            s += eval.real(x.data());
            t.forward().apply(x.data(), y.data());
            x.swap(y);
        }
        return s;
    };

    const std::size_t chunks = chunk_count(samples);
    std::vector<std::size_t> hits(chunks, 0);
    std::vector<double> gaps(chunks, 0.0);
    for_each_chunk(samples, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        StreamRng rng(seed, chunk);
        std::vector<Word> x(d), y(d);
        for (std::size_t i = begin; i < end; ++i) {
            draw_point(rng, x);
            jump_big.apply(x.data(), y.data());
            const double value = birkhoff(y, n) - birkhoff(x, n);
            if (i < check_count) {
                std::vector<Word> z(d);
                jump_small.apply(x.data(), z.data());
                const double direct = birkhoff(z, big_n) - birkhoff(x, big_n);
                const double gap = std::fabs(direct - value);
                if (!(gap < 1e-8))
                    fail(ErrorKind::AssertionMismatch,
                         "cocycle identity violated by " + std::to_string(gap));
                gaps[chunk] = std::max(gaps[chunk], gap);
            }
            if (std::fabs(value) < 2.0 * c)
                ++hits[chunk];
        }
    });

    DecouplingResult r;
    const std::size_t total = std::accumulate(hits.begin(), hits.end(), std::size_t{0});
    r.fraction = static_cast<double>(total) / static_cast<double>(samples);
    r.stderr_ = std::sqrt(r.fraction * (1.0 - r.fraction) / static_cast<double>(samples));
    r.max_identity_gap = *std::max_element(gaps.begin(), gaps.end());
    r.checked = std::min(check_count, samples);
    return r;
}

StretchResult stretch(const SkewTranslation& t, const TrigPoly& psi, const Point& xhat, double a, double b,
                      std::int64_t n)
{
    const std::size_t d = t.dim();
    if (psi.dim() != d || xhat.size() + 1 != d)
        fail(ErrorKind::DimensionMismatch, "stretch needs d-1 fixed coordinates");
    if (!(0.0 <= a && a < b && b < 1.0))
        fail(ErrorKind::InvalidArgument, "segment must satisfy 0 <= a < b < 1");
    if (n < 0)
        fail(ErrorKind::InvalidArgument, "n must be nonnegative");

    // T^r(xhat, s) = T^r(xhat, 0) + s e_d, so s -> S_n is a trig polynomial
    // in s with coefficients c_l sum_r e(l . T^r(xhat, 0)).
    std::vector<Frequency> freqs;
    std::vector<Coeff> weights;
    for (const auto& [l, c] : psi.terms()) {
        freqs.push_back(l);
        weights.push_back(0.0);
    }
    Point start = xhat;
    start.push_back(0.0);
    std::vector<Word> x = to_fixed(start), y(d);
    for (std::int64_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < freqs.size(); ++k)
            weights[k] += unit_phase(freqs[k], x);
        t.forward().apply(x.data(), y.data());
        x.swap(y);
    }
    std::size_t k_out = 0;
    for (const auto& [l, c] : psi.terms())
        weights[k_out++] *= c;

    auto value_at = [&](double s) {
        Coeff sum = 0.0;
        for (std::size_t k = 0; k < freqs.size(); ++k) {
            const double ang = 2.0 * std::numbers::pi * static_cast<double>(freqs[k].back()) * s;
            sum += weights[k] * Coeff(std::cos(ang), std::sin(ang));
        }
        return sum.real();
    };

    StretchResult res;
    res.lipschitz = static_cast<double>(n) * 2.0 * std::numbers::pi * psi.directional_weight(d - 1);
    std::size_t m = 1025;
    constexpr std::size_t kMaxPoints = std::size_t{1} << 24;
    while (true) {
        double lo = value_at(a), hi = lo;
        for (std::size_t i = 1; i < m; ++i) {
            const double v = value_at(a + (b - a) * static_cast<double>(i) / static_cast<double>(m - 1));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        res.value = hi - lo;
        res.grid_points = m;
        const double step = (b - a) / static_cast<double>(m - 1);
        if (res.lipschitz * step < 1e-3 * res.value || res.lipschitz == 0.0 || m >= kMaxPoints)
            break;
        const double needed = res.lipschitz * (b - a) / (1e-3 * std::max(res.value, 1e-300)) + 2.0;
        m = static_cast<std::size_t>(std::min(needed, static_cast<double>(kMaxPoints)));
    }
    if (res.lipschitz == 0.0)
        res.value = 0.0;
    return res;
}

ShearTangent shear_tangent(const SuspensionFlow& flow, const SuspensionPoint& p, const ShearVector& sv, double t,
                           double s)
{
    check_fiber_constant(flow, sv);
    const std::size_t d = flow.dim();
    const SuspensionPoint g = shifted(p, sv, s);
    ShearTangent out;
    out.n = flow.n_t(g.x, g.r, t);
    out.tangent.resize(d + 1);
    std::vector<double> v(d);
    for (std::size_t i = 0; i < d; ++i) {
        v[i] = static_cast<double>(sv.v[i]);
        out.tangent[i] = v[i];
    }
    out.tangent[d - 1] += static_cast<double>(out.n * sv.a);
    const TrigPoly dv = directional_derivative(flow.roof().poly(), v);
    out.tangent[d] = -birkhoff_sum_numeric(flow.base(), dv, g.x, out.n);
    return out;
}

std::vector<double> shear_tangent_fd(const SuspensionFlow& flow, const SuspensionPoint& p, const ShearVector& sv,
                                     double t, double s, double h)
{
    check_fiber_constant(flow, sv);
    const std::size_t d = flow.dim();
    const SuspensionPoint plus = flow.flow(shifted(p, sv, s + h), t);
    const SuspensionPoint minus = flow.flow(shifted(p, sv, s - h), t);
    std::vector<double> out(d + 1);
    for (std::size_t i = 0; i < d; ++i)
        out[i] = wrapped(plus.x[i] - minus.x[i]) / (2.0 * h);
    out[d] = (plus.r - minus.r) / (2.0 * h);
    return out;
}

double wrap_displacement(const SuspensionFlow& flow, const SuspensionPoint& p, const ShearVector& sv, double t,
                         double s0, double len, std::size_t steps, bool* constant_n)
{
    check_fiber_constant(flow, sv);
    if (steps == 0)
        fail(ErrorKind::InvalidArgument, "need at least one step");
    const std::size_t d = flow.dim();
    double total = 0.0;
    bool same = true;
    FlowResult prev = flow.flow_with_count(shifted(p, sv, s0), t);
    for (std::size_t k = 1; k <= steps; ++k) {
        const double s = s0 + len * static_cast<double>(k) / static_cast<double>(steps);
        const FlowResult cur = flow.flow_with_count(shifted(p, sv, s), t);
        total += wrapped(cur.point.x[d - 1] - prev.point.x[d - 1]);
        same = same && cur.n == prev.n;
        prev = cur;
    }
    if (constant_n)
        *constant_n = same;
    return total;
}

} // namespace skewflow
