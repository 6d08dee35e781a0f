#include "skewflow/suspension.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skewflow/rng.hpp"

namespace skewflow {

RoofBounds certify_bounds(const TrigPoly& f)
{
    if (!f.is_real())
        fail(ErrorKind::InvalidArgument, "roof must be real-valued");
    const std::size_t d = f.dim();
    RoofBounds b;
    b.points_per_axis = d <= 4 ? 64
                               : std::max<std::size_t>(2, static_cast<std::size_t>(std::floor(
                                                              std::pow(64.0, 4.0 / static_cast<double>(d)))));
    const std::size_t n = b.points_per_axis;
    const TrigEvaluator eval(f);
    std::vector<Word> axis(n);
    for (std::size_t k = 0; k < n; ++k)
        axis[k] = to_fixed(static_cast<double>(k) / static_cast<double>(n));

    std::vector<std::size_t> idx(d, 0);
    std::vector<Word> x(d, 0);
    b.grid_min = std::numeric_limits<double>::infinity();
    b.grid_max = -std::numeric_limits<double>::infinity();
    while (true) {
        for (std::size_t i = 0; i < d; ++i)
            x[i] = axis[idx[i]];
        const double v = eval.real(x.data());
        b.grid_min = std::min(b.grid_min, v);
        b.grid_max = std::max(b.grid_max, v);
        std::size_t i = 0;
        while (i < d && ++idx[i] == n)
            idx[i++] = 0;
        if (i == d)
            break;
    }
    // Every point is within 1/(2n) of the grid in the sup norm.
    b.slack = f.lipschitz() * 0.5 / static_cast<double>(n);
    b.certified_min = b.grid_min - b.slack;
    b.certified_max = b.grid_max + b.slack;
    return b;
}

RoofFunction::RoofFunction(TrigPoly poly) : poly_(std::move(poly)), eval_(poly_), bounds_(certify_bounds(poly_))
{
    if (!(bounds_.certified_min > 0.0))
        fail(ErrorKind::NonPositiveRoof,
             "certified roof minimum " + std::to_string(bounds_.certified_min) + " is not positive");
}

SuspensionFlow::SuspensionFlow(SkewTranslation t, RoofFunction roof)
    : t_(std::move(t)), roof_(std::move(roof)), mean_(roof_.poly().mean())
{
    if (roof_.poly().dim() != t_.dim())
        fail(ErrorKind::DimensionMismatch, "roof and base dimensions differ");
}

double SuspensionFlow::roof_at(const Point& x) const
{
    const auto u = to_fixed(x);
    return roof_.evaluator().real(u.data());
}

std::int64_t SuspensionFlow::flow_fixed(Word* x, double& r, double t, Word* scratch) const
{
    const std::size_t d = t_.dim();
    const TrigEvaluator& psi = roof_.evaluator();
    double h = r + t;
    std::int64_t n = 0;
    if (h >= 0.0) {
        for (double v = psi.real(x); h >= v; v = psi.real(x)) {
            h -= v;
            t_.forward().apply(x, scratch);
            std::copy(scratch, scratch + d, x);
            ++n;
        }
    } else {
        while (h < 0.0) {
            t_.backward().apply(x, scratch);
            std::copy(scratch, scratch + d, x);
            h += psi.real(x);
            --n;
        }
    }
    r = h;
    return n;
}

FlowResult SuspensionFlow::flow_with_count(const SuspensionPoint& p, double t) const
{
    if (p.x.size() != dim())
        fail(ErrorKind::DimensionMismatch, "point dimension");
    std::vector<Word> x = to_fixed(p.x);
    std::vector<Word> scratch(dim());
    double r = p.r;
    const std::int64_t n = flow_fixed(x.data(), r, t, scratch.data());
    return {{from_fixed(x), r}, n};
}

SuspensionPoint SuspensionFlow::flow(const SuspensionPoint& p, double t) const
{
    return flow_with_count(p, t).point;
}

std::int64_t SuspensionFlow::n_t(const Point& x, double r, double t) const
{
    return flow_with_count({x, r}, t).n;
}

std::vector<SuspensionPoint> SuspensionFlow::sample_invariant(std::uint64_t seed, std::size_t count,
                                                              unsigned threads) const
{
    if (count == 0)
        fail(ErrorKind::InvalidArgument, "sample count must be positive");
    const std::size_t d = dim();
    std::vector<SuspensionPoint> out(count);
    const double cmax = roof_.certified_max();
    for_each_chunk(count, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
        StreamRng rng(seed, chunk);
        std::vector<Word> u(d);
        Point x(d);
        for (std::size_t i = begin; i < end; ++i) {
            while (true) {
                for (std::size_t j = 0; j < d; ++j) {
                    x[j] = rng.uniform();
                    u[j] = to_fixed(x[j]);
                }
                const double r = rng.uniform() * cmax;
                if (r < roof_.evaluator().real(u.data())) {
                    out[i] = {x, r};
                    break;
                }
            }
        }
    });
    return out;
}

double torus_distance(const Point& a, const Point& b)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double diff = std::fabs(a[i] - b[i]);
        diff -= std::floor(diff);
        worst = std::max(worst, std::min(diff, 1.0 - diff));
    }
    return worst;
}

double suspension_distance(const SuspensionFlow& flow, const SuspensionPoint& p, const SuspensionPoint& q)
{
    auto dist = [](const SuspensionPoint& a, const SuspensionPoint& b) {
        return std::max(torus_distance(a.x, b.x), std::fabs(a.r - b.r));
    };
    const Point up = flow.base().apply(q.x);
    const Point down = flow.base().iterate(q.x, -1);
    const double direct = dist(p, q);
    const double via_up = dist(p, {up, q.r - flow.roof_at(q.x)});
    const double via_down = dist(p, {down, q.r + flow.roof_at(down)});
    return std::min({direct, via_up, via_down});
}

double factor_consistency(const SuspensionFlow& flow, std::size_t i, std::size_t trials, std::uint64_t seed,
                          double t_max)
{
    const TrigPoly restricted = restrict_to(flow.roof().poly(), i);
    const SuspensionFlow small(flow.base().factor(i), RoofFunction(restricted));
    const auto points = flow.sample_invariant(seed, trials);
    StreamRng times(seed, 0xfac7U << 20U);
    double worst = 0.0;
    for (const auto& p : points) {
        const double t = times.uniform(-t_max, t_max);
        const SuspensionPoint full = flow.flow(p, t);
        const SuspensionPoint projected{Point(full.x.begin(), full.x.begin() + static_cast<std::ptrdiff_t>(i)),
                                        full.r};
        const SuspensionPoint start{Point(p.x.begin(), p.x.begin() + static_cast<std::ptrdiff_t>(i)), p.r};
        worst = std::max(worst, suspension_distance(small, projected, small.flow(start, t)));
    }
    return worst;
}

} // namespace skewflow
