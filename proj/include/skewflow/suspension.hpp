#pragma once

#include <cstdint>
#include <vector>

#include "skewflow/skewtrans.hpp"
#include "skewflow/trigpoly.hpp"

namespace skewflow {

struct RoofBounds {
    double grid_min = 0.0;
    double grid_max = 0.0;
    double slack = 0.0;
    double certified_min = 0.0;
    double certified_max = 0.0;
    std::size_t points_per_axis = 0;
};

/// Grid extrema of a real polynomial widened by the Lipschitz slack. 64
/// points per axis up to four axes, fewer above so the grid stays at 64^4.
RoofBounds certify_bounds(const TrigPoly& f);

class RoofFunction {
public:
    explicit RoofFunction(TrigPoly poly);

    const TrigPoly& poly() const noexcept { return poly_; }
    const TrigEvaluator& evaluator() const noexcept { return eval_; }
    const RoofBounds& bounds() const noexcept { return bounds_; }
    double certified_min() const noexcept { return bounds_.certified_min; }
    double certified_max() const noexcept { return bounds_.certified_max; }

private:
    TrigPoly poly_;
    TrigEvaluator eval_;
    RoofBounds bounds_;
};

struct SuspensionPoint {
    Point x;
    double r = 0.0;
};

struct FlowResult {
    SuspensionPoint point;
    std::int64_t n = 0;
};

class SuspensionFlow {
public:
    SuspensionFlow(SkewTranslation t, RoofFunction roof);

    const SkewTranslation& base() const noexcept { return t_; }
    const RoofFunction& roof() const noexcept { return roof_; }
    double mean_roof() const noexcept { return mean_; }
    std::size_t dim() const noexcept { return t_.dim(); }

    double roof_at(const Point& x) const;

    /// Max n in Z with S_n(roof)(x) <= r + t.
    std::int64_t n_t(const Point& x, double r, double t) const;
    SuspensionPoint flow(const SuspensionPoint& p, double t) const;
    FlowResult flow_with_count(const SuspensionPoint& p, double t) const;

    /// In-place flow on fixed-point coordinates; returns n_t. `scratch` must
    /// hold dim() words.
    std::int64_t flow_fixed(Word* x, double& r, double t, Word* scratch) const;

    std::vector<SuspensionPoint> sample_invariant(std::uint64_t seed, std::size_t count,
                                                  unsigned threads = 1) const;

private:
    SkewTranslation t_;
    RoofFunction roof_;
    double mean_;
};

/// Distance in the suspension space: compares p with q and with the glued
/// representatives of q one roof level up or down.
double suspension_distance(const SuspensionFlow& flow, const SuspensionPoint& p, const SuspensionPoint& q);
double torus_distance(const Point& a, const Point& b);

/// Max discrepancy between projecting then flowing on the factor T_i and
/// flowing then projecting, over random points and times in [-t_max, t_max].
double factor_consistency(const SuspensionFlow& flow, std::size_t i, std::size_t trials,
                          std::uint64_t seed, double t_max = 100.0);

} // namespace skewflow
