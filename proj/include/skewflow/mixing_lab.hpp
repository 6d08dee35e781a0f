#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "skewflow/suspension.hpp"

namespace skewflow {

/// Product of base intervals [w_j, w_j'] and a height interval [q1, q2].
struct Cube {
    std::vector<std::pair<double, double>> box;
    double q1 = 0.0;
    double q2 = 0.0;

    double base_volume() const;
    bool contains(const Word* x, double r) const noexcept;
};

/// Throws EmptyCube unless the cube is nondegenerate, inside [0,1)^d and
/// below the certified roof minimum.
void validate_cube(const Cube& c, const SuspensionFlow& flow);
double cube_measure(const Cube& c, const SuspensionFlow& flow);

struct CorrelationPoint {
    double t = 0.0;
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::size_t samples = 0;
};

struct CorrelationCurve {
    double measure_r = 0.0;
    double measure_q = 0.0;
    bool direct_sampling = false;
    std::vector<CorrelationPoint> points;
};

/// Estimates mu(T_t(R) intersect Q) on a grid of times.
CorrelationCurve correlation_curve(const SuspensionFlow& flow, const Cube& q, const Cube& r,
                                   const std::vector<double>& t_grid, std::size_t samples,
                                   std::uint64_t seed, unsigned threads = 1);

struct GrowthPoint {
    std::int64_t n = 0;
    double fraction = 0.0;
    double stderr_ = 0.0;
};

/// mu(|S_n(psi)| < c) for each n in n_list, with the same sample points.
std::vector<GrowthPoint> growth_in_measure(const SkewTranslation& t, const TrigPoly& psi, double c,
                                           const std::vector<std::int64_t>& n_list, std::size_t samples,
                                           std::uint64_t seed, unsigned threads = 1);

struct DecouplingResult {
    double fraction = 0.0;
    double stderr_ = 0.0;
    double max_identity_gap = 0.0;
    std::size_t checked = 0;
};

/// mu(|S_N o T^n - S_N| < 2C), evaluated as S_n o T^N - S_n. The identity
/// with the direct form is asserted on the first `check_count` points.
DecouplingResult decoupling_stat(const SkewTranslation& t, const TrigPoly& psi, std::int64_t n,
                                 std::int64_t big_n, double c, std::size_t samples, std::uint64_t seed,
                                 unsigned threads = 1, std::size_t check_count = 1000);

struct StretchResult {
    double value = 0.0;
    std::size_t grid_points = 0;
    double lipschitz = 0.0;
};

/// max - min of s -> S_n(psi)(xhat, s) over s in [a, b].
StretchResult stretch(const SkewTranslation& t, const TrigPoly& psi, const Point& xhat, double a, double b,
                      std::int64_t n);

struct ShearTangent {
    std::vector<double> tangent; // d base components then the height
    std::int64_t n = 0;
};

ShearTangent shear_tangent(const SuspensionFlow& flow, const SuspensionPoint& p, const ShearVector& sv,
                           double t, double s);
/// Central difference of s -> flow(gamma(s), t) with torus unwrapping.
std::vector<double> shear_tangent_fd(const SuspensionFlow& flow, const SuspensionPoint& p,
                                     const ShearVector& sv, double t, double s, double h);
/// Net x_d displacement of the flowed segment gamma([s0, s0 + len]), summed
/// from wrapped increments on `steps` subintervals. `constant_n` reports
/// whether n_t stayed fixed along the way.
double wrap_displacement(const SuspensionFlow& flow, const SuspensionPoint& p, const ShearVector& sv, double t,
                         double s0, double len, std::size_t steps, bool* constant_n = nullptr);

} // namespace skewflow
