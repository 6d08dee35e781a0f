#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "skewflow/skewtrans.hpp"
#include "skewflow/trigpoly.hpp"

namespace skewflow {

inline constexpr double kDefaultCoboundaryTol = 1e-9;

/// Support elements of one orbit of l -> l A^T. Offsets are relative to the
/// base frequency; path[n - first] = l^(n) for n in [first, last].
struct OrbitSegment {
    std::int64_t first = 0;
    std::int64_t last = 0;
    std::vector<Frequency> path;
    std::map<std::int64_t, Coeff> coeffs;

    const Frequency& base() const { return frequency(0); }
    const Frequency& frequency(std::int64_t n) const { return path.at(static_cast<std::size_t>(n - first)); }
};

struct OrbitReport {
    Frequency base;
    std::vector<std::int64_t> offsets;
    Coeff obstruction;
};

struct CoboundaryReport {
    std::vector<OrbitReport> orbits;
    double tolerance = kDefaultCoboundaryTol;
    double max_obstruction = 0.0;
    bool verdict = true;
};

struct OrbitOptions {
    /// 0 selects the default 4 (m+1) (1 + max|a_ij|)^k.
    std::uint64_t k_max = 0;
};

std::uint64_t default_k_max(const TrigPoly& f, const SkewTranslation& t);

std::vector<OrbitSegment> orbit_decompose(const TrigPoly& f, const SkewTranslation& t,
                                          const OrbitOptions& opts = {});
Coeff obstruction_sum(const OrbitSegment& segment, const std::vector<Word>& b);
/// Same orbit with offset `n` becoming the new base.
OrbitSegment rebase(const OrbitSegment& segment, std::int64_t n);

CoboundaryReport is_smooth_coboundary(const TrigPoly& f, const SkewTranslation& t,
                                      double tol = kDefaultCoboundaryTol, const OrbitOptions& opts = {});
TrigPoly solve_cohomological_equation(const TrigPoly& f, const SkewTranslation& t,
                                      double tol = kDefaultCoboundaryTol, const OrbitOptions& opts = {});
/// u o T - u
TrigPoly coboundary_apply(const TrigPoly& u, const SkewTranslation& t);
TrigPoly make_coboundary(const TrigPoly& f, const SkewTranslation& t, const OrbitOptions& opts = {});

struct Mixing2dReport {
    bool mixing = false;
    CoboundaryReport q2;
    std::optional<OrbitReport> witness;
};

Mixing2dReport check_mixing_2d(const TrigPoly& psi2, const SkewTranslation& t2,
                               double tol = kDefaultCoboundaryTol);

struct MembershipReport {
    bool member = false;
    Mixing2dReport base;
    /// Smooth-coboundary reports for the components at levels 3..d.
    std::vector<CoboundaryReport> levels;
};

MembershipReport membership_M(const TrigPoly& psi, const SkewTranslation& t,
                              double tol = kDefaultCoboundaryTol);

struct MixingRoofReport {
    TrigPoly roof;
    MembershipReport membership;
    double epsilon_bump = 0.0;
    double constant_added = 0.0;
    double certified_min = 0.0;
    double distance_bound = 0.0;
    double distance_grid = 0.0;
};

MixingRoofReport generate_mixing_roof(const TrigPoly& target, const SkewTranslation& t,
                                      double epsilon = 0.05, double tol = kDefaultCoboundaryTol);

nlohmann::json to_json(const CoboundaryReport& r);
nlohmann::json to_json(const MembershipReport& r);

} // namespace skewflow
