#include "skewflow/cohomology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "skewflow/suspension.hpp"

namespace skewflow {

namespace {

// Obstructions below this are treated as exact zeros by make_coboundary so
// that genuine coboundaries come back bit-for-bit unchanged.
constexpr double kObstructionFloor = 1e-13;

Coeff phase(Word w)
{
    const double ang = 2.0 * std::numbers::pi * signed_phase(w);
    return {std::cos(ang), std::sin(ang)};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b)
{
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

void check_zero_mean(const TrigPoly& f, const SkewTranslation& t)
{
    if (f.dim() != t.dim())
        fail(ErrorKind::DimensionMismatch, "polynomial and map dimensions differ");
    const std::size_t d = f.dim();
    for (const auto& [l, c] : f.terms())
        if (l[d - 1] == 0)
            fail(ErrorKind::NotInZeroMeanSubspace,
                 "every frequency must have a nonzero last coordinate");
}

OrbitReport report_for(const OrbitSegment& seg, const std::vector<Word>& b)
{
    OrbitReport r;
    r.base = seg.base();
    for (const auto& [n, c] : seg.coeffs)
        r.offsets.push_back(n);
    r.obstruction = obstruction_sum(seg, b);
    return r;
}

} // namespace

std::uint64_t default_k_max(const TrigPoly& f, const SkewTranslation& t)
{
    std::int64_t amax = 0;
    const auto& a = t.matrix();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            amax = std::max<std::int64_t>(amax, a(i, j) < 0 ? -a(i, j) : a(i, j));
    const double bound = 4.0 * static_cast<double>(f.degree() + 1) *
                         std::pow(1.0 + static_cast<double>(amax), t.nilpotency_degree());
    return bound > 1e18 ? static_cast<std::uint64_t>(1e18) : static_cast<std::uint64_t>(bound);
}

std::vector<OrbitSegment> orbit_decompose(const TrigPoly& f, const SkewTranslation& t, const OrbitOptions& opts)
{
    check_zero_mean(f, t);
    const std::size_t d = f.dim();
    const std::uint64_t k_max = opts.k_max ? opts.k_max : default_k_max(f, t);

    std::vector<std::int64_t> lo(d, 0), hi(d, 0);
    bool first = true;
    std::set<Frequency> remaining;
    for (const auto& [l, c] : f.terms()) {
        remaining.insert(l);
        for (std::size_t j = 0; j < d; ++j) {
            lo[j] = first ? l[j] : std::min(lo[j], l[j]);
            hi[j] = first ? l[j] : std::max(hi[j], l[j]);
        }
        first = false;
    }

    std::vector<OrbitSegment> out;
    while (!remaining.empty()) {
        const Frequency start = *remaining.begin();
        const Frequency next = push_forward(t.matrix(), start);

        // Coordinates above j* are constant along the orbit and coordinate j*
        // moves by delta per step, so the box is met on a finite n-interval.
        std::size_t jstar = d;
        for (std::size_t j = d; j-- > 0;)
            if (next[j] != start[j]) {
                jstar = j;
                break;
            }
        if (jstar == d)
            fail(ErrorKind::PeriodicOrbit, "frequency is fixed by A^T");
        const std::int64_t delta = next[jstar] - start[jstar];
        std::int64_t n_lo = 0, n_hi = 0;
        if (delta > 0) {
            n_lo = ceil_div(lo[jstar] - start[jstar], delta);
            n_hi = floor_div(hi[jstar] - start[jstar], delta);
        } else {
            n_lo = ceil_div(hi[jstar] - start[jstar], delta);
            n_hi = floor_div(lo[jstar] - start[jstar], delta);
        }
        if (static_cast<std::uint64_t>(n_hi - n_lo) > k_max)
            fail(ErrorKind::OrbitNotEscaping, "orbit stays near the support for more than K_max steps");

        std::vector<Frequency> backward;
        Frequency cur = start;
        for (std::int64_t n = 0; n > n_lo; --n) {
            cur = push_forward(t.inverse_matrix(), cur);
            backward.push_back(cur);
        }
        std::vector<Frequency> path(backward.rbegin(), backward.rend());
        path.push_back(start);
        cur = start;
        for (std::int64_t n = 0; n < n_hi; ++n) {
            cur = push_forward(t.matrix(), cur);
            path.push_back(cur);
        }

        std::int64_t smin = n_hi, smax = n_lo;
        std::map<std::int64_t, Coeff> hits;
        for (std::int64_t n = n_lo; n <= n_hi; ++n) {
            const Frequency& l = path[static_cast<std::size_t>(n - n_lo)];
            const auto it = f.terms().find(l);
            if (it == f.terms().end())
                continue;
            hits.emplace(n, it->second);
            remaining.erase(l);
            smin = std::min(smin, n);
            smax = std::max(smax, n);
        }

        OrbitSegment seg;
        seg.first = 0;
        seg.last = smax - smin;
        seg.path.assign(path.begin() + (smin - n_lo), path.begin() + (smax - n_lo) + 1);
        for (const auto& [n, c] : hits)
            seg.coeffs.emplace(n - smin, c);
        out.push_back(std::move(seg));
    }
    return out;
}

Coeff obstruction_sum(const OrbitSegment& segment, const std::vector<Word>& b)
{
    // P(0) = 0, P(k) = -sum_{j<k} phi_j, P(-k) = sum_{j=1..k} phi_{-j}.
    Coeff sum = 0.0;
    Word p = 0;
    for (std::int64_t n = 0; n <= segment.last; ++n) {
        if (n > 0)
            p -= phase_word(segment.frequency(n - 1), b);
        const auto it = segment.coeffs.find(n);
        if (it != segment.coeffs.end())
            sum += it->second * phase(p);
    }
    p = 0;
    for (std::int64_t n = -1; n >= segment.first; --n) {
        p += phase_word(segment.frequency(n), b);
        const auto it = segment.coeffs.find(n);
        if (it != segment.coeffs.end())
            sum += it->second * phase(p);
    }
    return sum;
}

OrbitSegment rebase(const OrbitSegment& segment, std::int64_t n)
{
    if (n < segment.first || n > segment.last)
        fail(ErrorKind::IndexOutOfRange, "rebase offset outside the segment");
    OrbitSegment out = segment;
    out.first -= n;
    out.last -= n;
    out.coeffs.clear();
    for (const auto& [k, c] : segment.coeffs)
        out.coeffs.emplace(k - n, c);
    return out;
}

CoboundaryReport is_smooth_coboundary(const TrigPoly& f, const SkewTranslation& t, double tol,
                                      const OrbitOptions& opts)
{
    CoboundaryReport report;
    report.tolerance = tol;
    for (const auto& seg : orbit_decompose(f, t, opts)) {
        report.orbits.push_back(report_for(seg, t.translation_fixed()));
        report.max_obstruction = std::max(report.max_obstruction, std::abs(report.orbits.back().obstruction));
    }
    report.verdict = report.max_obstruction < tol;
    return report;
}

TrigPoly solve_cohomological_equation(const TrigPoly& f, const SkewTranslation& t, double tol,
                                      const OrbitOptions& opts)
{
    const auto& b = t.translation_fixed();
    TrigPoly u(f.dim());
    for (const auto& seg : orbit_decompose(f, t, opts)) {
        const Coeff obstruction = obstruction_sum(seg, b);
        if (std::abs(obstruction) >= tol)
            fail(ErrorKind::NotACoboundary, "orbit obstruction " + std::to_string(std::abs(obstruction)) +
                                                " exceeds tolerance");
        // u_(n) = u_(n-1) e(phi_(n-1)) - c_(n); u vanishes below the support
        // and at the top offset.
        Coeff prev = 0.0;
        for (std::int64_t n = seg.first; n < seg.last; ++n) {
            const auto it = seg.coeffs.find(n);
            const Coeff c = it == seg.coeffs.end() ? Coeff(0.0) : it->second;
            const Coeff carried = n == seg.first ? Coeff(0.0) : prev * phase(phase_word(seg.frequency(n - 1), b));
            prev = carried - c;
            u.add_term(seg.frequency(n), prev);
        }
    }
    return u;
}

TrigPoly coboundary_apply(const TrigPoly& u, const SkewTranslation& t)
{
    return compose_with_T(u, t) - u;
}

TrigPoly make_coboundary(const TrigPoly& f, const SkewTranslation& t, const OrbitOptions& opts)
{
    TrigPoly out = f;
    for (const auto& seg : orbit_decompose(f, t, opts)) {
        const Coeff obstruction = obstruction_sum(seg, t.translation_fixed());
        if (std::abs(obstruction) < kObstructionFloor)
            continue;
        // The base term enters the obstruction with phase 1.
        const Frequency& base = seg.base();
        out.set_term(base, seg.coeffs.at(0) - obstruction);
    }
    return out;
}

Mixing2dReport check_mixing_2d(const TrigPoly& psi2, const SkewTranslation& t2, double tol)
{
    if (t2.dim() != 2 || psi2.dim() != 2)
        fail(ErrorKind::DimensionMismatch, "2-d criterion needs a map and polynomial on T^2");
    if (!has_nonzero_superdiagonal(t2.matrix()))
        fail(ErrorKind::ZeroSuperdiagonal, "a_12 must be nonzero");
    Mixing2dReport r;
    r.q2 = is_smooth_coboundary(decompose(psi2, 1).perps.at(0), t2, tol);
    r.mixing = !r.q2.verdict;
    for (const auto& orbit : r.q2.orbits)
        if (!r.witness || std::abs(orbit.obstruction) > std::abs(r.witness->obstruction))
            r.witness = orbit;
    return r;
}

MembershipReport membership_M(const TrigPoly& psi, const SkewTranslation& t, double tol)
{
    if (psi.dim() != t.dim())
        fail(ErrorKind::DimensionMismatch, "polynomial and map dimensions differ");
    if (!has_nonzero_superdiagonal(t.matrix()))
        fail(ErrorKind::ZeroSuperdiagonal, "all superdiagonal entries must be nonzero");
    MembershipReport r;
    const std::size_t d = t.dim();
    if (d == 2) {
        r.base = check_mixing_2d(psi, t, tol);
        r.member = r.base.mixing;
        return r;
    }
    const Decomposition dec = decompose(psi, 2);
    r.base = check_mixing_2d(dec.base, t.factor(2), tol);
    r.member = r.base.mixing;
    for (std::size_t i = 3; i <= d; ++i) {
        r.levels.push_back(is_smooth_coboundary(dec.perps[i - 3], t.factor(i), tol));
        r.member = r.member && r.levels.back().verdict;
    }
    return r;
}

MixingRoofReport generate_mixing_roof(const TrigPoly& target, const SkewTranslation& t, double epsilon, double tol)
{
    if (!target.is_real())
        fail(ErrorKind::InvalidArgument, "target must be real-valued");
    if (target.dim() != t.dim())
        fail(ErrorKind::DimensionMismatch, "polynomial and map dimensions differ");
    if (!has_nonzero_superdiagonal(t.matrix()))
        fail(ErrorKind::ZeroSuperdiagonal, "all superdiagonal entries must be nonzero");
    const std::size_t d = t.dim();
    MixingRoofReport r;

    TrigPoly roof(d);
    TrigPoly base2(2);
    if (d == 2) {
        roof = target;
        base2 = target;
    } else {
        const Decomposition dec = decompose(target, 2);
        base2 = dec.base;
        roof = lift(dec.base, d);
        for (std::size_t i = 3; i <= d; ++i)
            roof += lift(make_coboundary(dec.perps[i - 3], t.factor(i)), d);
    }

    if (!check_mixing_2d(base2, t.factor(2), tol).mixing) {
        Frequency up(d, 0), down(d, 0);
        up[1] = 1;
        down[1] = -1;
        roof.add_term(up, epsilon);
        roof.add_term(down, epsilon);
        r.epsilon_bump = epsilon;
    }

    RoofBounds bounds = certify_bounds(roof);
    if (bounds.certified_min <= 0.0) {
        r.constant_added = 0.1 - bounds.certified_min;
        roof.add_term(Frequency(d, 0), r.constant_added);
        bounds = certify_bounds(roof);
    }
    r.certified_min = bounds.certified_min;
    r.distance_bound = (roof - target).l1_norm();
    r.distance_grid = grid_sup_distance(roof, target, d <= 3 ? 32 : (d == 4 ? 16 : 8));
    r.membership = membership_M(roof, t, tol);
    r.roof = std::move(roof);
    return r;
}

nlohmann::json to_json(const CoboundaryReport& r)
{
    nlohmann::json orbits = nlohmann::json::array();
    for (const auto& o : r.orbits)
        orbits.push_back({{"base", o.base},
                          {"offsets", o.offsets},
                          {"obstruction_re", o.obstruction.real()},
                          {"obstruction_im", o.obstruction.imag()},
                          {"obstruction_abs", std::abs(o.obstruction)}});
    return {{"orbits", orbits},
            {"tolerance", r.tolerance},
            {"max_obstruction", r.max_obstruction},
            {"verdict", r.verdict}};
}

nlohmann::json to_json(const MembershipReport& r)
{
    nlohmann::json levels = nlohmann::json::array();
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
        auto j = to_json(r.levels[i]);
        j["level"] = i + 3;
        levels.push_back(j);
    }
    nlohmann::json base = {{"mixing", r.base.mixing}, {"q2", to_json(r.base.q2)}};
    if (r.base.witness) {
        base["witness_base"] = r.base.witness->base;
        base["witness_abs"] = std::abs(r.base.witness->obstruction);
    }
    return {{"member", r.member},
            {"criterion", "smooth sufficient condition"},
            {"base", base},
            {"levels", levels}};
}

} // namespace skewflow
