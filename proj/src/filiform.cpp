#include "skewflow/filiform.hpp"

#include <algorithm>
#include <cmath>

#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

namespace skewflow {

namespace {

std::int64_t factorial(std::size_t n)
{
    std::int64_t f = 1;
    for (std::size_t i = 2; i <= n; ++i)
        f *= static_cast<std::int64_t>(i);
    return f;
}

} // namespace

Lattice::Lattice(std::vector<std::int64_t> chain) : E(std::move(chain))
{
    if (E.empty())
        fail(ErrorKind::InvalidLattice, "empty divisibility chain");
    if (E.size() > 20)
        fail(ErrorKind::InvalidLattice, "chains longer than 20 are not supported");
    if (E[0] != 1)
        fail(ErrorKind::InvalidLattice, "E_1 must be 1");
    for (std::size_t i = 0; i < E.size(); ++i) {
        if (E[i] <= 0)
            fail(ErrorKind::InvalidLattice, "chain entries must be positive");
        if (E[i] % factorial(i + 1) != 0)
            fail(ErrorKind::InvalidLattice, "E_" + std::to_string(i + 1) + " must be divisible by " +
                                                std::to_string(i + 1) + "!");
        if (i > 0 && E[i] % E[i - 1] != 0)
            fail(ErrorKind::InvalidLattice, "E_" + std::to_string(i) + " must divide E_" + std::to_string(i + 1));
    }
}

NilflowSpec::NilflowSpec(Lattice l, std::vector<double> generator) : lattice(std::move(l)), w(std::move(generator))
{
    if (w.size() != lattice.d() + 1)
        fail(ErrorKind::DimensionMismatch, "generator needs d+1 coordinates");
    if (w[0] == 0.0)
        fail(ErrorKind::ZeroW0, "w_0 must be nonzero");
}

RationalityAdvice NilflowSpec::rationality() const
{
    return rationality_scan(w[1] / w[0]);
}

LatticeReduction reduce_mod_lattice(const NilflowSpec& spec, const std::vector<double>& g)
{
    const NumericFiliform alg = spec.algebra();
    const std::size_t d = spec.d();
    if (g.size() != d + 1)
        fail(ErrorKind::DimensionMismatch, "group element has wrong arity");
    LatticeReduction out;
    out.lambda.assign(d + 1, 0);
    std::vector<double> cur = g;
    // Left multiplication by (-m f_i) shifts coordinate i by -m and only
    // touches coordinates after it.
    for (std::size_t i = 0; i <= d; ++i) {
        std::int64_t total = 0;
        for (int pass = 0; pass < 4 && !(cur[i] >= 0.0 && cur[i] < 1.0); ++pass) {
            const auto m = static_cast<std::int64_t>(std::floor(cur[i]));
            cur = alg.product(alg.basis(i, -static_cast<double>(m)), cur);
            total += m;
        }
        out.lambda[i] = total;
    }
    out.reduced = cur;
    return out;
}

std::vector<double> nilflow(const NilflowSpec& spec, const std::vector<double>& g, double t)
{
    const NumericFiliform alg = spec.algebra();
    std::vector<double> tw(spec.w.size());
    for (std::size_t i = 0; i < tw.size(); ++i)
        tw[i] = t * spec.w[i];
    return alg.product(g, tw);
}

std::vector<double> lattice_element(const NilflowSpec& spec, const std::vector<std::int64_t>& lambda)
{
    if (lambda.size() != spec.d() + 1)
        fail(ErrorKind::DimensionMismatch, "lattice word has wrong arity");
    std::vector<double> ideal(lambda.begin(), lambda.end());
    ideal[0] = 0.0;
    const NumericFiliform alg = spec.algebra();
    return alg.product(alg.basis(0, static_cast<double>(lambda[0])), ideal);
}

std::vector<double> section_point(const Point& x)
{
    std::vector<double> g(x.size() + 1, 0.0);
    std::copy(x.begin(), x.end(), g.begin() + 1);
    return g;
}

PoincareSection poincare_section(const NilflowSpec& spec)
{
    const std::size_t d = spec.d();
    if (d < 2)
        fail(ErrorKind::DimensionTooSmall, "the section map needs d >= 2");
    const double w0 = spec.w[0];
    const int sigma = w0 > 0.0 ? 1 : -1;

    // Conjugating by sigma f_0 gives a_ij = (-sigma)^(j-i) E_j / (E_i (j-i)!).
    PoincareSection out;
    out.matrix = IntMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i; j < d; ++j) {
            const Rational entry(spec.lattice.E[j], spec.lattice.E[i] * factorial(j - i));
            if (boost::multiprecision::denominator(entry) != 1)
                fail(ErrorKind::NonIntegerEntry, "section matrix entry (" + std::to_string(i + 1) + "," +
                                                     std::to_string(j + 1) + ") is not an integer");
            auto v = static_cast<std::int64_t>(boost::multiprecision::numerator(entry));
            if (sigma > 0 && (j - i) % 2 == 1)
                v = -v;
            out.matrix(i, j) = v;
        }

    const NumericFiliform alg = spec.algebra();
    std::vector<double> u(d + 1);
    const double scale = std::fabs(w0);
    for (std::size_t i = 0; i <= d; ++i)
        u[i] = spec.w[i] / scale;
    const std::vector<double> p = alg.product(alg.basis(0, -static_cast<double>(sigma)), u);
    if (p[0] != 0.0)
        fail(ErrorKind::AssertionMismatch, "section translation left the section");
    out.translation.assign(p.begin() + 1, p.end());
    for (auto& b : out.translation)
        b -= std::floor(b);
    out.return_time = 1.0 / scale;
    return out;
}

double time_change_value(const NilflowSpec& spec, const TrigPoly& alpha, const Point& x, std::size_t quad_panels)
{
    const std::size_t d = spec.d();
    if (alpha.dim() != d + 1 || x.size() != d)
        fail(ErrorKind::DimensionMismatch, "alpha lives on d+1 coordinates and x on d");
    if (quad_panels == 0)
        fail(ErrorKind::InvalidArgument, "need at least one quadrature panel");
    const NumericFiliform alg = spec.algebra();
    const double scale = std::fabs(spec.w[0]);
    std::vector<double> u(d + 1);
    for (std::size_t i = 0; i <= d; ++i)
        u[i] = spec.w[i] / scale;
    const std::vector<double> g = section_point(x);

    auto integrand = [&](double t) {
        std::vector<double> tu(u);
        for (auto& c : tu)
            c *= t;
        const LatticeReduction red = reduce_mod_lattice(spec, alg.product(g, tu));
        const double a = alpha.eval(red.reduced);
        if (!(a > 0.0))
            fail(ErrorKind::NonPositiveAlpha, "alpha is not positive along the flow");
        return a;
    };

    double total = 0.0;
    const double h = 1.0 / static_cast<double>(quad_panels);
    for (std::size_t k = 0; k < quad_panels; ++k)
        total += boost::math::quadrature::gauss<double, 8>::integrate(integrand, h * static_cast<double>(k),
                                                                      h * static_cast<double>(k + 1));
    return total;
}

TimeChangeResult time_change_roof(const NilflowSpec& spec, const TrigPoly& alpha, std::size_t quad_panels,
                                  std::size_t fit_degree)
{
    if (!alpha.is_real())
        fail(ErrorKind::InvalidArgument, "alpha must be real-valued");
    const std::size_t d = spec.d();
    const std::size_t n = 2 * fit_degree + 2;
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i)
        total *= n;

    TimeChangeResult out;
    out.grid_points_per_axis = n;
    std::vector<Point> grid(total, Point(d));
    std::vector<double> values(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rest = idx;
        for (std::size_t i = 0; i < d; ++i) {
            grid[idx][i] = static_cast<double>(rest % n) / static_cast<double>(n);
            rest /= n;
        }
        values[idx] = time_change_value(spec, alpha, grid[idx], quad_panels);
    }
    out.alpha_min = *std::min_element(values.begin(), values.end());

    // On a regular grid with n >= 2m+1 points per axis the characters of
    // degree <= m are orthogonal, so the discrete projection is the exact
    // least-squares fit.
    const auto m = static_cast<std::int64_t>(fit_degree);
    TrigPoly fit(d);
    Frequency l(d, -m);
    while (true) {
        Coeff c = 0.0;
        for (std::size_t idx = 0; idx < total; ++idx) {
            double phase = 0.0;
            for (std::size_t i = 0; i < d; ++i)
                phase += static_cast<double>(l[i]) * grid[idx][i];
            c += values[idx] * std::polar(1.0, -2.0 * std::numbers::pi * phase);
        }
        c /= static_cast<double>(total);
        if (std::abs(c) > 1e-14)
            fit.add_term(l, c);
        std::size_t i = 0;
        while (i < d && ++l[i] > m)
            l[i++] = -m;
        if (i == d)
            break;
    }
    // Restore exact Hermitian symmetry.
    TrigPoly sym(d);
    for (const auto& [freq, c] : fit.terms()) {
        Frequency neg(freq);
        for (auto& v : neg)
            v = -v;
        sym.add_term(freq, 0.5 * (c + std::conj(fit.coeff(neg))));
    }
    out.roof = sym;
    for (std::size_t idx = 0; idx < total; ++idx)
        out.residual = std::max(out.residual, std::fabs(out.roof.eval(grid[idx]) - values[idx]));
    return out;
}

} // namespace skewflow
