#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "skewflow/matrix.hpp"
#include "skewflow/skewtrans.hpp"
#include "skewflow/suspension.hpp"
#include "skewflow/trigpoly.hpp"

namespace skewflow {

/// Divisibility chain E_1 = 1 | E_2 | ... | E_d with i! | E_i.
struct Lattice {
    std::vector<std::int64_t> E;

    explicit Lattice(std::vector<std::int64_t> chain);
    std::size_t d() const noexcept { return E.size(); }
};

namespace detail {

template <typename S>
bool scalar_equal(const S& a, const S& b)
{
    if constexpr (std::is_floating_point_v<S>)
        return std::fabs(a - b) <= 1e-12 * std::max({1.0, std::fabs(a), std::fabs(b)});
    else
        return a == b;
}

} // namespace detail

/// Quasi-abelian filiform algebra f_d with basis f_0..f_d and brackets
/// [f_0, f_i] = lambda_i f_{i+1}. Elements are coordinate vectors
/// (x, y_1, ..., y_d) in exponential coordinates.
template <typename S>
class FiliformAlgebra {
public:
    using Element = std::vector<S>;
    using Mat = Matrix<S>;

    explicit FiliformAlgebra(std::size_t d) : d_(d), lambda_(d > 0 ? d - 1 : 0, S(1))
    {
        if (d < 1)
            fail(ErrorKind::DimensionTooSmall, "filiform algebra needs d >= 1");
    }

    FiliformAlgebra(std::size_t d, std::vector<S> lambda) : d_(d), lambda_(std::move(lambda))
    {
        if (d < 1)
            fail(ErrorKind::DimensionTooSmall, "filiform algebra needs d >= 1");
        if (lambda_.size() + 1 != d)
            fail(ErrorKind::DimensionMismatch, "need d-1 bracket scales");
        for (const auto& l : lambda_)
            if (!(l > S(0)))
                fail(ErrorKind::InvalidArgument, "bracket scales must be positive");
    }

    /// lambda_i = E_{i+1} / E_i
    static FiliformAlgebra lattice_adapted(const Lattice& lattice)
    {
        std::vector<S> lambda;
        for (std::size_t i = 0; i + 1 < lattice.d(); ++i)
            lambda.push_back(S(lattice.E[i + 1]) / S(lattice.E[i]));
        return FiliformAlgebra(lattice.d(), lambda);
    }

    std::size_t d() const noexcept { return d_; }
    /// lambda_i for i = 1..d-1.
    const S& lambda(std::size_t i) const { return lambda_.at(i - 1); }

    Element zero() const { return Element(d_ + 1, S(0)); }
    Element basis(std::size_t i, S scale = S(1)) const
    {
        Element e = zero();
        e.at(i) = scale;
        return e;
    }

    /// (d+1)x(d+1) strictly upper triangular; x on the first d-1
    /// superdiagonal slots, y_d..y_1 down the last column.
    Mat to_matrix(const Element& v) const
    {
        check(v);
        Mat m(d_ + 1, d_ + 1);
        for (std::size_t i = 0; i + 1 < d_; ++i)
            m(i, i + 1) = v[0] * lambda_[d_ - 2 - i];
        for (std::size_t i = 0; i < d_; ++i)
            m(i, d_) = v[d_ - i];
        return m;
    }

    Element from_matrix(const Mat& m) const
    {
        Element v = zero();
        if (d_ >= 2)
            v[0] = m(0, 1) / lambda_[d_ - 2];
        for (std::size_t i = 0; i < d_; ++i)
            v[d_ - i] = m(i, d_);
        return v;
    }

    Mat exp(const Mat& m) const
    {
        Mat result = Mat::identity(m.rows());
        Mat term = Mat::identity(m.rows());
        for (std::size_t j = 1; j <= d_; ++j) {
            term = term * m;
            term *= S(1) / S(static_cast<std::int64_t>(j));
            result += term;
        }
        return result;
    }

    Mat log(const Mat& u) const
    {
        const Mat n = u - Mat::identity(u.rows());
        Mat result(u.rows(), u.cols());
        Mat power = Mat::identity(u.rows());
        for (std::size_t j = 1; j <= d_; ++j) {
            power = power * n;
            const S coef = S(j % 2 == 1 ? 1 : -1) / S(static_cast<std::int64_t>(j));
            result += power * coef;
        }
        return result;
    }

    Element bracket(const Element& v, const Element& w) const
    {
        check(v);
        check(w);
        Element out = zero();
        for (std::size_t i = 1; i < d_; ++i)
            out[i + 1] = (v[0] * w[i] - w[0] * v[i]) * lambda_[i - 1];
        return out;
    }

    /// v * w = log(exp v exp w).
    Element product(const Element& v, const Element& w) const
    {
        check(v);
        check(w);
        Element out = zero();
        if (d_ == 1) {
            out[0] = v[0] + w[0];
            out[1] = v[1] + w[1];
            return out;
        }
        out = from_matrix(log(exp(to_matrix(v)) * exp(to_matrix(w))));
        // x and y_1 are additive; keep them free of rounding.
        out[0] = v[0] + w[0];
        out[1] = v[1] + w[1];
        return out;
    }

    Element negate(const Element& v) const
    {
        Element out = v;
        for (auto& c : out)
            c = -c;
        return out;
    }

    /// sum_j ad(-w)^j / j! applied to v, which equals (-w) * v * w.
    Element ad_series(const Element& v, const Element& w) const
    {
        const Element mw = negate(w);
        Element term = v;
        Element out = v;
        for (std::size_t j = 1; j < d_ + 1; ++j) {
            term = bracket(mw, term);
            for (auto& c : term)
                c = c / S(static_cast<std::int64_t>(j));
            for (std::size_t i = 0; i <= d_; ++i)
                out[i] += term[i];
        }
        return out;
    }

    /// (-w) * v * w, computed by BCH and by the adjoint series; throws
    /// AssertionMismatch if the two disagree.
    Element adjoint_conjugation(const Element& v, const Element& w) const
    {
        const Element series = ad_series(v, w);
        const Element direct = product(product(negate(w), v), w);
        for (std::size_t i = 0; i <= d_; ++i)
            if (!detail::scalar_equal(series[i], direct[i]))
                fail(ErrorKind::AssertionMismatch, "adjoint series and BCH conjugation disagree");
        return series;
    }

private:
    void check(const Element& v) const
    {
        if (v.size() != d_ + 1)
            fail(ErrorKind::DimensionMismatch, "algebra element has wrong arity");
    }

    std::size_t d_;
    std::vector<S> lambda_;
};

using RationalFiliform = FiliformAlgebra<Rational>;
using NumericFiliform = FiliformAlgebra<double>;

template <typename S>
std::vector<S> bch_product(const FiliformAlgebra<S>& alg, const std::vector<S>& v, const std::vector<S>& w)
{
    return alg.product(v, w);
}

template <typename S>
std::vector<S> adjoint_conjugation(const FiliformAlgebra<S>& alg, const std::vector<S>& v, const std::vector<S>& w)
{
    return alg.adjoint_conjugation(v, w);
}

template <typename S>
Matrix<S> to_matrix(const FiliformAlgebra<S>& alg, const std::vector<S>& v)
{
    return alg.to_matrix(v);
}

struct NilflowSpec {
    Lattice lattice;
    std::vector<double> w;

    NilflowSpec(Lattice l, std::vector<double> generator);
    std::size_t d() const noexcept { return lattice.d(); }
    NumericFiliform algebra() const { return NumericFiliform::lattice_adapted(lattice); }
    /// Advisory: w_1 / w_0 close to a rational with small denominator.
    RationalityAdvice rationality() const;
};

/// lambda = (m_0 f_0) * (0, m_1, ..., m_d). Integer points of the abelian
/// ideal together with f_0 generate the lattice; exponential coordinates of
/// lattice elements need not be integers once d >= 3.
struct LatticeReduction {
    std::vector<std::int64_t> lambda;
    std::vector<double> reduced;
};

/// g = lambda * g' with g' in [0,1)^{d+1}.
LatticeReduction reduce_mod_lattice(const NilflowSpec& spec, const std::vector<double>& g);

/// g * (t w)
std::vector<double> nilflow(const NilflowSpec& spec, const std::vector<double>& g, double t);
/// (0, x_1, ..., x_d)
std::vector<double> section_point(const Point& x);
/// Exponential coordinates of the lattice element named by `lambda`.
std::vector<double> lattice_element(const NilflowSpec& spec, const std::vector<std::int64_t>& lambda);

struct PoincareSection {
    IntMatrix matrix;
    std::vector<double> translation;
    double return_time = 0.0;
    SkewTranslation map() const { return SkewTranslation(matrix, translation); }
};

PoincareSection poincare_section(const NilflowSpec& spec);

struct TimeChangeResult {
    TrigPoly roof;
    double residual = 0.0;
    std::size_t grid_points_per_axis = 0;
    double alpha_min = 0.0;
};

/// Return-time roof of the time change by alpha (a polynomial on the d+1
/// fundamental-domain coordinates), with return time normalized to 1.
TimeChangeResult time_change_roof(const NilflowSpec& spec, const TrigPoly& alpha, std::size_t quad_panels,
                                  std::size_t fit_degree);

/// Psi^alpha at one section point by composite 8-point Gauss-Legendre.
double time_change_value(const NilflowSpec& spec, const TrigPoly& alpha, const Point& x, std::size_t quad_panels);

} // namespace skewflow
