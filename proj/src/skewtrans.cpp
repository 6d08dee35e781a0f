#include "skewflow/skewtrans.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "skewflow/trigpoly.hpp"

namespace skewflow {

namespace {

std::int64_t to_int64(const BigInt& v, const char* what)
{
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        fail(ErrorKind::FrequencyOverflow, std::string(what) + " exceeds 64-bit range");
    return static_cast<std::int64_t>(v);
}

void validate(const IntMatrix& a)
{
    if (!a.square())
        fail(ErrorKind::DimensionMismatch, "matrix must be square");
    if (a.rows() < 2)
        fail(ErrorKind::DimensionTooSmall, "dimension must be at least 2");
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (a(i, i) != 1)
            fail(ErrorKind::NotUnipotentUpperTriangular, "diagonal entry is not 1");
        for (std::size_t j = 0; j < i; ++j)
            if (a(i, j) != 0)
                fail(ErrorKind::NotUnipotentUpperTriangular, "nonzero entry below the diagonal");
    }
    if (a == IntMatrix::identity(a.rows()))
        fail(ErrorKind::IdentityMatrix, "A must differ from the identity");
}

} // namespace

bool has_nonzero_superdiagonal(const IntMatrix& a)
{
    for (std::size_t i = 0; i + 1 < a.rows(); ++i)
        if (a(i, i + 1) == 0)
            return false;
    return true;
}

SkewTranslation::SkewTranslation(IntMatrix a, const std::vector<double>& b) : a_(std::move(a))
{
    validate(a_);
    const std::size_t d = a_.rows();
    if (b.size() != d)
        fail(ErrorKind::DimensionMismatch, "translation length differs from matrix size");

    b_fixed_ = to_fixed(b);
    b_.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        b_[i] = b[i] - std::floor(b[i]);
        if (b_[i] >= 1.0)
            b_[i] = 0.0;
    }

    const BigMatrix n = to_big(a_) - BigMatrix::identity(d);
    nil_powers_.push_back(BigMatrix::identity(d));
    while (!nil_powers_.back().is_zero())
        nil_powers_.push_back(nil_powers_.back() * n);
    nil_powers_.pop_back();
    k_ = static_cast<int>(nil_powers_.size()) - 1;

    for (int j = 0; j <= k_; ++j)
        filtration_.push_back(primitive_row_basis(nil_powers_[static_cast<std::size_t>(j)]));
    filtration_.emplace_back(0, d);
    d0_ = d - filtration_[static_cast<std::size_t>(k_)].rows();

    BigMatrix inv(d, d);
    for (int j = 0; j <= k_; ++j) {
        const BigMatrix& p = nil_powers_[static_cast<std::size_t>(j)];
        inv = (j % 2 == 0) ? inv + p : inv - p;
    }
    a_inv_ = IntMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            a_inv_(i, j) = to_int64(inv(i, j), "inverse matrix entry");

    forward_ = AffineMod1(a_, b_fixed_);
    // T^-1 x = (x - b) A^-1 = x A^-1 - b A^-1.
    std::vector<Word> c(d, 0);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i)
            c[j] -= b_fixed_[i] * wrap(a_inv_(i, j));
    backward_ = AffineMod1(a_inv_, c);
}

AffineMod1 SkewTranslation::power_map(std::int64_t n) const
{
    if (n >= 0)
        return forward_.power(static_cast<std::uint64_t>(n));
    return backward_.power(static_cast<std::uint64_t>(-(n + 1)) + 1U);
}

Point SkewTranslation::apply(const Point& x) const
{
    if (x.size() != dim())
        fail(ErrorKind::DimensionMismatch, "point dimension");
    return from_fixed(forward_.apply(to_fixed(x)));
}

Point SkewTranslation::iterate(const Point& x, std::int64_t n) const
{
    if (x.size() != dim())
        fail(ErrorKind::DimensionMismatch, "point dimension");
    if (n == 0)
        return x;
    return from_fixed(power_map(n).apply(to_fixed(x)));
}

BigMatrix SkewTranslation::power_matrix(std::uint64_t n) const
{
    BigMatrix result(dim(), dim());
    for (int j = 0; j <= k_; ++j)
        result += binomial(BigInt(n), static_cast<unsigned>(j)) * nil_powers_[static_cast<std::size_t>(j)];
    return result;
}

std::vector<double> SkewTranslation::power_translation(std::uint64_t n) const
{
    // sum_{i<N} A^i = sum_j C(N, j+1) (A - Id)^j
    BigMatrix m(dim(), dim());
    for (int j = 0; j <= k_; ++j)
        m += binomial(BigInt(n), static_cast<unsigned>(j + 1)) * nil_powers_[static_cast<std::size_t>(j)];
    std::vector<double> out(dim(), 0.0);
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j)
            out[j] += b_[i] * m(i, j).convert_to<double>();
    return out;
}

SkewTranslation SkewTranslation::factor(std::size_t i) const
{
    if (i < 2 || i > dim())
        fail(ErrorKind::IndexOutOfRange, "factor index must lie in [2, d]");
    IntMatrix block(i, i);
    for (std::size_t r = 0; r < i; ++r)
        for (std::size_t c = 0; c < i; ++c)
            block(r, c) = a_(r, c);
    return SkewTranslation(block, std::vector<double>(b_.begin(), b_.begin() + static_cast<std::ptrdiff_t>(i)));
}

ShearVector SkewTranslation::shear_vector() const
{
    // v (A - Id) = e_d with v_d = 0, i.e. rows 0..d-2 of (A - Id) combined.
    const std::size_t d = dim();
    RationalMatrix aug(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i + 1 < d; ++i)
            aug(j, i) = Rational(a_(i, j) - (i == j ? 1 : 0));
        aug(j, d - 1) = Rational(j + 1 == d ? 1 : 0);
    }
    const auto pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == d - 1)
        fail(ErrorKind::NoShearVector, "e_d is not in the image of A - Id");

    std::vector<Rational> v(d, Rational(0));
    for (std::size_t r = 0; r < pivots.size(); ++r)
        v[pivots[r]] = aug(r, d - 1);

    BigInt lcm = 1;
    for (const auto& q : v)
        if (q != 0) {
            const BigInt den = boost::multiprecision::denominator(q);
            lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
        }
    std::vector<BigInt> vi(d);
    BigInt g = 0;
    for (std::size_t i = 0; i < d; ++i) {
        vi[i] = boost::multiprecision::numerator(Rational(v[i] * lcm));
        g = boost::multiprecision::gcd(g, BigInt(abs(vi[i])));
    }
    ShearVector out;
    out.v.resize(d);
    for (std::size_t i = 0; i < d; ++i)
        out.v[i] = to_int64(vi[i] / g, "shear vector entry");
    out.a = to_int64(lcm / g, "shear factor");
    return out;
}

RationalityAdvice rationality_scan(double x, std::int64_t max_den)
{
    RationalityAdvice advice;
    x -= std::floor(x);
    // Convergents h/k of the continued fraction of x.
    long double h_prev = 1, h = 0, k_prev = 0, k = 1;
    long double rem = x;
    for (int iter = 0; iter < 64; ++iter) {
        if (k > max_den)
            break;
        if (std::fabs(static_cast<long double>(x) - h / k) <= 1e-14L) {
            advice.looks_rational = true;
            advice.numerator = static_cast<std::int64_t>(h);
            advice.denominator = static_cast<std::int64_t>(k);
            return advice;
        }
        rem = 1.0L / rem;
        const long double a = std::floor(rem);
        rem -= a;
        const long double h_next = a * h + h_prev;
        const long double k_next = a * k + k_prev;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
        if (rem == 0.0L) {
            if (k <= max_den) {
                advice.looks_rational = true;
                advice.numerator = static_cast<std::int64_t>(h);
                advice.denominator = static_cast<std::int64_t>(k);
            }
            return advice;
        }
    }
    return advice;
}

std::vector<RationalityAdvice> SkewTranslation::rationality_scan(std::int64_t max_den) const
{
    std::vector<RationalityAdvice> out;
    for (double bi : b_)
        out.push_back(skewflow::rationality_scan(bi, max_den));
    return out;
}

double birkhoff_sum_numeric(const SkewTranslation& t, const TrigPoly& f, const Point& x, std::int64_t n)
{
    return birkhoff_sum_fixed(t, f, to_fixed(x), n);
}

double birkhoff_sum_fixed(const SkewTranslation& t, const TrigPoly& f, const std::vector<Word>& x,
                            std::int64_t n)
{
    if (f.dim() != t.dim() || x.size() != t.dim())
        fail(ErrorKind::DimensionMismatch, "Birkhoff sum dimensions");
    if (n == 0)
        return 0.0;
    const TrigEvaluator eval(f);
    std::vector<Word> p = x;
    std::vector<Word> q(p.size());
    double sum = 0.0;
    if (n > 0) {
        for (std::int64_t i = 0; i < n; ++i) {
            sum += eval.real(p.data());
            t.forward().apply(p.data(), q.data());
            p.swap(q);
        }
        return sum;
    }
    for (std::int64_t i = 0; i < -n; ++i) {
        t.backward().apply(p.data(), q.data());
        p.swap(q);
        sum += eval.real(p.data());
    }
    return -sum;
}

} // namespace skewflow
