#include "skewflow/fixed.hpp"

#include <cmath>

namespace skewflow {

Word to_fixed(double x)
{
    if (!std::isfinite(x))
        fail(ErrorKind::InvalidArgument, "non-finite torus coordinate");
    x -= std::floor(x);
    if (x >= 1.0)
        x = 0.0;
    return static_cast<Word>(std::ldexp(x, 64));
}

double from_fixed(Word u)
{
    const double x = std::ldexp(static_cast<double>(u), -64);
    // Rounding to 53 bits may land on 1.0; keep the coordinate inside [0,1).
    return x < 1.0 ? x : std::nextafter(1.0, 0.0);
}

std::vector<Word> to_fixed(const std::vector<double>& x)
{
    std::vector<Word> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out[i] = to_fixed(x[i]);
    return out;
}

std::vector<double> from_fixed(const std::vector<Word>& u)
{
    std::vector<double> out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        out[i] = from_fixed(u[i]);
    return out;
}

AffineMod1::AffineMod1(const IntMatrix& m, std::vector<Word> c)
    : dim_(m.rows()), m_(m.rows() * m.cols()), c_(std::move(c))
{
    if (!m.square() || c_.size() != dim_)
        fail(ErrorKind::DimensionMismatch, "affine map shape");
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j)
            m_[i * dim_ + j] = wrap(m(i, j));
}

AffineMod1 AffineMod1::identity(std::size_t dim)
{
    return AffineMod1(IntMatrix::identity(dim), std::vector<Word>(dim, 0));
}

void AffineMod1::apply(const Word* in, Word* out) const noexcept
{
    for (std::size_t j = 0; j < dim_; ++j) {
        Word acc = c_[j];
        for (std::size_t i = 0; i < dim_; ++i)
            acc += in[i] * m_[i * dim_ + j];
        out[j] = acc;
    }
}

std::vector<Word> AffineMod1::apply(const std::vector<Word>& x) const
{
    if (x.size() != dim_)
        fail(ErrorKind::DimensionMismatch, "point dimension");
    std::vector<Word> out(dim_);
    apply(x.data(), out.data());
    return out;
}

AffineMod1 AffineMod1::then(const AffineMod1& g) const
{
    if (g.dim_ != dim_)
        fail(ErrorKind::DimensionMismatch, "affine composition");
    AffineMod1 r;
    r.dim_ = dim_;
    r.m_.assign(dim_ * dim_, 0);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t k = 0; k < dim_; ++k)
            for (std::size_t j = 0; j < dim_; ++j)
                r.m_[i * dim_ + j] += m_[i * dim_ + k] * g.m_[k * dim_ + j];
    r.c_.resize(dim_);
    g.apply(c_.data(), r.c_.data());
    return r;
}

AffineMod1 AffineMod1::power(std::uint64_t n) const
{
    AffineMod1 result = identity(dim_);
    AffineMod1 base = *this;
    while (n) {
        if (n & 1U)
            result = result.then(base);
        n >>= 1U;
        if (n)
            base = base.then(base);
    }
    return result;
}

} // namespace skewflow
