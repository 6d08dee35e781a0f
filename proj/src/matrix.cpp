#include "skewflow/matrix.hpp"

#include <boost/integer/common_factor_rt.hpp>

namespace skewflow {

BigMatrix to_big(const IntMatrix& m)
{
    BigMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = m(i, j);
    return out;
}

RationalMatrix to_rational(const BigMatrix& m)
{
    RationalMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = Rational(m(i, j));
    return out;
}

BigInt binomial(const BigInt& n, unsigned k)
{
    if (n < k)
        return 0;
    BigInt result = 1;
    for (unsigned i = 0; i < k; ++i) {
        result *= n - i;
        result /= i + 1;
    }
    return result;
}

std::vector<std::size_t> rref(RationalMatrix& m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m(pivot, col) == 0)
            ++pivot;
        if (pivot == m.rows())
            continue;
        if (pivot != row)
            for (std::size_t j = 0; j < m.cols(); ++j)
                std::swap(m(pivot, j), m(row, j));
        const Rational inv = 1 / m(row, col);
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0)
                continue;
            const Rational factor = m(i, col);
            for (std::size_t j = 0; j < m.cols(); ++j)
                m(i, j) -= factor * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(const RationalMatrix& m)
{
    RationalMatrix copy = m;
    return rref(copy).size();
}

std::vector<BigInt> primitive_integer_vector(const std::vector<Rational>& v)
{
    BigInt lcm = 1;
    for (const auto& q : v)
        if (q != 0)
            lcm = boost::integer::lcm(lcm, BigInt(boost::multiprecision::denominator(q)));
    std::vector<BigInt> out(v.size());
    BigInt g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Rational scaled = v[i] * lcm;
        out[i] = boost::multiprecision::numerator(scaled);
        g = boost::integer::gcd(g, BigInt(abs(out[i])));
    }
    if (g == 0)
        return out;
    int sign = 0;
    for (const auto& x : out)
        if (x != 0) {
            sign = x > 0 ? 1 : -1;
            break;
        }
    for (auto& x : out)
        x = x / g * sign;
    return out;
}

BigMatrix primitive_row_basis(const BigMatrix& m)
{
    RationalMatrix r = to_rational(m);
    const auto pivots = rref(r);
    BigMatrix basis(pivots.size(), m.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        const auto prim = primitive_integer_vector(r.row(i));
        for (std::size_t j = 0; j < m.cols(); ++j)
            basis(i, j) = prim[j];
    }
    return basis;
}

} // namespace skewflow
