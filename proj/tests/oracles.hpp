#pragma once

// Reference computations that share no code with the library beyond
// to_fixed and the TrigPoly container.

#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "skewflow/fixed.hpp"
#include "skewflow/trigpoly.hpp"

namespace oracle {

using skewflow::Coeff;
using skewflow::Frequency;
using skewflow::TrigPoly;
using skewflow::Word;

inline Frequency apply_column(const skewflow::IntMatrix& a, const Frequency& l)
{
    Frequency out(l.size(), 0);
    for (std::size_t i = 0; i < l.size(); ++i)
        for (std::size_t j = 0; j < l.size(); ++j)
            out[i] += a(i, j) * l[j];
    return out;
}

inline Coeff phase(const Frequency& l, const std::vector<double>& b)
{
    const auto bw = skewflow::to_fixed(b);
    Word w = 0;
    for (std::size_t i = 0; i < l.size(); ++i)
        w += static_cast<Word>(l[i]) * bw[i];
    const double x = static_cast<double>(static_cast<std::int64_t>(w)) * 0x1p-64;
    return std::polar(1.0, 2.0 * std::numbers::pi * x);
}

/// Least-squares solution of u o T - u = f over unknowns supported on
/// `box` (nonzero frequencies only), by dense QR.
inline TrigPoly least_squares_solution(const TrigPoly& f, const skewflow::IntMatrix& a,
                                       const std::vector<double>& b, const std::vector<Frequency>& box)
{
    std::map<Frequency, int> rows;
    auto row_of = [&rows](const Frequency& m) {
        auto it = rows.find(m);
        if (it == rows.end())
            it = rows.emplace(m, static_cast<int>(rows.size())).first;
        return it->second;
    };
    for (const auto& [l, c] : f.terms())
        row_of(l);
    std::vector<std::vector<std::pair<int, Coeff>>> cols(box.size());
    for (std::size_t k = 0; k < box.size(); ++k) {
        // e(l.x) o T = e(l.b) e((A l).x)
        cols[k].emplace_back(row_of(apply_column(a, box[k])), phase(box[k], b));
        cols[k].emplace_back(row_of(box[k]), Coeff(-1.0));
    }
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()),
                                                static_cast<Eigen::Index>(box.size()));
    for (std::size_t k = 0; k < box.size(); ++k)
        for (const auto& [r, v] : cols[k])
            m(r, static_cast<Eigen::Index>(k)) += v;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rows.size()));
    for (const auto& [l, c] : f.terms())
        rhs(rows.at(l)) = c;
    const Eigen::VectorXcd x = m.colPivHouseholderQr().solve(rhs);
    TrigPoly u(f.dim());
    for (std::size_t k = 0; k < box.size(); ++k)
        if (std::abs(x(static_cast<Eigen::Index>(k))) > 1e-13)
            u.add_term(box[k], x(static_cast<Eigen::Index>(k)));
    return u;
}

/// All frequencies with |l_i| <= r_i and l_d != 0.
inline std::vector<Frequency> box(const std::vector<std::int64_t>& radius)
{
    std::vector<Frequency> out;
    Frequency l(radius.size());
    for (std::size_t i = 0; i < radius.size(); ++i)
        l[i] = -radius[i];
    while (true) {
        if (l.back() != 0)
            out.push_back(l);
        std::size_t i = 0;
        while (i < l.size() && ++l[i] > radius[i]) {
            l[i] = -radius[i];
            ++i;
        }
        if (i == l.size())
            break;
    }
    return out;
}

/// Random real trigonometric polynomial with `terms` frequency pairs in
/// the box, all with nonzero last coordinate.
inline TrigPoly random_admissible(std::mt19937_64& rng, const std::vector<std::int64_t>& radius, int terms)
{
    const auto candidates = box(radius);
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    TrigPoly u(radius.size());
    for (int i = 0; i < terms; ++i) {
        const Frequency& l = candidates[pick(rng)];
        Frequency neg(l);
        for (auto& v : neg)
            v = -v;
        const Coeff c(amp(rng), amp(rng));
        u.add_term(l, c);
        u.add_term(neg, std::conj(c));
    }
    return u;
}

/// Phase word of P(k) on the orbit of (0,0,1) under the T3 example matrix:
/// P(k) = -((k^3-k)/3 b_x + (k^2-k) b_y + k b_z), valid for all integers k.
inline Word claim_phase(std::int64_t k, const std::vector<double>& b)
{
    const auto bw = skewflow::to_fixed(b);
    const std::int64_t cx = (k * k * k - k) / 3;
    const std::int64_t cy = k * k - k;
    const Word s = static_cast<Word>(cx) * bw[0] + static_cast<Word>(cy) * bw[1] + static_cast<Word>(k) * bw[2];
    return Word(0) - s;
}

/// Real polynomial on the orbit of (0,0,1) (and its negative) whose
/// coefficients c_k, k in [-m, m], make sum_k c_k e(P(k)) vanish. The
/// coefficients for k != 0 are given; c_0 is solved for.
inline TrigPoly claim_polynomial(const std::vector<double>& b, const std::map<std::int64_t, Coeff>& given)
{
    Coeff acc = 0.0;
    for (const auto& [k, c] : given) {
        const double x = static_cast<double>(static_cast<std::int64_t>(claim_phase(k, b))) * 0x1p-64;
        acc += c * std::polar(1.0, 2.0 * std::numbers::pi * x);
    }
    std::map<std::int64_t, Coeff> all = given;
    all[0] = -acc;
    TrigPoly f(3);
    for (const auto& [k, c] : all) {
        f.add_term({k * k + k, 2 * k, 1}, c);
        f.add_term({-(k * k + k), -2 * k, -1}, std::conj(c));
    }
    return f;
}

} // namespace oracle
