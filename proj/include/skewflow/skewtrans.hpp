#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "skewflow/fixed.hpp"
#include "skewflow/matrix.hpp"

namespace skewflow {

using Point = std::vector<double>;
using Frequency = std::vector<std::int64_t>;

class TrigPoly;

struct ShearVector {
    std::vector<std::int64_t> v;
    std::int64_t a = 0;
};

/// Result of the continued-fraction rationality scan.
struct RationalityAdvice {
    bool looks_rational = false;
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;
};

/// T x = x A + b on T^d, row-vector convention. A is integer, upper
/// triangular, unipotent and different from the identity.
class SkewTranslation {
public:
    SkewTranslation(IntMatrix a, const std::vector<double>& b);

    std::size_t dim() const noexcept { return a_.rows(); }
    const IntMatrix& matrix() const noexcept { return a_; }
    const IntMatrix& inverse_matrix() const noexcept { return a_inv_; }
    const std::vector<double>& translation() const noexcept { return b_; }
    const std::vector<Word>& translation_fixed() const noexcept { return b_fixed_; }

    /// Minimal k with (A - Id)^(k+1) = 0.
    int nilpotency_degree() const noexcept { return k_; }
    std::size_t d0() const noexcept { return d0_; }
    /// Primitive integer bases of E_j = Im (A - Id)^j, j = 0..k+1.
    const std::vector<BigMatrix>& filtration() const noexcept { return filtration_; }
    /// (A - Id)^j for j = 0..k.
    const std::vector<BigMatrix>& nilpotent_powers() const noexcept { return nil_powers_; }

    const AffineMod1& forward() const noexcept { return forward_; }
    const AffineMod1& backward() const noexcept { return backward_; }
    /// T^n as an exact affine map on fixed-point coordinates, n in Z.
    AffineMod1 power_map(std::int64_t n) const;

    Point apply(const Point& x) const;
    Point iterate(const Point& x, std::int64_t n) const;

    BigMatrix power_matrix(std::uint64_t n) const;
    /// b(N) = sum_{i<N} b A^i, not reduced mod 1.
    std::vector<double> power_translation(std::uint64_t n) const;

    SkewTranslation factor(std::size_t i) const;
    ShearVector shear_vector() const;

    /// Advisory only: flags translation components that are close to a
    /// rational with denominator <= max_den.
    std::vector<RationalityAdvice> rationality_scan(std::int64_t max_den = 1000000) const;

private:
    IntMatrix a_;
    IntMatrix a_inv_;
    std::vector<double> b_;
    std::vector<Word> b_fixed_;
    int k_ = 0;
    std::size_t d0_ = 0;
    std::vector<BigMatrix> nil_powers_;
    std::vector<BigMatrix> filtration_;
    AffineMod1 forward_;
    AffineMod1 backward_;
};

RationalityAdvice rationality_scan(double x, std::int64_t max_den = 1000000);

/// S_n(f)(x): forward sum for n > 0, 0 for n = 0, minus the backward sum over
/// T^n x .. T^-1 x for n < 0.
double birkhoff_sum_numeric(const SkewTranslation& t, const TrigPoly& f, const Point& x,
                            std::int64_t n);
/// Same sum started from a fixed-point point.
double birkhoff_sum_fixed(const SkewTranslation& t, const TrigPoly& f, const std::vector<Word>& x,
                            std::int64_t n);

bool has_nonzero_superdiagonal(const IntMatrix& a);

} // namespace skewflow
