#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

#include "skewflow/fixed.hpp"
#include "skewflow/skewtrans.hpp"

namespace skewflow {

using Coeff = std::complex<double>;

inline constexpr double kPruneThreshold = 1e-15;

/// Finite Fourier series sum_l c_l e(l.x) on T^dim, e(x) = exp(2 pi i x).
class TrigPoly {
public:
    using Terms = std::map<Frequency, Coeff>;

    TrigPoly() = default;
    explicit TrigPoly(std::size_t dim) : dim_(dim) {}

    static TrigPoly constant(std::size_t dim, double c);
    /// c cos(2 pi l.x)
    static TrigPoly cosine(const Frequency& l, double c = 1.0);
    /// c sin(2 pi l.x)
    static TrigPoly sine(const Frequency& l, double c = 1.0);

    std::size_t dim() const noexcept { return dim_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool empty() const noexcept { return terms_.empty(); }
    /// max |l|_inf over the support.
    std::int64_t degree() const;

    Coeff coeff(const Frequency& l) const;
    /// Adds c to the coefficient at l; drops it if it falls below the
    /// pruning threshold.
    void add_term(const Frequency& l, Coeff c);
    void set_term(const Frequency& l, Coeff c);

    /// Hermitian symmetry c_{-l} = conj(c_l), i.e. real-valued.
    bool is_real(double tol = 1e-13) const;
    double mean() const { return coeff(Frequency(dim_, 0)).real(); }

    Coeff eval_complex(const Point& x) const;
    /// Real value; throws AssertionMismatch if the imaginary part is not
    /// negligible.
    double eval(const Point& x) const;

    /// 2 pi sum |l|_1 |c_l|
    double lipschitz() const;
    double l1_norm() const;
    /// sum |l_j| |c_l|
    double directional_weight(std::size_t j) const;

    TrigPoly& operator+=(const TrigPoly& o);
    TrigPoly& operator-=(const TrigPoly& o);
    TrigPoly& operator*=(Coeff s);
    friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
    friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
    friend TrigPoly operator*(TrigPoly a, Coeff s) { return a *= s; }
    friend TrigPoly operator*(Coeff s, TrigPoly a) { return a *= s; }
    friend bool operator==(const TrigPoly& a, const TrigPoly& b)
    {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

private:
    std::size_t dim_ = 0;
    Terms terms_;
};

/// Evaluator on fixed-point coordinates. For real polynomials the +-l terms
/// are folded so each pair costs one sin/cos.
class TrigEvaluator {
public:
    explicit TrigEvaluator(const TrigPoly& f);

    std::size_t dim() const noexcept { return dim_; }
    double real(const Word* x) const noexcept;
    Coeff complex(const Word* x) const noexcept;

private:
    std::size_t dim_;
    bool folded_;
    Coeff constant_;
    std::vector<Word> freqs_;
    std::vector<double> re_;
    std::vector<double> im_;
};

/// Coefficient phase e(l.b) computed exactly mod 1 from the fixed-point b.
Coeff unit_phase(const Frequency& l, const std::vector<Word>& b);
Word phase_word(const Frequency& l, const std::vector<Word>& b);

/// l -> A l (the row l A^T), with overflow checks.
Frequency push_forward(const IntMatrix& a, const Frequency& l);

TrigPoly compose_with_T(const TrigPoly& f, const SkewTranslation& t);
/// f o T^n for n >= 0 in closed form.
TrigPoly compose_with_power(const TrigPoly& f, const SkewTranslation& t, std::uint64_t n);
TrigPoly birkhoff_poly(const TrigPoly& f, const SkewTranslation& t, std::uint64_t n,
                       std::size_t support_cap = 1000000);

struct Decomposition {
    std::size_t d0 = 0;
    TrigPoly base;               // on T^d0
    std::vector<TrigPoly> perps; // perps[j] lives on T^(d0+1+j)
};

Decomposition decompose(const TrigPoly& f, std::size_t d0);
/// Pads frequencies with zeros up to dimension d.
TrigPoly lift(const TrigPoly& f, std::size_t d);
/// Drops trailing coordinates; throws RoofNotFiberConstant if f depends on them.
TrigPoly restrict_to(const TrigPoly& f, std::size_t i);
bool depends_only_on_first(const TrigPoly& f, std::size_t i);
/// Derivative in coordinate j (0-based).
TrigPoly partial_derivative(const TrigPoly& f, std::size_t j);
/// Directional derivative grad f . v.
TrigPoly directional_derivative(const TrigPoly& f, const std::vector<double>& v);

/// Largest |f(x)-g(x)| over a regular grid with n points per axis.
double grid_sup_distance(const TrigPoly& f, const TrigPoly& g, std::size_t n);

nlohmann::json to_json(const TrigPoly& f);
TrigPoly trigpoly_from_json(const nlohmann::json& j);

} // namespace skewflow
