#include "skewflow/trigpoly.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace skewflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t checked_mul_add(std::int64_t acc, std::int64_t a, std::int64_t b)
{
    std::int64_t prod = 0;
    std::int64_t sum = 0;
    if (__builtin_mul_overflow(a, b, &prod) || __builtin_add_overflow(acc, prod, &sum))
        fail(ErrorKind::FrequencyOverflow, "frequency exceeds 64-bit range");
    return sum;
}

Frequency negate(const Frequency& l)
{
    Frequency m(l.size());
    for (std::size_t i = 0; i < l.size(); ++i)
        m[i] = -l[i];
    return m;
}

bool is_zero(const Frequency& l)
{
    for (auto v : l)
        if (v != 0)
            return false;
    return true;
}

// First nonzero coordinate positive.
bool is_positive(const Frequency& l)
{
    for (auto v : l)
        if (v != 0)
            return v > 0;
    return false;
}

void check_dim(const TrigPoly& f, std::size_t d)
{
    if (f.dim() != d)
        fail(ErrorKind::DimensionMismatch, "trigonometric polynomial dimension " +
                                               std::to_string(f.dim()) + " vs " + std::to_string(d));
}

double parse_number(const nlohmann::json& j)
{
    if (j.is_number())
        return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &pos);
        } catch (const std::exception&) {
            fail(ErrorKind::ConfigError, "not a number: " + s);
        }
        if (pos != s.size())
            fail(ErrorKind::ConfigError, "not a number: " + s);
        return v;
    }
    fail(ErrorKind::ConfigError, "expected a number or decimal string");
}

} // namespace

TrigPoly TrigPoly::constant(std::size_t dim, double c)
{
    TrigPoly f(dim);
    f.add_term(Frequency(dim, 0), c);
    return f;
}

TrigPoly TrigPoly::cosine(const Frequency& l, double c)
{
    TrigPoly f(l.size());
    if (is_zero(l)) {
        f.add_term(l, c);
        return f;
    }
    f.add_term(l, 0.5 * c);
    f.add_term(negate(l), 0.5 * c);
    return f;
}

TrigPoly TrigPoly::sine(const Frequency& l, double c)
{
    TrigPoly f(l.size());
    if (is_zero(l))
        return f;
    f.add_term(l, Coeff(0.0, -0.5 * c));
    f.add_term(negate(l), Coeff(0.0, 0.5 * c));
    return f;
}

std::int64_t TrigPoly::degree() const
{
    std::int64_t m = 0;
    for (const auto& [l, c] : terms_)
        for (auto v : l)
            m = std::max<std::int64_t>(m, v < 0 ? -v : v);
    return m;
}

Coeff TrigPoly::coeff(const Frequency& l) const
{
    const auto it = terms_.find(l);
    return it == terms_.end() ? Coeff(0.0) : it->second;
}

void TrigPoly::add_term(const Frequency& l, Coeff c)
{
    check_dim(*this, l.size());
    auto [it, inserted] = terms_.try_emplace(l, c);
    if (!inserted)
        it->second += c;
    if (std::abs(it->second) <= kPruneThreshold)
        terms_.erase(it);
}

void TrigPoly::set_term(const Frequency& l, Coeff c)
{
    check_dim(*this, l.size());
    if (std::abs(c) <= kPruneThreshold)
        terms_.erase(l);
    else
        terms_[l] = c;
}

bool TrigPoly::is_real(double tol) const
{
    double scale = 0.0;
    for (const auto& [l, c] : terms_)
        scale = std::max(scale, std::abs(c));
    for (const auto& [l, c] : terms_)
        if (std::abs(coeff(negate(l)) - std::conj(c)) > tol * std::max(1.0, scale))
            return false;
    return true;
}

Coeff TrigPoly::eval_complex(const Point& x) const
{
    if (x.size() != dim_)
        fail(ErrorKind::DimensionMismatch, "evaluation point dimension");
    const auto u = to_fixed(x);
    Coeff sum = 0.0;
    for (const auto& [l, c] : terms_) {
        Word w = 0;
        for (std::size_t i = 0; i < dim_; ++i)
            w += wrap(l[i]) * u[i];
        const double ang = kTwoPi * signed_phase(w);
        sum += c * Coeff(std::cos(ang), std::sin(ang));
    }
    return sum;
}

double TrigPoly::eval(const Point& x) const
{
    const Coeff v = eval_complex(x);
    if (std::abs(v.imag()) > 1e-12 * std::max(1.0, l1_norm()))
        fail(ErrorKind::AssertionMismatch, "polynomial is not real-valued at the evaluation point");
    return v.real();
}

double TrigPoly::lipschitz() const
{
    double s = 0.0;
    for (const auto& [l, c] : terms_) {
        double n1 = 0.0;
        for (auto v : l)
            n1 += std::fabs(static_cast<double>(v));
        s += n1 * std::abs(c);
    }
    return kTwoPi * s;
}

double TrigPoly::l1_norm() const
{
    double s = 0.0;
    for (const auto& [l, c] : terms_)
        s += std::abs(c);
    return s;
}

double TrigPoly::directional_weight(std::size_t j) const
{
    if (j >= dim_)
        fail(ErrorKind::IndexOutOfRange, "coordinate index");
    double s = 0.0;
    for (const auto& [l, c] : terms_)
        s += std::fabs(static_cast<double>(l[j])) * std::abs(c);
    return s;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& o)
{
    if (dim_ == 0 && terms_.empty())
        dim_ = o.dim_;
    check_dim(o, dim_);
    for (const auto& [l, c] : o.terms_)
        add_term(l, c);
    return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& o)
{
    if (dim_ == 0 && terms_.empty())
        dim_ = o.dim_;
    check_dim(o, dim_);
    for (const auto& [l, c] : o.terms_)
        add_term(l, -c);
    return *this;
}

TrigPoly& TrigPoly::operator*=(Coeff s)
{
    Terms out;
    for (const auto& [l, c] : terms_) {
        const Coeff v = c * s;
        if (std::abs(v) > kPruneThreshold)
            out.emplace(l, v);
    }
    terms_.swap(out);
    return *this;
}

TrigEvaluator::TrigEvaluator(const TrigPoly& f) : dim_(f.dim()), folded_(f.is_real()), constant_(0.0)
{
    for (const auto& [l, c] : f.terms()) {
        if (is_zero(l)) {
            constant_ = c;
            continue;
        }
        Coeff w = c;
        if (folded_) {
            if (!is_positive(l))
                continue;
            w = 2.0 * c;
        }
        for (auto v : l)
            freqs_.push_back(wrap(v));
        re_.push_back(w.real());
        im_.push_back(w.imag());
    }
}

double TrigEvaluator::real(const Word* x) const noexcept
{
    if (!folded_)
        return complex(x).real();
    double sum = constant_.real();
    const std::size_t n = re_.size();
    const Word* l = freqs_.data();
    for (std::size_t t = 0; t < n; ++t, l += dim_) {
        Word w = 0;
        for (std::size_t i = 0; i < dim_; ++i)
            w += l[i] * x[i];
        const double ang = kTwoPi * signed_phase(w);
        sum += re_[t] * std::cos(ang) - im_[t] * std::sin(ang);
    }
    return sum;
}

Coeff TrigEvaluator::complex(const Word* x) const noexcept
{
    if (folded_)
        return real(x);
    Coeff sum = constant_;
    const std::size_t n = re_.size();
    const Word* l = freqs_.data();
    for (std::size_t t = 0; t < n; ++t, l += dim_) {
        Word w = 0;
        for (std::size_t i = 0; i < dim_; ++i)
            w += l[i] * x[i];
        const double ang = kTwoPi * signed_phase(w);
        sum += Coeff(re_[t], im_[t]) * Coeff(std::cos(ang), std::sin(ang));
    }
    return sum;
}

Word phase_word(const Frequency& l, const std::vector<Word>& b)
{
    Word w = 0;
    for (std::size_t i = 0; i < l.size(); ++i)
        w += wrap(l[i]) * b[i];
    return w;
}

Coeff unit_phase(const Frequency& l, const std::vector<Word>& b)
{
    const double ang = kTwoPi * signed_phase(phase_word(l, b));
    return {std::cos(ang), std::sin(ang)};
}

Frequency push_forward(const IntMatrix& a, const Frequency& l)
{
    Frequency out(l.size(), 0);
    for (std::size_t i = 0; i < l.size(); ++i) {
        std::int64_t acc = 0;
        for (std::size_t j = i; j < l.size(); ++j)
            if (a(i, j) != 0)
                acc = checked_mul_add(acc, a(i, j), l[j]);
        out[i] = acc;
    }
    return out;
}

TrigPoly compose_with_T(const TrigPoly& f, const SkewTranslation& t)
{
    check_dim(f, t.dim());
    TrigPoly out(f.dim());
    for (const auto& [l, c] : f.terms())
        out.add_term(push_forward(t.matrix(), l), c * unit_phase(l, t.translation_fixed()));
    return out;
}

TrigPoly compose_with_power(const TrigPoly& f, const SkewTranslation& t, std::uint64_t n)
{
    check_dim(f, t.dim());
    const BigMatrix an = t.power_matrix(n);
    IntMatrix a(t.dim(), t.dim());
    for (std::size_t i = 0; i < t.dim(); ++i)
        for (std::size_t j = 0; j < t.dim(); ++j) {
            if (an(i, j) > std::numeric_limits<std::int64_t>::max() ||
                an(i, j) < std::numeric_limits<std::int64_t>::min())
                fail(ErrorKind::FrequencyOverflow, "A^n entry exceeds 64-bit range");
            a(i, j) = static_cast<std::int64_t>(an(i, j));
        }
    const std::vector<Word> bn = t.power_map(static_cast<std::int64_t>(n)).offset();
    TrigPoly out(f.dim());
    for (const auto& [l, c] : f.terms())
        out.add_term(push_forward(a, l), c * unit_phase(l, bn));
    return out;
}

TrigPoly birkhoff_poly(const TrigPoly& f, const SkewTranslation& t, std::uint64_t n, std::size_t support_cap)
{
    check_dim(f, t.dim());
    TrigPoly sum(f.dim());
    TrigPoly g = f;
    for (std::uint64_t r = 0; r < n; ++r) {
        sum += g;
        if (sum.size() > support_cap)
            fail(ErrorKind::SupportExplosion,
                 "Birkhoff polynomial support exceeds " + std::to_string(support_cap));
        if (r + 1 < n)
            g = compose_with_T(g, t);
    }
    return sum;
}

Decomposition decompose(const TrigPoly& f, std::size_t d0)
{
    const std::size_t d = f.dim();
    if (d0 < 1 || d0 + 1 > d)
        fail(ErrorKind::IndexOutOfRange, "d0 must lie in [1, d-1]");
    Decomposition out;
    out.d0 = d0;
    out.base = TrigPoly(d0);
    for (std::size_t i = d0 + 1; i <= d; ++i)
        out.perps.emplace_back(i);
    for (const auto& [l, c] : f.terms()) {
        // Highest coordinate (1-based) carrying a nonzero frequency.
        std::size_t top = 0;
        for (std::size_t j = 0; j < d; ++j)
            if (l[j] != 0)
                top = j + 1;
        if (top <= d0)
            out.base.add_term(Frequency(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(d0)), c);
        else
            out.perps[top - d0 - 1].add_term(Frequency(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(top)), c);
    }
    return out;
}

TrigPoly lift(const TrigPoly& f, std::size_t d)
{
    if (d < f.dim())
        fail(ErrorKind::DimensionMismatch, "cannot lift to a smaller torus");
    TrigPoly out(d);
    for (const auto& [l, c] : f.terms()) {
        Frequency m(d, 0);
        std::copy(l.begin(), l.end(), m.begin());
        out.add_term(m, c);
    }
    return out;
}

bool depends_only_on_first(const TrigPoly& f, std::size_t i)
{
    for (const auto& [l, c] : f.terms())
        for (std::size_t j = i; j < l.size(); ++j)
            if (l[j] != 0)
                return false;
    return true;
}

TrigPoly restrict_to(const TrigPoly& f, std::size_t i)
{
    if (i > f.dim())
        fail(ErrorKind::IndexOutOfRange, "restriction index");
    if (!depends_only_on_first(f, i))
        fail(ErrorKind::RoofNotFiberConstant, "polynomial depends on coordinates beyond " + std::to_string(i));
    TrigPoly out(i);
    for (const auto& [l, c] : f.terms())
        out.add_term(Frequency(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(i)), c);
    return out;
}

TrigPoly partial_derivative(const TrigPoly& f, std::size_t j)
{
    if (j >= f.dim())
        fail(ErrorKind::IndexOutOfRange, "coordinate index");
    TrigPoly out(f.dim());
    for (const auto& [l, c] : f.terms())
        if (l[j] != 0)
            out.add_term(l, Coeff(0.0, kTwoPi * static_cast<double>(l[j])) * c);
    return out;
}

TrigPoly directional_derivative(const TrigPoly& f, const std::vector<double>& v)
{
    if (v.size() != f.dim())
        fail(ErrorKind::DimensionMismatch, "direction dimension");
    TrigPoly out(f.dim());
    for (const auto& [l, c] : f.terms()) {
        double s = 0.0;
        for (std::size_t i = 0; i < l.size(); ++i)
            s += static_cast<double>(l[i]) * v[i];
        if (s != 0.0)
            out.add_term(l, Coeff(0.0, kTwoPi * s) * c);
    }
    return out;
}

double grid_sup_distance(const TrigPoly& f, const TrigPoly& g, std::size_t n)
{
    check_dim(g, f.dim());
    const std::size_t d = f.dim();
    const TrigEvaluator eval(f - g);
    std::vector<std::size_t> idx(d, 0);
    std::vector<Word> x(d, 0);
    double worst = 0.0;
    while (true) {
        for (std::size_t i = 0; i < d; ++i)
            x[i] = to_fixed(static_cast<double>(idx[i]) / static_cast<double>(n));
        worst = std::max(worst, std::abs(eval.complex(x.data())));
        std::size_t i = 0;
        while (i < d && ++idx[i] == n)
            idx[i++] = 0;
        if (i == d)
            break;
    }
    return worst;
}

nlohmann::json to_json(const TrigPoly& f)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [l, c] : f.terms())
        terms.push_back({{"l", l}, {"re", c.real()}, {"im", c.imag()}});
    return {{"dim", f.dim()}, {"terms", terms}};
}

TrigPoly trigpoly_from_json(const nlohmann::json& j)
{
    if (!j.is_object() || !j.contains("dim") || !j.contains("terms") || !j["terms"].is_array())
        fail(ErrorKind::ConfigError, "trigonometric polynomial needs \"dim\" and \"terms\"");
    if (!j["dim"].is_number_integer() || j["dim"].get<std::int64_t>() < 1)
        fail(ErrorKind::ConfigError, "\"dim\" must be a positive integer");
    const auto dim = j["dim"].get<std::size_t>();
    TrigPoly f(dim);
    for (const auto& term : j["terms"]) {
        if (!term.is_object() || !term.contains("l") || !term["l"].is_array())
            fail(ErrorKind::ConfigError, "term needs an integer frequency \"l\"");
        Frequency l;
        for (const auto& v : term["l"]) {
            if (!v.is_number_integer())
                fail(ErrorKind::ConfigError, "frequency entries must be integers");
            l.push_back(v.get<std::int64_t>());
        }
        if (l.size() != dim)
            fail(ErrorKind::ConfigError, "frequency length differs from \"dim\"");
        const double re = term.contains("re") ? parse_number(term["re"]) : 0.0;
        const double im = term.contains("im") ? parse_number(term["im"]) : 0.0;
        f.add_term(l, Coeff(re, im));
    }
    return f;
}

} // namespace skewflow
