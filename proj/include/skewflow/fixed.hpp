#pragma once

// Torus coordinates as 64-bit fixed point: a word u stands for u / 2^64.
// Integer affine maps act on words with wrap-around arithmetic, which is
// exactly reduction mod 1, so orbits of any length never drift.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "skewflow/matrix.hpp"

namespace skewflow {

using Word = std::uint64_t;

Word to_fixed(double x);
double from_fixed(Word u);

/// Word interpreted as a phase in [-1/2, 1/2); negation-symmetric.
inline double signed_phase(Word u)
{
    return static_cast<double>(static_cast<std::int64_t>(u)) * 0x1p-64;
}

inline Word wrap(std::int64_t a) { return static_cast<Word>(a); }

std::vector<Word> to_fixed(const std::vector<double>& x);
std::vector<double> from_fixed(const std::vector<Word>& u);

/// x -> x M + c on (R/Z)^d, M an integer matrix stored mod 2^64.
class AffineMod1 {
public:
    AffineMod1() = default;
    AffineMod1(const IntMatrix& m, std::vector<Word> c);

    static AffineMod1 identity(std::size_t dim);

    std::size_t dim() const noexcept { return dim_; }
    const std::vector<Word>& offset() const noexcept { return c_; }

    void apply(const Word* in, Word* out) const noexcept;
    std::vector<Word> apply(const std::vector<Word>& x) const;

    /// Composition: first *this, then g.
    AffineMod1 then(const AffineMod1& g) const;
    AffineMod1 power(std::uint64_t n) const;

private:
    std::size_t dim_ = 0;
    std::vector<Word> m_;
    std::vector<Word> c_;
};

} // namespace skewflow
