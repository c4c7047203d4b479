#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "ffinc/error.hpp"

namespace ffinc {

/// A canonical residue in [0, p). Callers keep values canonical; the
/// arithmetic helpers below preserve that invariant.
using Residue = std::uint32_t;

inline constexpr std::uint32_t kMaxPrime = 1u << 20;

inline Residue mod_add(std::uint32_t p, Residue a, Residue b) {
    std::uint32_t s = a + b;
    return s >= p ? s - p : s;
}

inline Residue mod_sub(std::uint32_t p, Residue a, Residue b) {
    return a >= b ? a - b : a + p - b;
}

inline Residue mod_neg(std::uint32_t p, Residue a) {
    return a == 0 ? 0 : p - a;
}

// Widened intermediate; no overflow for p < 2^32, far above the 2^20 cap.
inline Residue mod_mul(std::uint32_t p, Residue a, Residue b) {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p);
}

Residue mod_pow(std::uint32_t p, Residue base, std::uint64_t exp);

/// Inverse via Fermat; throws ZeroInverse on a == 0.
Residue mod_inv(std::uint32_t p, Residue a);

/// Prime field F_p (odd prime, 3 <= p <= 2^20) with a precomputed additive
/// character table e_p(t) = exp(2*pi*i*t/p) and the smallest primitive root.
/// Immutable after construction; shareable across threads.
class FieldCtx {
public:
    explicit FieldCtx(std::uint32_t p);

    std::uint32_t p() const { return p_; }

    Residue reduce(std::int64_t t) const {
        std::int64_t r = t % static_cast<std::int64_t>(p_);
        return static_cast<Residue>(r < 0 ? r + p_ : r);
    }

    Residue add(Residue a, Residue b) const { return mod_add(p_, a, b); }
    Residue sub(Residue a, Residue b) const { return mod_sub(p_, a, b); }
    Residue mul(Residue a, Residue b) const { return mod_mul(p_, a, b); }
    Residue neg(Residue a) const { return mod_neg(p_, a); }
    Residue pow(Residue base, std::uint64_t exp) const { return mod_pow(p_, base, exp); }
    Residue inv(Residue a) const { return mod_inv(p_, a); }

    /// e_p(t); t is reduced mod p first, so any integer argument is valid.
    std::complex<double> char_eval(std::int64_t t) const { return table_[reduce(t)]; }

    const std::vector<std::complex<double>>& char_table() const { return table_; }

    /// Smallest primitive root of F_p*.
    Residue primitive_root() const { return root_; }

    static bool is_prime(std::uint32_t n);

private:
    std::uint32_t p_;
    Residue root_;
    std::vector<std::complex<double>> table_;
};

} // namespace ffinc
