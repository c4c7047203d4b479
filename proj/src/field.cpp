#include "ffinc/field.hpp"

#include <cmath>
#include <numbers>

namespace ffinc {

Residue mod_pow(std::uint32_t p, Residue base, std::uint64_t exp) {
    std::uint64_t acc = 1;
    std::uint64_t b = base % p;
    while (exp > 0) {
        if (exp & 1) acc = acc * b % p;
        b = b * b % p;
        exp >>= 1;
    }
    return static_cast<Residue>(acc);
}

Residue mod_inv(std::uint32_t p, Residue a) {
    if (a == 0) fail(Errc::zero_inverse, "0 has no inverse mod " + std::to_string(p));
    return mod_pow(p, a, p - 2);
}

bool FieldCtx::is_prime(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

namespace {

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
    std::vector<std::uint32_t> factors;
    for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d) {
        if (n % d == 0) {
            factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) factors.push_back(n);
    return factors;
}

Residue smallest_primitive_root(std::uint32_t p) {
    const auto factors = prime_factors(p - 1);
    for (Residue g = 2; g < p; ++g) {
        bool primitive = true;
        for (std::uint32_t q : factors) {
            if (mod_pow(p, g, (p - 1) / q) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    fail(Errc::bad_params, "no primitive root found for p=" + std::to_string(p));
}

} // namespace

FieldCtx::FieldCtx(std::uint32_t p) : p_(p) {
    if (p < 3 || p > kMaxPrime || p % 2 == 0 || !is_prime(p))
        fail(Errc::bad_params,
             "modulus must be an odd prime in [3, 2^20], got " + std::to_string(p));
    root_ = smallest_primitive_root(p);
    table_.resize(p);
    table_[0] = {1.0, 0.0};
    const double step = 2.0 * std::numbers::pi / static_cast<double>(p);
    for (std::uint32_t t = 1; t < p; ++t) {
        const double theta = step * static_cast<double>(t);
        table_[t] = {std::cos(theta), std::sin(theta)};
    }
}

} // namespace ffinc
