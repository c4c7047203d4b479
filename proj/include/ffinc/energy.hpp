#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ffinc/int128.hpp"
#include "ffinc/subset.hpp"

namespace ffinc {

enum class Algo { fast, oracle };

inline const char* to_string(Algo a) { return a == Algo::fast ? "fast" : "oracle"; }

/// Brute-force oracles refuse instances whose innermost loop count exceeds
/// this cap (CapExceeded).
inline constexpr u128 kOracleLoopCap = 1000000000;

struct EnergyResult {
    u128 value = 0;
    Algo algorithm = Algo::fast;
    std::string quantity;  // "T", "Tstar", "D", "Dstar", "N"
    std::uint32_t p = 0;
    std::vector<std::size_t> sizes;
    Residue lambda = 1;
    Residue mu = 1;

    std::string to_json() const;
};

/// Dense exact counts indexed by v in F_p.
struct EnergyHistogram {
    std::uint32_t p = 0;
    std::vector<std::uint64_t> counts;

    u128 total() const;
    u128 sum_sq() const;          // sum over all v of counts[v]^2
    u128 sum_sq_nonzero() const;  // sum over v != 0
};

/// T_{lambda,mu}(A,B): 6-tuples in A^3 x B^3 with
/// (a1 - lambda*a2)(b1 - mu*b2) = (a1 - lambda*a3)(b1 - mu*b3).
EnergyResult collinear_triples(const Subset& A, const Subset& B,
                               Residue lambda, Residue mu, Algo algo);

/// T*: as above, common value nonzero.
EnergyResult collinear_triples_nonzero(const Subset& A, const Subset& B,
                                       Residue lambda, Residue mu, Algo algo);

/// D (nonzero=false) / D* (nonzero=true): 8-tuples with
/// (a1 - lambda*a2)(b1 - mu*b2) = (a3 - lambda*a4)(b3 - mu*b4) [!= 0].
EnergyResult quad_energy(const Subset& A, const Subset& B,
                         Residue lambda, Residue mu, bool nonzero, Algo algo);

/// h(0): quadruples (a1,a2,b1,b2) with (a1 - lambda*a2)(b1 - mu*b2) = 0,
/// counted directly from the zero classes of each factor.
u128 quad_zero_count(const Subset& A, const Subset& B, Residue lambda, Residue mu);

/// J(xi): quadruples (a1, a, b1, b) in A^2 x B^2 with a != lambda*a1 and
/// (b - mu*b1) / (a - lambda*a1) = xi. D* = sum over xi != 0 of J(xi)^2.
EnergyHistogram slope_quadruple_histogram(const Subset& A, const Subset& B,
                                          Residue lambda, Residue mu);

enum class DiffMode { pair_product, triple_scaled };

/// pair_product:  J(m) = #{(u1,u2,v1,v2) in U^2 x V^2 : (u1-u2)(v1-v2) = m}.
/// triple_scaled: I(l) = #{(u1,u2,v) in U^2 x V : v*(u1-u2) = l}.
EnergyHistogram diff_product_histogram(const Subset& U, const Subset& V, DiffMode mode);

/// N(X,Y,Z): 6-tuples with x1(y1-z1) = x2(y2-z2).
EnergyResult collision_count(const Subset& X, const Subset& Y, const Subset& Z, Algo algo);

/// Exact correction E with
///   T_{lambda,mu}(A,B) = line_triple_sum(A, B, lambda*mu^-1, mu^-1) + E.
/// E accounts for the tuple classes where the slope correspondence between
/// triple solutions and line pairs degenerates (a1 = lambda*a2 or
/// a1 = lambda*a3, and the all-degenerate class the line sum counts p times).
/// With n_a = #{a in A : lambda^-1 * a in A} and
///      n_b = #{b in B : mu^-1 * b in B}, the classes combine to
///   E = n_a * (B^3 - p * n_b).
i128 degenerate_correction(const Subset& A, const Subset& B, Residue lambda, Residue mu);

} // namespace ffinc
