#include "ffinc/expsum.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>

#include "json.hpp"
#include "ffinc/prng.hpp"

namespace ffinc {

namespace {

void require_same_p(const FieldCtx& ctx, const Subset& s) {
    if (ctx.p() != s.p())
        fail(Errc::modulus_mismatch, "set modulus " + std::to_string(s.p()) +
                                         " differs from field " + std::to_string(ctx.p()));
}

void require_grid2(const WeightGrid2& g, std::size_t rows, std::size_t cols,
                   const char* name) {
    if (g.rows != rows || g.cols != cols || g.w.size() != rows * cols)
        fail(Errc::bad_shape, std::string(name) + " weight grid shape mismatch");
}

void require_grid3(const WeightGrid3& g, std::size_t n0, std::size_t n1, std::size_t n2,
                   const char* name) {
    if (g.n0 != n0 || g.n1 != n1 || g.n2 != n2 || g.w.size() != n0 * n1 * n2)
        fail(Errc::bad_shape, std::string(name) + " weight grid shape mismatch");
}

std::complex<double> draw_weight(WeightKind kind, Prng& rng) {
    switch (kind) {
        case WeightKind::ones: return {1.0, 0.0};
        case WeightKind::random_phase: {
            const double theta = 2.0 * std::numbers::pi * rng.next_unit();
            return {std::cos(theta), std::sin(theta)};
        }
        case WeightKind::random_sign:
            return {(rng.next_u32() & 1) ? 1.0 : -1.0, 0.0};
    }
    return {1.0, 0.0};
}

std::vector<std::complex<double>> draw_weights(WeightKind kind, std::size_t n,
                                               std::uint64_t seed) {
    Prng rng(seed);
    std::vector<std::complex<double>> w;
    w.reserve(n);
    for (std::size_t i = 0; i < n; ++i) w.push_back(draw_weight(kind, rng));
    return w;
}

SumValue finish(const PairwiseSum& acc) {
    SumValue sv;
    sv.value = acc.total();
    sv.term_count = acc.count();
    sv.error_bound = 4.0 * DBL_EPSILON * static_cast<double>(acc.count());
    return sv;
}

} // namespace

std::string SumValue::to_json() const {
    nlohmann::ordered_json j;
    j["re"] = value.real();
    j["im"] = value.imag();
    j["terms"] = term_count;
    j["error_bound"] = error_bound;
    return j.dump(2) + "\n";
}

WeightKind weight_kind_from_string(const std::string& s) {
    if (s == "ones") return WeightKind::ones;
    if (s == "random_phase") return WeightKind::random_phase;
    if (s == "random_sign") return WeightKind::random_sign;
    fail(Errc::bad_params, "unknown weight kind: " + s);
}

WeightVec gen_weight_vec(WeightKind kind, std::size_t n, std::uint64_t seed) {
    if (n == 0) fail(Errc::bad_shape, "weight vector must be nonempty");
    return WeightVec{draw_weights(kind, n, seed)};
}

WeightGrid2 gen_weight_grid2(WeightKind kind, std::size_t rows, std::size_t cols,
                             std::uint64_t seed) {
    if (rows == 0 || cols == 0) fail(Errc::bad_shape, "weight grid must be nonempty");
    return WeightGrid2{rows, cols, draw_weights(kind, rows * cols, seed)};
}

WeightGrid3 gen_weight_grid3(WeightKind kind, std::size_t n0, std::size_t n1,
                             std::size_t n2, std::uint64_t seed) {
    if (n0 == 0 || n1 == 0 || n2 == 0)
        fail(Errc::bad_shape, "weight grid must be nonempty");
    return WeightGrid3{n0, n1, n2, draw_weights(kind, n0 * n1 * n2, seed)};
}

SumValue bilinear_sum(const FieldCtx& ctx, const Subset& X, const Subset& Y,
                      const WeightVec& alpha, const WeightVec& beta, Residue coeff) {
    require_same_p(ctx, X);
    require_same_p(ctx, Y);
    if (alpha.w.size() != X.size() || beta.w.size() != Y.size())
        fail(Errc::bad_shape, "weight vector length mismatch");
    const std::uint32_t p = ctx.p();
    const auto& table = ctx.char_table();
    PairwiseSum acc;
    for (std::size_t ix = 0; ix < X.size(); ++ix) {
        const Residue ax = mod_mul(p, coeff, X.elements()[ix]);
        for (std::size_t iy = 0; iy < Y.size(); ++iy) {
            const Residue t = mod_mul(p, ax, Y.elements()[iy]);
            acc.push(alpha.w[ix] * beta.w[iy] * table[t]);
        }
    }
    return finish(acc);
}

SumValue trilinear_sum(const FieldCtx& ctx, const Subset& X, const Subset& Y,
                       const Subset& Z, const WeightGrid2& rho, const WeightGrid2& sigma,
                       const WeightGrid2& tau, Residue coeff) {
    require_same_p(ctx, X);
    require_same_p(ctx, Y);
    require_same_p(ctx, Z);
    if (coeff == 0) fail(Errc::zero_coeff, "trilinear coefficient must be nonzero");
    require_grid2(rho, X.size(), Y.size(), "rho");
    require_grid2(sigma, X.size(), Z.size(), "sigma");
    require_grid2(tau, Y.size(), Z.size(), "tau");
    const std::uint32_t p = ctx.p();
    const auto& table = ctx.char_table();
    PairwiseSum acc;
    for (std::size_t ix = 0; ix < X.size(); ++ix) {
        const Residue ax = mod_mul(p, coeff, X.elements()[ix]);
        for (std::size_t iy = 0; iy < Y.size(); ++iy) {
            const Residue axy = mod_mul(p, ax, Y.elements()[iy]);
            const std::complex<double> rho_xy = rho.at(ix, iy);
            for (std::size_t iz = 0; iz < Z.size(); ++iz) {
                const Residue t = mod_mul(p, axy, Z.elements()[iz]);
                acc.push(rho_xy * sigma.at(ix, iz) * tau.at(iy, iz) * table[t]);
            }
        }
    }
    return finish(acc);
}

SumValue quadrilinear_sum(const FieldCtx& ctx, const Subset& W, const Subset& X,
                          const Subset& Y, const Subset& Z, const WeightGrid3& theta,
                          const WeightGrid3& rho, const WeightGrid3& sigma,
                          const WeightGrid3& tau, Residue coeff) {
    require_same_p(ctx, W);
    require_same_p(ctx, X);
    require_same_p(ctx, Y);
    require_same_p(ctx, Z);
    if (coeff == 0) fail(Errc::zero_coeff, "quadrilinear coefficient must be nonzero");
    require_grid3(theta, W.size(), X.size(), Y.size(), "theta");
    require_grid3(rho, W.size(), X.size(), Z.size(), "rho");
    require_grid3(sigma, W.size(), Y.size(), Z.size(), "sigma");
    require_grid3(tau, X.size(), Y.size(), Z.size(), "tau");
    const std::uint32_t p = ctx.p();
    const auto& table = ctx.char_table();
    PairwiseSum acc;
    for (std::size_t iw = 0; iw < W.size(); ++iw) {
        const Residue aw = mod_mul(p, coeff, W.elements()[iw]);
        for (std::size_t ix = 0; ix < X.size(); ++ix) {
            const Residue awx = mod_mul(p, aw, X.elements()[ix]);
            for (std::size_t iy = 0; iy < Y.size(); ++iy) {
                const Residue awxy = mod_mul(p, awx, Y.elements()[iy]);
                const std::complex<double> pre = theta.at(iw, ix, iy);
                for (std::size_t iz = 0; iz < Z.size(); ++iz) {
                    const Residue t = mod_mul(p, awxy, Z.elements()[iz]);
                    acc.push(pre * rho.at(iw, ix, iz) * sigma.at(iw, iy, iz) *
                             tau.at(ix, iy, iz) * table[t]);
                }
            }
        }
    }
    return finish(acc);
}

} // namespace ffinc
