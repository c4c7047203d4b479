#include "ffinc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "ffinc/energy.hpp"
#include "ffinc/expsum.hpp"
#include "ffinc/incidence.hpp"
#include "ffinc/prng.hpp"

namespace ffinc {

namespace {

// Per-check ids keep the trial seed streams independent.
enum CheckId : std::uint64_t {
    kLemma21 = 1,
    kCor22,
    kDecomposition,
    kEnergyIdent,
    kCompleteSums,
    kBilinear,
    kThm11,
    kLemma24,
    kLemma25,
    kLemma26,
    kCor27,
    kLemma32,
    kThm12,
    kThm13,
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t next_u64(Prng& rng) {
    const std::uint64_t hi = rng.next_u32();
    return (hi << 32) | rng.next_u32();
}

Residue rand_star(Prng& rng, std::uint32_t p) { return 1 + rng.next_below(p - 1); }

BoundCheck make_row(std::string check, std::uint32_t p, std::vector<std::size_t> sizes,
                    Residue lambda, Residue mu, std::string lhs, std::string rhs,
                    double ratio, std::string tier, bool pass) {
    BoundCheck row;
    row.check = std::move(check);
    row.p = p;
    row.sizes = std::move(sizes);
    row.lambda = lambda;
    row.mu = mu;
    row.lhs = std::move(lhs);
    row.rhs = std::move(rhs);
    row.ratio = ratio;
    row.tier = std::move(tier);
    row.pass = pass;
    return row;
}

BoundCheck exact_row(std::string check, std::uint32_t p, std::vector<std::size_t> sizes,
                     Residue lambda, Residue mu, i128 lhs, i128 rhs) {
    const bool pass = lhs == rhs;
    const double ratio =
        pass ? 1.0 : to_double(lhs) / (rhs == 0 ? 1.0 : to_double(rhs));
    return make_row(std::move(check), p, std::move(sizes), lambda, mu, to_decimal(lhs),
                    to_decimal(rhs), ratio, "exact", pass);
}

BoundCheck const1_row(std::string check, std::uint32_t p, std::vector<std::size_t> sizes,
                      Residue lambda, Residue mu, i128 lhs, i128 rhs) {
    const bool pass = lhs <= rhs;
    const double ratio = rhs == 0 ? (lhs == 0 ? 0.0 : to_double(lhs))
                                  : to_double(lhs) / to_double(rhs);
    return make_row(std::move(check), p, std::move(sizes), lambda, mu, to_decimal(lhs),
                    to_decimal(rhs), ratio, "const1", pass);
}

BoundCheck asym_row(std::string check, std::uint32_t p, std::vector<std::size_t> sizes,
                    Residue lambda, Residue mu, double lhs, double rhs) {
    // Asymptotic rows never fail on the ratio itself; only a degenerate or
    // non-finite bound expression is a hard failure.
    const bool pass = std::isfinite(rhs) && rhs > 0.0 && std::isfinite(lhs);
    const double ratio = pass ? lhs / rhs : std::nan("");
    return make_row(std::move(check), p, std::move(sizes), lambda, mu, fmt(lhs),
                    fmt(rhs), ratio, "asymptotic", pass);
}

// Set families used by the exact identity checks: trial index rotates
// random / interval / subgroup (orders drawn from the divisors of p-1).
Subset make_family_set(const FieldCtx& ctx, int kind, std::size_t size, Prng& rng) {
    const std::uint32_t p = ctx.p();
    const std::uint64_t seed = next_u64(rng);
    switch (kind % 3) {
        case 0:
            return gen_subset(ctx, GenKind::random_elements,
                              {{"size", static_cast<std::int64_t>(size)}}, seed);
        case 1:
            return gen_subset(ctx, GenKind::interval,
                              {{"size", static_cast<std::int64_t>(size)},
                               {"start", static_cast<std::int64_t>(rng.next_below(p))}},
                              seed);
        default: {
            std::vector<std::int64_t> orders;
            for (std::uint32_t d = 1; d <= 64 && d < p; ++d)
                if ((p - 1) % d == 0) orders.push_back(d);
            const std::int64_t order =
                orders[rng.next_below(static_cast<std::uint32_t>(orders.size()))];
            return gen_subset(ctx, GenKind::subgroup, {{"order", order}}, seed);
        }
    }
}

Subset random_subset(const FieldCtx& ctx, std::size_t size, Prng& rng) {
    return gen_subset(ctx, GenKind::random_elements,
                      {{"size", static_cast<std::int64_t>(size)}}, next_u64(rng));
}

// Random subset of F_p^* (zero excluded).
Subset random_star_subset(const FieldCtx& ctx, std::size_t size, Prng& rng) {
    const std::uint32_t p = ctx.p();
    if (size >= p) fail(Errc::bad_params, "star subset size must be < p");
    const std::uint64_t seed = next_u64(rng);
    Prng draw(seed);
    std::vector<std::uint8_t> taken(p, 0);
    std::vector<Residue> elems;
    while (elems.size() < size) {
        const Residue r = rand_star(draw, p);
        if (!taken[r]) {
            taken[r] = 1;
            elems.push_back(r);
        }
    }
    std::sort(elems.begin(), elems.end());
    Provenance prov{"random", {{"size", static_cast<std::int64_t>(size)}, {"star", 1}},
                    seed};
    return Subset(p, std::move(elems), std::move(prov));
}

std::size_t size_between(Prng& rng, std::size_t lo, std::size_t hi) {
    return lo + rng.next_below(static_cast<std::uint32_t>(hi - lo + 1));
}

struct ScalePair {
    Residue lambda, mu;
};

ScalePair draw_scales(Prng& rng, std::uint32_t p, int trial) {
    if (trial == 0) return {1, 1};  // forced pair
    return {rand_star(rng, p), rand_star(rng, p)};
}

std::uint64_t trial_seed(const CheckSpec& spec, std::uint32_t p, int trial) {
    return derive_seed(spec.seed, p, trial);
}

// #{s in S : factor * s in S}
i128 dilate_fix_count(const Subset& S, Residue factor, const FieldCtx& ctx) {
    const auto bits = S.bitmap();
    i128 n = 0;
    for (Residue s : S.elements()) n += bits[ctx.mul(factor, s)];
    return n;
}

double dpow(double base, double exp) { return std::pow(base, exp); }

} // namespace

std::vector<BoundCheck> check_lemma21(const CheckSpec& spec) {
    std::vector<BoundCheck> rows;
    for (std::uint32_t p : spec.primes) {
        const FieldCtx ctx(p);
        for (int t = 0; t < spec.trials; ++t) {
            Prng rng(trial_seed(spec, p, t));
            const Subset A = make_family_set(ctx, t, size_between(rng, 1, 64), rng);
            const Subset B = make_family_set(ctx, t, size_between(rng, 1, 64), rng);
            const auto [lambda, mu] = draw_scales(rng, p, t);
            const i128 ab = static_cast<i128>(A.size()) * B.size();
            const std::vector<std::size_t> sizes{A.size(), B.size()};

            rows.push_back(exact_row("lemma21_first", p, sizes, lambda, mu,
                                     static_cast<i128>(first_moment(A, B)),
                                     static_cast<i128>(p) * ab));
            // General closed form A^2B^2 - n_a B^2 + p n_a n_b; the familiar
            // A^2B^2 - AB^2 + pAB is the lambda = mu = 1 special case (the
            // forced trial-0 pair exercises it).
            const Residue mu_inv = ctx.inv(mu);
            const i128 na = dilate_fix_count(A, ctx.mul(lambda, mu_inv), ctx);
            const i128 nb = dilate_fix_count(B, mu_inv, ctx);
            const i128 b2 = static_cast<i128>(B.size()) * B.size();
            const i128 closed =
                ab * ab - na * b2 + static_cast<i128>(p) * na * nb;
            rows.push_back(exact_row("lemma21_mixed", p, sizes, lambda, mu,
                                     static_cast<i128>(mixed_moment_11(A, B, lambda, mu)),
                                     closed));
        }
    }
    return rows;
}

std::vector<BoundCheck> check_cor22(const CheckSpec& spec) {
    std::vector<BoundCheck> rows;
    for (std::uint32_t p : spec.primes) {
        const FieldCtx ctx(p);
        for (int t = 0; t < spec.trials; ++t) {
            Prng rng(trial_seed(spec, p, t));
            const Subset A = make_family_set(ctx, t, size_between(rng, 1, 64), rng);
            const Subset B = make_family_set(ctx, t, size_between(rng, 1, 64), rng);
            const auto [lambda, mu] = draw_scales(rng, p, t);
            const i128 ab = static_cast<i128>(A.size()) * B.size();

            const ScaledCount m2 = centered_moment_2(A, B, lambda, mu);
            const i128 ip = p;
            // Closed form AB(p - B), stored over p^2; the bound is pAB.
            const i128 closed_num = ip * ip * ab * (ip - static_cast<i128>(B.size()));
            BoundCheck row =
                exact_row("cor22", p, {A.size(), B.size()}, lambda, mu, m2.num, closed_num);
            row.ratio = static_cast<double>(p - B.size()) / p;  // vs the pAB bound
            row.pass = row.pass && row.ratio <= 1.0;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<BoundCheck> check_decomposition_2_2(const CheckSpec& spec) {
    std::vector<BoundCheck> rows;
    for (std::uint32_t p : spec.primes) {
        const FieldCtx ctx(p);
        for (int t = 0; t < spec.trials; ++t) {
            Prng rng(trial_seed(spec, p, t));
            std::size_t sa = size_between(rng, 1, 32), sb = size_between(rng, 1, 32);
            if (sa > sb) std::swap(sa, sb);
            const Subset A = random_subset(ctx, sa, rng);
            const Subset B = random_subset(ctx, sb, rng);
            const auto [lambda, mu] = draw_scales(rng, p, t);
            const std::vector<std::size_t> sizes{A.size(), B.size()};

            // T_{lambda,mu} splits over the line pair with reparametrized
            // scales (lambda*mu^-1, mu^-1) plus the exact degenerate term.
            const Residue mu_inv = ctx.inv(mu);
            const Residue lt = ctx.mul(lambda, mu_inv);
            const u128 t_count = collinear_triples(A, B, lambda, mu, Algo::fast).value;
            const u128 line_sum = line_triple_sum(A, B, lt, mu_inv);
            const i128 corr = degenerate_correction(A, B, lambda, mu);
            rows.push_back(exact_row("decomposition", p, sizes, lambda, mu,
                                     static_cast<i128>(t_count),
                                     static_cast<i128>(line_sum) + corr));

            // Squared-term expansion: the line sum re-assembles from the
            // centered and mixed moments with the first-moment closed form.
            const ScaledCount c12 = centered_moment_12(A, B, lt, mu_inv);
            const i128 mx = static_cast<i128>(mixed_moment_11(A, B, lt, mu_inv));
            const i128 ip = p;
            const i128 ab = static_cast<i128>(A.size()) * B.size();
            const i128 expansion = c12.num + 2 * ip * ab * mx - ip * ab * ab * ab;
            rows.push_back(exact_row("decomposition_expansion", p, sizes, lambda, mu,
                                     ip * ip * static_cast<i128>(line_sum), expansion));
        }
    }
    return rows;
}

std::vector<BoundCheck> check_energy_identities(const CheckSpec& spec) {
    std::vector<BoundCheck> rows;
    for (std::uint32_t p : spec.primes) {
        const FieldCtx ctx(p);
        for (int t = 0; t < spec.trials; ++t) {
            Prng rng(trial_seed(spec, p, t));
            std::size_t sa = size_between(rng, 1, 24), sb = size_between(rng, 1, 24);
            if (sa > sb) std::swap(sa, sb);
            const Subset A = random_subset(ctx, sa, rng);
            const Subset B = random_subset(ctx, sb, rng);
            const auto [lambda, mu] = draw_scales(rng, p, t);
            const std::vector<std::size_t> sizes{A.size(), B.size()};

            const i128 dstar =
                static_cast<i128>(quad_energy(A, B, lambda, mu, true, Algo::fast).value);
            const i128 d =
                static_cast<i128>(quad_energy(A, B, lambda, mu, false, Algo::fast).value);
            const auto jh = slope_quadruple_histogram(A, B, lambda, mu);
            rows.push_back(exact_row("dstar_slope_hist", p, sizes, lambda, mu, dstar,
                                     static_cast<i128>(jh.sum_sq_nonzero())));

            const i128 h0 = static_cast<i128>(quad_zero_count(A, B, lambda, mu));
            rows.push_back(
                exact_row("quad_zero_split", p, sizes, lambda, mu, d - dstar, h0 * h0));

            const i128 tstar = static_cast<i128>(
                collinear_triples_nonzero(A, B, lambda, mu, Algo::fast).value);
            const i128 ab = static_cast<i128>(A.size()) * B.size();
            rows.push_back(
                const1_row("dstar_le_ab_tstar", p, sizes, lambda, mu, dstar, ab * tstar));

            const Residue mu_inv = ctx.inv(mu);
            const Residue lt = ctx.mul(lambda, mu_inv);
            rows.push_back(const1_row("tstar_le_line_sum", p, sizes, lambda, mu, tstar,
                                      static_cast<i128>(line_triple_sum(A, B, lt, mu_inv))));

            // Difference-histogram identities over F_p^* sets.
            const Subset U = random_star_subset(ctx, size_between(rng, 1, 24), rng);
            const Subset V = random_star_subset(ctx, size_between(rng, 1, 24), rng);
            const auto ih = diff_product_histogram(U, V, DiffMode::triple_scaled);
            const i128 n_vuu =
                static_cast<i128>(collision_count(V, U, U, Algo::fast).value);
            rows.push_back(exact_row("collision_hist", p, {U.size(), V.size()}, 1, 1,
                                     static_cast<i128>(ih.sum_sq()), n_vuu));

            const auto ph = diff_product_histogram(U, V, DiffMode::pair_product);
            const i128 dstar_uv =
                static_cast<i128>(quad_energy(U, V, 1, 1, true, Algo::fast).value);
            rows.push_back(exact_row("pair_product_hist", p, {U.size(), V.size()}, 1, 1,
                                     static_cast<i128>(ph.sum_sq_nonzero()), dstar_uv));
        }
    }
    return rows;
}

std::vector<BoundCheck> check_complete_sums(const CheckSpec& spec) {
    std::vector<BoundCheck> rows;
    for (std::uint32_t p : spec.primes) {
        const FieldCtx ctx(p);
        std::vector<Residue> all(p);
        for (Residue r = 0; r < p; ++r) all[r] = r;
        const Subset full(p, all, Provenance{"interval", {{"size", p}, {"start", 0}}, 0});
        const double dp = p;

        const auto ones2 = gen_weight_grid2(WeightKind::ones, p, p, 0);
        const SumValue tri = trilinear_sum(ctx, full, full, full, ones2, ones2, ones2, 1);
        const double tri_expect = dp * (2.0 * dp - 1.0);
        bool pass = std::abs(tri.value.real() - tri_expect) <= 1e-6 + tri.error_bound &&
                    std::abs(tri.value.imag()) <= 1e-6 + tri.error_bound;
        rows.push_back(make_row("complete_trilinear", p, {p, p, p}, 1, 1,
                                fmt(tri.value.real()), fmt(tri_expect),
                                tri.value.real() / tri_expect, "exact", pass));

        const auto ones3 = gen_weight_grid3(WeightKind::ones, p, p, p, 0);
        const SumValue quad =
            quadrilinear_sum(ctx, full, full, full, full, ones3, ones3, ones3, ones3, 1);
        const double quad_expect = dp * (3.0 * dp * dp - 3.0 * dp + 1.0);
        pass = std::abs(quad.value.real() - quad_expect) <= 1e-6 + quad.error_bound &&
               std::abs(quad.value.imag()) <= 1e-6 + quad.error_bound;
        rows.push_back(make_row("complete_quadrilinear", p, {p, p, p, p}, 1, 1,
                                fmt(quad.value.real()), fmt(quad_expect),
                                quad.value.real() / quad_expect, "exact", pass));
    }
    return rows;
}

std::vector<BoundCheck> check_bilinear(const CheckSpec& spec) {
    std::vector<BoundCheck> rows;
    for (std::uint32_t p : spec.primes) {
        const FieldCtx ctx(p);
        for (int t = 0; t < spec.trials; ++t) {
            Prng rng(trial_seed(spec, p, t));
            const Subset X = random_subset(ctx, size_between(rng, 1, 64), rng);
            const Subset Y = random_subset(ctx, size_between(rng, 1, 64), rng);
            const WeightKind kind =
                (t % 2 == 0) ? WeightKind::random_phase : WeightKind::random_sign;
            const auto alpha = gen_weight_vec(kind, X.size(), next_u64(rng));
            const auto beta = gen_weight_vec(kind, Y.size(), next_u64(rng));
            const Residue coeff = rand_star(rng, p);

            const SumValue s = bilinear_sum(ctx, X, Y, alpha, beta, coeff);
            double norm_a = 0.0, norm_b = 0.0;
            for (const auto& w : alpha.w) norm_a += std::norm(w);
            for (const auto& w : beta.w) norm_b += std::norm(w);
            const double bound = std::sqrt(static_cast<double>(p) * norm_a * norm_b);
            const bool pass = s.abs() <= bound + s.error_bound;
            rows.push_back(make_row("bilinear", p, {X.size(), Y.size()}, coeff, 0,
                                    fmt(s.abs()), fmt(bound), s.abs() / bound, "const1",
                                    pass));
        }
    }
    return rows;
}

std::vector<BoundCheck> check_thm11(const CheckSpec& spec) {
    std::vector<BoundCheck> rows;
    for (std::uint32_t p : spec.primes) {
        const FieldCtx ctx(p);
        for (int t = 0; t < spec.trials; ++t) {
            Prng rng(trial_seed(spec, p, t));
            std::size_t sa = size_between(rng, 32, 64), sb = size_between(rng, 32, 64);
            if (sa > sb) std::swap(sa, sb);
            const Subset A = random_subset(ctx, sa, rng);
            const Subset B = random_subset(ctx, sb, rng);
            const auto [lambda, mu] = draw_scales(rng, p, t);

            const i128 tval =
                static_cast<i128>(collinear_triples(A, B, lambda, mu, Algo::fast).value);
            const i128 ab = static_cast<i128>(sa) * sb;
            i128 dev_num = static_cast<i128>(p) * tval - ab * ab * ab;
            if (dev_num < 0) dev_num = -dev_num;
            const double lhs = to_double(dev_num) / p;

            const double da = static_cast<double>(sa), db = static_cast<double>(sb);
            const double rhs =
                std::sqrt(static_cast<double>(p)) * da * da * dpow(db, 1.5) +
                da * db * db * db;
            rows.push_back(asym_row("thm11", p, {sa, sb}, lambda, mu, lhs, rhs));
        }
    }
    return rows;
}

std::vector<BoundCheck> check_lemma24(const CheckSpec& spec) {
    std::vector<BoundCheck> rows;
    for (std::uint32_t p : spec.primes) {
        const FieldCtx ctx(p);
        for (int t = 0; t < spec.trials; ++t) {
            Prng rng(trial_seed(spec, p, t));
            std::size_t sa = size_between(rng, 32, 64), sb = size_between(rng, 32, 64);
            if (sa > sb) std::swap(sa, sb);
            const Subset A = random_subset(ctx, sa, rng);
            const Subset B = random_subset(ctx, sb, rng);
            const auto [lambda, mu] = draw_scales(rng, p, t);

            // Smallest admissible dyadic threshold: N >= max(2, ceil(2AB/p)).
            const std::uint64_t two_ab = 2ULL * sa * sb;
            std::uint32_t n = static_cast<std::uint32_t>((two_ab + p - 1) / p);
            if (n < 2) n = 2;
            if (n > sa) continue;  // hypothesis 2AB/p <= N <= A unattainable

            const auto fam = dyadic_family_size(A, B, lambda, mu, n);
            const double da = static_cast<double>(sa), db = static_cast<double>(sb);
            const double dn = static_cast<double>(n);
            const double rhs = std::min(static_cast<double>(p) * da * db / (dn * dn),
                                        da * da * da * db * db / (dn * dn * dn * dn));
            rows.push_back(asym_row("lemma24", p, {sa, sb}, lambda, mu,
                                    static_cast<double>(fam.size), rhs));
        }
    }
    return rows;
}

std::vector<BoundCheck> check_lemma25(const CheckSpec& spec) {
    std::vector<BoundCheck> rows;
    for (std::uint32_t p : spec.primes) {
        const FieldCtx ctx(p);
        for (int t = 0; t < spec.trials; ++t) {
            Prng rng(trial_seed(spec, p, t));
            const std::size_t sa = size_between(rng, 16, 47);
            const std::size_t sb = size_between(rng, 48, 64);  // strict A < B
            const Subset A = random_subset(ctx, sa, rng);
            const Subset B = random_subset(ctx, sb, rng);
            const auto [lambda, mu] = draw_scales(rng, p, t);

            const ScaledCount c12 = centered_moment_12(A, B, lambda, mu);
            const double da = static_cast<double>(sa), db = static_cast<double>(sb);
            const double rhs =
                std::sqrt(static_cast<double>(p)) * da * da * dpow(db, 1.5);
            rows.push_back(
                asym_row("lemma25", p, {sa, sb}, lambda, mu, c12.to_double(), rhs));
        }
    }
    return rows;
}

namespace {

// Shared family for the two quadruple-energy ratio checks.
std::vector<BoundCheck> check_quad_bound(const CheckSpec& spec, bool nonzero,
                                         const char* name, bool extra_term) {
    std::vector<BoundCheck> rows;
    for (std::uint32_t p : spec.primes) {
        const FieldCtx ctx(p);
        for (int t = 0; t < spec.trials; ++t) {
            Prng rng(trial_seed(spec, p, t));
            std::size_t sa = size_between(rng, 16, 64), sb = size_between(rng, 16, 64);
            if (sa > sb) std::swap(sa, sb);
            const Subset A = random_subset(ctx, sa, rng);
            const Subset B = random_subset(ctx, sb, rng);
            const auto [lambda, mu] = draw_scales(rng, p, t);

            const auto e = quad_energy(A, B, lambda, mu, nonzero, Algo::fast);
            const double da = static_cast<double>(sa), db = static_cast<double>(sb);
            double rhs = std::sqrt(static_cast<double>(p)) * da * da * da * dpow(db, 2.5) +
                         da * da * da * da * db * db * db * db / p;
            if (extra_term) rhs += da * da * db * db * db * db;
            rows.push_back(
                asym_row(name, p, {sa, sb}, lambda, mu, to_double(e.value), rhs));
        }
    }
    return rows;
}

} // namespace

std::vector<BoundCheck> check_lemma26(const CheckSpec& spec) {
    return check_quad_bound(spec, true, "lemma26", false);
}

std::vector<BoundCheck> check_cor27(const CheckSpec& spec) {
    return check_quad_bound(spec, false, "cor27", true);
}

std::vector<BoundCheck> check_lemma32(const CheckSpec& spec) {
    std::vector<BoundCheck> rows;
    for (std::uint32_t p : spec.primes) {
        const FieldCtx ctx(p);
        for (int t = 0; t < spec.trials; ++t) {
            Prng rng(trial_seed(spec, p, t));
            const Subset X = random_star_subset(ctx, size_between(rng, 16, 64), rng);
            const Subset Y = random_star_subset(ctx, size_between(rng, 16, 64), rng);
            const Subset Z = random_star_subset(ctx, size_between(rng, 16, 64), rng);

            const auto n = collision_count(X, Y, Z, Algo::fast);
            const double dx = static_cast<double>(X.size());
            const double dy = static_cast<double>(Y.size());
            const double dz = static_cast<double>(Z.size());
            const double m = std::max({dx, dy, dz});
            const double rhs = dx * dx * dy * dy * dz * dz / p +
                               dpow(dx * dy * dz, 1.5) + m * dx * dy * dz;
            rows.push_back(asym_row("lemma32", p, {X.size(), Y.size(), Z.size()}, 1, 1,
                                    to_double(n.value), rhs));
        }
    }
    return rows;
}

std::vector<BoundCheck> check_thm12(const CheckSpec& spec) {
    std::vector<BoundCheck> rows;
    for (std::uint32_t p : spec.primes) {
        const FieldCtx ctx(p);
        for (int t = 0; t < spec.trials; ++t) {
            Prng rng(trial_seed(spec, p, t));
            std::size_t s[3] = {size_between(rng, 16, 64), size_between(rng, 16, 64),
                                size_between(rng, 16, 64)};
            std::sort(s, s + 3, std::greater<>());  // X >= Y >= Z
            const Subset X = random_subset(ctx, s[0], rng);
            const Subset Y = random_subset(ctx, s[1], rng);
            const Subset Z = random_subset(ctx, s[2], rng);
            const auto rho = gen_weight_grid2(WeightKind::random_phase, s[0], s[1],
                                              next_u64(rng));
            const auto sigma = gen_weight_grid2(WeightKind::random_phase, s[0], s[2],
                                                next_u64(rng));
            const auto tau = gen_weight_grid2(WeightKind::random_phase, s[1], s[2],
                                              next_u64(rng));
            const Residue coeff = rand_star(rng, p);

            const SumValue v = trilinear_sum(ctx, X, Y, Z, rho, sigma, tau, coeff);
            const double rhs = dpow(p, 3.0 / 16) * dpow(s[0], 13.0 / 16) *
                               dpow(s[1], 7.0 / 8) * dpow(s[2], 7.0 / 8);
            rows.push_back(
                asym_row("thm12", p, {s[0], s[1], s[2]}, coeff, 0, v.abs(), rhs));
        }
    }
    return rows;
}

std::vector<BoundCheck> check_thm13(const CheckSpec& spec) {
    std::vector<BoundCheck> rows;
    for (std::uint32_t p : spec.primes) {
        const FieldCtx ctx(p);
        for (int t = 0; t < spec.trials; ++t) {
            Prng rng(trial_seed(spec, p, t));
            std::size_t s[4] = {size_between(rng, 8, 24), size_between(rng, 8, 24),
                                size_between(rng, 8, 24), size_between(rng, 8, 24)};
            std::sort(s, s + 4, std::greater<>());  // W >= X >= Y >= Z
            const Subset W = random_star_subset(ctx, s[0], rng);
            const Subset X = random_star_subset(ctx, s[1], rng);
            const Subset Y = random_star_subset(ctx, s[2], rng);
            const Subset Z = random_star_subset(ctx, s[3], rng);
            const auto theta = gen_weight_grid3(WeightKind::random_phase, s[0], s[1],
                                                s[2], next_u64(rng));
            const auto rho = gen_weight_grid3(WeightKind::random_phase, s[0], s[1], s[3],
                                              next_u64(rng));
            const auto sigma = gen_weight_grid3(WeightKind::random_phase, s[0], s[2],
                                                s[3], next_u64(rng));
            const auto tau = gen_weight_grid3(WeightKind::random_phase, s[1], s[2], s[3],
                                              next_u64(rng));
            const Residue coeff = rand_star(rng, p);

            const SumValue v =
                quadrilinear_sum(ctx, W, X, Y, Z, theta, rho, sigma, tau, coeff);
            const double rhs = dpow(p, 3.0 / 32) * dpow(s[0], 29.0 / 32) *
                               dpow(s[1], 15.0 / 16) * dpow(s[2], 15.0 / 16) *
                               dpow(s[3], 31.0 / 32);
            rows.push_back(
                asym_row("thm13", p, {s[0], s[1], s[2], s[3]}, coeff, 0, v.abs(), rhs));
        }
    }
    return rows;
}

namespace {

CheckSpec sub_spec(const SuiteConfig& cfg, CheckId id, std::string name,
                   std::vector<std::uint32_t> primes) {
    CheckSpec spec;
    spec.name = std::move(name);
    spec.primes = std::move(primes);
    spec.trials = cfg.trials;
    spec.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(id));
    return spec;
}

std::vector<std::uint32_t> large_primes(const SuiteConfig& cfg) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t p : cfg.primes)
        if (p >= 200) out.push_back(p);
    return out.empty() ? cfg.primes : out;
}

} // namespace

Report run_suite(const SuiteConfig& config) {
    if (config.trials < 1) fail(Errc::bad_params, "trials must be >= 1");
    if (config.primes.empty()) fail(Errc::bad_params, "prime list must be nonempty");
    if (config.suite != "all" && config.suite != "exact" && config.suite != "asymptotic")
        fail(Errc::bad_params, "suite must be one of: exact, asymptotic, all");

    Report report;
    report.config = config;
    auto& rows = report.rows;
    auto append = [&rows](std::vector<BoundCheck> more) {
        rows.insert(rows.end(), std::make_move_iterator(more.begin()),
                    std::make_move_iterator(more.end()));
    };

    const bool exact = config.suite != "asymptotic";
    const bool asym = config.suite != "exact";
    if (exact) {
        append(check_lemma21(sub_spec(config, kLemma21, "lemma21", config.primes)));
        append(check_cor22(sub_spec(config, kCor22, "cor22", config.primes)));
        append(check_decomposition_2_2(
            sub_spec(config, kDecomposition, "decomposition", config.primes)));
        append(check_energy_identities(
            sub_spec(config, kEnergyIdent, "energy", config.primes)));
        // Complete sums evaluate full-set grids; keep their primes small.
        append(check_complete_sums(
            sub_spec(config, kCompleteSums, "complete_sums", {31, 101})));
        append(check_bilinear(sub_spec(config, kBilinear, "bilinear", config.primes)));
    }
    if (asym) {
        const auto primes = large_primes(config);
        append(check_thm11(sub_spec(config, kThm11, "thm11", primes)));
        append(check_lemma24(sub_spec(config, kLemma24, "lemma24", primes)));
        append(check_lemma25(sub_spec(config, kLemma25, "lemma25", primes)));
        append(check_lemma26(sub_spec(config, kLemma26, "lemma26", primes)));
        append(check_cor27(sub_spec(config, kCor27, "cor27", primes)));
        append(check_lemma32(sub_spec(config, kLemma32, "lemma32", primes)));
        append(check_thm12(sub_spec(config, kThm12, "thm12", primes)));
        append(check_thm13(sub_spec(config, kThm13, "thm13", primes)));
    }

    std::map<std::string, std::vector<double>> ratios;
    for (const BoundCheck& row : rows) {
        auto& summary = report.summary[row.check];
        if (!(row.ratio <= summary.max_ratio)) summary.max_ratio = row.ratio;
        if (!row.pass) summary.failures++;
        ratios[row.check].push_back(row.ratio);

        if (row.tier == "asymptotic") {
            if (!row.pass || !(row.ratio <= config.ratio_gate)) report.all_pass = false;
        } else if (!row.pass) {
            report.all_pass = false;
        }
    }
    for (auto& [name, values] : ratios) {
        std::sort(values.begin(), values.end());
        const std::size_t n = values.size();
        report.summary[name].median_ratio =
            (n % 2 == 1) ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
    }
    return report;
}

std::string report_to_json(const Report& report) {
    nlohmann::ordered_json j;
    j["version"] = report.version;
    j["config"] = {{"suite", report.config.suite},
                   {"primes", report.config.primes},
                   {"trials", report.config.trials},
                   {"seed", report.config.seed},
                   {"ratio_gate", report.config.ratio_gate},
                   {"threads", report.config.threads}};
    j["rows"] = nlohmann::ordered_json::array();
    for (const BoundCheck& row : report.rows) {
        nlohmann::ordered_json r;
        r["check"] = row.check;
        r["p"] = row.p;
        r["sizes"] = row.sizes;
        r["lambda"] = row.lambda;
        r["mu"] = row.mu;
        r["lhs"] = row.lhs;
        r["rhs"] = row.rhs;
        r["ratio"] = row.ratio;
        r["tier"] = row.tier;
        r["pass"] = row.pass;
        j["rows"].push_back(std::move(r));
    }
    j["summary"] = nlohmann::ordered_json::object();
    for (const auto& [name, s] : report.summary)
        j["summary"][name] = {{"max_ratio", s.max_ratio},
                              {"median_ratio", s.median_ratio},
                              {"failures", s.failures}};
    return j.dump(2) + "\n";
}

std::string report_to_csv(const Report& report) {
    std::ostringstream out;
    out << "check,p,sizes,lambda,mu,lhs,rhs,ratio,tier,pass\n";
    for (const BoundCheck& row : report.rows) {
        out << row.check << ',' << row.p << ',';
        for (std::size_t i = 0; i < row.sizes.size(); ++i)
            out << (i ? ";" : "") << row.sizes[i];
        out << ',' << row.lambda << ',' << row.mu << ',' << row.lhs << ',' << row.rhs
            << ',' << fmt(row.ratio) << ',' << row.tier << ','
            << (row.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

} // namespace ffinc
