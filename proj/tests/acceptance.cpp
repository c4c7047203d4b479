// Acceptance gate: ten end-to-end criteria, one pass/fail line each.
// Exit code 0 only when every criterion passes.
#include <sys/wait.h>

#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ffinc/energy.hpp"
#include "ffinc/expsum.hpp"
#include "ffinc/field.hpp"
#include "ffinc/incidence.hpp"
#include "ffinc/prng.hpp"
#include "ffinc/subset.hpp"
#include "ffinc/verify.hpp"
#include "oracles.hpp"

namespace {

using namespace ffinc;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool emit(int index, const char* name, bool ok, const std::string& detail) {
    std::printf("criterion %2d [%s] %s (%s)\n", index, name, ok ? "PASS" : "FAIL",
                detail.c_str());
    std::fflush(stdout);
    return ok;
}

std::string fmt_secs(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f s", s);
    return buf;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(FFINC_CLI_PATH) + " " + args;
    return WEXITSTATUS(std::system(cmd.c_str()));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ---- criteria 1 and 2: moment identities over a shared trial family -------

struct MomentOutcome {
    bool moments_ok = true;   // criterion 1
    bool centered_ok = true;  // criterion 2
    int trials = 0;
    double secs = 0.0;
};

MomentOutcome run_moment_trials() {
    const auto start = Clock::now();
    MomentOutcome out;
    for (std::uint32_t p : {101u, 499u, 1009u}) {
        const FieldCtx ctx(p);
        std::vector<std::int64_t> orders;
        for (std::int64_t d = 1; d <= 64; ++d)
            if ((p - 1) % d == 0) orders.push_back(d);
        for (int t = 0; t < 20; ++t) {
            Prng rng(derive_seed(2024, p, t));
            const int kind = t % 3;
            auto make = [&](std::uint64_t salt) {
                const std::uint64_t seed = derive_seed(2024, p, t, salt);
                if (kind == 0)
                    return gen_subset(ctx, GenKind::random_elements,
                                      {{"size", 1 + rng.next_below(64)}}, seed);
                if (kind == 1)
                    return gen_subset(ctx, GenKind::interval,
                                      {{"size", 1 + rng.next_below(64)}}, seed);
                return gen_subset(
                    ctx, GenKind::subgroup,
                    {{"order",
                      orders[rng.next_below(static_cast<std::uint32_t>(orders.size()))]}},
                    seed);
            };
            const Subset A = make(1);
            const Subset B = make(2);
            Residue lambda = 1, mu = 1;
            if (t != 0) {
                lambda = 1 + rng.next_below(p - 1);
                mu = 1 + rng.next_below(p - 1);
            }
            const i128 a = static_cast<i128>(A.size());
            const i128 b = static_cast<i128>(B.size());

            if (first_moment(A, B) != static_cast<u128>(p) * A.size() * B.size())
                out.moments_ok = false;
            const u128 mixed = mixed_moment_11(A, B, lambda, mu);
            if (static_cast<i128>(mixed) !=
                oracle::mixed_moment_closed_form(A, B, lambda, mu))
                out.moments_ok = false;
            if (lambda == 1 && mu == 1 &&
                static_cast<i128>(mixed) !=
                    a * a * b * b - a * b * b + static_cast<i128>(p) * a * b)
                out.moments_ok = false;

            const i128 c2 = centered_moment_2(A, B, lambda, mu).num;
            const i128 p2 = static_cast<i128>(p) * p;
            if (c2 != p2 * a * b * (static_cast<i128>(p) - b)) out.centered_ok = false;
            if (c2 > p2 * static_cast<i128>(p) * a * b) out.centered_ok = false;
            if (p <= 101 && c2 != oracle::centered_moment_2(A, B, lambda, mu))
                out.centered_ok = false;  // line-by-line confirmation
            ++out.trials;
        }
    }
    out.secs = seconds_since(start);
    return out;
}

// ---- criteria 3 and 5: oracle equivalence and proof-chain inequalities ----

struct ChainOutcome {
    bool equal = true;  // criterion 3
    bool chain = true;  // criterion 5
    std::uint64_t instances = 0;
    double secs = 0.0;
};

void check_instance(const Subset& A, const Subset& B, Residue lambda, Residue mu,
                    bool run_oracles, ChainOutcome& out) {
    const std::uint32_t p = A.p();
    const u128 t_fast = collinear_triples(A, B, lambda, mu, Algo::fast).value;
    const u128 ts_fast = collinear_triples_nonzero(A, B, lambda, mu, Algo::fast).value;
    const u128 d_fast = quad_energy(A, B, lambda, mu, false, Algo::fast).value;
    const u128 ds_fast = quad_energy(A, B, lambda, mu, true, Algo::fast).value;
    if (run_oracles) {
        if (t_fast != collinear_triples(A, B, lambda, mu, Algo::oracle).value ||
            ts_fast != collinear_triples_nonzero(A, B, lambda, mu, Algo::oracle).value ||
            d_fast != quad_energy(A, B, lambda, mu, false, Algo::oracle).value ||
            ds_fast != quad_energy(A, B, lambda, mu, true, Algo::oracle).value)
            out.equal = false;
    }

    // Proof-chain inequalities, all with constant exactly 1.
    const u128 ab = static_cast<u128>(A.size()) * B.size();
    if (ds_fast > ab * ts_fast) out.chain = false;
    const Residue mu_inv = mod_inv(p, mu);
    const Residue lt = mod_mul(p, lambda, mu_inv);
    if (ts_fast > line_triple_sum(A, B, lt, mu_inv)) out.chain = false;
    if (ds_fast != slope_quadruple_histogram(A, B, lambda, mu).sum_sq_nonzero())
        out.chain = false;
    ++out.instances;
}

void check_pair(const Subset& A, const Subset& B, const std::vector<Residue>& scales,
                ChainOutcome& out) {
    // Collision count N and the I-histogram identity depend only on the pair.
    const u128 n_fast = collision_count(A, B, B, Algo::fast).value;
    if (n_fast != collision_count(A, B, B, Algo::oracle).value) out.equal = false;
    const auto tripled = diff_product_histogram(A, B, DiffMode::triple_scaled);
    if (tripled.sum_sq() != collision_count(B, A, A, Algo::fast).value)
        out.chain = false;
    for (Residue lambda : scales)
        for (Residue mu : scales) check_instance(A, B, lambda, mu, true, out);
}

ChainOutcome run_oracle_equivalence() {
    const auto start = Clock::now();
    ChainOutcome out;
    // (a) every subset pair of F_7 and F_11 with sizes <= 4, lambda,mu in {1,2}.
    for (std::uint32_t p : {7u, 11u}) {
        std::vector<Subset> subs;
        for (std::uint32_t mask = 1; mask < (1u << p); ++mask) {
            if (std::popcount(mask) > 4) continue;
            std::vector<Residue> el;
            for (Residue r = 0; r < p; ++r)
                if ((mask >> r) & 1) el.push_back(r);
            subs.emplace_back(p, el);
        }
        for (const Subset& A : subs)
            for (const Subset& B : subs) check_pair(A, B, {1, 2}, out);
    }
    // (b) 50 random instances with p <= 101, sizes <= 12.
    const std::array<std::uint32_t, 4> primes{13, 31, 61, 101};
    for (int t = 0; t < 50; ++t) {
        Prng rng(derive_seed(77, t));
        const std::uint32_t p = primes[rng.next_below(4)];
        const FieldCtx ctx(p);
        const Subset A = oracle::random_subset(ctx, 1 + rng.next_below(12),
                                               derive_seed(77, t, 1));
        const Subset B = oracle::random_subset(ctx, 1 + rng.next_below(12),
                                               derive_seed(77, t, 2));
        const Residue lambda = 1 + rng.next_below(p - 1);
        const Residue mu = 1 + rng.next_below(p - 1);
        const u128 n_fast = collision_count(A, B, B, Algo::fast).value;
        if (n_fast != collision_count(A, B, B, Algo::oracle).value) out.equal = false;
        const auto tripled = diff_product_histogram(A, B, DiffMode::triple_scaled);
        if (tripled.sum_sq() != collision_count(B, A, A, Algo::fast).value)
            out.chain = false;
        check_instance(A, B, lambda, mu, true, out);
    }
    out.secs = seconds_since(start);
    return out;
}

// ---- criterion 4: decomposition exactness ----------------------------------

bool run_decomposition(std::string& detail) {
    bool ok = true;
    for (int t = 0; t < 20; ++t) {
        Prng rng(derive_seed(404, t));
        const std::uint32_t p = (t % 2 == 0) ? 31 : 101;
        const FieldCtx ctx(p);
        const Subset A =
            oracle::random_subset(ctx, 1 + rng.next_below(10), derive_seed(404, t, 1));
        const Subset B =
            oracle::random_subset(ctx, 1 + rng.next_below(10), derive_seed(404, t, 2));
        const Residue lambda = 1 + rng.next_below(p - 1);
        const Residue mu = 1 + rng.next_below(p - 1);
        const Residue mu_inv = ctx.inv(mu);
        const i128 t_count =
            static_cast<i128>(collinear_triples(A, B, lambda, mu, Algo::fast).value);
        const i128 line =
            static_cast<i128>(line_triple_sum(A, B, ctx.mul(lambda, mu_inv), mu_inv));
        if (t_count != line + degenerate_correction(A, B, lambda, mu)) ok = false;
    }
    detail = "20 instances, zero tolerance";
    return ok;
}

// ---- criterion 6: bilinear constant-1 bound --------------------------------

bool run_bilinear_bound(std::string& detail) {
    int violations = 0;
    for (int t = 0; t < 200; ++t) {
        Prng rng(derive_seed(606, t));
        const std::uint32_t p = (t < 100) ? 101 : 499;
        const FieldCtx ctx(p);
        const Subset A =
            oracle::random_subset(ctx, 1 + rng.next_below(32), derive_seed(606, t, 1));
        const Subset B =
            oracle::random_subset(ctx, 1 + rng.next_below(32), derive_seed(606, t, 2));
        const WeightKind kind =
            (t % 2 == 0) ? WeightKind::random_phase : WeightKind::random_sign;
        const auto alpha = gen_weight_vec(kind, A.size(), derive_seed(606, t, 3));
        const auto beta = gen_weight_vec(kind, B.size(), derive_seed(606, t, 4));
        const Residue coeff = 1 + rng.next_below(p - 1);
        const SumValue v = bilinear_sum(ctx, A, B, alpha, beta, coeff);
        const double bound =
            std::sqrt(static_cast<double>(p) * A.size() * B.size()) + v.error_bound;
        if (v.abs() > bound) ++violations;
    }
    detail = "200 trials, " + std::to_string(violations) + " violations";
    return violations == 0;
}

// ---- criterion 10: performance sanity ---------------------------------------

bool run_performance(std::string& detail) {
    const FieldCtx ctx(1009);
    const Subset A = oracle::random_subset(ctx, 64, 1);
    const Subset B = oracle::random_subset(ctx, 64, 2);
    const auto start = Clock::now();
    collinear_triples(A, B, 1, 1, Algo::fast);
    const double secs = seconds_since(start);
    if (secs >= 5.0) {
        detail = "fast T took " + fmt_secs(secs) + ", limit 5 s";
        return false;
    }

    const std::string csv_path = "acceptance_bench.csv";
    if (run_cli("bench --p 101 --sizes 4,8,16 --quantities T --algos fast,oracle"
                " --seed 3 --out " + csv_path) != 0) {
        detail = "bench CLI failed";
        return false;
    }
    double fast_ms = -1.0, oracle_ms = -1.0;
    std::istringstream in(slurp(csv_path));
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("T,101,16;16,fast,", 0) == 0)
            fast_ms = std::strtod(line.c_str() + 17, nullptr);
        if (line.rfind("T,101,16;16,oracle,", 0) == 0)
            oracle_ms = std::strtod(line.c_str() + 19, nullptr);
    }
    if (fast_ms < 0.0 || oracle_ms < 0.0) {
        detail = "bench CSV missing size-16 rows";
        return false;
    }
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "fast T(1009,64x64) in %s; bench at size 16: fast %.3f ms vs oracle "
                  "%.3f ms",
                  fmt_secs(secs).c_str(), fast_ms, oracle_ms);
    detail = buf;
    return fast_ms <= oracle_ms;
}

} // namespace

int main() {
    bool all = true;

    const MomentOutcome m = run_moment_trials();
    all &= emit(1, "incidence moment identities", m.moments_ok && m.secs < 60.0,
                std::to_string(m.trials) + " trials, " + fmt_secs(m.secs));
    all &= emit(2, "centered second moment closed form", m.centered_ok,
                "exact on all criterion-1 trials, line-by-line check at p <= 101");

    const ChainOutcome c = run_oracle_equivalence();
    all &= emit(3, "fast vs oracle equivalence (T, T*, D, D*, N)",
                c.equal && c.secs < 600.0,
                std::to_string(c.instances) + " instances, " + fmt_secs(c.secs));

    std::string detail;
    all &= emit(4, "triple-count decomposition exactness", run_decomposition(detail),
                detail);

    all &= emit(5, "proof-chain inequalities and histogram identities", c.chain,
                "checked on every criterion-3 instance");

    all &= emit(6, "bilinear sum constant-1 bound", run_bilinear_bound(detail), detail);

    {
        const CheckSpec spec{"complete_sums", {31, 101}, 1, 1};
        const auto rows = check_complete_sums(spec);
        bool ok = !rows.empty();
        for (const auto& row : rows) ok = ok && row.pass;
        all &= emit(7, "complete-sum reference values", ok,
                    std::to_string(rows.size()) + " rows within 1e-6");
    }

    {
        const SuiteConfig config;  // default family
        const Report r = run_suite(config);
        bool ok = r.all_pass;
        double max_ratio = 0.0;
        for (const char* name : {"thm11", "lemma24", "lemma25", "lemma26", "cor27",
                                 "lemma32", "thm12", "thm13"}) {
            const auto it = r.summary.find(name);
            if (it == r.summary.end()) {
                ok = false;
                continue;
            }
            ok = ok && it->second.max_ratio <= config.ratio_gate &&
                 it->second.failures == 0;
            max_ratio = std::max(max_ratio, it->second.max_ratio);
        }
        for (const auto& row : r.rows)
            if (row.tier != "asymptotic") ok = ok && row.pass;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "max empirical ratio %.3f, gate %.1f", max_ratio,
                      config.ratio_gate);
        all &= emit(8, "asymptotic ratio gates (empirical)", ok, buf);
    }

    {
        const std::string flags =
            "verify --suite all --p 101,499 --trials 3 --seed 11 --out ";
        const int rc1 = run_cli(flags + "acceptance_report_1.json");
        const int rc2 = run_cli(flags + "acceptance_report_2.json");
        const std::string r1 = slurp("acceptance_report_1.json");
        const std::string r2 = slurp("acceptance_report_2.json");
        const bool ok = rc1 == 0 && rc2 == 0 && !r1.empty() && r1 == r2;
        std::remove("acceptance_report_1.json");
        std::remove("acceptance_report_2.json");
        all &= emit(9, "report determinism (CLI, byte identical)", ok,
                    "verify --suite all run twice");
    }

    all &= emit(10, "performance sanity", run_performance(detail), detail);

    std::printf("acceptance: %s\n", all ? "ALL CRITERIA PASS" : "FAILURES DETECTED");
    return all ? 0 : 1;
}
