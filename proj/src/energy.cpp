#include "ffinc/energy.hpp"

#include <string>

#include "json.hpp"

namespace ffinc {

namespace {

void require_same_p(const Subset& A, const Subset& B) {
    if (A.p() != B.p())
        fail(Errc::modulus_mismatch, "sets have moduli " + std::to_string(A.p()) +
                                         " and " + std::to_string(B.p()));
}

void require_nonzero_scale(std::uint32_t p, Residue lambda, Residue mu) {
    if (lambda == 0 || mu == 0 || lambda >= p || mu >= p)
        fail(Errc::zero_scale, "lambda and mu must be nonzero residues");
}

void require_oracle_cap(u128 loop_count, const char* what) {
    if (loop_count > kOracleLoopCap)
        fail(Errc::cap_exceeded, std::string(what) + " oracle loop count exceeds cap");
}

// (a1 - lambda*a) mod p for every a in S, for a fixed a1.
std::vector<Residue> scaled_differences(std::uint32_t p, Residue a1, Residue scale,
                                        const std::vector<Residue>& s) {
    std::vector<Residue> out;
    out.reserve(s.size());
    for (Residue a : s) out.push_back(mod_sub(p, a1, mod_mul(p, scale, a)));
    return out;
}

// Shared kernel for T / T*: for each (a1,b1), histogram the products
// (a1 - lambda*a)(b1 - mu*b) over A x B and add sum r(v)^2 (optionally
// skipping v = 0). The square-sum is maintained incrementally.
u128 triples_fast(const Subset& A, const Subset& B, Residue lambda, Residue mu,
                  bool nonzero) {
    const std::uint32_t p = A.p();
    u128 total = 0;
    std::vector<std::uint64_t> r(p, 0);
    std::vector<Residue> touched;
    touched.reserve(A.size() * B.size());
    for (Residue a1 : A.elements()) {
        const auto da = scaled_differences(p, a1, lambda, A.elements());
        for (Residue b1 : B.elements()) {
            const auto db = scaled_differences(p, b1, mu, B.elements());
            u128 sq = 0;
            touched.clear();
            for (Residue x : da) {
                for (Residue y : db) {
                    const Residue v = mod_mul(p, x, y);
                    if (nonzero && v == 0) continue;
                    sq += 2 * r[v] + 1;
                    r[v]++;
                    touched.push_back(v);
                }
            }
            total += sq;
            for (Residue v : touched) r[v] = 0;
        }
    }
    return total;
}

u128 triples_oracle(const Subset& A, const Subset& B, Residue lambda, Residue mu,
                    bool nonzero) {
    const std::uint32_t p = A.p();
    const u128 ab = static_cast<u128>(A.size()) * B.size();
    require_oracle_cap(ab * ab * ab, "collinear triples");
    u128 total = 0;
    std::vector<Residue> vals;
    vals.reserve(A.size() * B.size());
    for (Residue a1 : A.elements()) {
        const auto da = scaled_differences(p, a1, lambda, A.elements());
        for (Residue b1 : B.elements()) {
            const auto db = scaled_differences(p, b1, mu, B.elements());
            vals.clear();
            for (Residue x : da)
                for (Residue y : db) vals.push_back(mod_mul(p, x, y));
            for (Residue v2 : vals) {
                if (nonzero && v2 == 0) continue;
                for (Residue v3 : vals) total += (v2 == v3);
            }
        }
    }
    return total;
}

// All quadruple products (a1 - lambda*a2)(b1 - mu*b2) as a dense histogram.
std::vector<std::uint64_t> quad_product_histogram(const Subset& A, const Subset& B,
                                                  Residue lambda, Residue mu) {
    const std::uint32_t p = A.p();
    std::vector<std::uint64_t> h(p, 0);
    std::vector<std::uint64_t> bdiff(p, 0);  // multiplicities of (b1 - mu*b2)
    for (Residue b1 : B.elements())
        for (Residue y : scaled_differences(p, b1, mu, B.elements())) bdiff[y]++;
    for (Residue a1 : A.elements()) {
        for (Residue x : scaled_differences(p, a1, lambda, A.elements())) {
            if (x == 0) {
                u128 all = static_cast<u128>(B.size()) * B.size();
                h[0] += static_cast<std::uint64_t>(all);
                continue;
            }
            for (Residue y = 0; y < p; ++y)
                if (bdiff[y]) h[mod_mul(p, x, y)] += bdiff[y];
        }
    }
    return h;
}

u128 quad_oracle(const Subset& A, const Subset& B, Residue lambda, Residue mu,
                 bool nonzero) {
    const std::uint32_t p = A.p();
    const u128 ab = static_cast<u128>(A.size()) * B.size();
    require_oracle_cap(ab * ab * ab * ab, "quad energy");
    std::vector<Residue> vals;
    vals.reserve(A.size() * A.size() * B.size() * B.size());
    for (Residue a1 : A.elements())
        for (Residue x : scaled_differences(p, a1, lambda, A.elements()))
            for (Residue b1 : B.elements())
                for (Residue y : scaled_differences(p, b1, mu, B.elements()))
                    vals.push_back(mod_mul(p, x, y));
    u128 total = 0;
    for (Residue v1 : vals) {
        if (nonzero && v1 == 0) continue;
        for (Residue v2 : vals) total += (v1 == v2);
    }
    return total;
}

u128 collision_fast(const Subset& X, const Subset& Y, const Subset& Z) {
    const std::uint32_t p = X.p();
    std::vector<std::uint64_t> g(p, 0);
    for (Residue y : Y.elements()) {
        for (Residue z : Z.elements()) {
            const Residue d = mod_sub(p, y, z);
            for (Residue x : X.elements()) g[mod_mul(p, x, d)]++;
        }
    }
    u128 total = 0;
    for (std::uint64_t c : g) total += static_cast<u128>(c) * c;
    return total;
}

u128 collision_oracle(const Subset& X, const Subset& Y, const Subset& Z) {
    const std::uint32_t p = X.p();
    const u128 xyz = static_cast<u128>(X.size()) * Y.size() * Z.size();
    require_oracle_cap(xyz * xyz, "collision count");
    std::vector<Residue> vals;
    vals.reserve(X.size() * Y.size() * Z.size());
    for (Residue x : X.elements())
        for (Residue y : Y.elements())
            for (Residue z : Z.elements()) vals.push_back(mod_mul(p, x, mod_sub(p, y, z)));
    u128 total = 0;
    for (Residue v1 : vals)
        for (Residue v2 : vals) total += (v1 == v2);
    return total;
}

} // namespace

std::string EnergyResult::to_json() const {
    nlohmann::ordered_json j;
    j["quantity"] = quantity;
    j["p"] = p;
    j["sizes"] = sizes;
    j["lambda"] = lambda;
    j["mu"] = mu;
    j["value"] = to_decimal(value);
    j["algorithm"] = ffinc::to_string(algorithm);
    return j.dump(2) + "\n";
}

u128 EnergyHistogram::total() const {
    u128 t = 0;
    for (std::uint64_t c : counts) t += c;
    return t;
}

u128 EnergyHistogram::sum_sq() const {
    u128 t = 0;
    for (std::uint64_t c : counts) t += static_cast<u128>(c) * c;
    return t;
}

u128 EnergyHistogram::sum_sq_nonzero() const {
    u128 t = 0;
    for (std::size_t v = 1; v < counts.size(); ++v)
        t += static_cast<u128>(counts[v]) * counts[v];
    return t;
}

EnergyResult collinear_triples(const Subset& A, const Subset& B, Residue lambda,
                               Residue mu, Algo algo) {
    require_same_p(A, B);
    require_nonzero_scale(A.p(), lambda, mu);
    EnergyResult res;
    res.quantity = "T";
    res.algorithm = algo;
    res.p = A.p();
    res.sizes = {A.size(), B.size()};
    res.lambda = lambda;
    res.mu = mu;
    res.value = (algo == Algo::fast) ? triples_fast(A, B, lambda, mu, false)
                                     : triples_oracle(A, B, lambda, mu, false);
    return res;
}

EnergyResult collinear_triples_nonzero(const Subset& A, const Subset& B, Residue lambda,
                                       Residue mu, Algo algo) {
    require_same_p(A, B);
    require_nonzero_scale(A.p(), lambda, mu);
    EnergyResult res;
    res.quantity = "Tstar";
    res.algorithm = algo;
    res.p = A.p();
    res.sizes = {A.size(), B.size()};
    res.lambda = lambda;
    res.mu = mu;
    res.value = (algo == Algo::fast) ? triples_fast(A, B, lambda, mu, true)
                                     : triples_oracle(A, B, lambda, mu, true);
    return res;
}

EnergyResult quad_energy(const Subset& A, const Subset& B, Residue lambda, Residue mu,
                         bool nonzero, Algo algo) {
    require_same_p(A, B);
    require_nonzero_scale(A.p(), lambda, mu);
    EnergyResult res;
    res.quantity = nonzero ? "Dstar" : "D";
    res.algorithm = algo;
    res.p = A.p();
    res.sizes = {A.size(), B.size()};
    res.lambda = lambda;
    res.mu = mu;
    if (algo == Algo::fast) {
        const auto h = quad_product_histogram(A, B, lambda, mu);
        u128 total = 0;
        for (std::size_t v = nonzero ? 1 : 0; v < h.size(); ++v)
            total += static_cast<u128>(h[v]) * h[v];
        res.value = total;
    } else {
        res.value = quad_oracle(A, B, lambda, mu, nonzero);
    }
    return res;
}

u128 quad_zero_count(const Subset& A, const Subset& B, Residue lambda, Residue mu) {
    require_same_p(A, B);
    require_nonzero_scale(A.p(), lambda, mu);
    const std::uint32_t p = A.p();
    // (a1 - lambda*a2)(b1 - mu*b2) = 0 iff either factor vanishes.
    u128 za = 0, zb = 0;
    const auto in_a = A.bitmap();
    const auto in_b = B.bitmap();
    const Residue inv_lambda = mod_inv(p, lambda);
    const Residue inv_mu = mod_inv(p, mu);
    for (Residue a : A.elements()) za += in_a[mod_mul(p, inv_lambda, a)];
    for (Residue b : B.elements()) zb += in_b[mod_mul(p, inv_mu, b)];
    const u128 a2 = static_cast<u128>(A.size()) * A.size();
    const u128 b2 = static_cast<u128>(B.size()) * B.size();
    return za * b2 + a2 * zb - za * zb;
}

EnergyHistogram slope_quadruple_histogram(const Subset& A, const Subset& B,
                                          Residue lambda, Residue mu) {
    require_same_p(A, B);
    require_nonzero_scale(A.p(), lambda, mu);
    const std::uint32_t p = A.p();
    EnergyHistogram hist{p, std::vector<std::uint64_t>(p, 0)};
    for (Residue a1 : A.elements()) {
        const Residue la1 = mod_mul(p, lambda, a1);
        for (Residue a : A.elements()) {
            const Residue denom = mod_sub(p, a, la1);
            if (denom == 0) continue;
            const Residue inv_denom = mod_inv(p, denom);
            for (Residue b1 : B.elements()) {
                const Residue mb1 = mod_mul(p, mu, b1);
                for (Residue b : B.elements())
                    hist.counts[mod_mul(p, mod_sub(p, b, mb1), inv_denom)]++;
            }
        }
    }
    return hist;
}

EnergyHistogram diff_product_histogram(const Subset& U, const Subset& V, DiffMode mode) {
    require_same_p(U, V);
    const std::uint32_t p = U.p();
    EnergyHistogram hist{p, std::vector<std::uint64_t>(p, 0)};
    if (mode == DiffMode::pair_product) {
        for (Residue u1 : U.elements()) {
            for (Residue u2 : U.elements()) {
                const Residue du = mod_sub(p, u1, u2);
                for (Residue v1 : V.elements())
                    for (Residue v2 : V.elements())
                        hist.counts[mod_mul(p, du, mod_sub(p, v1, v2))]++;
            }
        }
    } else {
        for (Residue u1 : U.elements()) {
            for (Residue u2 : U.elements()) {
                const Residue du = mod_sub(p, u1, u2);
                for (Residue v : V.elements()) hist.counts[mod_mul(p, v, du)]++;
            }
        }
    }
    return hist;
}

EnergyResult collision_count(const Subset& X, const Subset& Y, const Subset& Z,
                             Algo algo) {
    require_same_p(X, Y);
    require_same_p(X, Z);
    EnergyResult res;
    res.quantity = "N";
    res.algorithm = algo;
    res.p = X.p();
    res.sizes = {X.size(), Y.size(), Z.size()};
    res.lambda = 0;
    res.mu = 0;
    res.value =
        (algo == Algo::fast) ? collision_fast(X, Y, Z) : collision_oracle(X, Y, Z);
    return res;
}

i128 degenerate_correction(const Subset& A, const Subset& B, Residue lambda,
                           Residue mu) {
    require_same_p(A, B);
    require_nonzero_scale(A.p(), lambda, mu);
    const std::uint32_t p = A.p();
    const auto in_a = A.bitmap();
    const auto in_b = B.bitmap();
    const Residue inv_lambda = mod_inv(p, lambda);
    const Residue inv_mu = mod_inv(p, mu);
    i128 n_a = 0, n_b = 0;
    for (Residue a : A.elements()) n_a += in_a[mod_mul(p, inv_lambda, a)];
    for (Residue b : B.elements()) n_b += in_b[mod_mul(p, inv_mu, b)];
    const i128 b3 = static_cast<i128>(B.size()) * B.size() * B.size();
    return n_a * (b3 - static_cast<i128>(p) * n_b);
}

} // namespace ffinc
