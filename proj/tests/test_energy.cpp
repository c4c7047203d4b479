#include "doctest.h"

#include <numeric>

#include "ffinc/energy.hpp"
#include "ffinc/field.hpp"
#include "ffinc/incidence.hpp"
#include "ffinc/prng.hpp"
#include "oracles.hpp"

using namespace ffinc;

TEST_CASE("singleton counts") {
    const Subset z(7, {0});
    CHECK(collinear_triples(z, z, 1, 1, Algo::fast).value == 1);
    CHECK(collinear_triples(z, z, 3, 5, Algo::oracle).value == 1);
    CHECK(collinear_triples_nonzero(z, z, 1, 1, Algo::fast).value == 0);
    CHECK(quad_energy(z, z, 1, 1, false, Algo::fast).value == 1);  // D
    CHECK(quad_energy(z, z, 1, 1, true, Algo::fast).value == 0);   // D*
    const auto j = slope_quadruple_histogram(z, z, 1, 1);
    CHECK(j.total() == 0);  // a = lambda*a1 always
}

TEST_CASE("fast equals oracle on random instances") {
    Prng rng(11);
    for (std::uint32_t p : {7u, 11u, 31u}) {
        const FieldCtx ctx(p);
        for (int trial = 0; trial < 5; ++trial) {
            const Subset a = oracle::random_subset(ctx, 1 + rng.next_below(5), rng.state);
            const Subset b =
                oracle::random_subset(ctx, 1 + rng.next_below(5), rng.state + 1);
            const Subset c =
                oracle::random_subset(ctx, 1 + rng.next_below(5), rng.state + 2);
            const Residue lambda = 1 + rng.next_below(p - 1);
            const Residue mu = 1 + rng.next_below(p - 1);

            const u128 t_fast = collinear_triples(a, b, lambda, mu, Algo::fast).value;
            CHECK(t_fast == collinear_triples(a, b, lambda, mu, Algo::oracle).value);
            const u128 ts_fast =
                collinear_triples_nonzero(a, b, lambda, mu, Algo::fast).value;
            CHECK(ts_fast ==
                  collinear_triples_nonzero(a, b, lambda, mu, Algo::oracle).value);
            CHECK(ts_fast <= t_fast);
            CHECK(quad_energy(a, b, lambda, mu, false, Algo::fast).value ==
                  quad_energy(a, b, lambda, mu, false, Algo::oracle).value);
            CHECK(quad_energy(a, b, lambda, mu, true, Algo::fast).value ==
                  quad_energy(a, b, lambda, mu, true, Algo::oracle).value);
            CHECK(collision_count(a, b, c, Algo::fast).value ==
                  collision_count(a, b, c, Algo::oracle).value);
        }
    }
}

TEST_CASE("zero-value split D - D* = h(0)^2") {
    const FieldCtx ctx(31);
    Prng rng(23);
    for (int trial = 0; trial < 6; ++trial) {
        const Subset a = oracle::random_subset(ctx, 1 + rng.next_below(8), rng.state);
        const Subset b = oracle::random_subset(ctx, 1 + rng.next_below(8), rng.state + 1);
        const Residue lambda = 1 + rng.next_below(30), mu = 1 + rng.next_below(30);
        const u128 d = quad_energy(a, b, lambda, mu, false, Algo::fast).value;
        const u128 dstar = quad_energy(a, b, lambda, mu, true, Algo::fast).value;
        const u128 h0 = quad_zero_count(a, b, lambda, mu);
        CHECK(d - dstar == h0 * h0);
    }
}

TEST_CASE("slope quadruple histogram J") {
    const FieldCtx ctx(31);
    Prng rng(29);
    for (int trial = 0; trial < 6; ++trial) {
        const Subset a = oracle::random_subset(ctx, 1 + rng.next_below(8), rng.state);
        const Subset b = oracle::random_subset(ctx, 1 + rng.next_below(8), rng.state + 1);
        const Residue lambda = 1 + rng.next_below(30), mu = 1 + rng.next_below(30);
        const auto j = slope_quadruple_histogram(a, b, lambda, mu);

        // Partition: sum_xi J(xi) = #{(a1,a) with a != lambda*a1} * B^2.
        const auto bits = a.bitmap();
        u128 fixed = 0;
        for (Residue x : a.elements()) fixed += bits[ctx.mul(lambda, x)];
        const u128 pairs = static_cast<u128>(a.size()) * a.size() - fixed;
        CHECK(j.total() == pairs * b.size() * b.size());

        // D* = sum over xi != 0 of J(xi)^2.
        CHECK(j.sum_sq_nonzero() == quad_energy(a, b, lambda, mu, true, Algo::fast).value);
    }
}

TEST_CASE("difference-product histograms") {
    const FieldCtx ctx(31);
    const Subset u = oracle::random_subset(ctx, 6, 1);
    const Subset v = oracle::random_subset(ctx, 5, 2);

    const auto pair = diff_product_histogram(u, v, DiffMode::pair_product);
    CHECK(pair.total() ==
          static_cast<u128>(u.size()) * u.size() * v.size() * v.size());
    CHECK(pair.sum_sq_nonzero() == quad_energy(u, v, 1, 1, true, Algo::fast).value);

    const auto triple = diff_product_histogram(u, v, DiffMode::triple_scaled);
    CHECK(triple.total() == static_cast<u128>(u.size()) * u.size() * v.size());
    CHECK(triple.sum_sq() == collision_count(v, u, u, Algo::fast).value);

    const Subset single(31, {4});
    const auto conc = diff_product_histogram(single, v, DiffMode::pair_product);
    CHECK(conc.counts[0] == conc.total());  // u1 - u2 = 0 always
}

TEST_CASE("complete-set collision count") {
    std::vector<Residue> all(5);
    std::iota(all.begin(), all.end(), 0);
    const Subset full(5, all);
    CHECK(collision_count(full, full, full, Algo::fast).value == 3625);
    CHECK(collision_count(full, full, full, Algo::oracle).value == 3625);
    const Subset one(5, {1});
    CHECK(collision_count(one, one, one, Algo::fast).value == 1);
}

TEST_CASE("swap symmetry of T at lambda = mu = 1") {
    const FieldCtx ctx(31);
    const Subset a = oracle::random_subset(ctx, 5, 3);
    const Subset b = oracle::random_subset(ctx, 7, 4);
    CHECK(collinear_triples(a, b, 1, 1, Algo::fast).value ==
          collinear_triples(b, a, 1, 1, Algo::fast).value);
}

TEST_CASE("decomposition against the incidence line sum") {
    const FieldCtx ctx(31);
    Prng rng(41);
    for (int trial = 0; trial < 8; ++trial) {
        const Subset a = oracle::random_subset(ctx, 1 + rng.next_below(8), rng.state);
        const Subset b = oracle::random_subset(ctx, 1 + rng.next_below(8), rng.state + 1);
        const Residue lambda = 1 + rng.next_below(30), mu = 1 + rng.next_below(30);
        const Residue mu_inv = ctx.inv(mu);
        const Residue lt = ctx.mul(lambda, mu_inv);
        const i128 t = static_cast<i128>(collinear_triples(a, b, lambda, mu, Algo::fast).value);
        const i128 line_sum = static_cast<i128>(line_triple_sum(a, b, lt, mu_inv));
        CHECK(t == line_sum + degenerate_correction(a, b, lambda, mu));
    }
    // The worked toy example: p=7, A={1,2}, B={3,5}.
    const Subset a7(7, {1, 2}), b7(7, {3, 5});
    const i128 t = static_cast<i128>(collinear_triples(a7, b7, 1, 1, Algo::fast).value);
    CHECK(t == static_cast<i128>(line_triple_sum(a7, b7, 1, 1)) +
                   degenerate_correction(a7, b7, 1, 1));
}

TEST_CASE("oracle loop cap") {
    const FieldCtx ctx(101);
    const Subset a = oracle::random_subset(ctx, 32, 1);
    const Subset b = oracle::random_subset(ctx, 32, 2);
    // (AB)^3 = 1024^3 > 10^9.
    CHECK_THROWS_AS(collinear_triples(a, b, 1, 1, Algo::oracle), Error);
    try {
        quad_energy(a, b, 1, 1, false, Algo::oracle);
        FAIL("expected CapExceeded");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::cap_exceeded);
    }
    // The fast paths are unaffected.
    CHECK_NOTHROW(collinear_triples(a, b, 1, 1, Algo::fast));
}

TEST_CASE("energy result JSON") {
    const Subset z(7, {0});
    const auto r = collinear_triples(z, z, 1, 1, Algo::fast);
    const std::string j = r.to_json();
    CHECK(j.find("\"quantity\": \"T\"") != std::string::npos);
    CHECK(j.find("\"value\": \"1\"") != std::string::npos);
    CHECK(j.find("\"algorithm\": \"fast\"") != std::string::npos);
}

TEST_CASE("validation errors") {
    const Subset a(7, {1}), b(11, {1});
    CHECK_THROWS_AS(collinear_triples(a, b, 1, 1, Algo::fast), Error);  // modulus
    const Subset c(7, {2});
    CHECK_THROWS_AS(collinear_triples(a, c, 0, 1, Algo::fast), Error);  // zero scale
    CHECK_THROWS_AS(quad_energy(a, c, 1, 0, false, Algo::fast), Error);
}
