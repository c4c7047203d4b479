#include "ffinc/incidence.hpp"

#include <string>

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

// counts[d] += 1 for each (x,y) in A x B with d = y - slope*x.
void fill_slope_histogram(const Subset& A, const Subset& B, Residue slope,
                          std::vector<std::uint32_t>& counts) {
    const std::uint32_t p = A.p();
    counts.assign(p, 0);
    for (Residue x : A.elements()) {
        const Residue sx = mod_mul(p, slope, x);
        for (Residue y : B.elements()) counts[mod_sub(p, y, sx)]++;
    }
}

// Streaming accumulator for all joint moments of the line pair
// (l_{c,d}, l_{lambda*c, mu*d}), one slope c at a time.
struct JointMoments {
    u128 s1 = 0;    // sum iota(c,d)
    u128 s12 = 0;   // sum iota(c,d) * iota(lambda*c, mu*d)
    u128 s22 = 0;   // sum iota(lambda*c, mu*d)^2
    u128 s122 = 0;  // sum iota(c,d) * iota(lambda*c, mu*d)^2
};

JointMoments joint_moments(const Subset& A, const Subset& B, Residue lambda, Residue mu) {
    const std::uint32_t p = A.p();
    JointMoments m;
    std::vector<std::uint32_t> h1, h2;
    for (Residue c = 0; c < p; ++c) {
        fill_slope_histogram(A, B, c, h1);
        fill_slope_histogram(A, B, mod_mul(p, lambda, c), h2);
        Residue md = 0;  // mu * d, tracked incrementally
        for (Residue d = 0; d < p; ++d, md = mod_add(p, md, mu)) {
            const u128 i1 = h1[d];
            const u128 i2 = h2[md];
            m.s1 += i1;
            m.s12 += i1 * i2;
            m.s22 += i2 * i2;
            m.s122 += i1 * i2 * i2;
        }
    }
    return m;
}

} // namespace

u128 IncidenceSpectrum::line_count() const {
    u128 total = 0;
    for (const auto& [n, lines] : histogram) total += lines;
    return total;
}

u128 IncidenceSpectrum::weighted_sum() const {
    u128 total = 0;
    for (const auto& [n, lines] : histogram) total += static_cast<u128>(n) * lines;
    return total;
}

u128 IncidenceSpectrum::weighted_sq_sum() const {
    u128 total = 0;
    for (const auto& [n, lines] : histogram)
        total += static_cast<u128>(n) * n * lines;
    return total;
}

std::uint32_t incidence_count(const Subset& A, const Subset& B, Line line) {
    require_same_p(A, B);
    const std::uint32_t p = A.p();
    const auto in_b = B.bitmap();
    std::uint32_t count = 0;
    for (Residue x : A.elements())
        count += in_b[mod_add(p, mod_mul(p, line.slope, x), line.intercept)];
    return count;
}

SlopeHistogram slope_histogram(const Subset& A, const Subset& B, Residue slope) {
    require_same_p(A, B);
    SlopeHistogram h;
    h.slope = slope;
    fill_slope_histogram(A, B, slope, h.counts);
    return h;
}

IncidenceSpectrum incidence_spectrum(const Subset& A, const Subset& B) {
    require_same_p(A, B);
    const std::uint32_t p = A.p();
    std::vector<std::uint64_t> by_count(A.size() + 1, 0);
    std::vector<std::uint32_t> h;
    for (Residue c = 0; c < p; ++c) {
        fill_slope_histogram(A, B, c, h);
        for (Residue d = 0; d < p; ++d) by_count[h[d]]++;
    }
    IncidenceSpectrum spec;
    spec.p = p;
    for (std::uint32_t n = 0; n < by_count.size(); ++n)
        if (by_count[n] > 0) spec.histogram[n] = by_count[n];
    return spec;
}

u128 first_moment(const Subset& A, const Subset& B) {
    require_same_p(A, B);
    const std::uint32_t p = A.p();
    u128 total = 0;
    std::vector<std::uint32_t> h;
    for (Residue c = 0; c < p; ++c) {
        fill_slope_histogram(A, B, c, h);
        for (Residue d = 0; d < p; ++d) total += h[d];
    }
    return total;
}

u128 mixed_moment_11(const Subset& A, const Subset& B, Residue lambda, Residue mu) {
    require_same_p(A, B);
    require_nonzero_scale(A.p(), lambda, mu);
    return joint_moments(A, B, lambda, mu).s12;
}

ScaledCount centered_moment_2(const Subset& A, const Subset& B, Residue lambda,
                              Residue mu) {
    require_same_p(A, B);
    require_nonzero_scale(A.p(), lambda, mu);
    const auto m = joint_moments(A, B, lambda, mu);
    const i128 p = A.p();
    const i128 ab = static_cast<i128>(A.size()) * static_cast<i128>(B.size());
    // sum (iota' - AB/p)^2 = sum iota'^2 - 2(AB/p)(pAB) + p^2 (AB/p)^2, over p^2.
    const i128 num = p * p * static_cast<i128>(m.s22) - p * p * ab * ab;
    return ScaledCount{num, A.p()};
}

ScaledCount centered_moment_12(const Subset& A, const Subset& B, Residue lambda,
                               Residue mu) {
    require_same_p(A, B);
    require_nonzero_scale(A.p(), lambda, mu);
    if (A.size() > B.size())
        fail(Errc::size_order, "centered_moment_12 requires |A| <= |B|");
    const auto m = joint_moments(A, B, lambda, mu);
    const i128 p = A.p();
    const i128 ab = static_cast<i128>(A.size()) * static_cast<i128>(B.size());
    // sum iota (iota' - AB/p)^2 over p^2:
    //   p^2 * s122 - 2pAB * s12 + A^2B^2 * s1, with s1 = pAB.
    const i128 num = p * p * static_cast<i128>(m.s122) -
                     2 * p * ab * static_cast<i128>(m.s12) +
                     ab * ab * static_cast<i128>(m.s1);
    return ScaledCount{num, A.p()};
}

u128 line_triple_sum(const Subset& A, const Subset& B, Residue lambda, Residue mu) {
    require_same_p(A, B);
    require_nonzero_scale(A.p(), lambda, mu);
    return joint_moments(A, B, lambda, mu).s122;
}

DyadicFamily dyadic_family_size(const Subset& A, const Subset& B, Residue lambda,
                                Residue mu, std::uint32_t N) {
    require_same_p(A, B);
    require_nonzero_scale(A.p(), lambda, mu);
    if (N < 2) fail(Errc::bad_threshold, "dyadic threshold must be >= 2");
    // (c,d) -> (lambda*c, mu*d) permutes the p^2 lines, so the family size
    // can be read off the plain incidence spectrum.
    const auto spec = incidence_spectrum(A, B);
    DyadicFamily fam{N, lambda, mu, 0};
    for (const auto& [n, lines] : spec.histogram)
        if (n > N && n <= 2 * static_cast<std::uint64_t>(N)) fam.size += lines;
    return fam;
}

u128 point_line_incidences(const Subset& A, const Subset& B,
                           const std::vector<Line>& lines) {
    require_same_p(A, B);
    const std::uint32_t p = A.p();
    const auto in_b = B.bitmap();
    u128 total = 0;
    for (const Line& line : lines) {
        if (line.slope >= p || line.intercept >= p)
            fail(Errc::modulus_mismatch, "line parameters out of range for p");
        std::uint32_t count = 0;
        for (Residue x : A.elements())
            count += in_b[mod_add(p, mod_mul(p, line.slope, x), line.intercept)];
        total += count;
    }
    return total;
}

} // namespace ffinc
