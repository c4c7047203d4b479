#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "ffinc/int128.hpp"
#include "ffinc/subset.hpp"

namespace ffinc {

/// Non-vertical line y = slope*x + intercept. Only these p^2 lines are ever
/// enumerated; vertical lines are outside the parameterization.
struct Line {
    Residue slope = 0;
    Residue intercept = 0;
};

/// counts[d] = iota_{A x B}(line with the given slope and intercept d).
struct SlopeHistogram {
    Residue slope = 0;
    std::vector<std::uint32_t> counts;
};

/// histogram[n] = number of lines with incidence count exactly n,
/// over all p^2 non-vertical lines.
struct IncidenceSpectrum {
    std::uint32_t p = 0;
    std::map<std::uint32_t, std::uint64_t> histogram;

    u128 line_count() const;    // sum of histogram values; must be p^2
    u128 weighted_sum() const;  // sum n * histogram[n]; must be p*|A|*|B|
    u128 weighted_sq_sum() const;
};

/// Exact rational with denominator p^2; the centered moments keep AB/p exact.
struct ScaledCount {
    i128 num = 0;       // value = num / p^2
    std::uint32_t p = 0;

    double to_double() const {
        return static_cast<double>(num) / (static_cast<double>(p) * p);
    }
};

struct DyadicFamily {
    std::uint32_t threshold = 0;  // N: counts lines with N < iota <= 2N
    Residue lambda = 1;
    Residue mu = 1;
    std::uint64_t size = 0;
};

/// #{x in A : slope*x + intercept in B}, via a membership bitmap over F_p.
std::uint32_t incidence_count(const Subset& A, const Subset& B, Line line);

SlopeHistogram slope_histogram(const Subset& A, const Subset& B, Residue slope);

IncidenceSpectrum incidence_spectrum(const Subset& A, const Subset& B);

/// Sum over all lines of iota; equals p*|A|*|B| exactly.
u128 first_moment(const Subset& A, const Subset& B);

/// Sum over (c,d) of iota(l_{c,d}) * iota(l_{lambda*c, mu*d}).
/// Closed form (checked against brute force): A^2B^2 - n_a B^2 + p n_a n_b
/// with n_a = #{a in A : lambda*mu^-1 * a in A} and
///      n_b = #{b in B : mu^-1 * b in B};
/// reduces to A^2B^2 - AB^2 + pAB when the dilations fix the sets
/// (in particular lambda = mu = 1).
u128 mixed_moment_11(const Subset& A, const Subset& B, Residue lambda, Residue mu);

/// Sum over (c,d) of (iota(l_{lambda*c, mu*d}) - AB/p)^2, exact over p^2;
/// equals AB(p - B) exactly, hence <= pAB.
ScaledCount centered_moment_2(const Subset& A, const Subset& B, Residue lambda, Residue mu);

/// Sum over (c,d) of iota(l_{c,d}) * (iota(l_{lambda*c, mu*d}) - AB/p)^2,
/// exact over p^2. Requires |A| <= |B|.
ScaledCount centered_moment_12(const Subset& A, const Subset& B, Residue lambda, Residue mu);

/// Sum over (c,d) of iota(l_{c,d}) * iota(l_{lambda*c, mu*d})^2.
u128 line_triple_sum(const Subset& A, const Subset& B, Residue lambda, Residue mu);

/// Number of lines (c,d) with N < iota(l_{lambda*c, mu*d}) <= 2N; N >= 2.
DyadicFamily dyadic_family_size(const Subset& A, const Subset& B,
                                Residue lambda, Residue mu, std::uint32_t N);

/// Total incidences of A x B with the given lines, duplicates counted
/// with multiplicity.
u128 point_line_incidences(const Subset& A, const Subset& B,
                           const std::vector<Line>& lines);

} // namespace ffinc
