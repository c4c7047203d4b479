#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ffinc/field.hpp"
#include "ffinc/subset.hpp"

namespace ffinc {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// One check family: which primes, how many trials, master seed.
struct CheckSpec {
    std::string name;
    std::vector<std::uint32_t> primes;
    int trials = 10;
    std::uint64_t seed = 1;
};

/// One verified row: lhs/rhs as decimal strings, ratio in double precision.
/// Tiers: "exact" (identity, zero tolerance), "const1" (inequality with
/// constant exactly 1), "asymptotic" (ratio reported against an empirical
/// gate; the implicit constants in those bounds are unspecified).
struct BoundCheck {
    std::string check;
    std::uint32_t p = 0;
    std::vector<std::size_t> sizes;
    Residue lambda = 0;
    Residue mu = 0;
    std::string lhs;
    std::string rhs;
    double ratio = 0.0;
    std::string tier;
    bool pass = true;
};

struct SuiteConfig {
    std::string suite = "all";  // "exact", "asymptotic", "all"
    std::vector<std::uint32_t> primes = {101, 499, 1009};
    int trials = 10;
    std::uint64_t seed = 1;
    double ratio_gate = 10.0;  // empirical gate for asymptotic-tier checks
    int threads = 1;           // recorded in the report; evaluation is sequential
};

struct CheckSummary {
    double max_ratio = 0.0;
    double median_ratio = 0.0;
    std::uint64_t failures = 0;
};

struct Report {
    std::string version = kArtifactVersion;
    SuiteConfig config;
    std::vector<BoundCheck> rows;
    std::map<std::string, CheckSummary> summary;
    bool all_pass = true;  // exact+const1 rows pass and asymptotic gate holds
};

// Exact identities; every row must pass bit-exactly.
std::vector<BoundCheck> check_lemma21(const CheckSpec& spec);
std::vector<BoundCheck> check_cor22(const CheckSpec& spec);
std::vector<BoundCheck> check_decomposition_2_2(const CheckSpec& spec);
std::vector<BoundCheck> check_energy_identities(const CheckSpec& spec);
std::vector<BoundCheck> check_complete_sums(const CheckSpec& spec);

// Constant-1 inequalities.
std::vector<BoundCheck> check_bilinear(const CheckSpec& spec);

// Asymptotic ratio checks (never hard-fail on ratio; only on NaN or
// a nonpositive rhs).
std::vector<BoundCheck> check_thm11(const CheckSpec& spec);
std::vector<BoundCheck> check_lemma24(const CheckSpec& spec);
std::vector<BoundCheck> check_lemma25(const CheckSpec& spec);
std::vector<BoundCheck> check_lemma26(const CheckSpec& spec);
std::vector<BoundCheck> check_cor27(const CheckSpec& spec);
std::vector<BoundCheck> check_lemma32(const CheckSpec& spec);
std::vector<BoundCheck> check_thm12(const CheckSpec& spec);
std::vector<BoundCheck> check_thm13(const CheckSpec& spec);

/// Executes all enabled checks; deterministic given the config.
Report run_suite(const SuiteConfig& config);

std::string report_to_json(const Report& report);
std::string report_to_csv(const Report& report);

} // namespace ffinc
