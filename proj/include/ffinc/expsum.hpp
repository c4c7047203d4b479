#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "ffinc/field.hpp"
#include "ffinc/subset.hpp"

namespace ffinc {

/// Deterministic pairwise (balanced-tree) accumulator: the result depends
/// only on the push order, never on scheduling.
class PairwiseSum {
public:
    void push(std::complex<double> term) {
        std::uint64_t mask = count_;
        std::size_t level = 0;
        while (mask & 1) {
            term += levels_[level];
            mask >>= 1;
            ++level;
        }
        if (level == levels_.size())
            levels_.push_back(term);
        else
            levels_[level] = term;
        ++count_;
    }

    std::complex<double> total() const {
        std::complex<double> acc{0.0, 0.0};
        std::uint64_t mask = count_;
        for (std::size_t level = 0; mask != 0; mask >>= 1, ++level)
            if (mask & 1) acc += levels_[level];
        return acc;
    }

    std::uint64_t count() const { return count_; }

private:
    std::vector<std::complex<double>> levels_;
    std::uint64_t count_ = 0;
};

struct SumValue {
    std::complex<double> value{0.0, 0.0};
    std::uint64_t term_count = 0;
    double error_bound = 0.0;  // 4 * machine epsilon * term_count

    double abs() const { return std::abs(value); }
    std::string to_json() const;
};

enum class WeightKind { ones, random_phase, random_sign };

WeightKind weight_kind_from_string(const std::string& s);

struct WeightVec {
    std::vector<std::complex<double>> w;
};

struct WeightGrid2 {
    std::size_t rows = 0, cols = 0;
    std::vector<std::complex<double>> w;

    std::complex<double> at(std::size_t i, std::size_t j) const { return w[i * cols + j]; }
};

struct WeightGrid3 {
    std::size_t n0 = 0, n1 = 0, n2 = 0;
    std::vector<std::complex<double>> w;

    std::complex<double> at(std::size_t i, std::size_t j, std::size_t k) const {
        return w[(i * n1 + j) * n2 + k];
    }
};

// Deterministic per seed; every entry has modulus <= 1.
WeightVec gen_weight_vec(WeightKind kind, std::size_t n, std::uint64_t seed);
WeightGrid2 gen_weight_grid2(WeightKind kind, std::size_t rows, std::size_t cols,
                             std::uint64_t seed);
WeightGrid3 gen_weight_grid3(WeightKind kind, std::size_t n0, std::size_t n1,
                             std::size_t n2, std::uint64_t seed);

/// sum over (x,y) of alpha_x beta_y e_p(coeff * x * y).
SumValue bilinear_sum(const FieldCtx& ctx, const Subset& X, const Subset& Y,
                      const WeightVec& alpha, const WeightVec& beta, Residue coeff);

/// sum over (x,y,z) of rho_{x,y} sigma_{x,z} tau_{y,z} e_p(coeff * x * y * z);
/// coeff must be nonzero.
SumValue trilinear_sum(const FieldCtx& ctx, const Subset& X, const Subset& Y,
                       const Subset& Z, const WeightGrid2& rho, const WeightGrid2& sigma,
                       const WeightGrid2& tau, Residue coeff);

/// sum over (w,x,y,z) of theta_{w,x,y} rho_{w,x,z} sigma_{w,y,z} tau_{x,y,z}
/// e_p(coeff * w * x * y * z); coeff must be nonzero.
SumValue quadrilinear_sum(const FieldCtx& ctx, const Subset& W, const Subset& X,
                          const Subset& Y, const Subset& Z, const WeightGrid3& theta,
                          const WeightGrid3& rho, const WeightGrid3& sigma,
                          const WeightGrid3& tau, Residue coeff);

} // namespace ffinc
