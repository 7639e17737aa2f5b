// Sampled recipe books: the stochastic model made explicit. Every subset
// of the n capabilities is a candidate product; a subset of size s is
// viable with probability rho^s, independently across subsets. Ground
// truth for the analytic kernel on small n.
#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "capsim/model.hpp"
#include "capsim/rng.hpp"

namespace capsim {

// Enumeration bound: a book on n capabilities walks all 2^n masks.
inline constexpr int kMaxBookN = 24;

struct RecipeBook {
    int n = 0;
    std::vector<std::uint32_t> viable;  // bitmasks, ascending
};

// Walks masks 0 .. 2^n-1 in ascending order, spending exactly one uniform
// draw per mask; a mask of popcount s joins the book when u < rho^s.
// The empty mask always qualifies (rho^0 = 1, u < 1 strictly).
inline RecipeBook sample_recipe_book(int n, double rho, std::uint64_t seed) {
    if (n < 1 || n > kMaxBookN) {
        throw std::invalid_argument("n: recipe book requires 1 <= n <= " +
                                    std::to_string(kMaxBookN) + ", got " + std::to_string(n));
    }
    if (!(rho > 0.0) || rho > 1.0) {
        throw std::invalid_argument("rho: must be in (0, 1], got " + std::to_string(rho));
    }
    std::vector<double> rho_pow(n + 1);
    rho_pow[0] = 1.0;
    for (int s = 1; s <= n; ++s) rho_pow[s] = rho_pow[s - 1] * rho;

    RecipeBook book;
    book.n = n;
    std::mt19937_64 eng(seed);
    const std::uint32_t mask_end = 1u << n;
    for (std::uint32_t mask = 0; mask < mask_end; ++mask) {
        double u = uniform53(eng);
        if (u < rho_pow[std::popcount(mask)]) book.viable.push_back(mask);
    }
    return book;
}

struct RealizedStats {
    std::int64_t variety = 0;       // viable masks with popcount in window
    std::int64_t total_length = 0;  // sum of their popcounts
};

inline RealizedStats realized_stats(const RecipeBook& book, int l, WindowRadius r) {
    if (l < 0 || l > book.n) {
        throw std::invalid_argument("l: must satisfy 0 <= l <= book.n, got l=" +
                                    std::to_string(l) + " n=" + std::to_string(book.n));
    }
    const int s_min = r.is_bounded() ? std::max(0, l - r.value()) : 0;
    RealizedStats stats;
    for (std::uint32_t mask : book.viable) {
        int s = std::popcount(mask);
        if (s < s_min || s > l) continue;
        ++stats.variety;
        stats.total_length += s;
    }
    return stats;
}

struct McEstimate {
    double mean_variety = 0.0;
    double mean_total_length = 0.0;
    // Ratio of means, the estimator matching the analytic s-bar. The mean
    // of per-book ratios is reported alongside but is a biased estimator
    // of the same quantity; books with an empty realized window are
    // skipped in it.
    double ratio_avg_complexity = 0.0;
    double mean_per_book_ratio = 0.0;
    double se_variety = 0.0;
    int replicates = 0;
    std::uint64_t seed = 0;
};

// Replicate i samples a fresh book from replicate_seed(seed, i).
// Accumulation is sequential in replicate order, so identical inputs give
// byte-identical estimates.
inline McEstimate monte_carlo_estimate(int n, int l, WindowRadius r, double rho, int replicates,
                                       std::uint64_t seed) {
    if (replicates < 2) {
        throw std::invalid_argument("replicates: must be >= 2, got " +
                                    std::to_string(replicates));
    }
    if (l < 0 || l > n) {
        throw std::invalid_argument("l: must satisfy 0 <= l <= n, got l=" + std::to_string(l) +
                                    " n=" + std::to_string(n));
    }
    double sum_v = 0.0, sum_v2 = 0.0, sum_len = 0.0;
    double sum_ratio = 0.0;
    std::int64_t nonempty = 0;
    for (int i = 0; i < replicates; ++i) {
        RecipeBook book = sample_recipe_book(n, rho, replicate_seed(seed, i));
        RealizedStats st = realized_stats(book, l, r);
        double v = static_cast<double>(st.variety);
        sum_v += v;
        sum_v2 += v * v;
        sum_len += static_cast<double>(st.total_length);
        if (st.variety > 0) {
            sum_ratio += static_cast<double>(st.total_length) / v;
            ++nonempty;
        }
    }
    McEstimate est;
    est.replicates = replicates;
    est.seed = seed;
    est.mean_variety = sum_v / replicates;
    est.mean_total_length = sum_len / replicates;
    est.ratio_avg_complexity = est.mean_total_length / est.mean_variety;
    est.mean_per_book_ratio = nonempty > 0 ? sum_ratio / static_cast<double>(nonempty) : 0.0;
    double var = (sum_v2 - sum_v * sum_v / replicates) / (replicates - 1);
    est.se_variety = var > 0.0 ? std::sqrt(var / replicates) : 0.0;
    return est;
}

}  // namespace capsim
