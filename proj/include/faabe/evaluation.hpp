#pragma once

#include <cmath>
#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

#include "faabe/dataset.hpp"
#include "faabe/errors.hpp"
#include "faabe/rng.hpp"

// Accuracy metrics and the basic/train/test partitioning protocol.
//
//   MMRE = (1/n) sum |actual - predicted| / actual
//   MAE  = (1/n) sum |actual - predicted|
//   MSE  = (1/n) sum (actual - predicted)^2
//   RMSE = sqrt(MSE)
//
// The holdout split shuffles the project indices by seed, takes 33%
// (round-half-up) as test, and divides the remainder evenly into the basic
// (case base) and train (weight objective) subsets, basic getting the odd
// extra project. Each subset is stored sorted ascending so "case-base index"
// has a stable meaning independent of the shuffle.

namespace faabe {

struct metrics_report {
    double mmre = 0.0;
    double mae = 0.0;
    double mse = 0.0;
    double rmse = 0.0;
    std::size_t n = 0;
};

inline metrics_report compute_metrics(const std::vector<double>& actual,
                                      const std::vector<double>& predicted) {
    if (actual.size() != predicted.size())
        throw internal_error("compute_metrics: length mismatch");
    if (actual.empty())
        throw internal_error("compute_metrics: empty series");
    metrics_report m;
    m.n = actual.size();
    double sum_re = 0.0, sum_ae = 0.0, sum_se = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        if (!(actual[i] > 0.0))
            throw data_error("compute_metrics: actual effort must be positive");
        const double err = actual[i] - predicted[i];
        sum_re += std::abs(err) / actual[i];
        sum_ae += std::abs(err);
        sum_se += err * err;
    }
    const double n = static_cast<double>(m.n);
    m.mmre = sum_re / n;
    m.mae = sum_ae / n;
    m.mse = sum_se / n;
    m.rmse = std::sqrt(m.mse);
    return m;
}

// Mean relative error alone; shares the accumulation order of
// compute_metrics so both paths agree bit-for-bit.
inline double mean_mre(const std::vector<double>& actual,
                       const std::vector<double>& predicted) {
    if (actual.size() != predicted.size() || actual.empty())
        throw internal_error("mean_mre: bad series");
    double s = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i)
        s += std::abs(actual[i] - predicted[i]) / actual[i];
    return s / static_cast<double>(actual.size());
}

struct split {
    std::vector<std::size_t> basic;
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
    std::uint64_t seed = 0;
};

inline std::size_t round_half_up(double x) {
    return static_cast<std::size_t>(std::floor(x + 0.5));
}

inline split make_split(std::size_t n_projects, std::uint64_t seed,
                        double test_fraction = 0.33) {
    if (n_projects < 3)
        throw data_error("make_split: need at least 3 projects");
    rng_engine rng(seed);
    std::vector<std::size_t> idx(n_projects);
    for (std::size_t i = 0; i < n_projects; ++i) idx[i] = i;
    shuffle(idx, rng);

    std::size_t n_test = round_half_up(test_fraction * static_cast<double>(n_projects));
    // every subset must stay nonempty
    if (n_test == 0) n_test = 1;
    if (n_test > n_projects - 2) n_test = n_projects - 2;
    const std::size_t remainder = n_projects - n_test;
    const std::size_t n_basic = (remainder + 1) / 2;

    split s;
    s.seed = seed;
    s.test.assign(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
    s.basic.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_test),
                   idx.begin() + static_cast<std::ptrdiff_t>(n_test + n_basic));
    s.train.assign(idx.begin() + static_cast<std::ptrdiff_t>(n_test + n_basic), idx.end());
    std::sort(s.test.begin(), s.test.end());
    std::sort(s.basic.begin(), s.basic.end());
    std::sort(s.train.begin(), s.train.end());
    return s;
}

inline split make_split(const dataset& d, std::uint64_t seed,
                        double test_fraction = 0.33) {
    return make_split(d.projects.size(), seed, test_fraction);
}

}  // namespace faabe
