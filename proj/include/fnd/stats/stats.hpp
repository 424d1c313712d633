#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fnd::stats {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // sample (n-1) standard deviation; 0 for n = 1
};

/// Throws std::invalid_argument on an empty sample.
MeanStd mean_std(std::span<const double> sample);

struct TestReport {
  double statistic = 0.0;
  double df = 0.0;
  double p_value = 1.0;  // two-sided
};

/// Unpaired Welch t test, Welch–Satterthwaite degrees of freedom. Requires
/// at least two values per sample and nonzero variance in at least one.
TestReport welch_t_test(std::span<const double> a, std::span<const double> b);

struct SpearmanReport {
  double rho = 0.0;
  double p_value = 1.0;  // two-sided
  bool exact = false;    // p from full permutation enumeration
};

inline constexpr std::size_t kExactSpearmanMaxN = 8;

/// Pearson correlation of average ranks. Exact permutation p for
/// n <= 8, Student-t approximation with n-2 df otherwise. Throws
/// std::invalid_argument("zero rank variance") for a constant input.
SpearmanReport spearman_rho(std::span<const double> x, std::span<const double> y);

/// 1-based ranks; ties get the mean of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

double pearson(std::span<const double> x, std::span<const double> y);

/// I_x(a, b) by Lentz's continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with df degrees of freedom.
double student_t_two_sided_p(double t, double df);

}  // namespace fnd::stats
