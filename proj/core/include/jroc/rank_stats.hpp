#pragma once

#include <optional>
#include <string>
#include <vector>

namespace jroc {

/// Per-row ranks (1 = best/lowest value, ties averaged) and the per-column
/// average ranks.
struct RankTable {
  std::vector<std::vector<double>> ranks;  // rows = cases, columns = methods
  std::vector<double> avg_ranks;
};

/// Ranks each row of `values` ascending with tie-averaged ranks. Throws on
/// non-finite input or fewer than two columns.
RankTable compute_ranks(const std::vector<std::vector<double>>& values);

/// Friedman statistic over a rank table with n rows and k columns:
///   Rbar = (k+1)/2
///   Sum1 = n * sum_j (AR_j - Rbar)^2
///   Sum2 = 1/(n(k-1)) * sum_ij (r_ij - Rbar)^2
///   statistic = Sum1/Sum2 (0 when the ranks carry no variation)
double friedman_statistic(const RankTable& rt);

/// Critical difference for the Nemenyi post-hoc test:
/// q_alpha * sqrt(k(k+1)/(6n)).
double nemenyi_cd(int k, int n, double q_alpha);

/// Two-tailed critical values of the studentized range statistic divided by
/// sqrt(2), for k = 2..10 methods at significance 0.05 or 0.10.
double nemenyi_q(int k, double significance);

struct SignificanceReport {
  std::vector<std::string> method_names;
  RankTable ranks;
  double statistic = 0.0;
  double q_alpha = 0.0;
  double critical_difference = 0.0;
  /// significant[i][j] = |AR_i - AR_j| > critical_difference
  std::vector<std::vector<bool>> significant;
};

/// Ranks, Friedman statistic, Nemenyi critical difference and the pairwise
/// significance matrix for a cases x methods value matrix.
SignificanceReport significance_report(const std::vector<std::vector<double>>& values,
                                       const std::vector<std::string>& method_names,
                                       double q_alpha);

/// Human-readable report. When `critical_value` is given, the Friedman
/// statistic is compared against it and the verdict included.
std::string format_report_text(const SignificanceReport& report,
                               std::optional<double> critical_value);

/// Machine-readable CSV of the same report.
std::string format_report_csv(const SignificanceReport& report);

}  // namespace jroc
