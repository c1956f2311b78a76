#include "jroc/rank_stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "jroc/format.hpp"

namespace jroc {

RankTable compute_ranks(const std::vector<std::vector<double>>& values) {
  if (values.empty()) throw std::invalid_argument("rank table needs at least one row");
  const std::size_t k = values[0].size();
  if (k < 2) throw std::invalid_argument("rank table needs at least two columns");

  RankTable rt;
  rt.ranks.reserve(values.size());
  for (const auto& row : values) {
    if (row.size() != k) throw std::invalid_argument("ragged value matrix");
    for (double v : row)
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite value in rank input");

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&row](std::size_t a, std::size_t b) { return row[a] < row[b]; });

    std::vector<double> ranks(k);
    std::size_t i = 0;
    while (i < k) {
      std::size_t j = i;
      while (j + 1 < k && row[order[j + 1]] == row[order[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
      i = j + 1;
    }
    rt.ranks.push_back(std::move(ranks));
  }

  rt.avg_ranks.assign(k, 0.0);
  for (const auto& row : rt.ranks)
    for (std::size_t j = 0; j < k; ++j) rt.avg_ranks[j] += row[j];
  for (double& ar : rt.avg_ranks) ar /= static_cast<double>(rt.ranks.size());
  return rt;
}

double friedman_statistic(const RankTable& rt) {
  const std::size_t n = rt.ranks.size();
  const std::size_t k = rt.avg_ranks.size();
  if (n < 1 || k < 2) throw std::invalid_argument("rank table too small");
  const double rbar = static_cast<double>(k + 1) / 2.0;

  double sum1 = 0.0;
  for (double ar : rt.avg_ranks) sum1 += (ar - rbar) * (ar - rbar);
  sum1 *= static_cast<double>(n);

  double sum2 = 0.0;
  for (const auto& row : rt.ranks)
    for (double r : row) sum2 += (r - rbar) * (r - rbar);
  sum2 /= static_cast<double>(n) * static_cast<double>(k - 1);

  if (sum2 == 0.0) return 0.0;  // every row fully tied
  return sum1 / sum2;
}

double nemenyi_cd(int k, int n, double q_alpha) {
  if (k < 2) throw std::invalid_argument("nemenyi_cd: k must be >= 2");
  if (n < 1) throw std::invalid_argument("nemenyi_cd: n must be >= 1");
  if (!(q_alpha > 0.0)) throw std::invalid_argument("nemenyi_cd: q_alpha must be > 0");
  return q_alpha * std::sqrt(static_cast<double>(k) * static_cast<double>(k + 1) /
                             (6.0 * static_cast<double>(n)));
}

double nemenyi_q(int k, double significance) {
  // studentized range quantiles / sqrt(2), two-tailed, k = 2..10
  static constexpr double q05[] = {1.959964, 2.343701, 2.569032, 2.727774, 2.849705,
                                   2.948320, 3.030878, 3.101730, 3.163684};
  static constexpr double q10[] = {1.644854, 2.052293, 2.291341, 2.459516, 2.588521,
                                   2.692732, 2.779884, 2.854606, 2.919889};
  if (k < 2 || k > 10)
    throw std::invalid_argument("nemenyi_q: bundled table covers k = 2..10");
  if (significance == 0.05) return q05[k - 2];
  if (significance == 0.10) return q10[k - 2];
  throw std::invalid_argument("nemenyi_q: bundled table covers significance 0.05 and 0.10");
}

SignificanceReport significance_report(const std::vector<std::vector<double>>& values,
                                       const std::vector<std::string>& method_names,
                                       double q_alpha) {
  SignificanceReport rep;
  rep.method_names = method_names;
  rep.ranks = compute_ranks(values);
  if (method_names.size() != rep.ranks.avg_ranks.size())
    throw std::invalid_argument("method name count does not match value columns");
  rep.statistic = friedman_statistic(rep.ranks);
  rep.q_alpha = q_alpha;
  rep.critical_difference = nemenyi_cd(static_cast<int>(method_names.size()),
                                       static_cast<int>(rep.ranks.ranks.size()), q_alpha);
  const std::size_t k = method_names.size();
  rep.significant.assign(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      rep.significant[i][j] =
          i != j && std::abs(rep.ranks.avg_ranks[i] - rep.ranks.avg_ranks[j]) >
                        rep.critical_difference;
  return rep;
}

std::string format_report_text(const SignificanceReport& report,
                               std::optional<double> critical_value) {
  std::ostringstream out;
  const std::size_t k = report.method_names.size();

  std::size_t width = 8;
  for (const auto& name : report.method_names) width = std::max(width, name.size() + 2);

  out << "Average ranks over " << report.ranks.ranks.size() << " cases:\n";
  for (std::size_t j = 0; j < k; ++j) {
    out << "  " << report.method_names[j];
    out << std::string(width - report.method_names[j].size(), ' ');
    out << format_fixed(report.ranks.avg_ranks[j], 4) << "\n";
  }

  out << "Friedman statistic: " << format_fixed(report.statistic, 4);
  if (critical_value) {
    if (report.statistic > *critical_value) {
      out << " > critical value " << format_double(*critical_value)
          << " -- null hypothesis rejected, methods do not perform equally";
    } else {
      out << " <= critical value " << format_double(*critical_value)
          << " -- null hypothesis not rejected";
    }
  }
  out << "\n";
  out << "Nemenyi critical difference (q=" << format_double(report.q_alpha)
      << "): " << format_fixed(report.critical_difference, 4) << "\n";

  out << "Pairwise |AR_i - AR_j| > CD:\n";
  out << "  " << std::string(width, ' ');
  for (std::size_t j = 0; j < k; ++j) {
    out << report.method_names[j]
        << std::string(width - report.method_names[j].size(), ' ');
  }
  out << "\n";
  for (std::size_t i = 0; i < k; ++i) {
    out << "  " << report.method_names[i]
        << std::string(width - report.method_names[i].size(), ' ');
    for (std::size_t j = 0; j < k; ++j) {
      const char* cell = i == j ? "-" : (report.significant[i][j] ? "yes" : "no");
      out << cell << std::string(width - std::string(cell).size(), ' ');
    }
    out << "\n";
  }
  return out.str();
}

std::string format_report_csv(const SignificanceReport& report) {
  std::ostringstream out;
  out << "# schema=1\n";
  out << "metric,value\n";
  out << "friedman_statistic," << format_double(report.statistic) << "\n";
  out << "nemenyi_q," << format_double(report.q_alpha) << "\n";
  out << "nemenyi_cd," << format_double(report.critical_difference) << "\n";
  out << "cases," << report.ranks.ranks.size() << "\n";
  out << "method,avg_rank\n";
  const std::size_t k = report.method_names.size();
  for (std::size_t j = 0; j < k; ++j)
    out << report.method_names[j] << "," << format_double(report.ranks.avg_ranks[j]) << "\n";
  out << "significant_pair,method_a,method_b,abs_rank_diff\n";
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      out << (report.significant[i][j] ? "yes" : "no") << "," << report.method_names[i]
          << "," << report.method_names[j] << ","
          << format_double(std::abs(report.ranks.avg_ranks[i] - report.ranks.avg_ranks[j]))
          << "\n";
    }
  }
  return out.str();
}

}  // namespace jroc
