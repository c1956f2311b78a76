#include "jroc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "jroc/errors.hpp"
#include "jroc/format.hpp"
#include "jroc/rng.hpp"

namespace jroc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

bool parse_finite_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

FeatureConfig FeatureConfig::from_bits(std::uint64_t bits, std::size_t m) {
  std::vector<bool> active(m);
  for (std::size_t j = 0; j < m; ++j) active[j] = (bits >> j) & 1u;
  return FeatureConfig(std::move(active));
}

FeatureConfig FeatureConfig::from_bitstring(const std::string& s) {
  std::vector<bool> active(s.size());
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s[j] != '0' && s[j] != '1')
      throw ParseError("config bitstring must contain only '0'/'1': " + s);
    active[j] = s[j] == '1';
  }
  return FeatureConfig(std::move(active));
}

std::size_t FeatureConfig::active_count() const {
  return static_cast<std::size_t>(std::count(active_.begin(), active_.end(), true));
}

FeatureConfig FeatureConfig::with_inactive(std::size_t j) const {
  std::vector<bool> active = active_;
  active[j] = false;
  return FeatureConfig(std::move(active));
}

FeatureConfig FeatureConfig::intersect(const FeatureConfig& other) const {
  if (other.size() != size())
    throw std::invalid_argument("config length mismatch in intersect");
  std::vector<bool> active(size());
  for (std::size_t j = 0; j < size(); ++j) active[j] = active_[j] && other.active_[j];
  return FeatureConfig(std::move(active));
}

std::string FeatureConfig::bitstring() const {
  std::string s(size(), '0');
  for (std::size_t j = 0; j < size(); ++j)
    if (active_[j]) s[j] = '1';
  return s;
}

Dataset::Dataset(std::vector<FeatureMeta> features, std::vector<std::string> class_labels,
                 std::vector<Row> rows, std::string class_name)
    : features_(std::move(features)),
      class_labels_(std::move(class_labels)),
      rows_(std::move(rows)),
      class_name_(std::move(class_name)) {
  if (features_.empty()) throw std::invalid_argument("dataset needs at least one feature");
  if (class_labels_.empty()) throw std::invalid_argument("dataset needs class labels");
  if (rows_.empty()) throw std::invalid_argument("dataset needs at least one row");
  for (const auto& meta : features_) {
    const bool has_cats = !meta.categories.empty();
    if ((meta.kind == FeatureKind::Nominal) != has_cats)
      throw std::invalid_argument("feature '" + meta.name +
                                  "': categories must be non-empty iff nominal");
  }
  const std::size_t m = features_.size();
  const int c = static_cast<int>(class_labels_.size());
  for (const Row& r : rows_) {
    if (r.cells.size() != m)
      throw std::invalid_argument("row arity does not match feature count");
    if (r.label < 0 || r.label >= c)
      throw std::invalid_argument("row label out of range");
  }
}

Dataset parse_dataset_csv(const std::string& text) {
  std::vector<std::string_view> lines;
  {
    std::string_view rest = text;
    while (!rest.empty()) {
      std::size_t nl = rest.find('\n');
      if (nl == std::string_view::npos) {
        lines.push_back(rest);
        break;
      }
      lines.push_back(rest.substr(0, nl));
      rest.remove_prefix(nl + 1);
    }
  }
  // A trailing newline produces no extra row; interior blank lines are errors.
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw ParseError("empty dataset file");

  const auto header = split_line(lines[0]);
  if (header.size() < 2)
    throw ParseError("header needs at least one feature column and a class column");
  const std::size_t m = header.size() - 1;

  std::vector<std::vector<std::string_view>> raw_rows;
  raw_rows.reserve(lines.size() - 1);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    auto cells = split_line(lines[li]);
    if (cells.size() != m + 1) {
      throw ParseError("line " + std::to_string(li + 1) + ": expected " +
                       std::to_string(m + 1) + " cells, got " +
                       std::to_string(cells.size()));
    }
    if (cells.back().empty() || cells.back() == "?")
      throw ParseError("line " + std::to_string(li + 1) + ": missing class label");
    raw_rows.push_back(std::move(cells));
  }
  if (raw_rows.empty()) throw ParseError("dataset file has a header but no rows");

  // Kind inference: numeric iff every non-missing cell parses as a finite real.
  std::vector<FeatureMeta> features(m);
  for (std::size_t j = 0; j < m; ++j) {
    features[j].name = std::string(header[j]);
    bool numeric = true;
    for (const auto& cells : raw_rows) {
      const auto cell = cells[j];
      if (cell.empty() || cell == "?") continue;
      double v;
      if (!parse_finite_double(cell, v)) {
        numeric = false;
        break;
      }
    }
    features[j].kind = numeric ? FeatureKind::Numeric : FeatureKind::Nominal;
  }

  std::vector<std::string> class_labels;
  std::unordered_map<std::string, int> label_index;
  std::vector<std::unordered_map<std::string, int>> category_index(m);

  std::vector<Row> rows;
  rows.reserve(raw_rows.size());
  for (const auto& cells : raw_rows) {
    Row row;
    row.cells.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      const auto cell = cells[j];
      if (cell.empty() || cell == "?") {
        row.cells.push_back(FeatureValue::missing());
      } else if (features[j].kind == FeatureKind::Numeric) {
        double v;
        parse_finite_double(cell, v);
        row.cells.push_back(FeatureValue::numeric(v));
      } else {
        auto key = std::string(cell);
        auto [it, inserted] =
            category_index[j].try_emplace(key, static_cast<int>(features[j].categories.size()));
        if (inserted) features[j].categories.push_back(key);
        row.cells.push_back(FeatureValue::nominal(it->second));
      }
    }
    auto label = std::string(cells.back());
    auto [it, inserted] = label_index.try_emplace(label, static_cast<int>(class_labels.size()));
    if (inserted) class_labels.push_back(label);
    row.label = it->second;
    rows.push_back(std::move(row));
  }

  return Dataset(std::move(features), std::move(class_labels), std::move(rows),
                 std::string(header.back()));
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open dataset file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_dataset_csv(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string serialize_dataset(const Dataset& d) {
  std::string out;
  for (std::size_t j = 0; j < d.feature_count(); ++j) {
    out += d.feature(j).name;
    out += ',';
  }
  out += d.class_name();
  out += '\n';
  for (const Row& r : d.rows()) {
    for (std::size_t j = 0; j < d.feature_count(); ++j) {
      const FeatureValue& v = r.cells[j];
      if (v.is_missing()) {
        out += '?';
      } else if (v.is_numeric()) {
        out += format_double(v.numeric_value());
      } else {
        out += d.feature(j).categories[static_cast<std::size_t>(v.category())];
      }
      out += ',';
    }
    out += d.class_labels()[static_cast<std::size_t>(r.label)];
    out += '\n';
  }
  return out;
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& d, double fraction,
                                          std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction < 1.0))
    throw std::invalid_argument("split fraction must be in (0,1)");
  if (d.row_count() < 2) throw std::invalid_argument("cannot split a single-row dataset");

  const std::size_t n = d.row_count();
  // floor(fraction*n), nudged so exact rationals like 2/3*150 land on the
  // mathematical integer instead of one ulp below it.
  const double x = fraction * static_cast<double>(n);
  std::size_t k = static_cast<std::size_t>(x);
  if (x - static_cast<double>(k) > 1.0 - 1e-9) ++k;
  if (k == 0 || k >= n)
    throw std::invalid_argument("split fraction produces an empty part");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  rng.shuffle(perm);

  std::vector<Row> first, second;
  first.reserve(k);
  second.reserve(n - k);
  for (std::size_t i = 0; i < n; ++i) {
    (i < k ? first : second).push_back(d.row(perm[i]));
  }
  return {Dataset(d.features(), d.class_labels(), std::move(first), d.class_name()),
          Dataset(d.features(), d.class_labels(), std::move(second), d.class_name())};
}

Dataset mask_features(const Dataset& d, const FeatureConfig& cfg) {
  if (cfg.size() != d.feature_count())
    throw std::invalid_argument("feature config length does not match dataset");
  std::vector<Row> rows = d.rows();
  for (Row& r : rows) {
    for (std::size_t j = 0; j < cfg.size(); ++j) {
      if (!cfg.active(j)) r.cells[j] = FeatureValue::missing();
    }
  }
  return Dataset(d.features(), d.class_labels(), std::move(rows), d.class_name());
}

}  // namespace jroc
