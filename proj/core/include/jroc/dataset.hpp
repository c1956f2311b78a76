#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace jroc {

/// One cell of a dataset: a numeric value, a nominal category index, or the
/// missing marker. Missing is a first-class state, never a sentinel number.
class FeatureValue {
 public:
  enum class Tag : std::uint8_t { Missing, Numeric, Nominal };

  FeatureValue() = default;

  static FeatureValue missing() { return FeatureValue(); }
  static FeatureValue numeric(double v) {
    FeatureValue fv;
    fv.tag_ = Tag::Numeric;
    fv.num_ = v;
    return fv;
  }
  static FeatureValue nominal(int category) {
    FeatureValue fv;
    fv.tag_ = Tag::Nominal;
    fv.cat_ = category;
    return fv;
  }

  Tag tag() const { return tag_; }
  bool is_missing() const { return tag_ == Tag::Missing; }
  bool is_numeric() const { return tag_ == Tag::Numeric; }
  bool is_nominal() const { return tag_ == Tag::Nominal; }

  /// Valid only when is_numeric().
  double numeric_value() const { return num_; }
  /// Valid only when is_nominal().
  int category() const { return cat_; }

  bool operator==(const FeatureValue& other) const {
    if (tag_ != other.tag_) return false;
    switch (tag_) {
      case Tag::Missing: return true;
      case Tag::Numeric: return num_ == other.num_;
      case Tag::Nominal: return cat_ == other.cat_;
    }
    return false;
  }

 private:
  Tag tag_ = Tag::Missing;
  double num_ = 0.0;
  int cat_ = 0;
};

enum class FeatureKind { Numeric, Nominal };

struct FeatureMeta {
  std::string name;
  FeatureKind kind = FeatureKind::Numeric;
  std::vector<std::string> categories;  // non-empty iff kind == Nominal

  bool operator==(const FeatureMeta&) const = default;
};

struct Row {
  std::vector<FeatureValue> cells;
  int label = 0;

  bool operator==(const Row&) const = default;
};

/// Boolean mask over the m features; true = the attribute is available
/// ("purchased") at prediction time.
class FeatureConfig {
 public:
  FeatureConfig() = default;
  explicit FeatureConfig(std::vector<bool> active) : active_(std::move(active)) {}

  static FeatureConfig all_active(std::size_t m) {
    return FeatureConfig(std::vector<bool>(m, true));
  }
  static FeatureConfig none_active(std::size_t m) {
    return FeatureConfig(std::vector<bool>(m, false));
  }
  /// Bit j of `bits` controls feature j. Requires m <= 64.
  static FeatureConfig from_bits(std::uint64_t bits, std::size_t m);
  /// Parses "1011..." (leftmost character = feature 0, '1' = active).
  static FeatureConfig from_bitstring(const std::string& s);

  std::size_t size() const { return active_.size(); }
  bool active(std::size_t j) const { return active_[j]; }
  std::size_t active_count() const;

  /// Copy with feature j turned off.
  FeatureConfig with_inactive(std::size_t j) const;
  /// Elementwise AND.
  FeatureConfig intersect(const FeatureConfig& other) const;

  /// '1'/'0' string, feature 0 first. Also the canonical tie-break key.
  std::string bitstring() const;

  bool operator==(const FeatureConfig&) const = default;

 private:
  std::vector<bool> active_;
};

/// Immutable tabular dataset. All operations on datasets are pure; instances
/// are safe to share across threads once constructed.
class Dataset {
 public:
  Dataset(std::vector<FeatureMeta> features, std::vector<std::string> class_labels,
          std::vector<Row> rows, std::string class_name = "class");

  std::size_t feature_count() const { return features_.size(); }  // m
  std::size_t class_count() const { return class_labels_.size(); }  // c
  std::size_t row_count() const { return rows_.size(); }  // n

  const std::vector<FeatureMeta>& features() const { return features_; }
  const FeatureMeta& feature(std::size_t j) const { return features_[j]; }
  const std::vector<std::string>& class_labels() const { return class_labels_; }
  const std::string& class_name() const { return class_name_; }
  const std::vector<Row>& rows() const { return rows_; }
  const Row& row(std::size_t i) const { return rows_[i]; }

  bool operator==(const Dataset&) const = default;

 private:
  std::vector<FeatureMeta> features_;
  std::vector<std::string> class_labels_;
  std::vector<Row> rows_;
  std::string class_name_;
};

/// Parses the CSV dataset format: UTF-8, header line with feature names then
/// the class name, comma separated, `?` marks a missing cell, last column is
/// the class label. Feature kinds are inferred: numeric when every
/// non-missing cell parses as a finite real, nominal otherwise (categories in
/// first-appearance order). Throws ParseError on malformed input.
Dataset parse_dataset_csv(const std::string& text);

/// Reads a file and parses it with parse_dataset_csv.
Dataset load_dataset(const std::filesystem::path& path);

/// Canonical CSV serialization: numeric cells use the shortest decimal form
/// that round-trips the double, nominal cells their category string, missing
/// cells `?`. Inverse of parse_dataset_csv modulo float formatting.
std::string serialize_dataset(const Dataset& d);

/// Deterministic seeded split: rows are permuted by a Fisher-Yates shuffle
/// driven by jroc::Rng(seed); the first floor(fraction*n) rows form the first
/// part. Throws std::invalid_argument when fraction is outside (0,1) or a
/// part would be empty.
std::pair<Dataset, Dataset> split_dataset(const Dataset& d, double fraction,
                                          std::uint64_t seed);

/// Returns a copy of `d` where every cell of each inactive feature is set to
/// missing. The class column and the input dataset are untouched.
Dataset mask_features(const Dataset& d, const FeatureConfig& cfg);

}  // namespace jroc
