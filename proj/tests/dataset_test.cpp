#include "jroc/dataset.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "jroc/errors.hpp"
#include "jroc/rng.hpp"
#include "test_util.hpp"

namespace jroc {
namespace {

TEST(DatasetLoad, IrisShape) {
  const Dataset d = load_dataset(std::string(JROC_DATA_DIR) + "/iris.csv");
  EXPECT_EQ(d.feature_count(), 4u);
  EXPECT_EQ(d.row_count(), 150u);
  EXPECT_EQ(d.class_count(), 3u);
  for (const auto& f : d.features()) EXPECT_EQ(f.kind, FeatureKind::Numeric);
}

TEST(DatasetLoad, DiabetesShape) {
  const Dataset d = load_dataset(std::string(JROC_DATA_DIR) + "/diabetes.csv");
  EXPECT_EQ(d.feature_count(), 8u);
  EXPECT_EQ(d.row_count(), 768u);
  EXPECT_EQ(d.class_count(), 2u);
}

TEST(DatasetLoad, SingleRowWithMissing) {
  const Dataset d = parse_dataset_csv("a,b,cls\n1,?,x\n");
  EXPECT_EQ(d.feature_count(), 2u);
  EXPECT_EQ(d.row_count(), 1u);
  EXPECT_TRUE(d.row(0).cells[1].is_missing());
  EXPECT_EQ(d.row(0).cells[0], FeatureValue::numeric(1.0));
}

TEST(DatasetLoad, NominalCategoriesFirstAppearanceOrder) {
  const Dataset d = parse_dataset_csv("col,cls\nred,a\nblue,b\nred,a\ngreen,b\n");
  ASSERT_EQ(d.feature(0).kind, FeatureKind::Nominal);
  EXPECT_EQ(d.feature(0).categories, (std::vector<std::string>{"red", "blue", "green"}));
  EXPECT_EQ(d.class_labels(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(d.row(2).cells[0].category(), 0);
}

TEST(DatasetLoad, Errors) {
  EXPECT_THROW(parse_dataset_csv(""), ParseError);
  EXPECT_THROW(parse_dataset_csv("a,b,cls\n1,2\n"), ParseError);       // arity
  EXPECT_THROW(parse_dataset_csv("a,b,cls\n1,2,?\n"), ParseError);     // missing class
  EXPECT_THROW(parse_dataset_csv("a,cls\n"), ParseError);              // no rows
  EXPECT_THROW(load_dataset("/nonexistent/nope.csv"), ParseError);
}

TEST(DatasetLoad, ArityErrorCarriesLineNumber) {
  try {
    parse_dataset_csv("a,b,cls\n1,2,x\n3,4\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(DatasetSplit, SizesAndDeterminism) {
  Rng rng(7);
  const Dataset iris = load_dataset(std::string(JROC_DATA_DIR) + "/iris.csv");
  auto [a, b] = split_dataset(iris, 2.0 / 3.0, 2);
  EXPECT_EQ(a.row_count(), 100u);
  EXPECT_EQ(b.row_count(), 50u);
  auto [a2, b2] = split_dataset(iris, 2.0 / 3.0, 2);
  EXPECT_EQ(a, a2);
  EXPECT_EQ(b, b2);

  const Dataset tiny = testing::make_numeric_dataset(
      {{1.0}, {2.0}, {3.0}}, {0, 1, 0}, 2);
  auto [t1, t2] = split_dataset(tiny, 2.0 / 3.0, 7);
  EXPECT_EQ(t1.row_count(), 2u);
  EXPECT_EQ(t2.row_count(), 1u);
}

TEST(DatasetSplit, BadFraction) {
  const Dataset tiny = testing::make_numeric_dataset({{1.0}, {2.0}}, {0, 1}, 2);
  EXPECT_THROW(split_dataset(tiny, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(split_dataset(tiny, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(split_dataset(tiny, -0.3, 1), std::invalid_argument);
}

TEST(DatasetSplit, DisjointUnionProperty) {
  Rng rng(11);
  for (int iter = 0; iter < 20; ++iter) {
    const auto d = testing::random_dataset(rng, 3, 5 + iter, 2);
    const double fraction = 0.1 + 0.8 * rng.next_unit();
    const std::uint64_t seed = rng.next_u64();
    const double expected_first = std::floor(fraction * static_cast<double>(d.row_count()));
    if (expected_first < 1.0 || expected_first >= static_cast<double>(d.row_count()))
      continue;  // a part would be empty
    const auto parts = split_dataset(d, fraction, seed);
    EXPECT_EQ(parts.first.row_count() + parts.second.row_count(), d.row_count());
    auto key = [](const Row& r) {
      std::string k;
      for (const auto& cell : r.cells)
        k += cell.is_missing() ? "?" : std::to_string(cell.numeric_value());
      k += "|" + std::to_string(r.label);
      return k;
    };
    std::multiset<std::string> original, recombined;
    for (const Row& r : d.rows()) original.insert(key(r));
    for (const Row& r : parts.first.rows()) recombined.insert(key(r));
    for (const Row& r : parts.second.rows()) recombined.insert(key(r));
    EXPECT_EQ(original, recombined);
  }
}

TEST(DatasetMask, SingleAttributeActive) {
  const Dataset iris = load_dataset(std::string(JROC_DATA_DIR) + "/iris.csv");
  const Dataset masked = mask_features(iris, FeatureConfig::from_bitstring("0001"));
  for (const Row& r : masked.rows()) {
    EXPECT_TRUE(r.cells[0].is_missing());
    EXPECT_TRUE(r.cells[1].is_missing());
    EXPECT_TRUE(r.cells[2].is_missing());
    EXPECT_FALSE(r.cells[3].is_missing());
  }
}

TEST(DatasetMask, AllActiveIsIdentity) {
  const Dataset iris = load_dataset(std::string(JROC_DATA_DIR) + "/iris.csv");
  EXPECT_EQ(mask_features(iris, FeatureConfig::all_active(4)), iris);
}

TEST(DatasetMask, AllInactiveKeepsLabels) {
  const Dataset iris = load_dataset(std::string(JROC_DATA_DIR) + "/iris.csv");
  const Dataset masked = mask_features(iris, FeatureConfig::none_active(4));
  for (std::size_t i = 0; i < masked.row_count(); ++i) {
    for (const auto& cell : masked.row(i).cells) EXPECT_TRUE(cell.is_missing());
    EXPECT_EQ(masked.row(i).label, iris.row(i).label);
  }
}

TEST(DatasetMask, LengthMismatch) {
  const Dataset tiny = testing::make_numeric_dataset({{1.0, 2.0}}, {0}, 2);
  EXPECT_THROW(mask_features(tiny, FeatureConfig::all_active(3)), std::invalid_argument);
}

TEST(DatasetMask, IdempotentAndComposes) {
  Rng rng(23);
  for (int iter = 0; iter < 25; ++iter) {
    const auto d = testing::random_dataset(rng, 4, 10, 2, 0.1);
    const auto cfg1 = FeatureConfig::from_bits(rng.next_below(16), 4);
    const auto cfg2 = FeatureConfig::from_bits(rng.next_below(16), 4);
    const Dataset once = mask_features(d, cfg1);
    EXPECT_EQ(mask_features(once, cfg1), once);
    EXPECT_EQ(mask_features(once, cfg2), mask_features(d, cfg1.intersect(cfg2)));
  }
}

TEST(DatasetMask, InputUntouched) {
  const Dataset d = testing::make_numeric_dataset({{1.0, 2.0}}, {0}, 2);
  const Dataset copy = d;
  mask_features(d, FeatureConfig::none_active(2));
  EXPECT_EQ(d, copy);
}

TEST(DatasetSerialize, RoundTripsCanonicalFile) {
  const std::string text =
      "SL,SW,cls\n"
      "5.1,3.5,a\n"
      "4.9,?,b\n"
      "0.25,-1.5,a\n";
  EXPECT_EQ(serialize_dataset(parse_dataset_csv(text)), text);
}

TEST(DatasetSerialize, LoadMaskAllActiveRoundTripsIris) {
  const std::string path = std::string(JROC_DATA_DIR) + "/iris.csv";
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  const Dataset d = load_dataset(path);
  EXPECT_EQ(serialize_dataset(mask_features(d, FeatureConfig::all_active(4))), buf.str());
}

TEST(FeatureConfig, BitstringRoundTrip) {
  const auto cfg = FeatureConfig::from_bitstring("1010");
  EXPECT_TRUE(cfg.active(0));
  EXPECT_FALSE(cfg.active(1));
  EXPECT_EQ(cfg.bitstring(), "1010");
  EXPECT_EQ(cfg.active_count(), 2u);
  EXPECT_THROW(FeatureConfig::from_bitstring("10a1"), ParseError);
}

}  // namespace
}  // namespace jroc
