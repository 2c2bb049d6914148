#include <doctest.h>

#include "jmpt/attribute_profile.hpp"
#include "oracles.hpp"

using namespace jmpt;

TEST_CASE("default bank carries the shipped thresholds") {
  const ThresholdBank bank = ThresholdBank::defaults();
  CHECK(bank.area == std::vector<double>{10, 15, 20, 25, 30, 35, 40, 45, 50, 55});
  const std::vector<double> step3 = {10, 13, 16, 19, 22, 25, 28, 31, 34, 37};
  CHECK(bank.height == step3);
  CHECK(bank.volume == step3);
  CHECK(bank.diagonal == step3);
  CHECK(bank.std_dev == step3);
  CHECK(bank.total() == 50);
}

TEST_CASE("constant image yields a constant 100-band stack") {
  const GrayImage img = GrayImage::Constant(6, 6, 99);
  const FeatureStack stack = build_feature_stack(img, ThresholdBank::defaults());
  REQUIRE(stack.bands.size() == 100);
  for (const Image& band : stack.bands) {
    CHECK(band.isConstant(99.0));
  }
}

TEST_CASE("stack order is tree kind, then attribute, then threshold") {
  const GrayImage img = oracle::random_gray(8, 8, 6, 77);
  const FeatureStack stack = build_feature_stack(img, ThresholdBank::defaults());
  REQUIRE(stack.provenance.size() == 100);

  const std::vector<Attribute> attribute_order = {
      Attribute::area, Attribute::height, Attribute::volume,
      Attribute::diagonal, Attribute::std_dev};
  std::size_t band = 0;
  const ThresholdBank bank = ThresholdBank::defaults();
  for (const TreeKind kind : {TreeKind::max_tree, TreeKind::min_tree}) {
    for (const Attribute attribute : attribute_order) {
      for (const double threshold : bank.for_attribute(attribute)) {
        CHECK(stack.provenance[band].kind == kind);
        CHECK(stack.provenance[band].attribute == attribute);
        CHECK(stack.provenance[band].threshold == threshold);
        ++band;
      }
    }
  }
}

TEST_CASE("an empty bank is rejected") {
  ThresholdBank bank;
  CHECK_THROWS_AS(build_feature_stack(GrayImage::Constant(3, 3, 0), bank),
                  DataError);
}

TEST_CASE("bands share the image dimensions") {
  const GrayImage img = oracle::random_gray(5, 9, 4, 13);
  const FeatureStack stack = build_feature_stack(img, ThresholdBank::defaults());
  for (const Image& band : stack.bands) {
    CHECK(band.rows() == 5);
    CHECK(band.cols() == 9);
  }
}
