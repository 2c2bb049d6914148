#include "jmpt/attribute_profile.hpp"

#include <algorithm>

namespace jmpt {

ThresholdBank ThresholdBank::defaults() {
  ThresholdBank bank;
  for (int i = 0; i < 10; ++i) {
    bank.area.push_back(10.0 + 5.0 * i);
    bank.height.push_back(10.0 + 3.0 * i);
    bank.volume.push_back(10.0 + 3.0 * i);
    bank.diagonal.push_back(10.0 + 3.0 * i);
    bank.std_dev.push_back(10.0 + 3.0 * i);
  }
  return bank;
}

const std::vector<double>& ThresholdBank::for_attribute(
    Attribute attribute) const {
  switch (attribute) {
    case Attribute::area:
      return area;
    case Attribute::height:
      return height;
    case Attribute::volume:
      return volume;
    case Attribute::diagonal:
      return diagonal;
    case Attribute::std_dev:
      return std_dev;
  }
  throw std::invalid_argument("unknown attribute");
}

FeatureStack build_feature_stack(const GrayImage& img,
                                 const ThresholdBank& bank,
                                 Connectivity connectivity) {
  if (bank.total() == 0) {
    throw DataError("threshold bank is empty");
  }
  static constexpr Attribute kAttributes[] = {
      Attribute::area, Attribute::height, Attribute::volume,
      Attribute::diagonal, Attribute::std_dev};

  FeatureStack stack;
  for (const TreeKind kind : {TreeKind::max_tree, TreeKind::min_tree}) {
    const ComponentTree tree = kind == TreeKind::max_tree
                                   ? build_max_tree(img, connectivity)
                                   : build_min_tree(img, connectivity);
    const AttributeTable attributes = compute_attributes(tree);
    for (const Attribute attribute : kAttributes) {
      const FilterRule rule = attribute == Attribute::std_dev
                                  ? FilterRule::direct
                                  : FilterRule::prune;
      std::vector<double> thresholds = bank.for_attribute(attribute);
      std::sort(thresholds.begin(), thresholds.end());
      for (const double threshold : thresholds) {
        const std::vector<char> removed =
            filter_flags(tree, attributes, attribute, threshold, rule);
        stack.bands.push_back(reconstruct(tree, removed));
        stack.provenance.push_back({kind, attribute, threshold});
      }
    }
  }
  return stack;
}

}  // namespace jmpt
