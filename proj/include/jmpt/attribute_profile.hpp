#pragma once

#include <vector>

#include "jmpt/component_tree.hpp"
#include "jmpt/types.hpp"

namespace jmpt {

// Filtering thresholds per attribute. The defaults are the shipped bank:
// area {10,15,...,55}, the other four attributes {10,13,...,37}.
struct ThresholdBank {
  std::vector<double> area;
  std::vector<double> height;
  std::vector<double> volume;
  std::vector<double> diagonal;
  std::vector<double> std_dev;

  static ThresholdBank defaults();
  const std::vector<double>& for_attribute(Attribute attribute) const;
  std::size_t total() const {
    return area.size() + height.size() + volume.size() + diagonal.size() +
           std_dev.size();
  }
};

struct BandProvenance {
  TreeKind kind;
  Attribute attribute;
  double threshold;

  bool operator==(const BandProvenance&) const = default;
};

// Ordered reconstructed attribute-profile bands for one time instant.
struct FeatureStack {
  std::vector<Image> bands;
  std::vector<BandProvenance> provenance;
};

// Filters and reconstructs the image once per (tree kind, attribute,
// threshold), stacked in the fixed order (max tree then min tree) x (area,
// height, volume, diagonal, std) x (thresholds ascending). The increasing
// attributes use the prune rule, std uses the direct rule. The default bank
// yields 2*5*10 = 100 bands.
FeatureStack build_feature_stack(const GrayImage& img,
                                 const ThresholdBank& bank,
                                 Connectivity connectivity = Connectivity::four);

}  // namespace jmpt
