#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "jmpt/types.hpp"

namespace jmpt {

// ROC curve swept over every distinct score value (score >= threshold means
// predicted changed). Starts at (0,0) with threshold +inf and ends at (1,1).
struct RocCurve {
  struct Point {
    double fpr;
    double tpr;
  };
  std::vector<Point> points;
  std::vector<double> thresholds;  // strictly decreasing, aligned with points
};

// Pixels labeled 255 are excluded. Throws DataError when either class is
// empty, naming the class.
RocCurve roc_curve(const ChangeMap& scores, const BinaryMask& truth);

// Trapezoidal area; equals the rank statistic
// P(score_changed > score_unchanged) + P(tie)/2.
double auc(const RocCurve& curve);

// Percentiles at {0,20,50,80,100} per class under the linear-interpolation
// convention h = (n-1) * q / 100.
struct SeparabilityStats {
  struct ClassStats {
    double p0, p20, p50, p80, p100;
  };
  ClassStats changed;
  ClassStats unchanged;
};

SeparabilityStats separability(const ChangeMap& scores, const BinaryMask& truth);

struct BinarizePolicy {
  enum class Kind { percentile, otsu };
  Kind kind = Kind::otsu;
  double percentile = 95.0;  // used by Kind::percentile

  static BinarizePolicy otsu() { return {Kind::otsu, 0.0}; }
  static BinarizePolicy at_percentile(double q) {
    return {Kind::percentile, q};
  }
};

// percentile: threshold at the q-th score percentile; otsu: maximal
// inter-class variance over a 256-bin histogram of min-max normalized scores
// (a constant map binarizes to all-unchanged). Pixels at or above the
// threshold are marked changed.
BinaryMask binarize(const ChangeMap& scores, const BinarizePolicy& policy);

// CSV rows "threshold,fpr,tpr" (the opening point carries threshold inf).
std::string roc_csv(const RocCurve& curve);
void write_roc_csv(const RocCurve& curve, const std::filesystem::path& path);

}  // namespace jmpt
