#include "jmpt/evaluation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace jmpt {
namespace {

void check_scores(const ChangeMap& scores) {
  if (scores.size() == 0) {
    throw DataError("empty score map");
  }
  if (!scores.allFinite()) {
    throw DataError("score map contains non-finite values");
  }
}

// Labeled scores with ignore pixels dropped; second member is "changed".
std::vector<std::pair<double, bool>> labeled_scores(const ChangeMap& scores,
                                                    const BinaryMask& truth) {
  check_scores(scores);
  validate(truth);
  if (scores.rows() != truth.height || scores.cols() != truth.width) {
    throw DataError("score map and mask have mismatched dimensions");
  }
  std::vector<std::pair<double, bool>> out;
  out.reserve(scores.size());
  for (Eigen::Index r = 0; r < truth.height; ++r) {
    for (Eigen::Index c = 0; c < truth.width; ++c) {
      const std::uint8_t label = truth.labels(r, c);
      if (label == kIgnore) continue;
      out.emplace_back(scores(r, c), label == kChanged);
    }
  }
  return out;
}

double percentile_of(const std::vector<double>& sorted, double q) {
  const double h = (double(sorted.size()) - 1.0) * q / 100.0;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - double(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

SeparabilityStats::ClassStats class_stats(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return {percentile_of(values, 0.0), percentile_of(values, 20.0),
          percentile_of(values, 50.0), percentile_of(values, 80.0),
          percentile_of(values, 100.0)};
}

}  // namespace

RocCurve roc_curve(const ChangeMap& scores, const BinaryMask& truth) {
  auto labeled = labeled_scores(scores, truth);
  const auto changed_total = static_cast<double>(
      std::count_if(labeled.begin(), labeled.end(),
                    [](const auto& s) { return s.second; }));
  const double unchanged_total = double(labeled.size()) - changed_total;
  if (changed_total == 0) {
    throw DataError("no changed pixels labeled in the mask");
  }
  if (unchanged_total == 0) {
    throw DataError("no unchanged pixels labeled in the mask");
  }

  std::sort(labeled.begin(), labeled.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  curve.thresholds.push_back(std::numeric_limits<double>::infinity());
  std::size_t i = 0;
  double tp = 0.0, fp = 0.0;
  while (i < labeled.size()) {
    const double value = labeled[i].first;
    while (i < labeled.size() && labeled[i].first == value) {
      (labeled[i].second ? tp : fp) += 1.0;
      ++i;
    }
    curve.points.push_back({fp / unchanged_total, tp / changed_total});
    curve.thresholds.push_back(value);
  }
  return curve;
}

double auc(const RocCurve& curve) {
  double area = 0.0;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  return area;
}

SeparabilityStats separability(const ChangeMap& scores,
                               const BinaryMask& truth) {
  const auto labeled = labeled_scores(scores, truth);
  std::vector<double> changed, unchanged;
  for (const auto& [score, is_changed] : labeled) {
    (is_changed ? changed : unchanged).push_back(score);
  }
  if (changed.empty()) {
    throw DataError("no changed pixels labeled in the mask");
  }
  if (unchanged.empty()) {
    throw DataError("no unchanged pixels labeled in the mask");
  }
  SeparabilityStats stats;
  stats.changed = class_stats(std::move(changed));
  stats.unchanged = class_stats(std::move(unchanged));
  return stats;
}

BinaryMask binarize(const ChangeMap& scores, const BinarizePolicy& policy) {
  check_scores(scores);
  BinaryMask mask = make_mask(scores.rows(), scores.cols());

  double threshold = 0.0;
  if (policy.kind == BinarizePolicy::Kind::percentile) {
    if (policy.percentile < 0.0 || policy.percentile > 100.0) {
      throw DataError("percentile must be in [0, 100]");
    }
    std::vector<double> sorted(scores.data(), scores.data() + scores.size());
    std::sort(sorted.begin(), sorted.end());
    threshold = percentile_of(sorted, policy.percentile);
  } else {
    const double lo = scores.minCoeff();
    const double hi = scores.maxCoeff();
    if (hi == lo) return mask;  // constant map: nothing stands out
    std::array<std::int64_t, 256> histogram{};
    for (Eigen::Index p = 0; p < scores.size(); ++p) {
      const double unit = (scores(p / scores.cols(), p % scores.cols()) - lo) /
                          (hi - lo);
      histogram[std::min<int>(255, int(unit * 256.0))] += 1;
    }
    // Otsu: split maximizing the between-class variance.
    const double total = double(scores.size());
    double overall_sum = 0.0;
    for (int v = 0; v < 256; ++v) overall_sum += v * double(histogram[v]);
    double best = -1.0;
    int best_split = 0;
    double w0 = 0.0, sum0 = 0.0;
    for (int split = 0; split < 255; ++split) {
      w0 += double(histogram[split]);
      sum0 += split * double(histogram[split]);
      const double w1 = total - w0;
      if (w0 == 0.0 || w1 == 0.0) continue;
      const double mean0 = sum0 / w0;
      const double mean1 = (overall_sum - sum0) / w1;
      const double between = w0 * w1 * (mean0 - mean1) * (mean0 - mean1);
      if (between > best) {
        best = between;
        best_split = split;
      }
    }
    threshold = lo + (hi - lo) * double(best_split + 1) / 256.0;
  }

  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    for (Eigen::Index c = 0; c < scores.cols(); ++c) {
      mask.labels(r, c) = scores(r, c) >= threshold ? kChanged : kUnchanged;
    }
  }
  return mask;
}

std::string roc_csv(const RocCurve& curve) {
  std::string out = "threshold,fpr,tpr\n";
  char line[128];
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    std::snprintf(line, sizeof(line), "%.17g,%.17g,%.17g\n",
                  curve.thresholds[i], curve.points[i].fpr,
                  curve.points[i].tpr);
    out += line;
  }
  return out;
}

void write_roc_csv(const RocCurve& curve, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write " + path.string());
  }
  out << roc_csv(curve);
}

}  // namespace jmpt
