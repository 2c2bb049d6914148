#include <doctest.h>

#include <random>

#include "jmpt/detectors.hpp"
#include "jmpt/synthetic.hpp"
#include "oracles.hpp"

using namespace jmpt;

namespace {

HyperCube random_cube(Eigen::Index h, Eigen::Index w, Eigen::Index d,
                      unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(0.1, 2.0);
  HyperCube cube = make_cube(h, w, d);
  for (Eigen::Index p = 0; p < cube.values.rows(); ++p) {
    for (Eigen::Index b = 0; b < d; ++b) cube.values(p, b) = dist(rng);
  }
  return cube;
}

FeatureStack stack_of(std::vector<Image> bands) {
  FeatureStack f;
  f.bands = std::move(bands);
  f.provenance.assign(f.bands.size(),
                      {TreeKind::max_tree, Attribute::area, 10.0});
  for (std::size_t i = 0; i < f.provenance.size(); ++i) {
    f.provenance[i].threshold = 10.0 + double(i);
  }
  return f;
}

double class_mean(const ChangeMap& map, const BinaryMask& mask,
                  std::uint8_t label) {
  double sum = 0.0;
  Eigen::Index count = 0;
  for (Eigen::Index r = 0; r < map.rows(); ++r) {
    for (Eigen::Index c = 0; c < map.cols(); ++c) {
      if (mask.labels(r, c) == label) {
        sum += map(r, c);
        ++count;
      }
    }
  }
  return sum / double(count);
}

}  // namespace

TEST_CASE("feature-stack distance on identical stacks is zero and symmetric") {
  const FeatureStack f1 = stack_of({Image::Constant(2, 2, 3.0),
                                    Image::Constant(2, 2, -1.0)});
  CHECK(morph_ad(f1, f1).isZero(0.0));

  const FeatureStack f2 = stack_of({Image::Constant(2, 2, 1.0),
                                    Image::Constant(2, 2, 2.0)});
  const ChangeMap ab = morph_ad(f1, f2);
  // |3-1| + |-1-2| = 5 on every pixel.
  CHECK(ab.isConstant(5.0));
  CHECK(morph_ad(f2, f1) == ab);
}

TEST_CASE("mismatched stacks are rejected") {
  const FeatureStack f1 = stack_of({Image::Zero(2, 2)});
  const FeatureStack f2 = stack_of({Image::Zero(2, 2), Image::Zero(2, 2)});
  CHECK_THROWS_AS(morph_ad(f1, f2), DataError);

  FeatureStack f3 = f1;
  f3.provenance[0].attribute = Attribute::volume;
  CHECK_THROWS_AS(morph_ad(f1, f3), DataError);
}

TEST_CASE("spectral angle weight hits its landmarks") {
  Eigen::VectorXd x(2), y(2);
  x << 1.0, 0.0;

  y << 3.0, 0.0;  // parallel
  CHECK(spectral_angle_weight(x, y) ==
        doctest::Approx(std::numbers::pi / 4).epsilon(1e-12));

  y << 0.0, 1.0;  // orthogonal
  CHECK(spectral_angle_weight(x, y) == 0.0);

  y << 1.0, 1.0;  // squared cosine 0.5
  CHECK(spectral_angle_weight(x, y) ==
        doctest::Approx(std::atan(0.5)).epsilon(1e-12));

  y << 0.0, 0.0;  // degenerate
  CHECK(spectral_angle_weight(x, y) == 0.0);
}

TEST_CASE("spectral angle weight is monotone in the squared cosine") {
  std::mt19937 rng(8);
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> cosines, weights;
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd x(3), y(3);
    for (int i = 0; i < 3; ++i) {
      x(i) = dist(rng);
      y(i) = dist(rng);
    }
    if (x.norm() == 0.0 || y.norm() == 0.0) continue;
    const double cosine = x.dot(y) / x.norm() / y.norm();
    cosines.push_back(cosine * cosine);
    weights.push_back(spectral_angle_weight(x, y));
    CHECK(weights.back() >= 0.0);
    CHECK(weights.back() <= std::numbers::pi / 4 + 1e-15);
  }
  for (std::size_t i = 0; i < cosines.size(); ++i) {
    for (std::size_t j = 0; j < cosines.size(); ++j) {
      if (cosines[i] <= cosines[j]) CHECK(weights[i] <= weights[j] + 1e-15);
    }
  }
}

TEST_CASE("neighborhood detector is exactly zero on an identical pair") {
  const HyperCube cube = random_cube(6, 5, 4, 21);
  CHECK(neighborhood_detector(cube, cube).isZero(0.0));
}

TEST_CASE("neighborhood detector center value matches hand arithmetic") {
  HyperCube t1 = make_cube(3, 3, 1);
  HyperCube t2 = make_cube(3, 3, 1);
  t1.values.setConstant(1.0);
  t2.values.setConstant(2.0);
  // Make center spectra equal so the weight is pi/4.
  t1.values(4, 0) = 5.0;
  t2.values(4, 0) = 5.0;
  const ChangeMap map = neighborhood_detector(t1, t2);
  // 8 neighbors contribute (4 - 1) each: |24| * pi/4 = 6*pi.
  CHECK(map(1, 1) == doctest::Approx(6.0 * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("neighborhood detector matches the naive-loop oracle") {
  for (unsigned seed = 0; seed < 50; ++seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dim(1, 5);
    std::uniform_int_distribution<int> band(1, 3);
    const HyperCube t1 = random_cube(dim(rng), dim(rng), band(rng), seed + 500);
    const HyperCube t2 =
        random_cube(t1.height, t1.width, t1.bands, seed + 900);
    const ChangeMap got = neighborhood_detector(t1, t2);
    const Eigen::MatrixXd want = oracle::naive_neighborhood_scores(t1, t2);
    CHECK((got - want).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("fusion normalizes each map before weighting") {
  ChangeMap r1(1, 3), r2(1, 3);
  r1 << 0.0, 5.0, 10.0;
  r2 << 0.0, 1.0, 2.0;
  const ChangeMap fused = fuse(r1, r2, 0.5, 0.5);
  CHECK(fused(0, 1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(fused(0, 0) == 0.0);
  CHECK(fused(0, 2) == doctest::Approx(1.0).epsilon(1e-15));

  // Equal maps (after normalization) fuse to themselves.
  const ChangeMap same = fuse(r1, r1, 0.5, 0.5);
  CHECK(same(0, 1) == doctest::Approx(0.5).epsilon(1e-15));

  // An all-zeros map contributes nothing.
  const ChangeMap zeros = ChangeMap::Zero(1, 3);
  const ChangeMap only_b = fuse(zeros, r2, 0.5, 0.5);
  CHECK(only_b(0, 2) == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(fuse(r1, ChangeMap::Zero(2, 2), 0.5, 0.5), DataError);
  CHECK_THROWS_AS(fuse(r1, r2, 0.0, 0.0), DataError);
}

TEST_CASE("fusion ordering is invariant to a shared weight scale") {
  const HyperCube a = random_cube(5, 5, 3, 31);
  const HyperCube b = random_cube(5, 5, 3, 32);
  const ChangeMap r1 = baseline_ad(a, b);
  const ChangeMap r2 = baseline_ed(a, b);
  const ChangeMap f1 = fuse(r1, r2, 0.5, 0.5);
  const ChangeMap f2 = fuse(r1, r2, 1.5, 1.5);

  const auto ranks = [](const ChangeMap& m) {
    std::vector<int> order(m.size());
    for (int i = 0; i < int(m.size()); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
      return m(lhs / m.cols(), lhs % m.cols()) <
             m(rhs / m.cols(), rhs % m.cols());
    });
    return order;
  };
  CHECK(ranks(f1) == ranks(f2));
}

TEST_CASE("baselines on a hand-computed pixel") {
  HyperCube t1 = make_cube(1, 1, 3);
  HyperCube t2 = make_cube(1, 1, 3);
  t1.values << 1.0, 2.0, 3.0;
  t2.values << 2.0, 2.0, 5.0;
  CHECK(baseline_ad(t1, t2)(0, 0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(baseline_ed(t1, t2)(0, 0) ==
        doctest::Approx(std::sqrt(5.0)).epsilon(1e-15));
  CHECK(baseline_aad(t1, t2)(0, 0) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(baseline_ad(t1, t1).isZero(0.0));
  CHECK(baseline_ed(t1, t1).isZero(0.0));
  CHECK(baseline_aad(t1, t1).isZero(0.0));
}

TEST_CASE("norm inequality ED <= AD <= sqrt(D) * ED holds pixelwise") {
  const HyperCube t1 = random_cube(6, 6, 5, 41);
  const HyperCube t2 = random_cube(6, 6, 5, 42);
  const ChangeMap ad = baseline_ad(t1, t2);
  const ChangeMap ed = baseline_ed(t1, t2);
  const double root_d = std::sqrt(5.0);
  for (Eigen::Index r = 0; r < 6; ++r) {
    for (Eigen::Index c = 0; c < 6; ++c) {
      CHECK(ed(r, c) <= ad(r, c) + 1e-12);
      CHECK(ad(r, c) <= root_d * ed(r, c) + 1e-12);
    }
  }
}

TEST_CASE("ED obeys the triangle inequality against a third cube") {
  const HyperCube a = random_cube(4, 4, 3, 51);
  const HyperCube b = random_cube(4, 4, 3, 52);
  const HyperCube c = random_cube(4, 4, 3, 53);
  const ChangeMap ab = baseline_ed(a, b);
  const ChangeMap bc = baseline_ed(b, c);
  const ChangeMap ac = baseline_ed(a, c);
  for (Eigen::Index i = 0; i < ab.size(); ++i) {
    CHECK(ac(i / 4, i % 4) <= ab(i / 4, i % 4) + bc(i / 4, i % 4) + 1e-12);
  }
}

TEST_CASE("full detector scores changed regions above unchanged ones") {
  SceneConfig config;
  config.height = 24;
  config.width = 24;
  config.bands = 6;
  config.num_change_regions = 2;
  config.noise_sigma = 0.0;
  config.seed = 5;
  const SynthScene scene = synth_pair(config);

  DetectorConfig detector;
  const ChangeMap map = jmpt_detect(scene.pair, detector);
  CHECK(map.rows() == 24);
  CHECK(map.cols() == 24);
  CHECK(class_mean(map, scene.mask, kChanged) >
        class_mean(map, scene.mask, kUnchanged));

  // Determinism: the same input and config give bit-identical maps.
  const ChangeMap again = jmpt_detect(scene.pair, detector);
  CHECK(map == again);
}

TEST_CASE("full detector is identically zero on an unchanged pair") {
  SceneConfig config;
  config.height = 18;
  config.width = 18;
  config.bands = 5;
  config.num_change_regions = 0;
  config.noise_sigma = 0.0;
  config.seed = 6;
  const SynthScene scene = synth_pair(config);
  const ChangeMap map = jmpt_detect(scene.pair, DetectorConfig{});
  CHECK(map.isZero(0.0));
}
