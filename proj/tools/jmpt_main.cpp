// Batch driver for the change-detection pipeline: synthesize scenes, run
// detectors, evaluate score maps, and sweep the tensor-branch patch size.
// Exit codes: 0 success, 1 usage error, 2 data error. stdout carries one JSON
// summary per run; all other outputs are files.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jmpt/detectors.hpp"
#include "jmpt/evaluation.hpp"
#include "jmpt/patch_tensor.hpp"
#include "jmpt/raster_io.hpp"
#include "jmpt/synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliOptions {
  // synth
  jmpt::SceneConfig scene;
  std::string out_dir;

  // detect / sweep-patch
  std::string method = "jmpt";
  std::string t1_path;
  std::string t2_path;
  std::string out_path;
  int patch_size = 3;
  int connectivity = 4;
  double fuse_a = 0.5;
  double fuse_b = 0.5;
  int als_max_iters = 25;
  double als_tol = 1e-6;
  std::vector<double> thresholds_area;
  std::vector<double> thresholds_height;
  std::vector<double> thresholds_volume;
  std::vector<double> thresholds_diag;
  std::vector<double> thresholds_std;

  // eval
  std::string scores_path;
  std::string mask_path;
  std::string out_prefix;
  std::string binarize_policy;

  // sweep-patch
  int w_min = 3;
  int w_max = 15;

  bool verbose = false;
};

jmpt::DetectorConfig detector_config(const CliOptions& opt) {
  jmpt::DetectorConfig config;
  config.patch_size = opt.patch_size;
  config.connectivity = opt.connectivity == 8 ? jmpt::Connectivity::eight
                                              : jmpt::Connectivity::four;
  config.fuse_a = opt.fuse_a;
  config.fuse_b = opt.fuse_b;
  config.als.max_iters = opt.als_max_iters;
  config.als.tol = opt.als_tol;
  if (!opt.thresholds_area.empty()) config.bank.area = opt.thresholds_area;
  if (!opt.thresholds_height.empty()) config.bank.height = opt.thresholds_height;
  if (!opt.thresholds_volume.empty()) config.bank.volume = opt.thresholds_volume;
  if (!opt.thresholds_diag.empty()) config.bank.diagonal = opt.thresholds_diag;
  if (!opt.thresholds_std.empty()) config.bank.std_dev = opt.thresholds_std;
  return config;
}

json config_echo(const CliOptions& opt) {
  const jmpt::DetectorConfig config = detector_config(opt);
  return json{{"method", opt.method},
              {"patch_size", opt.patch_size},
              {"connectivity", opt.connectivity},
              {"fuse_a", opt.fuse_a},
              {"fuse_b", opt.fuse_b},
              {"als_max_iters", opt.als_max_iters},
              {"als_tol", opt.als_tol},
              {"thresholds",
               {{"area", config.bank.area},
                {"height", config.bank.height},
                {"volume", config.bank.volume},
                {"diag", config.bank.diagonal},
                {"std", config.bank.std_dev}}}};
}

jmpt::HyperCube map_to_cube(const jmpt::ChangeMap& map) {
  jmpt::HyperCube cube = jmpt::make_cube(map.rows(), map.cols(), 1);
  for (Eigen::Index r = 0; r < map.rows(); ++r) {
    for (Eigen::Index c = 0; c < map.cols(); ++c) {
      cube.values(r * map.cols() + c, 0) = map(r, c);
    }
  }
  return cube;
}

jmpt::ChangeMap cube_to_map(const jmpt::HyperCube& cube) {
  if (cube.bands != 1) {
    throw jmpt::DataError("score maps are single-band, got " +
                          std::to_string(cube.bands) + " bands");
  }
  return cube.band(0);
}

jmpt::ChangeMap run_method(const std::string& method,
                           const jmpt::BiTemporalPair& pair,
                           const jmpt::DetectorConfig& config) {
  if (method == "jmpt") return jmpt::jmpt_detect(pair, config);
  if (method == "morph") return jmpt::morph_branch(pair, config);
  if (method == "tensor") return jmpt::tensor_branch(pair, config);
  if (method == "ad") return jmpt::baseline_ad(pair.t1, pair.t2);
  if (method == "ed") return jmpt::baseline_ed(pair.t1, pair.t2);
  if (method == "aad") return jmpt::baseline_aad(pair.t1, pair.t2);
  throw std::invalid_argument("unknown method " + method);
}

int cmd_synth(const CliOptions& opt) {
  const jmpt::SynthScene scene = jmpt::synth_pair(opt.scene);
  const fs::path dir(opt.out_dir);
  fs::create_directories(dir);
  jmpt::save_cube(scene.pair.t1, dir / "t1.json");
  jmpt::save_cube(scene.pair.t2, dir / "t2.json");
  jmpt::save_mask(scene.mask, dir / "mask.json");

  json summary{{"height", opt.scene.height},
               {"width", opt.scene.width},
               {"bands", opt.scene.bands},
               {"seed", opt.scene.seed},
               {"num_change_regions", opt.scene.num_change_regions},
               {"changed_pixels", scene.mask.count(jmpt::kChanged)},
               {"t1", (dir / "t1.json").string()},
               {"t2", (dir / "t2.json").string()},
               {"mask", (dir / "mask.json").string()}};
  std::cout << summary.dump() << "\n";
  return 0;
}

int cmd_detect(const CliOptions& opt) {
  const jmpt::BiTemporalPair pair{jmpt::load_cube(opt.t1_path),
                                  jmpt::load_cube(opt.t2_path)};
  validate(pair);
  const jmpt::DetectorConfig config = detector_config(opt);

  const auto start = std::chrono::steady_clock::now();
  const jmpt::ChangeMap map = run_method(opt.method, pair, config);
  const std::chrono::duration<double> elapsed =
      std::chrono::steady_clock::now() - start;

  jmpt::save_cube(map_to_cube(map), opt.out_path);

  json report{{"config", config_echo(opt)},
              {"t1", opt.t1_path},
              {"t2", opt.t2_path},
              {"out", opt.out_path},
              {"wall_time_s", elapsed.count()},
              {"score_min", map.minCoeff()},
              {"score_max", map.maxCoeff()}};
  std::cout << report.dump() << "\n";
  return 0;
}

jmpt::BinarizePolicy parse_binarize(const std::string& text) {
  if (text == "otsu") return jmpt::BinarizePolicy::otsu();
  const std::string prefix = "percentile:";
  if (text.rfind(prefix, 0) == 0) {
    return jmpt::BinarizePolicy::at_percentile(
        std::stod(text.substr(prefix.size())));
  }
  throw std::invalid_argument("binarize policy must be 'otsu' or 'percentile:Q'");
}

int cmd_eval(const CliOptions& opt) {
  const jmpt::ChangeMap scores = cube_to_map(jmpt::load_cube(opt.scores_path));
  const jmpt::BinaryMask truth = jmpt::load_mask(opt.mask_path);

  const jmpt::RocCurve curve = jmpt::roc_curve(scores, truth);
  const double area = jmpt::auc(curve);
  const jmpt::SeparabilityStats stats = jmpt::separability(scores, truth);

  const fs::path roc_path = opt.out_prefix + "_roc.csv";
  const fs::path metrics_path = opt.out_prefix + "_metrics.json";
  jmpt::write_roc_csv(curve, roc_path);

  const auto stats_json = [](const jmpt::SeparabilityStats::ClassStats& s) {
    return json{{"p0", s.p0}, {"p20", s.p20}, {"p50", s.p50},
                {"p80", s.p80}, {"p100", s.p100}};
  };
  json metrics{{"auc", area},
               {"separability",
                {{"changed", stats_json(stats.changed)},
                 {"unchanged", stats_json(stats.unchanged)}}}};
  {
    std::ofstream out(metrics_path);
    if (!out) {
      throw jmpt::DataError("cannot write " + metrics_path.string());
    }
    out << metrics.dump(2) << "\n";
  }

  json summary{{"auc", area},
               {"roc_csv", roc_path.string()},
               {"metrics_json", metrics_path.string()}};

  if (!opt.binarize_policy.empty()) {
    const jmpt::BinaryMask binary =
        jmpt::binarize(scores, parse_binarize(opt.binarize_policy));
    const fs::path mask_path = opt.out_prefix + "_binary.json";
    jmpt::save_mask(binary, mask_path);
    summary["binary_mask"] = mask_path.string();
    summary["binary_changed_pixels"] = binary.count(jmpt::kChanged);
  }

  std::cout << summary.dump() << "\n";
  return 0;
}

int cmd_sweep_patch(const CliOptions& opt) {
  const jmpt::BiTemporalPair pair{jmpt::load_cube(opt.t1_path),
                                  jmpt::load_cube(opt.t2_path)};
  validate(pair);
  const jmpt::BinaryMask truth = jmpt::load_mask(opt.mask_path);
  if (opt.w_min < 1 || opt.w_min > opt.w_max) {
    throw std::invalid_argument("patch-size range must satisfy 1 <= min <= max");
  }
  if (opt.w_max > std::min(pair.t1.height, pair.t1.width)) {
    throw jmpt::DataError("patch size " + std::to_string(opt.w_max) +
                          " exceeds the scene extent");
  }

  jmpt::DetectorConfig config = detector_config(opt);
  std::string csv = "w,auc\n";
  double best_auc = -1.0;
  int best_w = opt.w_min;
  for (int w = opt.w_min; w <= opt.w_max; ++w) {
    config.patch_size = w;
    if (opt.verbose) std::cerr << "sweep: w=" << w << "\n";
    const jmpt::ChangeMap map = jmpt::tensor_branch(pair, config);
    const double area = jmpt::auc(jmpt::roc_curve(map, truth));
    char line[64];
    std::snprintf(line, sizeof(line), "%d,%.17g\n", w, area);
    csv += line;
    if (area > best_auc) {
      best_auc = area;
      best_w = w;
    }
  }
  {
    std::ofstream out(opt.out_path);
    if (!out) {
      throw jmpt::DataError("cannot write " + opt.out_path);
    }
    out << csv;
  }

  json summary{{"rows", opt.w_max - opt.w_min + 1},
               {"best_w", best_w},
               {"best_auc", best_auc},
               {"out", opt.out_path}};
  std::cout << summary.dump() << "\n";
  return 0;
}

void add_detector_options(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--patch-size", opt.patch_size,
                  "Tensor-branch patch size w")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--connectivity", opt.connectivity,
                  "Pixel connectivity for the component trees")
      ->check(CLI::IsMember({4, 8}))
      ->capture_default_str();
  cmd->add_option("--fuse-a", opt.fuse_a, "Fusion weight of the morphology map")
      ->capture_default_str();
  cmd->add_option("--fuse-b", opt.fuse_b, "Fusion weight of the tensor map")
      ->capture_default_str();
  cmd->add_option("--als-max-iters", opt.als_max_iters,
                  "Maximum ALS sweeps per decomposition")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--als-tol", opt.als_tol,
                  "ALS stop tolerance on the relative fit change")
      ->capture_default_str();
  cmd->add_option("--thresholds-area", opt.thresholds_area,
                  "Area filter thresholds (comma separated)")
      ->delimiter(',');
  cmd->add_option("--thresholds-height", opt.thresholds_height,
                  "Height filter thresholds")
      ->delimiter(',');
  cmd->add_option("--thresholds-volume", opt.thresholds_volume,
                  "Volume filter thresholds")
      ->delimiter(',');
  cmd->add_option("--thresholds-diag", opt.thresholds_diag,
                  "Bounding-box diagonal filter thresholds")
      ->delimiter(',');
  cmd->add_option("--thresholds-std", opt.thresholds_std,
                  "Standard-deviation filter thresholds")
      ->delimiter(',');
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint morphology and patch-tensor change detection for "
               "hyperspectral image pairs"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a TOML/INI config file");

  CliOptions opt;
  app.add_flag("-v,--verbose", opt.verbose, "Progress notes on stderr");

  CLI::App* synth =
      app.add_subcommand("synth", "Generate a synthetic bi-temporal scene");
  synth->add_option("--out-dir", opt.out_dir, "Output directory")->required();
  synth->add_option("--height", opt.scene.height)->capture_default_str();
  synth->add_option("--width", opt.scene.width)->capture_default_str();
  synth->add_option("--bands", opt.scene.bands)->capture_default_str();
  synth->add_option("--regions", opt.scene.num_change_regions,
                    "Number of planted change rectangles")
      ->capture_default_str();
  synth->add_option("--magnitude", opt.scene.change_magnitude,
                    "Scale of the replacement spectrum")
      ->capture_default_str();
  synth->add_option("--noise-sigma", opt.scene.noise_sigma,
                    "Additive Gaussian noise std")
      ->capture_default_str();
  synth->add_option("--seed", opt.scene.seed)->capture_default_str();

  CLI::App* detect =
      app.add_subcommand("detect", "Score changes between two cubes");
  detect->add_option("--t1", opt.t1_path, "First-date cube header")->required();
  detect->add_option("--t2", opt.t2_path, "Second-date cube header")->required();
  detect->add_option("--out", opt.out_path, "Score-map header path")->required();
  detect->add_option("--method", opt.method, "Detector to run")
      ->check(CLI::IsMember({"jmpt", "morph", "tensor", "ad", "ed", "aad"}))
      ->capture_default_str();
  add_detector_options(detect, opt);

  CLI::App* eval =
      app.add_subcommand("eval", "ROC/AUC and separability for a score map");
  eval->add_option("--scores", opt.scores_path, "Score-map header")->required();
  eval->add_option("--mask", opt.mask_path, "Ground-truth mask header")
      ->required();
  eval->add_option("--out-prefix", opt.out_prefix,
                   "Prefix for <prefix>_roc.csv and <prefix>_metrics.json")
      ->required();
  eval->add_option("--binarize", opt.binarize_policy,
                   "Also export a binary mask: 'otsu' or 'percentile:Q'");

  CLI::App* sweep = app.add_subcommand(
      "sweep-patch", "AUC of the tensor branch across patch sizes");
  sweep->add_option("--t1", opt.t1_path)->required();
  sweep->add_option("--t2", opt.t2_path)->required();
  sweep->add_option("--mask", opt.mask_path)->required();
  sweep->add_option("--out", opt.out_path, "CSV output path")->required();
  sweep->add_option("--w-min", opt.w_min)->capture_default_str();
  sweep->add_option("--w-max", opt.w_max)->capture_default_str();
  add_detector_options(sweep, opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help / --version
    }
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  }

  try {
    if (synth->parsed()) return cmd_synth(opt);
    if (detect->parsed()) return cmd_detect(opt);
    if (eval->parsed()) return cmd_eval(opt);
    if (sweep->parsed()) return cmd_sweep_patch(opt);
    std::cerr << json{{"error", "no subcommand given"}}.dump() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << "\n";
    return 2;
  }
}
