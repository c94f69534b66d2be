#include "wbss/cli.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>

#include "wbss/csv.hpp"
#include "wbss/model.hpp"
#include "wbss/pgm.hpp"
#include "wbss/rng.hpp"
#include "wbss/texture.hpp"

namespace wbss::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

/// Collects artifacts under one directory; unless committed, everything
/// written is removed again, so a failed run leaves no partial outputs.
class ArtifactSink {
 public:
  explicit ArtifactSink(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw DataError("cannot create output directory: " + dir_.string());
  }

  ~ArtifactSink() {
    if (committed_) return;
    for (const auto& p : written_) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }

  fs::path write_image(const std::string& name, const ImagePlane& img) {
    const fs::path p = dir_ / name;
    write_pgm(p, img);
    written_.push_back(p);
    return p;
  }

  fs::path write_matrix(const std::string& name, const Eigen::Ref<const Matrix>& m) {
    const fs::path p = dir_ / name;
    write_csv_matrix(p, m);
    written_.push_back(p);
    return p;
  }

  fs::path write_report(const std::string& name, const json& j) {
    const fs::path p = dir_ / name;
    std::ofstream out(p);
    if (!out) throw DataError("cannot write report: " + p.string());
    out << j.dump(2) << "\n";
    written_.push_back(p);
    return p;
  }

  void commit() { committed_ = true; }

 private:
  fs::path dir_;
  std::vector<fs::path> written_;
  bool committed_ = false;
};

bool is_csv(const fs::path& p) { return p.extension() == ".csv"; }

struct ImageShape {
  int width = 0;
  int height = 0;
};

struct LoadedSignals {
  SignalMatrix signals;
  std::optional<ImageShape> shape;  // absent for CSV input
};

/// Top-anchored crop to the largest height making width * height divisible
/// by 2^depth.
std::vector<ImagePlane> crop_for_transform(const std::vector<ImagePlane>& images, int depth) {
  const int w = images[0].width();
  const int h = images[0].height();
  const Index block = Index(1) << depth;
  int cropped_h = h;
  while (cropped_h > 0 && (static_cast<Index>(w) * cropped_h) % block != 0) --cropped_h;
  if (cropped_h < 1)
    throw DataError("images too small for wavelet depth " + std::to_string(depth));
  if (cropped_h == h) return images;
  std::vector<ImagePlane> out;
  out.reserve(images.size());
  for (const auto& img : images) {
    std::vector<std::uint8_t> px(img.pixels().begin(),
                                 img.pixels().begin() +
                                     static_cast<std::ptrdiff_t>(w) * cropped_h);
    out.emplace_back(w, cropped_h, std::move(px));
  }
  return out;
}

/// Either >= 2 PGM images (cropped for the transform) or a single CSV whose
/// rows are channels (trailing samples dropped to a multiple of 2^depth).
LoadedSignals load_signals(const std::vector<fs::path>& files, int depth) {
  if (files.empty()) throw UsageError("no input files given");
  if (files.size() == 1 && is_csv(files[0])) {
    Matrix m = read_csv_matrix(files[0]);
    if (m.rows() < 2) throw DataError("need at least 2 channels in " + files[0].string());
    const Index block = Index(1) << depth;
    const Index keep = (m.cols() / block) * block;
    if (keep < 1) throw DataError("too few samples in " + files[0].string());
    return {SignalMatrix(m.leftCols(keep)), std::nullopt};
  }
  std::vector<ImagePlane> images;
  images.reserve(files.size());
  for (const auto& f : files) {
    if (is_csv(f)) throw UsageError("mixing CSV and image inputs is not supported");
    images.push_back(read_pgm(f));
  }
  if (images.size() < 2) throw DataError("need at least 2 images");
  images = crop_for_transform(images, depth);
  return {images_to_signals(images), ImageShape{images[0].width(), images[0].height()}};
}

MixingModel load_or_default_mixing(const std::optional<fs::path>& file, Index n) {
  if (file) return MixingModel(read_csv_matrix(*file));
  if (n != 2)
    throw DataError("no built-in default mixing for " + std::to_string(n) +
                    " channels; pass --mixing");
  Matrix a(2, 2);
  a << 1.0, 0.4, 0.4, 1.0;
  return MixingModel(std::move(a));
}

struct NoiseOutcome {
  SignalMatrix x;
  std::optional<std::vector<ImagePlane>> corrupted_images;
  std::vector<bool> gaussian_skipped;
  std::uint64_t gaussian_seed = 0;
  std::uint64_t sp_seed = 0;
};

SignalMatrix pixel_domain_gaussian(const SignalMatrix& x, const ImageShape& shape, double snr,
                                   std::uint64_t seed) {
  auto images = signals_to_images(x, shape.width, shape.height, false);
  SignalMatrix px = images_to_signals(images);
  auto noisy = add_gaussian_noise(px, snr, seed);
  Matrix clamped = noisy.x.data().array().round().max(0.0).min(255.0);
  return SignalMatrix(std::move(clamped));
}

/// Applies the configured corruption to the mixtures. Gaussian noise acts on
/// the signal rows (or pixels when targeted there); salt-and-pepper acts on
/// the rendered mixture images (or directly on samples, using each row's
/// extremes, when targeted at the signal domain). Gaussian runs first when
/// both are requested.
NoiseOutcome apply_noise(const SignalMatrix& x, const std::optional<ImageShape>& shape,
                         const NoiseSpec& spec, std::uint64_t master_seed) {
  NoiseOutcome out{x, std::nullopt, {}, 0, 0};
  if (spec.kind == NoiseKind::None) return out;

  const bool want_gaussian = spec.kind == NoiseKind::Gaussian || spec.kind == NoiseKind::Both;
  const bool want_sp = spec.kind == NoiseKind::SaltPepper || spec.kind == NoiseKind::Both;

  if (want_gaussian) {
    out.gaussian_seed =
        spec.seed != 0 ? spec.seed : rng::stage_seed(master_seed, "noise.gaussian");
    if (spec.target == NoiseTarget::Pixel) {
      if (!shape) throw DataError("pixel-domain noise requires image inputs");
      out.x = pixel_domain_gaussian(out.x, *shape, spec.snr_db, out.gaussian_seed);
    } else {
      auto g = add_gaussian_noise(out.x, spec.snr_db, out.gaussian_seed);
      out.x = std::move(g.x);
      out.gaussian_skipped = std::move(g.zero_variance);
    }
  }

  if (want_sp) {
    out.sp_seed = spec.seed != 0 ? rng::splitmix64(spec.seed)
                                 : rng::stage_seed(master_seed, "noise.saltpepper");
    if (spec.target == NoiseTarget::Signal) {
      Matrix m = out.x.data();
      for (Index i = 0; i < m.rows(); ++i) {
        const double lo = m.row(i).minCoeff();
        const double hi = m.row(i).maxCoeff();
        const std::uint64_t row_seed = rng::mix(out.sp_seed, static_cast<std::uint64_t>(i), 0);
        for (Index s = 0; s < m.cols(); ++s) {
          if (rng::uniform01(row_seed, 0, static_cast<std::uint64_t>(s)) < spec.density)
            m(i, s) = rng::uniform01(row_seed, 1, static_cast<std::uint64_t>(s)) < 0.5 ? lo : hi;
        }
      }
      out.x = SignalMatrix(std::move(m));
    } else {
      if (!shape) throw DataError("pixel-domain noise requires image inputs");
      auto images = signals_to_images(out.x, shape->width, shape->height, false);
      std::vector<ImagePlane> corrupted;
      corrupted.reserve(images.size());
      for (std::size_t i = 0; i < images.size(); ++i)
        corrupted.push_back(
            add_salt_pepper(images[i], spec.density, rng::mix(out.sp_seed, i, 0)));
      out.x = images_to_signals(corrupted);
      out.corrupted_images = std::move(corrupted);
    }
  }
  return out;
}

std::string family_name(WaveletFamily f) {
  return f == WaveletFamily::Haar ? "haar" : "db4";
}

json noise_json(const NoiseSpec& spec, const NoiseOutcome& outcome) {
  json j;
  switch (spec.kind) {
    case NoiseKind::None: j["kind"] = "none"; return j;
    case NoiseKind::Gaussian: j["kind"] = "gaussian"; break;
    case NoiseKind::SaltPepper: j["kind"] = "salt_pepper"; break;
    case NoiseKind::Both: j["kind"] = "both"; break;
  }
  if (spec.kind != NoiseKind::SaltPepper) {
    j["snr_db"] = spec.snr_db;
    j["gaussian_seed"] = outcome.gaussian_seed;
  }
  if (spec.kind != NoiseKind::Gaussian) {
    j["density"] = spec.density;
    j["salt_pepper_seed"] = outcome.sp_seed;
  }
  if (spec.target != NoiseTarget::Default)
    j["target"] = spec.target == NoiseTarget::Signal ? "signal" : "pixel";
  for (std::size_t i = 0; i < outcome.gaussian_skipped.size(); ++i)
    if (outcome.gaussian_skipped[i]) {
      json skipped = json::array();
      for (std::size_t c = 0; c < outcome.gaussian_skipped.size(); ++c)
        if (outcome.gaussian_skipped[c]) skipped.push_back(c);
      j["gaussian_skipped_channels"] = skipped;
      break;
    }
  return j;
}

json config_json(const RunConfig& config, const NoiseOutcome& noise) {
  json j;
  json inputs = json::array();
  for (const auto& p : config.inputs) inputs.push_back(p.string());
  j["inputs"] = inputs;
  if (!config.sources.empty()) {
    json sources = json::array();
    for (const auto& p : config.sources) sources.push_back(p.string());
    j["sources"] = sources;
  }
  j["mixing"] = config.mixing_file ? json(config.mixing_file->string()) : json("default");
  j["wavelet"] = {{"family", family_name(config.pipeline.wavelet.family)},
                  {"depth", config.pipeline.wavelet.depth}};
  j["infomax"] = {{"mu", config.pipeline.infomax.mu},
                  {"max_epochs", config.pipeline.infomax.max_epochs},
                  {"conv_tol", config.pipeline.infomax.conv_tol},
                  {"mode", config.pipeline.infomax.mode == InfomaxMode::Stochastic ? "stochastic"
                                                                                   : "batch"},
                  {"shuffle_seed", config.pipeline.infomax.seed}};
  j["stage2_domain"] = config.pipeline.stage2 == Stage2Domain::Wavelet ? "wavelet" : "space";
  j["pi_variant"] = config.pipeline.pi_variant == PiVariant::Amari ? "amari" : "paper";
  j["noise"] = noise_json(config.noise, noise);
  j["master_seed"] = config.seed;
  j["out"] = config.out.string();
  return j;
}

json vector_json(const Vector& v) {
  json a = json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

json match_json(const SourceMatch& m) {
  return {{"permutation", m.permutation}, {"signs", m.signs}, {"correlations", m.correlations}};
}

json outcome_json(const PipelineOutcome& outcome) {
  json j;
  j["whitening"] = {{"eigenvalues", vector_json(outcome.whitening.eigenvalues)},
                    {"whiteness_residual", outcome.whiteness_residual},
                    {"k", outcome.whitening.k}};
  j["jad"] = {{"off_final", outcome.jad.off_final},
              {"sweeps", outcome.jad.sweeps},
              {"converged", outcome.jad.converged}};
  json infomax = {{"epochs_run", outcome.trace.epochs_run},
                  {"converged", outcome.trace.converged}};
  if (!outcome.trace.cost.empty()) {
    infomax["final_cost"] = outcome.trace.cost.back();
    infomax["cost"] = outcome.trace.cost;
  }
  if (!outcome.trace.rel_change.empty())
    infomax["final_rel_change"] = outcome.trace.rel_change.back();
  j["infomax"] = infomax;
  if (outcome.separation.pi_initial) j["pi_initial"] = *outcome.separation.pi_initial;
  if (outcome.separation.pi_final) j["pi_final"] = *outcome.separation.pi_final;
  if (outcome.separation.matching) j["matching"] = match_json(*outcome.separation.matching);
  json wall;
  for (const auto& [stage, ms] : outcome.wall_clock_ms) wall[stage] = ms;
  j["wall_clock_ms"] = wall;
  return j;
}

// Console lines reuse the JSON encoding of each value so that every printed
// number appears verbatim in report.json.
void print_outcome(const json& report) {
  const json& w = report["whitening"];
  std::cout << "whitening: k=" << w["k"].dump() << " eigenvalues " << w["eigenvalues"].dump()
            << " residual " << w["whiteness_residual"].dump() << "\n";
  const json& jd = report["jad"];
  std::cout << "jad: off_final " << jd["off_final"].dump() << " sweeps " << jd["sweeps"].dump()
            << " converged " << jd["converged"].dump() << "\n";
  const json& im = report["infomax"];
  std::cout << "infomax: epochs " << im["epochs_run"].dump();
  if (im.contains("final_cost")) std::cout << " final_cost " << im["final_cost"].dump();
  std::cout << " converged " << im["converged"].dump() << "\n";
  if (report.contains("pi_initial"))
    std::cout << "pi_initial " << report["pi_initial"].dump() << "\n";
  if (report.contains("pi_final")) std::cout << "pi_final " << report["pi_final"].dump() << "\n";
  if (report.contains("matching")) {
    const json& m = report["matching"];
    std::cout << "matching: permutation " << m["permutation"].dump() << " signs "
              << m["signs"].dump() << " correlations " << m["correlations"].dump() << "\n";
  }
}

/// Shared tail of separate/demo: run the pipeline, write artifacts, report.
int run_and_report(const RunConfig& config, const std::string& command,
                   const std::string& experiment, const SignalMatrix& x_run,
                   const std::optional<ImageShape>& shape, const MixingModel* mixing,
                   const SignalMatrix* sources, const NoiseOutcome& noise, ArtifactSink& sink,
                   json artifacts) {
  RunConfig effective = config;
  effective.pipeline.infomax.seed = rng::stage_seed(config.seed, "infomax.shuffle");

  const PipelineOutcome outcome =
      separate_signals(x_run, effective.pipeline, mixing, sources);

  json report = outcome_json(outcome);
  report["schema_version"] = 1;
  report["command"] = command;
  if (!experiment.empty()) report["experiment"] = experiment;
  report["config"] = config_json(effective, noise);
  if (mixing != nullptr) report["config"]["mixing_matrix"] = matrix_json(mixing->a());
  if (shape) report["image_shape"] = {{"width", shape->width}, {"height", shape->height}};

  const Matrix& y = outcome.separation.outputs.data();
  json separated = json::array();
  if (shape) {
    auto images = signals_to_images(outcome.separation.outputs, shape->width, shape->height, true);
    for (std::size_t i = 0; i < images.size(); ++i)
      separated.push_back(
          sink.write_image("separated_" + std::to_string(i) + ".pgm", images[i]).string());
  } else {
    separated.push_back(sink.write_matrix("Y.csv", y).string());
  }
  artifacts["separated"] = separated;
  artifacts["b_initial"] = sink.write_matrix("B_initial.csv", outcome.separation.b_initial.b()).string();
  artifacts["b_final"] = sink.write_matrix("B_final.csv", outcome.separation.b_final.b()).string();
  report["artifacts"] = artifacts;

  const fs::path report_path = sink.write_report("report.json", report);
  print_outcome(report);
  std::cout << "report: " << report_path.string() << "\n";
  sink.commit();
  return 0;
}

}  // namespace

NoiseSpec parse_noise_spec(const std::string& text) {
  NoiseSpec spec;
  if (text == "none") return spec;
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.push_back(text.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  const auto number = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw UsageError("bad number in --noise: '" + s + "'");
    }
  };
  if (parts[0] == "gaussian" && parts.size() == 2) {
    spec.kind = NoiseKind::Gaussian;
    spec.snr_db = number(parts[1]);
  } else if (parts[0] == "sp" && parts.size() == 2) {
    spec.kind = NoiseKind::SaltPepper;
    spec.density = number(parts[1]);
  } else if (parts[0] == "both" && parts.size() == 3) {
    spec.kind = NoiseKind::Both;
    spec.snr_db = number(parts[1]);
    spec.density = number(parts[2]);
  } else {
    throw UsageError("bad --noise '" + text +
                     "'; expected none, gaussian:<db>, sp:<density> or both:<db>:<density>");
  }
  if (spec.kind != NoiseKind::Gaussian && !(spec.density >= 0.0 && spec.density <= 1.0))
    throw UsageError("--noise density must lie in [0, 1]");
  return spec;
}

int cmd_mix(const RunConfig& config) {
  std::vector<ImagePlane> images;
  images.reserve(config.inputs.size());
  for (const auto& f : config.inputs) images.push_back(read_pgm(f));
  if (images.size() < 2) throw DataError("need at least 2 source images");
  const ImageShape shape{images[0].width(), images[0].height()};

  const SignalMatrix s = images_to_signals(images);
  const MixingModel mixing = load_or_default_mixing(config.mixing_file, s.channels());
  const SignalMatrix x = mix(s, mixing);

  ArtifactSink sink(config.out);
  auto mixture_images = signals_to_images(x, shape.width, shape.height, false);
  for (std::size_t i = 0; i < mixture_images.size(); ++i) {
    const auto p = sink.write_image("mixture_" + std::to_string(i) + ".pgm", mixture_images[i]);
    std::cout << "wrote " << p.string() << "\n";
  }
  const auto a_path = sink.write_matrix("A.csv", mixing.a());
  std::cout << "wrote " << a_path.string() << "\n";

  if (config.noise.kind != NoiseKind::None) {
    const NoiseOutcome noise = apply_noise(x, shape, config.noise, config.seed);
    const auto noisy_images =
        noise.corrupted_images
            ? *noise.corrupted_images
            : signals_to_images(noise.x, shape.width, shape.height, false);
    for (std::size_t i = 0; i < noisy_images.size(); ++i) {
      const auto p =
          sink.write_image("mixture_noisy_" + std::to_string(i) + ".pgm", noisy_images[i]);
      std::cout << "wrote " << p.string() << "\n";
    }
  }
  sink.commit();
  return 0;
}

int cmd_separate(const RunConfig& config) {
  LoadedSignals loaded = load_signals(config.inputs, config.pipeline.wavelet.depth);

  std::optional<MixingModel> mixing;
  if (config.mixing_file) mixing = MixingModel(read_csv_matrix(*config.mixing_file));

  std::optional<SignalMatrix> sources;
  if (!config.sources.empty()) {
    LoadedSignals truth = load_signals(config.sources, config.pipeline.wavelet.depth);
    if (truth.signals.channels() != loaded.signals.channels() ||
        truth.signals.samples() != loaded.signals.samples())
      throw DataError("sources do not match the mixture dimensions");
    sources = std::move(truth.signals);
  }

  NoiseOutcome noise = apply_noise(loaded.signals, loaded.shape, config.noise, config.seed);

  ArtifactSink sink(config.out);
  return run_and_report(config, "separate", "", noise.x, loaded.shape,
                        mixing ? &*mixing : nullptr, sources ? &*sources : nullptr, noise, sink,
                        json::object());
}

int cmd_demo(const RunConfig& config, const std::string& experiment) {
  NoiseSpec noise_spec;
  if (experiment == "noise-free") {
    noise_spec.kind = NoiseKind::None;
  } else if (experiment == "awgn15") {
    noise_spec.kind = NoiseKind::Gaussian;
    noise_spec.snr_db = 15.0;
  } else if (experiment == "gauss-8-sp40") {
    noise_spec.kind = NoiseKind::Both;
    noise_spec.snr_db = -8.0;
    noise_spec.density = 0.4;
  } else {
    throw UsageError("unknown experiment '" + experiment +
                     "'; expected noise-free, awgn15 or gauss-8-sp40");
  }

  constexpr int kDemoSize = 128;
  const auto sources =
      demo_sources(kDemoSize, kDemoSize, rng::stage_seed(config.seed, "demo.texture"));
  const ImageShape shape{kDemoSize, kDemoSize};
  const SignalMatrix s = images_to_signals(sources);
  const MixingModel mixing = load_or_default_mixing(config.mixing_file, s.channels());
  const SignalMatrix x = mix(s, mixing);

  RunConfig effective = config;
  effective.noise = noise_spec;
  const NoiseOutcome noise = apply_noise(x, shape, noise_spec, config.seed);

  ArtifactSink sink(config.out);
  json artifacts;
  json source_paths = json::array();
  for (std::size_t i = 0; i < sources.size(); ++i)
    source_paths.push_back(
        sink.write_image("source_" + std::to_string(i) + ".pgm", sources[i]).string());
  artifacts["sources"] = source_paths;

  json mixture_paths = json::array();
  const auto mixture_images = signals_to_images(x, shape.width, shape.height, false);
  for (std::size_t i = 0; i < mixture_images.size(); ++i)
    mixture_paths.push_back(
        sink.write_image("mixture_" + std::to_string(i) + ".pgm", mixture_images[i]).string());
  artifacts["mixtures"] = mixture_paths;

  if (noise_spec.kind != NoiseKind::None) {
    const auto noisy_images =
        noise.corrupted_images
            ? *noise.corrupted_images
            : signals_to_images(noise.x, shape.width, shape.height, false);
    json noisy_paths = json::array();
    for (std::size_t i = 0; i < noisy_images.size(); ++i)
      noisy_paths.push_back(
          sink.write_image("mixture_noisy_" + std::to_string(i) + ".pgm", noisy_images[i])
              .string());
    artifacts["noisy_mixtures"] = noisy_paths;
  }
  artifacts["mixing"] = sink.write_matrix("A.csv", mixing.a()).string();

  return run_and_report(effective, "demo", experiment, noise.x, shape, &mixing, &s, noise, sink,
                        std::move(artifacts));
}

int cmd_evaluate(const EvaluateConfig& config) {
  if (config.mixing_file.has_value() != config.separation_file.has_value())
    throw UsageError("--mixing and --separation must be given together");
  if (config.outputs.empty() || config.sources.empty())
    throw UsageError("evaluate needs --outputs and --sources");

  // No transform runs here, so no crop: depth 0 keeps everything.
  LoadedSignals y = load_signals(config.outputs, 0);
  LoadedSignals s = load_signals(config.sources, 0);
  if (y.signals.channels() != s.signals.channels() ||
      y.signals.samples() != s.signals.samples())
    throw DataError("outputs and sources differ in dimensions");

  const SourceMatch match = match_sources(y.signals, s.signals);

  json report;
  report["schema_version"] = 1;
  report["command"] = "evaluate";
  report["pi_variant"] = config.pi_variant == PiVariant::Amari ? "amari" : "paper";
  report["matching"] = match_json(match);

  if (config.mixing_file) {
    const MixingModel mixing(read_csv_matrix(*config.mixing_file));
    const SeparationMatrix separation(read_csv_matrix(*config.separation_file));
    const double pi =
        performance_index(global_matrix(separation, mixing), config.pi_variant);
    report["pi"] = pi;
    std::cout << "pi " << json(pi).dump() << "\n";
  }
  std::cout << "matching: permutation " << json(match.permutation).dump() << " signs "
            << json(match.signs).dump() << " correlations " << json(match.correlations).dump()
            << "\n";

  ArtifactSink sink(config.out);
  const fs::path p = sink.write_report("evaluation.json", report);
  std::cout << "report: " << p.string() << "\n";
  sink.commit();
  return 0;
}

}  // namespace wbss::cli
