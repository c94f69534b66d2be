#include <CLI11.hpp>

#include <iostream>

#include "wbss/cli.hpp"

namespace {

using wbss::cli::RunConfig;

struct CommonFlags {
  std::string wavelet = "db4";
  int depth = 2;
  double mu = 2e-5;
  int epochs = 200;
  double conv_tol = 1e-6;
  std::string mode = "stochastic";
  std::string stage2 = "wavelet";
  std::string noise = "none";
  std::string pi = "amari";
  std::uint64_t seed = 42;
  std::string out = ".";
  std::string mixing;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f, bool with_pipeline) {
  cmd->add_option("--seed", f.seed, "master seed; every stochastic stage derives from it");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--mixing", f.mixing, "mixing matrix CSV (default [[1,0.4],[0.4,1]])");
  cmd->add_option("--noise", f.noise,
                  "none | gaussian:<db> | sp:<density> | both:<db>:<density>");
  if (!with_pipeline) return;
  cmd->add_option("--wavelet", f.wavelet, "wavelet family: haar | db4")
      ->check(CLI::IsMember({"haar", "db4"}));
  cmd->add_option("--depth", f.depth, "wavelet packet depth L >= 1");
  cmd->add_option("--mu", f.mu, "natural-gradient learning rate");
  cmd->add_option("--epochs", f.epochs, "maximum refinement epochs");
  cmd->add_option("--conv-tol", f.conv_tol, "relative Frobenius change stopping tolerance");
  cmd->add_option("--mode", f.mode, "refinement mode: stochastic | batch")
      ->check(CLI::IsMember({"stochastic", "batch"}));
  cmd->add_option("--stage2", f.stage2, "refinement data: wavelet | space")
      ->check(CLI::IsMember({"wavelet", "space"}));
  cmd->add_option("--pi", f.pi, "performance index variant: paper | amari")
      ->check(CLI::IsMember({"paper", "amari"}));
}

RunConfig to_config(const CommonFlags& f) {
  RunConfig config;
  config.pipeline.wavelet.family =
      f.wavelet == "haar" ? wbss::WaveletFamily::Haar : wbss::WaveletFamily::Daubechies4;
  config.pipeline.wavelet.depth = f.depth;
  config.pipeline.infomax.mu = f.mu;
  config.pipeline.infomax.max_epochs = f.epochs;
  config.pipeline.infomax.conv_tol = f.conv_tol;
  config.pipeline.infomax.mode =
      f.mode == "batch" ? wbss::InfomaxMode::Batch : wbss::InfomaxMode::Stochastic;
  config.pipeline.stage2 =
      f.stage2 == "space" ? wbss::Stage2Domain::Space : wbss::Stage2Domain::Wavelet;
  config.pipeline.pi_variant =
      f.pi == "paper" ? wbss::PiVariant::Paper : wbss::PiVariant::Amari;
  config.noise = wbss::cli::parse_noise_spec(f.noise);
  config.seed = f.seed;
  config.out = f.out;
  if (!f.mixing.empty()) config.mixing_file = f.mixing;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"wbss: blind separation of linear image mixtures"};
  app.require_subcommand(1);

  CommonFlags mix_flags, sep_flags, demo_flags;
  std::vector<std::string> mix_images, sep_inputs, sep_sources;

  CLI::App* mix = app.add_subcommand("mix", "mix source images by a mixing matrix");
  mix->add_option("--images", mix_images, "source images (PGM)")->required()->expected(-2);
  add_common_flags(mix, mix_flags, false);

  CLI::App* sep = app.add_subcommand("separate", "recover sources from mixture files");
  sep->add_option("--inputs", sep_inputs, "mixture images (PGM) or one CSV matrix")
      ->required()
      ->expected(-1);
  sep->add_option("--sources", sep_sources, "ground-truth sources for evaluation");
  add_common_flags(sep, sep_flags, true);

  CLI::App* demo = app.add_subcommand("demo", "run a bundled experiment end to end");
  std::string experiment;
  demo->add_option("--experiment", experiment, "noise-free | awgn15 | gauss-8-sp40")->required();
  add_common_flags(demo, demo_flags, true);

  CLI::App* eval = app.add_subcommand("evaluate", "score recovered outputs post hoc");
  std::vector<std::string> eval_outputs, eval_sources;
  std::string eval_mixing, eval_separation, eval_pi = "amari", eval_out = ".";
  eval->add_option("--outputs", eval_outputs, "recovered images or one CSV matrix")->required();
  eval->add_option("--sources", eval_sources, "reference images or one CSV matrix")->required();
  eval->add_option("--mixing", eval_mixing, "true mixing matrix CSV");
  eval->add_option("--separation", eval_separation, "separation matrix CSV");
  eval->add_option("--pi", eval_pi, "performance index variant: paper | amari")
      ->check(CLI::IsMember({"paper", "amari"}));
  eval->add_option("--out", eval_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (mix->parsed()) {
      RunConfig config = to_config(mix_flags);
      config.inputs.assign(mix_images.begin(), mix_images.end());
      return wbss::cli::cmd_mix(config);
    }
    if (sep->parsed()) {
      RunConfig config = to_config(sep_flags);
      config.inputs.assign(sep_inputs.begin(), sep_inputs.end());
      config.sources.assign(sep_sources.begin(), sep_sources.end());
      return wbss::cli::cmd_separate(config);
    }
    if (demo->parsed()) {
      RunConfig config = to_config(demo_flags);
      return wbss::cli::cmd_demo(config, experiment);
    }
    wbss::cli::EvaluateConfig config;
    config.outputs.assign(eval_outputs.begin(), eval_outputs.end());
    config.sources.assign(eval_sources.begin(), eval_sources.end());
    if (!eval_mixing.empty()) config.mixing_file = eval_mixing;
    if (!eval_separation.empty()) config.separation_file = eval_separation;
    config.pi_variant = eval_pi == "paper" ? wbss::PiVariant::Paper : wbss::PiVariant::Amari;
    config.out = eval_out;
    return wbss::cli::cmd_evaluate(config);
  } catch (const wbss::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const wbss::NumericalError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const wbss::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
