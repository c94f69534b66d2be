#include "wbss/pipeline.hpp"

#include <chrono>

namespace wbss {

namespace {

class StageTimer {
 public:
  explicit StageTimer(std::map<std::string, double>& sink) : sink_(sink) {}

  template <typename F>
  auto run(const std::string& stage, F&& f) {
    const auto start = std::chrono::steady_clock::now();
    auto result = f();
    const auto stop = std::chrono::steady_clock::now();
    sink_[stage] = std::chrono::duration<double, std::milli>(stop - start).count();
    return result;
  }

 private:
  std::map<std::string, double>& sink_;
};

}  // namespace

PipelineOutcome separate_signals(const SignalMatrix& x, const PipelineOptions& options,
                                 const MixingModel* true_mixing,
                                 const SignalMatrix* true_sources) {
  std::map<std::string, double> wall;
  StageTimer timer(wall);
  const auto total_start = std::chrono::steady_clock::now();

  const Index k = options.k > 0 ? options.k : x.channels();

  auto [z, whitening] = timer.run("whitening", [&] { return whiten(x, k); });
  const double whiteness_residual =
      (covariance(z) - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();

  const SignalMatrix x0(x.data().colwise() - whitening.mean);

  auto d_white =
      timer.run("wavelet", [&] { return wavelet_packet_forward(z, options.wavelet); });

  JadResult jad = timer.run("jad", [&] {
    const CovarianceSet covs = subband_covariances(d_white, options.jad_skip_first_band);
    return joint_diagonalize(covs);
  });

  SeparationMatrix b_initial = initial_separation(jad.q, whitening.w);

  auto [b_final, trace] = timer.run("infomax", [&] {
    if (options.stage2 == Stage2Domain::Wavelet)
      return run_infomax(b_initial, wavelet_packet_forward(x0, options.wavelet),
                         options.infomax);
    return run_infomax(b_initial, x0.data(), options.infomax);
  });

  SignalMatrix outputs(b_final.b() * x0.data());

  std::optional<double> pi_initial;
  std::optional<double> pi_final;
  std::optional<SourceMatch> matching;
  if (true_mixing != nullptr) {
    pi_initial = performance_index(global_matrix(b_initial, *true_mixing), options.pi_variant);
    pi_final = performance_index(global_matrix(b_final, *true_mixing), options.pi_variant);
  }
  if (true_sources != nullptr) matching = match_sources(outputs, *true_sources);

  wall["total"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                            total_start)
                      .count();

  return PipelineOutcome{
      SeparationResult{std::move(b_initial), std::move(b_final), std::move(outputs), pi_initial,
                       pi_final, std::move(matching)},
      std::move(whitening), whiteness_residual, std::move(jad), std::move(trace),
      std::move(wall)};
}

}  // namespace wbss
