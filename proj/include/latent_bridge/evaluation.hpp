#pragma once

// Quantitative protocol: identity / expression / pose metrics, FID over
// evaluation-embedder features, the W-space PCA study, interpolation in W
// and Z, and identity coherence along an attribute trajectory.

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "latent_bridge/generator.hpp"
#include "latent_bridge/perception.hpp"
#include "latent_bridge/tensor.hpp"
#include "latent_bridge/training.hpp"

namespace lb::evaluation {

using generator::StyleLatent;
using toyfaces::Image;

/// Networks that score outputs. None of them is seen by training.
struct EvalNets {
  const perception::EvalEmbedder* eval = nullptr;
  const perception::KeypointRegressor* keypoints = nullptr;
  const perception::PoseRegressor* pose = nullptr;
};

double cosine(std::span<const double> a, std::span<const double> b);

/// Cosine of evaluation-embedder embeddings.
double metric_identity(const perception::EvalEmbedder& net, const Image& id_image, const Image& out);
/// Mean keypoint distance divided by the image side.
double metric_expression(const perception::KeypointRegressor& net, const Image& attr_image, const Image& out);
/// Euclidean distance over (theta [deg], tx, ty) with translations scaled by 30/8.
double metric_pose(const perception::PoseRegressor& net, const Image& attr_image, const Image& out);

inline constexpr double kPoseTranslationScale = 30.0 / 8.0;

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

/// Population mean and standard deviation; an empty span gives {0, 0}.
MeanStd mean_std(std::span<const double> values);

/// Frechet distance between N(mu_a, cov_a) and N(mu_b, cov_b). Covariances
/// are d x d row-major.
double frechet_gaussian(std::span<const double> mu_a, std::span<const double> cov_a,
                        std::span<const double> mu_b, std::span<const double> cov_b);

/// FID between two feature sets given as [N, D] tensors. Each set needs at
/// least 2*D samples (InsufficientSamples otherwise).
double compute_fid(const Tensor& features_a, const Tensor& features_b);

struct MetricsReport {
  double fid = 0.0;
  MeanStd identity, expression, pose;
  /// Self-reconstruction (identity image == attribute image).
  MeanStd recon_ms_ssim, recon_l1;
  std::size_t n_pairs = 0;
  std::uint64_t config_hash = 0;

  std::string to_text() const;
};

/// Held-out evaluation inputs drawn from the generator's real W distribution.
struct PairSet {
  std::vector<StyleLatent> w_id, w_attr;
  std::vector<Image> id, attr;
};

PairSet sample_pairs(const generator::GeneratorBackend& backend, std::size_t n, std::uint64_t seed);
/// Fresh real images for the FID reference set.
std::vector<Image> sample_real(const generator::GeneratorBackend& backend, std::size_t n, std::uint64_t seed);

/// Scores swapped outputs (swapped[i] from id[i], attr[i]) and
/// reconstructions (reconstructed[i] from attr[i], attr[i]).
MetricsReport score(const EvalNets& nets, const PairSet& pairs, const std::vector<Image>& swapped,
                    const std::vector<Image>& reconstructed, const std::vector<Image>& real,
                    std::uint64_t config_hash);

/// Full protocol for a trained model.
MetricsReport evaluate(const training::ModelState& state, const training::FrozenSet& frozen,
                       const EvalNets& nets, std::size_t n_pairs, std::uint64_t seed,
                       std::uint64_t config_hash);

/// Same protocol with outputs produced from ground-truth factors
/// (identity block of the id input, attribute block of the attribute input).
/// This is the best any mapper can do and calibrates the thresholds.
MetricsReport evaluate_oracle(const generator::OracleGenerator& oracle, const EvalNets& nets,
                              std::size_t n_pairs, std::uint64_t seed);

inline constexpr std::size_t kPcaMinSamples = 10000;

struct PcaSummary {
  /// Projections of generator-W, ours-W and baseline-W.
  std::array<std::vector<std::array<double, 2>>, 3> points;
  std::array<double, 2> explained{};
  /// 2D Frechet distances: ours to generator, baseline to generator, ours to baseline.
  double ours_to_generator = 0.0, baseline_to_generator = 0.0, ours_to_baseline = 0.0;

  std::string summary_line() const;
  /// One "space x y" line per point.
  void write_points(const std::filesystem::path& path) const;
};

/// PCA (2 components) fitted on the union of the three sets.
PcaSummary pca_w_analysis(std::span<const StyleLatent> generator_w, std::span<const StyleLatent> ours_w,
                          std::span<const StyleLatent> baseline_w, std::size_t min_samples = kPcaMinSamples);

/// Predicted W for n random held-out (identity, attribute) pairs.
std::vector<StyleLatent> predicted_w(const training::ModelState& state, const training::FrozenSet& frozen,
                                     std::size_t n, std::uint64_t seed);

struct Endpoint {
  Image id, attr;
};

/// Linear path in W between the mapped endpoints; steps >= 2 frames, the
/// first and last being the endpoints' direct generations.
std::vector<Image> interpolate_w(const training::ModelState& state, const training::FrozenSet& frozen,
                                 const Endpoint& a, const Endpoint& b, int steps);

using toyfaces::Block;

/// Holds `fixed` at a's code and moves the other block of z from a to b.
std::vector<Image> interpolate_z(const training::ModelState& state, const training::FrozenSet& frozen,
                                 Block fixed, const Endpoint& a, const Endpoint& b, int steps);

/// Direct generation for one pair; the reference the interpolations must hit.
Image generate_pair(const training::ModelState& state, const training::FrozenSet& frozen, const Image& id,
                    const Image& attr);

struct Coherence {
  std::vector<Image> frames;
  std::vector<double> identity;    // metric_identity(identity image, frame)
  std::vector<double> expression;  // metric_expression(trajectory frame, frame)
  MeanStd identity_stats;
};

/// Generates each trajectory frame independently with a fixed identity.
Coherence sequence_coherence(const training::ModelState& state, const training::FrozenSet& frozen,
                             const EvalNets& nets, const Image& identity_image,
                             const std::vector<Image>& trajectory);

/// Trajectory of `frames` renders sweeping pose_theta across its range, with
/// every other factor taken from `base`.
std::vector<toyfaces::FactorVector> pose_sweep(const toyfaces::FactorVector& base, int frames);

}  // namespace lb::evaluation
