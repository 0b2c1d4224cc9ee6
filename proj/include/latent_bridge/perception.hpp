#pragma once

// Frozen auxiliary networks: identity embedder, keypoint regressor, the
// independent evaluation embedder and the pose regressor used by the pose
// metric. Each is a small CNN followed by a fixed per-output affine map and
// is immutable once pre-training has accepted it.

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "latent_bridge/nn.hpp"
#include "latent_bridge/toyfaces.hpp"

namespace lb::perception {

inline constexpr int kEmbeddingDim = 32;

enum class NetKind { identity, keypoints, eval_embedder, pose };

std::string to_string(NetKind kind);
NetKind net_kind_from_string(const std::string& s);

struct NetworkManifest {
  NetKind kind = NetKind::identity;
  std::uint64_t seed = 0;
  std::uint64_t architecture_hash = 0;
  std::uint64_t param_hash = 0;
  std::string metric_name;
  double metric = 0.0;
};

/// Packs images into an NCHW tensor.
Tensor to_batch(std::span<const toyfaces::Image* const> images);
Tensor to_batch(std::span<const toyfaces::Image> images);

/// Image -> vector CNN with a fixed output affine (out = offset + scale * raw).
class FrozenNet {
 public:
  FrozenNet() = default;
  FrozenNet(NetKind kind, nn::Sequential net, std::vector<double> out_scale,
            std::vector<double> out_offset, std::uint64_t seed, std::string metric_name,
            double metric);

  NetKind kind() const { return manifest_.kind; }
  int output_dim() const { return static_cast<int>(out_scale_.size()); }
  const nn::Sequential& network() const { return net_; }
  const NetworkManifest& manifest() const { return manifest_; }
  /// Digest of parameters and output affine.
  std::uint64_t param_hash() const;

  /// [N,3,H,W] -> [N,D].
  Tensor apply(const Tensor& images) const;
  std::vector<double> apply(const toyfaces::Image& image) const;

  /// Forward pass that keeps activations for input_gradient().
  nn::Activations forward(const Tensor& images) const;
  Tensor output_of(const nn::Activations& acts) const;
  /// d loss / d images given d loss / d outputs. Never touches parameters.
  Tensor input_gradient(const nn::Activations& acts, const Tensor& grad_out) const;

  void save(const std::filesystem::path& path) const;
  static FrozenNet load(const std::filesystem::path& path);

 private:
  nn::Sequential net_;
  std::vector<double> out_scale_, out_offset_;
  NetworkManifest manifest_;
};

/// E_id: 32-d unnormalized embedding (penultimate layer of an identity-factor regressor).
class IdentityEmbedder {
 public:
  IdentityEmbedder() = default;
  explicit IdentityEmbedder(FrozenNet net);
  std::vector<double> embed(const toyfaces::Image& image) const { return net_.apply(image); }
  Tensor embed(const Tensor& images) const { return net_.apply(images); }
  const FrozenNet& net() const { return net_; }

 private:
  FrozenNet net_;
};

/// Architecturally independent embedder for evaluation and FID features.
class EvalEmbedder {
 public:
  EvalEmbedder() = default;
  explicit EvalEmbedder(FrozenNet net);
  std::vector<double> embed(const toyfaces::Image& image) const { return net_.apply(image); }
  Tensor embed(const Tensor& images) const { return net_.apply(images); }
  /// FID features: activations of the layer feeding the embedding. The
  /// embedding itself only varies with identity, which would make FID blind
  /// to everything else in the image.
  Tensor features(const Tensor& images) const { return features_.infer(images); }
  int feature_dim() const { return static_cast<int>(features_.output_shape()[0]); }
  const FrozenNet& net() const { return net_; }

 private:
  FrozenNet net_;
  nn::Sequential features_;
};

/// E_lnd: 8 keypoints in pixel coordinates, differentiable w.r.t. the image.
class KeypointRegressor {
 public:
  KeypointRegressor() = default;
  explicit KeypointRegressor(FrozenNet net);
  toyfaces::Keypoints predict(const toyfaces::Image& image) const;
  Tensor predict(const Tensor& images) const { return net_.apply(images); }
  const FrozenNet& net() const { return net_; }

 private:
  FrozenNet net_;
};

/// (pose_theta [deg], pose_tx [px], pose_ty [px]) estimates for the pose metric.
class PoseRegressor {
 public:
  PoseRegressor() = default;
  explicit PoseRegressor(FrozenNet net);
  std::array<double, 3> predict(const toyfaces::Image& image) const;
  Tensor predict(const Tensor& images) const { return net_.apply(images); }
  const FrozenNet& net() const { return net_; }

 private:
  FrozenNet net_;
};

/// Rendered training corpus for pre-training. Images are kept in single
/// precision to bound memory; they are widened on access.
class PretrainCorpus {
 public:
  static PretrainCorpus build(std::uint64_t seed, std::size_t n,
                              double sharpness = toyfaces::kDefaultSharpness,
                              int size = toyfaces::kDefaultSize);
  PretrainCorpus(std::vector<toyfaces::FactorVector> factors, double sharpness, int size);

  std::size_t size() const { return factors_.size(); }
  int image_size() const { return image_size_; }
  const toyfaces::FactorVector& factors(std::size_t i) const { return factors_[i]; }
  toyfaces::Image image(std::size_t i) const;
  /// Writes images[indices] into an NCHW batch.
  Tensor batch(std::span<const std::size_t> indices) const;

 private:
  std::vector<toyfaces::FactorVector> factors_;
  std::vector<float> pixels_;
  int image_size_;
};

struct PretrainConfig {
  std::uint64_t seed = 1;
  std::size_t holdout = 500;   // last samples of the corpus, never trained on
  int epochs = 12;
  int batch = 32;
  double lr = 1e-3;
  double final_lr_fraction = 0.05;
  double threshold = 0.0;      // 0 selects the kind's default acceptance threshold
  bool verbose = false;
};

/// Acceptance threshold per kind: identity/eval RMSE (normalized units) 0.05,
/// keypoints mean error 1.0 px, pose RMSE 1.5 (degree-equivalent units).
double default_threshold(NetKind kind);

inline constexpr std::size_t kMinCorpus = 2000;

/// Trains and validates a frozen network. Throws InsufficientSamples for a
/// corpus below kMinCorpus and PretrainingFailed when the held-out metric
/// misses the threshold.
FrozenNet pretrain(NetKind kind, const PretrainCorpus& corpus, const PretrainConfig& config);

IdentityEmbedder pretrain_identity_embedder(const PretrainCorpus& corpus, const PretrainConfig& config);
EvalEmbedder pretrain_eval_embedder(const PretrainCorpus& corpus, const PretrainConfig& config);
KeypointRegressor pretrain_keypoint_regressor(const PretrainCorpus& corpus, const PretrainConfig& config);
PoseRegressor pretrain_pose_regressor(const PretrainCorpus& corpus, const PretrainConfig& config);

/// Untrained network of the given kind (architecture + initialization only).
nn::Sequential make_architecture(NetKind kind, std::uint64_t seed);

/// Held-out metric in the units of default_threshold().
double holdout_metric(NetKind kind, const FrozenNet& net, const PretrainCorpus& corpus,
                      std::size_t first, std::size_t count);

}  // namespace lb::perception
