#pragma once

// Dataset construction from the frozen generator, the reconstruct/disentangle
// schedule, the three-step optimizer loop and checkpoints.
//
// One iteration is three sequential Adam steps with independent states:
//   1. D_W on loss_adv_d,
//   2. mapper + attribute encoder on the non-adversarial total (lr_nonadv),
//   3. mapper + attribute encoder on loss_adv_g (lr_g_adv), re-evaluated at
//      the parameters left by step 2.
// All randomness of an iteration is derived from (seed, iteration), so a
// checkpoint needs no RNG state to resume exactly.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "latent_bridge/disentangle.hpp"
#include "latent_bridge/generator.hpp"
#include "latent_bridge/nn.hpp"
#include "latent_bridge/perception.hpp"

namespace lb::training {

struct TrainingConfig {
  std::uint64_t seed = 1;
  std::uint64_t mixing_seed = 7;
  std::size_t n_dataset = 20000;
  int batch = 6;
  double lr_nonadv = 5e-5;
  double lr_g_adv = 5e-6;
  double lr_d = 2e-5;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double gamma = 10.0;
  double alpha = 0.84;
  double lambda_id = 1.0;
  double lambda_lnd = 1.0;
  double lambda_rec = 0.001;
  double lambda4 = 0.02;
  bool use_lambda4_on_adv_g = false;
  bool disable_w_discriminator = false;
  bool disable_landmark_loss = false;
  int schedule_period = 3;
  std::size_t total_iters = 30000;
  std::size_t eval_interval = 0;        // 0 disables periodic snapshots
  std::size_t checkpoint_interval = 0;  // 0 saves only at the end
  int mapper_hidden = 128;
  std::string identity_net = "artifacts/identity.lbn";
  std::string keypoint_net = "artifacts/keypoints.lbn";
  std::string eval_net = "artifacts/eval-embedder.lbn";
  std::string pose_net = "artifacts/pose.lbn";
  std::string output_dir = "runs/default";

  /// Throws ConfigError on out-of-range values.
  void validate() const;
  /// One "key=value" line per field, in declaration order.
  std::string to_text() const;
  /// Parses to_text() output; unknown keys, duplicates and malformed values are ConfigErrors.
  /// Missing keys keep their defaults.
  static TrainingConfig from_text(const std::string& text);
  static TrainingConfig load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;
  std::uint64_t hash() const;

  disentangle::LossWeights loss_weights() const {
    return {lambda_id, lambda_lnd, lambda_rec, alpha};
  }
};

/// Replaces config.seed with LB_SEED when that variable is set; a malformed
/// value is a ConfigError.
void apply_seed_override(TrainingConfig& config);

/// Training pairs come from real_w; images are rendered through the backend on
/// access, which reproduces generate(real_w[i]) exactly without holding all
/// images in memory.
class DatasetBundle {
 public:
  DatasetBundle(const generator::GeneratorBackend& backend, std::vector<generator::StyleLatent> real_w,
                std::uint64_t seed);

  std::size_t size() const { return real_w_.size(); }
  std::uint64_t seed() const { return seed_; }
  const std::vector<generator::StyleLatent>& real_w() const { return real_w_; }
  toyfaces::Image image(std::size_t i) const;
  std::uint64_t hash() const;

 private:
  const generator::GeneratorBackend* backend_;
  std::vector<generator::StyleLatent> real_w_;
  std::uint64_t seed_;
};

/// Throws InvalidInput for n == 0.
DatasetBundle build_dataset(const generator::GeneratorBackend& backend, std::size_t n, std::uint64_t seed);

enum class Mode { reconstruct, disentangle };

/// disentangle iff iteration % period == period - 1. Throws InvalidInput for period 0.
Mode next_mode(std::uint64_t iteration, int period);

/// Frozen collaborators of a training run.
struct FrozenSet {
  const generator::GeneratorBackend* generator = nullptr;
  const perception::IdentityEmbedder* identity = nullptr;
  const perception::KeypointRegressor* keypoints = nullptr;
};

struct ModelState {
  disentangle::AttrEncoder attr;
  disentangle::Mapper mapper;
  disentangle::WDiscriminator disc;
  // Generator side keeps one Adam per parameter group for each of the two steps.
  nn::Adam d_opt;
  nn::Adam nonadv_mapper_opt, nonadv_attr_opt;
  nn::Adam adv_mapper_opt, adv_attr_opt;
  std::uint64_t iteration = 0;

  static ModelState initialize(const TrainingConfig& config);
};

struct StepBatch {
  std::vector<toyfaces::Image> id_images;
  std::vector<toyfaces::Image> attr_images;
  Tensor real_w;  // [N, 11]
  Mode mode = Mode::reconstruct;
};

/// Draws the batch of an iteration. Depends only on (config.seed, iteration).
StepBatch sample_batch(const TrainingConfig& config, const DatasetBundle& data, std::uint64_t iteration);

/// Non-adversarial objective on a batch of outputs and its gradient w.r.t. them.
struct ImageObjective {
  double id = 0.0, lnd = 0.0, rec = 0.0, total = 0.0;
  Tensor grad;
};
ImageObjective nonadv_objective(const FrozenSet& frozen, const Tensor& id_embeddings, const Tensor& attr_keypoints,
                                const Tensor& attr_images, const Tensor& out_images, Mode mode,
                                const TrainingConfig& config);

struct StepStats {
  Mode mode = Mode::reconstruct;
  double loss_d = 0.0;
  double loss_id = 0.0;
  double loss_lnd = 0.0;
  double loss_rec = 0.0;
  double loss_nonadv = 0.0;
  double loss_adv_g = 0.0;
};

/// Frozen-network responses shared by the three steps of an iteration.
struct StepInputs {
  Mode mode = Mode::reconstruct;
  Tensor id_images, attr_images;
  Tensor id_embeddings;   // E_id(I_id), constant targets
  Tensor attr_keypoints;  // E_lnd(I_attr), empty when the landmark loss is off
  Tensor real_w;
};

StepInputs prepare_step(const StepBatch& batch, const FrozenSet& frozen, const TrainingConfig& config);

/// Step 1: Adam on loss_adv_d, touching only D_W. Returns the loss.
double discriminator_step(ModelState& state, const StepInputs& in, const TrainingConfig& config);
/// Step 2: Adam on the non-adversarial total, touching only the mapper and attribute encoder.
void nonadv_step(ModelState& state, const StepInputs& in, const FrozenSet& frozen, const TrainingConfig& config,
                 StepStats& stats);
/// Step 3: Adam on loss_adv_g at the current parameters, touching only the mapper and attribute encoder.
double adversarial_step(ModelState& state, const StepInputs& in, const TrainingConfig& config);

/// Runs the enabled steps in order and advances state.iteration. Throws
/// TrainingDiverged (with the losses seen so far) on a non-finite loss.
StepStats train_step(ModelState& state, const StepBatch& batch, const FrozenSet& frozen,
                     const TrainingConfig& config);

/// Output images for (id, attr) pairs under the current parameters.
std::vector<toyfaces::Image> infer(const ModelState& state, const FrozenSet& frozen,
                                   const std::vector<toyfaces::Image>& id_images,
                                   const std::vector<toyfaces::Image>& attr_images);
generator::StyleLatent infer_w(const ModelState& state, const perception::IdentityEmbedder& e_id,
                               const toyfaces::Image& id_image, const toyfaces::Image& attr_image);

struct Checkpoint {
  TrainingConfig config;
  ModelState state;
  std::uint64_t mixing_seed = 0;
  std::uint64_t identity_hash = 0;
  std::uint64_t keypoint_hash = 0;
};

/// Binary layout (little endian):
///   "LBCK" | u32 version | u64 mixing_seed | u32 z_dim | u32 w_dim | u32 attr_dim
///   | str config text | u64 identity hash | u64 keypoint hash | u64 iteration
///   | for each of attr, mapper, disc: str architecture, f64[] params
///   | for each of the five Adam states: u64 steps, f64[] m, f64[] v
/// where f64[] is a u64 count followed by the values and str is a u64 length
/// followed by the bytes.
void save_checkpoint(const Checkpoint& c, const std::filesystem::path& path);
/// Throws FormatError on bad magic, version or dimensions.
Checkpoint load_checkpoint(const std::filesystem::path& path);

struct TrainHooks {
  /// Called every config.eval_interval iterations (when non-zero).
  std::function<void(const ModelState&, std::uint64_t iteration)> on_eval;
  /// Called after every step.
  std::function<void(const StepStats&, std::uint64_t iteration)> on_step;
};

/// Runs (or resumes, when `resume` holds a checkpoint) up to config.total_iters
/// and returns the final checkpoint. Saves to <output_dir>/checkpoint.lbc at
/// every checkpoint_interval and at the end when save is set.
Checkpoint train(const TrainingConfig& config, const FrozenSet& frozen, std::optional<Checkpoint> resume = {},
                 const TrainHooks& hooks = {}, bool save = true);

}  // namespace lb::training
