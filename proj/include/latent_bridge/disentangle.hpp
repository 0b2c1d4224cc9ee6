#pragma once

// Trainable part of the model: the attribute encoder E_attr, the mapper M
// from z = [E_id(I_id), E_attr(I_attr)] into W, the W-space discriminator
// D_W, and the training losses.
//
// Batched losses return the batch mean and, on request, the gradient of
// that mean with respect to their differentiable input. Frozen networks are
// only ever asked for input gradients.

#include <cstdint>
#include <span>
#include <vector>

#include "latent_bridge/generator.hpp"
#include "latent_bridge/nn.hpp"
#include "latent_bridge/perception.hpp"
#include "latent_bridge/toyfaces.hpp"

namespace lb::disentangle {

inline constexpr int kAttrDim = 16;
inline constexpr int kZDim = perception::kEmbeddingDim + kAttrDim;
inline constexpr double kDefaultGamma = 10.0;
inline constexpr double kDefaultAlpha = 0.84;

class AttrEncoder {
 public:
  AttrEncoder() = default;
  explicit AttrEncoder(std::uint64_t seed, int image_size = toyfaces::kDefaultSize);

  std::vector<double> encode(const toyfaces::Image& image) const;
  Tensor encode(const Tensor& images) const { return net_.infer(images); }
  int image_size() const { return static_cast<int>(net_.input_shape()[1]); }

  nn::Sequential& network() { return net_; }
  const nn::Sequential& network() const { return net_; }

 private:
  nn::Sequential net_;
};

struct LatentZ {
  std::vector<double> values;  // kZDim entries: identity embedding, then attribute code

  std::span<const double> identity() const { return {values.data(), perception::kEmbeddingDim}; }
  std::span<const double> attribute() const {
    return {values.data() + perception::kEmbeddingDim, kAttrDim};
  }
};

/// Throws InvalidInput when the images differ in size or do not match the encoder.
LatentZ encode(const perception::IdentityEmbedder& e_id, const AttrEncoder& e_attr,
               const toyfaces::Image& id_image, const toyfaces::Image& attr_image);

/// Row-wise concatenation of [N,32] identity embeddings and [N,16] codes.
Tensor concat_z(const Tensor& identity, const Tensor& attribute);

/// Four fully connected layers 48 -> h -> h -> h -> 11 with leaky ReLU between.
class Mapper {
 public:
  Mapper() = default;
  explicit Mapper(std::uint64_t seed, int hidden = 128);

  generator::StyleLatent map_to_w(const LatentZ& z) const;
  Tensor map(const Tensor& z) const { return net_.infer(z); }

  nn::Sequential& network() { return net_; }
  const nn::Sequential& network() const { return net_; }

 private:
  nn::Sequential net_;
};

/// MLP on W producing a raw logit. An empty hidden list gives a linear map.
class WDiscriminator {
 public:
  WDiscriminator() = default;
  explicit WDiscriminator(std::uint64_t seed, std::vector<int> hidden = {128, 128}, double slope = 0.2);

  double logit(const generator::StyleLatent& w) const;
  Tensor logits(const Tensor& w) const { return net_.infer(w); }

  nn::Sequential& network() { return net_; }
  const nn::Sequential& network() const { return net_; }

 private:
  nn::Sequential net_;
};

/// Packs W vectors into an [N,11] tensor.
Tensor to_tensor(std::span<const generator::StyleLatent> ws);

// ---- adversarial losses ---------------------------------------------------

/// softplus(-D(real)) + softplus(D(fake)) averaged per batch, plus
/// (gamma/2) * mean ||grad_w D(real)||^2. Gradients with respect to the
/// discriminator parameters are accumulated into param_grad when it is not
/// empty. fake_w is a constant here. Throws InvalidInput for empty batches.
double loss_adv_d(const WDiscriminator& d, const Tensor& real_w, const Tensor& fake_w, double gamma,
                  std::span<double> param_grad = {});

/// mean softplus(-D(fake)). Writes d loss / d fake_w into grad_fake when given;
/// the discriminator parameters never receive a gradient.
double loss_adv_g(const WDiscriminator& d, const Tensor& fake_w, Tensor* grad_fake = nullptr);

// ---- image losses, batched --------------------------------------------------

/// mean_n ||target_n - E_id(out_n)||_1 with target embeddings held constant.
double loss_id(const perception::IdentityEmbedder& e_id, const Tensor& target_embeddings,
               const Tensor& out_images, Tensor* grad_out = nullptr);

/// mean_n ||target_n - E_lnd(out_n)||_2 over the 16 keypoint coordinates.
/// The gradient is zero where the two keypoint sets coincide.
double loss_lnd(const perception::KeypointRegressor& e_lnd, const Tensor& target_keypoints,
                const Tensor& out_images, Tensor* grad_out = nullptr);

/// mean_n [alpha (1 - MS-SSIM) + (1 - alpha) mean |attr - out|].
double loss_mix(const Tensor& attr_images, const Tensor& out_images, double alpha,
                Tensor* grad_out = nullptr);

// ---- image losses, single pair ----------------------------------------------

double loss_id(const perception::IdentityEmbedder& e_id, const toyfaces::Image& id_image,
               const toyfaces::Image& out_image);
double loss_lnd(const perception::KeypointRegressor& e_lnd, const toyfaces::Image& attr_image,
                const toyfaces::Image& out_image);
double loss_mix(const toyfaces::Image& attr_image, const toyfaces::Image& out_image,
                double alpha = kDefaultAlpha);
/// loss_mix when same_flag is set, otherwise exactly zero.
double loss_rec(const toyfaces::Image& id_image, const toyfaces::Image& attr_image,
                const toyfaces::Image& out_image, bool same_flag, double alpha = kDefaultAlpha);

struct LossWeights {
  double lambda_id = 1.0;
  double lambda_lnd = 1.0;
  double lambda_rec = 0.001;
  double alpha = kDefaultAlpha;
};

/// lambda_id L_id + lambda_lnd L_lnd + lambda_rec L_rec.
double loss_nonadv_total(const perception::IdentityEmbedder& e_id, const perception::KeypointRegressor& e_lnd,
                         const toyfaces::Image& id_image, const toyfaces::Image& attr_image,
                         const toyfaces::Image& out_image, bool same_flag,
                         const LossWeights& weights = {});

}  // namespace lb::disentangle
