#pragma once

// The frozen generator G and its latent space W.
//
// The oracle backend defines W as an orthogonal mixing of the normalized
// factor vector: w = A * psi(f). Generation inverts the mixing, softly clamps
// the factors to the prior box and renders. unmix() (hard clamp) exists for
// evaluation only; training code talks to the GeneratorBackend interface,
// which does not expose it.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "latent_bridge/toyfaces.hpp"

namespace lb::generator {

inline constexpr int kLatentDim = toyfaces::kFactorCount;

using StyleLatent = std::array<double, kLatentDim>;

/// A generated image plus what is needed to backpropagate into w.
struct Generated {
  toyfaces::RenderJacobian render;
  /// d factor / d w, row-major [factor][w].
  std::array<double, kLatentDim * kLatentDim> factor_jacobian{};

  const toyfaces::Image& image() const { return render.image; }
  StyleLatent pullback(std::span<const double> pixel_grad) const;
};

class GeneratorBackend {
 public:
  virtual ~GeneratorBackend() = default;

  virtual std::string kind() const = 0;
  virtual std::uint64_t mixing_seed() const = 0;
  /// Digest of every parameter; changes iff the backend changes.
  virtual std::uint64_t fingerprint() const = 0;

  /// Throws InvalidInput for non-finite w.
  virtual toyfaces::Image generate(const StyleLatent& w) const = 0;
  virtual Generated generate_differentiable(const StyleLatent& w) const = 0;
  /// Draws from the "real" W distribution.
  virtual std::vector<StyleLatent> sample_w(std::uint64_t seed, std::size_t n) const = 0;
};

class OracleGenerator : public GeneratorBackend {
 public:
  explicit OracleGenerator(std::uint64_t mixing_seed, double sharpness = toyfaces::kDefaultSharpness,
                           int image_size = toyfaces::kDefaultSize);

  std::string kind() const override { return "oracle"; }
  std::uint64_t mixing_seed() const override { return seed_; }
  std::uint64_t fingerprint() const override;

  StyleLatent mix(const toyfaces::FactorVector& f) const;
  /// Evaluation-only inverse with hard clamping to the prior ranges.
  virtual toyfaces::FactorVector unmix(const StyleLatent& w) const;

  toyfaces::Image generate(const StyleLatent& w) const override;
  Generated generate_differentiable(const StyleLatent& w) const override;
  std::vector<StyleLatent> sample_w(std::uint64_t seed, std::size_t n) const override;

  /// Row-major orthogonal mixing matrix.
  const std::array<double, kLatentDim * kLatentDim>& mixing() const { return mixing_; }
  double sharpness() const { return sharpness_; }
  int image_size() const { return size_; }

 private:
  std::array<double, kLatentDim> unmixed_raw(const StyleLatent& w) const;

  std::uint64_t seed_;
  double sharpness_;
  int size_;
  std::array<double, kLatentDim * kLatentDim> mixing_{};
};

/// Affine map of each field's range onto [-1, 1].
std::array<double, kLatentDim> normalize_factors(const toyfaces::FactorVector& f);
toyfaces::FactorArray denormalize_factors(const std::array<double, kLatentDim>& y);

/// Identity inside [lo, hi]; beyond the ends a tanh shoulder 5% of the range
/// wide. Returns the clamped value and its derivative.
std::pair<double, double> soft_clamp(double x, double lo, double hi);

}  // namespace lb::generator
