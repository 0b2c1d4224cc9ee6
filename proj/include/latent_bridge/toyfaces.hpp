#pragma once

// Procedural face-like image domain with known generative factors.
//
// A face is a shaded head ellipse with a hair arc, two eyes and a mouth,
// drawn with sigmoid edges so every pixel is a smooth function of all 11
// factors. Keypoints are closed-form in the same factors.

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace lb::toyfaces {

inline constexpr int kFactorCount = 11;
inline constexpr int kIdentityCount = 4;
inline constexpr int kAttributeCount = 7;
inline constexpr int kKeypointCount = 8;
inline constexpr int kDefaultSize = 64;
inline constexpr double kDefaultSharpness = 8.0;

using FactorArray = std::array<double, kFactorCount>;

enum class Block { identity, attribute };

struct FactorRange {
  std::string_view name;
  double lo;
  double hi;
  bool circular;  // compared on the circle, upper end excluded
};

/// Field order: id_shape, id_hue, id_eyespan, id_hair, pose_theta, pose_tx,
/// pose_ty, expr_curve, expr_open, illum_phi, illum_gain.
const std::array<FactorRange, kFactorCount>& factor_ranges();

struct FactorVector {
  // identity block
  double id_shape = 0.0;    // [-1, 1] head elongation
  double id_hue = 0.5;      // [0, 1] base skin hue
  double id_eyespan = 0.0;  // [-1, 1] eye spacing offset
  double id_hair = 0.5;     // [0, 1] hair arc extent
  // attribute block
  double pose_theta = 0.0;  // degrees, [-30, 30]
  double pose_tx = 0.0;     // pixels, [-8, 8]
  double pose_ty = 0.0;     // pixels, [-8, 8]
  double expr_curve = 0.0;  // [-1, 1] frown..smile
  double expr_open = 0.5;   // [0, 1]
  double illum_phi = 3.141592653589793;  // radians, [0, 2pi)
  double illum_gain = 1.0;  // [0.6, 1.4]

  FactorArray to_array() const;
  static FactorVector from_array(const FactorArray& a);
  static FactorVector midpoint();
  bool within_ranges() const;
  bool finite() const;

  bool operator==(const FactorVector&) const = default;
};

/// Planar RGB image, channel-major (3 x size x size), values in [0, 1].
struct Image {
  int size = kDefaultSize;
  std::vector<double> pixels;

  Image() = default;
  explicit Image(int s) : size(s), pixels(static_cast<std::size_t>(3) * s * s, 0.0) {}
  double& at(int c, int y, int x) { return pixels[(static_cast<std::size_t>(c) * size + y) * size + x]; }
  double at(int c, int y, int x) const {
    return pixels[(static_cast<std::size_t>(c) * size + y) * size + x];
  }
  std::size_t count() const { return pixels.size(); }

  bool operator==(const Image&) const = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Left eye, right eye, four mouth points left to right, head-contour left and right extrema.
struct Keypoints {
  std::array<Point, kKeypointCount> points{};
  std::array<double, 2 * kKeypointCount> flat() const;
};

/// n i.i.d. draws from the independent uniform prior. Throws EmptyRequest for n = 0.
std::vector<FactorVector> sample_factors(std::uint64_t seed, std::size_t n);

/// Throws InvalidInput for non-finite factors or non-positive sharpness.
Image render(const FactorVector& f, double sharpness = kDefaultSharpness, int size = kDefaultSize);

/// Renders from raw factor values without range checks (used by the generator,
/// whose soft clamp may leave values marginally outside the prior box).
Image render_raw(const FactorArray& f, double sharpness = kDefaultSharpness, int size = kDefaultSize);

struct RenderJacobian {
  Image image;
  /// d pixel / d factor, laid out [pixel][factor].
  std::vector<double> jacobian;

  /// Vector-Jacobian product: maps d loss / d pixels to d loss / d factors.
  FactorArray pullback(std::span<const double> pixel_grad) const;
};

RenderJacobian render_with_jacobian(const FactorArray& f, double sharpness = kDefaultSharpness,
                                    int size = kDefaultSize);

Keypoints keypoints_of(const FactorVector& f, int size = kDefaultSize);

/// Euclidean distance over one block, each field normalized by its range;
/// circular fields use the shorter arc.
double factor_distance(const FactorVector& a, const FactorVector& b, Block block);

/// Field scaled to [0, 1] by its prior range.
double normalized(int field, double value);

}  // namespace lb::toyfaces
