#pragma once

// Three-scale MS-SSIM for 64x64 RGB images (64 -> 32 -> 16 by 2x average
// pooling), 11-tap Gaussian window with sigma 1.5 applied "valid", the first
// three canonical scale weights renormalized to sum to one, and the luminance
// term used at the coarsest scale only. Computed per channel, then averaged.

#include <array>
#include <span>
#include <vector>

#include "latent_bridge/toyfaces.hpp"

namespace lb::msssim {

inline constexpr int kScales = 3;
inline constexpr int kWindow = 11;
inline constexpr double kSigma = 1.5;
inline constexpr double kC1 = 0.01 * 0.01;
inline constexpr double kC2 = 0.03 * 0.03;
/// Per-scale contrast-structure values are floored here before the power.
inline constexpr double kFloor = 1e-6;

/// {0.0448, 0.2856, 0.3001} / their sum.
std::array<double, kScales> scale_weights();

/// Channel-major planes (channels x size x size). Throws InvalidInput on shape
/// mismatch or sizes that do not support three scales.
double ms_ssim(std::span<const double> a, std::span<const double> b, int channels, int size);

/// MS-SSIM and its gradient with respect to b.
double ms_ssim_grad(std::span<const double> a, std::span<const double> b, int channels, int size,
                    std::span<double> grad_b);

double ms_ssim(const toyfaces::Image& a, const toyfaces::Image& b);

}  // namespace lb::msssim
