#pragma once

// Compute kernels for the small convolutional / fully connected networks.
//
// Two implementations share every signature:
//   lb::kernels            OpenMP-parallel, im2col + GEMM
//   lb::kernels::reference serial direct loops, kept as the test oracle
//
// Conventions: activations are NCHW, conv weights are [out][in][k][k],
// dense weights are [out][in]. Forward kernels overwrite their output.
// Backward kernels overwrite grad_in and ACCUMULATE into grad_weight and
// grad_bias; pass an empty span to skip any of the three.
//
// Parallel kernels only split work across disjoint output blocks, so the
// result does not depend on the thread count.

#include <span>

namespace lb::kernels {

struct ConvGeometry {
  int batch = 1;
  int in_channels = 1;
  int in_h = 1;
  int in_w = 1;
  int out_channels = 1;
  int kernel = 1;
  int stride = 1;
  int pad = 0;

  int out_h() const { return (in_h + 2 * pad - kernel) / stride + 1; }
  int out_w() const { return (in_w + 2 * pad - kernel) / stride + 1; }
  int in_size() const { return batch * in_channels * in_h * in_w; }
  int out_size() const { return batch * out_channels * out_h() * out_w(); }
  int weight_size() const { return out_channels * in_channels * kernel * kernel; }
};

void conv2d_forward(const ConvGeometry& g, std::span<const double> in,
                    std::span<const double> weight, std::span<const double> bias,
                    std::span<double> out);

void conv2d_backward(const ConvGeometry& g, std::span<const double> in,
                     std::span<const double> weight, std::span<const double> grad_out,
                     std::span<double> grad_in, std::span<double> grad_weight,
                     std::span<double> grad_bias);

void dense_forward(int batch, int in_features, int out_features, std::span<const double> in,
                   std::span<const double> weight, std::span<const double> bias,
                   std::span<double> out);

void dense_backward(int batch, int in_features, int out_features, std::span<const double> in,
                    std::span<const double> weight, std::span<const double> grad_out,
                    std::span<double> grad_in, std::span<double> grad_weight,
                    std::span<double> grad_bias);

/// 2x2 average pooling, stride 2 (even spatial sizes only).
void avgpool2_forward(int batch_channels, int in_h, int in_w, std::span<const double> in,
                      std::span<double> out);
void avgpool2_backward(int batch_channels, int in_h, int in_w, std::span<const double> grad_out,
                       std::span<double> grad_in);

namespace reference {

void conv2d_forward(const ConvGeometry& g, std::span<const double> in,
                    std::span<const double> weight, std::span<const double> bias,
                    std::span<double> out);

void conv2d_backward(const ConvGeometry& g, std::span<const double> in,
                     std::span<const double> weight, std::span<const double> grad_out,
                     std::span<double> grad_in, std::span<double> grad_weight,
                     std::span<double> grad_bias);

void dense_forward(int batch, int in_features, int out_features, std::span<const double> in,
                   std::span<const double> weight, std::span<const double> bias,
                   std::span<double> out);

void dense_backward(int batch, int in_features, int out_features, std::span<const double> in,
                    std::span<const double> weight, std::span<const double> grad_out,
                    std::span<double> grad_in, std::span<double> grad_weight,
                    std::span<double> grad_bias);

}  // namespace reference

}  // namespace lb::kernels
