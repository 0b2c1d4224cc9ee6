#pragma once

// Minimal feed-forward network toolkit: a Sequential stack over a single
// flat parameter vector, explicit forward/backward passes, and Adam.
//
// Forward returns an Activations record instead of caching inside layers,
// so a const network can be evaluated from several places at once.

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "latent_bridge/tensor.hpp"

namespace lb::nn {

struct Conv2d {
  int out_channels;
  int kernel;
  int stride = 1;
  int pad = 0;
};

struct Dense {
  int out_features;
};

struct LeakyRelu {
  double slope = 0.2;
};

struct AvgPool2 {};

using Layer = std::variant<Conv2d, Dense, LeakyRelu, AvgPool2>;

/// Per-sample activation shape: {C, H, W} for feature maps, {D} for vectors.
using Shape = std::vector<std::size_t>;

struct Activations {
  std::vector<Tensor> values;  // values[0] is the input, values.back() the output
  const Tensor& output() const { return values.back(); }
};

class Sequential {
 public:
  Sequential() = default;
  Sequential(Shape input_shape, std::vector<Layer> layers, std::uint64_t init_seed);

  Activations forward(const Tensor& x) const;
  /// Forward pass that keeps only the output.
  Tensor infer(const Tensor& x) const;

  /// Backpropagates grad_out. Parameter gradients are accumulated into
  /// param_grad unless it is empty. The input gradient is returned when
  /// want_input_grad is set, otherwise an empty tensor.
  Tensor backward(const Activations& acts, const Tensor& grad_out, std::span<double> param_grad,
                  bool want_input_grad = true) const;

  /// Backpropagates through layers [first, last) only: grad is d/d acts.values[last],
  /// the result is d/d acts.values[first] (empty if !want_input_grad).
  Tensor backward_range(const Activations& acts, std::size_t first, std::size_t last, const Tensor& grad,
                        std::span<double> param_grad, bool want_input_grad) const;

  /// Gradient penalty for piecewise-linear scalar networks (Dense/LeakyRelu only):
  /// returns mean_n ||d f(x_n)/d x_n||^2 and accumulates scale * d(that)/d params.
  double input_grad_penalty(const Activations& acts, std::span<double> param_grad,
                            double scale) const;

  /// The first n_layers layers with their parameters.
  Sequential prefix(std::size_t n_layers) const;

  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }
  std::size_t param_count() const { return params_.size(); }

  const Shape& input_shape() const { return input_shape_; }
  const Shape& output_shape() const { return shapes_.back(); }
  const std::vector<Layer>& layers() const { return layers_; }

  /// Textual layer layout, e.g. "3x64x64|conv8k5s2p2|lrelu0.2|...".
  std::string architecture() const;
  std::uint64_t architecture_hash() const;
  std::uint64_t param_hash() const;

 private:
  Shape input_shape_;
  std::vector<Layer> layers_;
  std::vector<Shape> shapes_;          // shapes_[i] = input shape of layer i; back() = output
  std::vector<std::size_t> offsets_;   // parameter offset per layer
  std::vector<double> params_;
};

/// Adam with bias correction. State is serializable for exact resume.
class Adam {
 public:
  Adam() = default;
  Adam(std::size_t n, double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps), m_(n, 0.0), v_(n, 0.0) {}

  /// lr_scale multiplies the base learning rate for this step (schedules).
  void step(std::span<double> params, std::span<const double> grad, double lr_scale = 1.0);

  std::uint64_t steps() const { return t_; }
  double lr() const { return lr_; }
  std::vector<double>& first_moment() { return m_; }
  std::vector<double>& second_moment() { return v_; }
  const std::vector<double>& first_moment() const { return m_; }
  const std::vector<double>& second_moment() const { return v_; }
  void set_steps(std::uint64_t t) { t_ = t; }

 private:
  double lr_ = 1e-3, beta1_ = 0.9, beta2_ = 0.999, eps_ = 1e-8;
  std::uint64_t t_ = 0;
  std::vector<double> m_, v_;
};

}  // namespace lb::nn
