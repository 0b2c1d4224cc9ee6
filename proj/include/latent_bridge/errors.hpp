#pragma once

#include <stdexcept>
#include <string>

namespace lb {

/// Caller passed something outside an operation's domain.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyRequest : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InsufficientSamples : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A frozen network failed to reach its acceptance threshold.
class PretrainingFailed : public std::runtime_error {
 public:
  PretrainingFailed(const std::string& what, double final_metric)
      : std::runtime_error(what), final_metric_(final_metric) {}
  double final_metric() const { return final_metric_; }

 private:
  double final_metric_;
};

/// A loss went non-finite during training.
class TrainingDiverged : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lb
