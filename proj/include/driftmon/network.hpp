#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "driftmon/dataset.hpp"
#include "driftmon/metrics.hpp"
#include "driftmon/types.hpp"

namespace driftmon {

enum class Activation { kRelu, kTanh };

std::string to_string(Activation activation);
Activation activation_from_string(const std::string& name);

struct Architecture {
  Index input_dim = 0;
  std::vector<Index> hidden_layers;
  Activation activation = Activation::kRelu;
  Index output_dim = 1;

  Index layer_count() const {
    return static_cast<Index>(hidden_layers.size()) + 1;
  }
  // [input_dim, hidden..., output_dim]
  std::vector<Index> layer_widths() const;
  void validate() const;

  bool operator==(const Architecture&) const = default;
};

// Feedforward network with a linear output layer. Weight matrix l maps
// width[l] -> width[l+1]. Immutable by convention: train() returns a copy.
struct NetworkModel {
  Architecture arch;
  std::vector<Matrix> weights;  // weights[l] is (out x in)
  std::vector<Vector> biases;
  Scaler scaler;  // normalization the model expects at the input
  std::uint64_t train_seed = 0;
  double train_lr = 0.0;

  Index parameter_count() const;
};

struct TrainConfig {
  double learning_rate = 1e-3;
  int max_epochs = 2000;
  int early_stop_patience = 20;
  int mini_batch_size = 32;
  std::uint64_t seed = 0;
  // Per-layer trainable flags; empty = all layers trainable. Frozen layers
  // keep their parameters bit-exactly.
  std::vector<bool> layer_mask;
};

struct TrainTrace {
  std::vector<double> train_loss;  // per epoch, MSE on the training part
  std::vector<double> val_loss;    // per epoch, MSE on the validation tail
  int best_epoch = -1;
  Metrics val_metrics;  // on the validation tail with the returned params
  double seconds = 0.0;
};

// Shuffles [0, n) with the seeded generator and returns
// (training indices, validation tail = last 20%). train() uses exactly this
// split, so callers can score other models on the identical tail.
std::pair<std::vector<Index>, std::vector<Index>> train_val_split(
    Index n, std::uint64_t seed);

// Glorot-uniform weights, zero biases; deterministic under seed.
NetworkModel init_network(const Architecture& arch, std::uint64_t seed);

Vector predict(const NetworkModel& model, const Matrix& inputs);

// Mini-batch Adam on mean squared error with early stopping on the
// validation tail; returns the parameters of the best validation epoch.
// Throws DivergenceError when the loss becomes non-finite.
std::pair<NetworkModel, TrainTrace> train(const NetworkModel& model,
                                          const Matrix& train_inputs,
                                          const Vector& train_targets,
                                          const TrainConfig& cfg);

// Max relative error between backpropagated and central finite-difference
// gradients (step 1e-5), over parameters with |analytic|+|numeric| > 1e-8.
double gradient_check(const NetworkModel& model, const Matrix& inputs,
                      const Vector& targets);

}  // namespace driftmon
