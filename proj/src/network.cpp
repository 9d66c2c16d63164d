#include "driftmon/network.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "driftmon/rng.hpp"

namespace driftmon {

std::string to_string(Activation activation) {
  return activation == Activation::kRelu ? "relu" : "tanh";
}

Activation activation_from_string(const std::string& name) {
  if (name == "relu") return Activation::kRelu;
  if (name == "tanh") return Activation::kTanh;
  throw ConfigError("unknown activation '" + name + "'");
}

std::vector<Index> Architecture::layer_widths() const {
  std::vector<Index> widths;
  widths.push_back(input_dim);
  widths.insert(widths.end(), hidden_layers.begin(), hidden_layers.end());
  widths.push_back(output_dim);
  return widths;
}

void Architecture::validate() const {
  if (input_dim < 1) throw ConfigError("architecture input_dim must be >= 1");
  if (output_dim != 1) throw ConfigError("architecture output_dim must be 1");
  for (const Index w : hidden_layers) {
    if (w < 1) throw ConfigError("hidden layer widths must be >= 1");
  }
}

Index NetworkModel::parameter_count() const {
  Index count = 0;
  for (std::size_t l = 0; l < weights.size(); ++l) {
    count += weights[l].size() + biases[l].size();
  }
  return count;
}

NetworkModel init_network(const Architecture& arch, std::uint64_t seed) {
  arch.validate();
  NetworkModel model;
  model.arch = arch;
  model.train_seed = seed;
  Rng rng(seed);
  const auto widths = arch.layer_widths();
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const Index fan_in = widths[l];
    const Index fan_out = widths[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    Matrix w(fan_out, fan_in);
    for (Index r = 0; r < fan_out; ++r) {
      for (Index c = 0; c < fan_in; ++c) w(r, c) = rng.uniform(-limit, limit);
    }
    model.weights.push_back(std::move(w));
    model.biases.push_back(Vector::Zero(fan_out));
  }
  return model;
}

namespace {

Matrix activate(const Matrix& z, Activation activation) {
  if (activation == Activation::kRelu) return z.cwiseMax(0.0);
  return z.array().tanh().matrix();
}

// Derivative expressed through the activation output.
Matrix activate_grad(const Matrix& a, Activation activation) {
  if (activation == Activation::kRelu) {
    return (a.array() > 0.0).cast<double>().matrix();
  }
  return (1.0 - a.array().square()).matrix();
}

// Post-activation outputs of every layer; activations[0] is the input.
std::vector<Matrix> forward(const NetworkModel& model, const Matrix& inputs) {
  std::vector<Matrix> activations;
  activations.reserve(model.weights.size() + 1);
  activations.push_back(inputs);
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    Matrix z = (activations.back() * model.weights[l].transpose()).rowwise() +
               model.biases[l].transpose();
    if (l + 1 < model.weights.size()) z = activate(z, model.arch.activation);
    activations.push_back(std::move(z));
  }
  return activations;
}

struct Gradients {
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
};

// Backpropagation of the mean-squared-error loss over the given rows.
// Returns the loss alongside the gradients.
double backward(const NetworkModel& model, const std::vector<Matrix>& activations,
                const Vector& targets, Gradients& grads) {
  const Index n = targets.size();
  const std::size_t layers = model.weights.size();
  const Vector residual = activations.back().col(0) - targets;
  const double loss = residual.squaredNorm() / static_cast<double>(n);

  Matrix delta = (2.0 / static_cast<double>(n)) * residual;
  for (std::size_t l = layers; l-- > 0;) {
    grads.weights[l].noalias() = delta.transpose() * activations[l];
    grads.biases[l] = delta.colwise().sum().transpose();
    if (l > 0) {
      delta = (delta * model.weights[l])
                  .cwiseProduct(activate_grad(activations[l], model.arch.activation));
    }
  }
  return loss;
}

Gradients zero_gradients(const NetworkModel& model) {
  Gradients grads;
  for (std::size_t l = 0; l < model.weights.size(); ++l) {
    grads.weights.push_back(Matrix::Zero(model.weights[l].rows(), model.weights[l].cols()));
    grads.biases.push_back(Vector::Zero(model.biases[l].size()));
  }
  return grads;
}

double mse(const NetworkModel& model, const Matrix& inputs, const Vector& targets) {
  const Vector pred = predict(model, inputs);
  return (pred - targets).squaredNorm() / static_cast<double>(targets.size());
}

Matrix gather_rows(const Matrix& source, const std::vector<Index>& rows) {
  Matrix out(static_cast<Index>(rows.size()), source.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Index>(i)) = source.row(rows[i]);
  return out;
}

Vector gather(const Vector& source, const std::vector<Index>& rows) {
  Vector out(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out[static_cast<Index>(i)] = source[rows[i]];
  return out;
}

}  // namespace

Vector predict(const NetworkModel& model, const Matrix& inputs) {
  if (inputs.cols() != model.arch.input_dim) {
    throw DataError("predict: input has " + std::to_string(inputs.cols()) +
                    " columns, model expects " +
                    std::to_string(model.arch.input_dim));
  }
  return forward(model, inputs).back().col(0);
}

std::pair<std::vector<Index>, std::vector<Index>> train_val_split(
    Index n, std::uint64_t seed) {
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  Rng rng(derive_seed(seed, 0));
  rng.shuffle(order);
  Index val_n = n / 5;
  if (val_n == 0 && n >= 2) val_n = 1;
  std::vector<Index> train_idx(order.begin(), order.end() - val_n);
  std::vector<Index> val_idx(order.end() - val_n, order.end());
  if (val_idx.empty()) val_idx = train_idx;  // single-row degenerate case
  return {std::move(train_idx), std::move(val_idx)};
}

std::pair<NetworkModel, TrainTrace> train(const NetworkModel& model,
                                          const Matrix& train_inputs,
                                          const Vector& train_targets,
                                          const TrainConfig& cfg) {
  if (cfg.learning_rate <= 0.0) throw ConfigError("learning_rate must be > 0");
  if (cfg.max_epochs < 1) throw ConfigError("max_epochs must be >= 1");
  if (train_inputs.rows() != train_targets.size() || train_inputs.rows() == 0) {
    throw DataError("train: inputs and targets must be non-empty and aligned");
  }
  if (train_inputs.cols() != model.arch.input_dim) {
    throw DataError("train: input width does not match the architecture");
  }
  if (!cfg.layer_mask.empty() &&
      cfg.layer_mask.size() != model.weights.size()) {
    throw ConfigError("layer_mask must have one flag per layer");
  }

  const auto start = std::chrono::steady_clock::now();
  NetworkModel net = model;

  const auto [train_idx, val_idx] = train_val_split(train_inputs.rows(), cfg.seed);
  const Matrix x_train = gather_rows(train_inputs, train_idx);
  const Vector y_train = gather(train_targets, train_idx);
  const Matrix x_val = gather_rows(train_inputs, val_idx);
  const Vector y_val = gather(train_targets, val_idx);

  auto trainable = [&](std::size_t l) {
    return cfg.layer_mask.empty() || cfg.layer_mask[l];
  };

  // Adam state.
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  Gradients m = zero_gradients(net);
  Gradients v = zero_gradients(net);
  Gradients grads = zero_gradients(net);
  long step = 0;

  const Index n_train = x_train.rows();
  const Index batch_size =
      cfg.mini_batch_size > 0 ? std::min<Index>(cfg.mini_batch_size, n_train)
                              : n_train;
  std::vector<Index> order(static_cast<std::size_t>(n_train));
  for (Index i = 0; i < n_train; ++i) order[static_cast<std::size_t>(i)] = i;
  Rng epoch_rng(derive_seed(cfg.seed, 1));

  TrainTrace trace;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<Matrix> best_weights = net.weights;
  std::vector<Vector> best_biases = net.biases;
  int wait = 0;

  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    epoch_rng.shuffle(order);
    double epoch_sq_err = 0.0;
    for (Index offset = 0; offset < n_train; offset += batch_size) {
      const Index count = std::min<Index>(batch_size, n_train - offset);
      std::vector<Index> rows(order.begin() + offset, order.begin() + offset + count);
      const Matrix xb = gather_rows(x_train, rows);
      const Vector yb = gather(y_train, rows);

      const auto activations = forward(net, xb);
      const double batch_loss = backward(net, activations, yb, grads);
      epoch_sq_err += batch_loss * static_cast<double>(count);

      ++step;
      const double m_corr = 1.0 - std::pow(kBeta1, step);
      const double v_corr = 1.0 - std::pow(kBeta2, step);
      for (std::size_t l = 0; l < net.weights.size(); ++l) {
        if (!trainable(l)) continue;
        m.weights[l] = kBeta1 * m.weights[l] + (1.0 - kBeta1) * grads.weights[l];
        v.weights[l] = kBeta2 * v.weights[l] +
                       (1.0 - kBeta2) * grads.weights[l].array().square().matrix();
        net.weights[l].array() -=
            cfg.learning_rate * (m.weights[l].array() / m_corr) /
            ((v.weights[l].array() / v_corr).sqrt() + kEps);
        m.biases[l] = kBeta1 * m.biases[l] + (1.0 - kBeta1) * grads.biases[l];
        v.biases[l] = kBeta2 * v.biases[l] +
                      (1.0 - kBeta2) * grads.biases[l].array().square().matrix();
        net.biases[l].array() -= cfg.learning_rate *
                                 (m.biases[l].array() / m_corr) /
                                 ((v.biases[l].array() / v_corr).sqrt() + kEps);
      }
    }

    const double train_loss = epoch_sq_err / static_cast<double>(n_train);
    const double val_loss = mse(net, x_val, y_val);
    trace.train_loss.push_back(train_loss);
    trace.val_loss.push_back(val_loss);
    if (!std::isfinite(train_loss) || !std::isfinite(val_loss)) {
      throw DivergenceError("training diverged at epoch " + std::to_string(epoch));
    }

    if (val_loss < best_val) {
      best_val = val_loss;
      best_weights = net.weights;
      best_biases = net.biases;
      trace.best_epoch = epoch;
      wait = 0;
    } else if (cfg.early_stop_patience > 0 && ++wait >= cfg.early_stop_patience) {
      break;
    }
  }

  if (cfg.early_stop_patience > 0 || trace.best_epoch > 0) {
    net.weights = std::move(best_weights);
    net.biases = std::move(best_biases);
  }
  net.train_seed = cfg.seed;
  net.train_lr = cfg.learning_rate;

  trace.val_metrics = compute_metrics(y_val, predict(net, x_val));
  trace.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
  return {std::move(net), std::move(trace)};
}

double gradient_check(const NetworkModel& model, const Matrix& inputs,
                      const Vector& targets) {
  NetworkModel net = model;
  Gradients grads = zero_gradients(net);
  const auto activations = forward(net, inputs);
  backward(net, activations, targets, grads);

  constexpr double kStep = 1e-5;
  double max_rel = 0.0;
  auto probe = [&](double& param, double analytic) {
    const double saved = param;
    param = saved + kStep;
    const double up = mse(net, inputs, targets);
    param = saved - kStep;
    const double down = mse(net, inputs, targets);
    param = saved;
    const double numeric = (up - down) / (2.0 * kStep);
    const double denom = std::abs(analytic) + std::abs(numeric);
    if (denom > 1e-8) {
      max_rel = std::max(max_rel, std::abs(analytic - numeric) / denom);
    }
  };

  for (std::size_t l = 0; l < net.weights.size(); ++l) {
    for (Index r = 0; r < net.weights[l].rows(); ++r) {
      for (Index c = 0; c < net.weights[l].cols(); ++c) {
        probe(net.weights[l](r, c), grads.weights[l](r, c));
      }
    }
    for (Index i = 0; i < net.biases[l].size(); ++i) {
      probe(net.biases[l][i], grads.biases[l][i]);
    }
  }
  return max_rel;
}

}  // namespace driftmon
