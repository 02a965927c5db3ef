#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vqlab/circuit/builders.hpp"
#include "vqlab/datagen/dataset.hpp"
#include "vqlab/sim/executor.hpp"

namespace vqlab::train {

using circuit::Measurement;
using circuit::ModelSpec;
using datagen::Dataset;
using datagen::SplitDataset;

enum class LossKind : std::uint8_t { CrossEntropy, Square, Hinge, Mae };
enum class OptimizerKind : std::uint8_t { GD, Adam, AdaGrad, NesterovMomentum };

std::string to_string(LossKind k);
std::string to_string(OptimizerKind k);
LossKind loss_from_string(const std::string& s);
OptimizerKind optimizer_from_string(const std::string& s);

// Probability losses take score = p1 in [0,1] and label in {0,1}; hinge
// takes score = <Z> in [-1,1] and label in {-1,+1}.
double loss_value(LossKind kind, double score, double label);
double loss_derivative(LossKind kind, double score, double label);

struct Phase {
  OptimizerKind optimizer = OptimizerKind::Adam;
  std::size_t epochs = 50;
  std::size_t batch_size = 32;  // 0 means full batch
  double learning_rate = 0.05;
};

struct TrainConfig {
  LossKind loss = LossKind::CrossEntropy;
  std::vector<Phase> schedule = {{OptimizerKind::Adam, 50, 32, 0.05},
                                 {OptimizerKind::GD, 10, 0, 0.01}};
  std::uint64_t seed = 0;

  // training always runs in exact simulation; shots belong to evaluation
  void validate(Measurement measurement) const;
};

struct EpochStats {
  double loss = 0.0;
  double accuracy = 0.0;
};

struct TrainedModel {
  ModelSpec spec;
  std::vector<double> params;
  double sim_accuracy = 0.0;
  std::vector<EpochStats> history;
  TrainConfig config;
  std::uint64_t seed = 0;
};

// Optimizer state; Adam: beta1 0.9, beta2 0.999, eps 1e-8; Nesterov:
// momentum 0.9 with the gradient evaluated at the current parameters.
struct OptimizerState {
  OptimizerKind kind = OptimizerKind::GD;
  std::vector<double> m, v;  // Adam moments / AdaGrad accumulator / velocity
  std::size_t t = 0;
};

OptimizerState make_optimizer(OptimizerKind kind, std::size_t n_params);
void optimizer_step(OptimizerState& state, std::vector<double>& params,
                    const std::vector<double>& grads, double learning_rate);

// Exact score of a bound circuit under the given measurement mode.
double exact_score(const circuit::BoundCircuit& c, std::size_t measured_qubit, Measurement m);

// d(mean batch loss)/dtheta via the two-term parameter-shift rule for
// e^{-i theta/2 P} gates and central differences (h = 1e-4) for controlled
// rotations. Exact execution only.
std::vector<double> gradient(const circuit::Circuit& c, std::size_t measured_qubit,
                             Measurement measurement, LossKind loss,
                             const std::vector<double>& params,
                             const std::vector<std::vector<double>>& batch_x,
                             const std::vector<int>& batch_y);

// Fraction of correct exact predictions over a dataset.
double exact_accuracy(const circuit::Circuit& c, std::size_t measured_qubit,
                      Measurement measurement, const std::vector<double>& params,
                      const Dataset& ds);

TrainedModel train(const ModelSpec& spec, const SplitDataset& split, const TrainConfig& cfg);

std::vector<TrainedModel> select_models(const std::vector<TrainedModel>& models, double threshold);

void save_model(const TrainedModel& model, const std::string& path);
TrainedModel load_model(const std::string& path);

}  // namespace vqlab::train
