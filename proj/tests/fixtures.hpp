#pragma once

#include "vqlab/datagen/generators.hpp"
#include "vqlab/train/trainer.hpp"

namespace vqlab::testing {

// A small trained classifier shared across test suites: 4-qubit AngleY /
// RY_CNOT on well-separated Gaussian data. Trains once per process.
struct Fixture {
  circuit::ModelSpec spec;
  datagen::SplitDataset split;
  train::TrainedModel model;
};

inline const Fixture& trained_fixture() {
  static const Fixture fx = [] {
    Fixture f;
    f.spec.family = circuit::Family::VQC_PQC;
    f.spec.encoding = circuit::Encoding::AngleY;
    f.spec.ansatz = "RY_CNOT";
    f.spec.n_qubits = 4;
    f.spec.layers = 2;
    f.spec.measurement = circuit::Measurement::PROB;
    f.spec.measured_qubit = 0;

    datagen::LinearConfig gen;
    gen.class_sep = 6.0;
    gen.flip_frac = 0.0;
    datagen::Dataset ds = datagen::gen_linear(300, 4, 404, gen);
    ds = datagen::normalize(ds, datagen::NormConvention::Angle);
    f.split = datagen::split_80_20(ds, 404);

    train::TrainConfig cfg;
    cfg.loss = train::LossKind::CrossEntropy;
    cfg.schedule = {{train::OptimizerKind::Adam, 30, 32, 0.08}};
    cfg.seed = 2;
    f.model = train::train(f.spec, f.split, cfg);
    return f;
  }();
  return fx;
}

}  // namespace vqlab::testing
