#include "vqlab/train/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "vqlab/util/errors.hpp"
#include "vqlab/util/rng.hpp"

namespace vqlab::train {

using circuit::AngleSource;
using circuit::BoundCircuit;
using circuit::Circuit;
using circuit::GateInstance;

std::string to_string(LossKind k) {
  switch (k) {
    case LossKind::CrossEntropy: return "cross_entropy";
    case LossKind::Square: return "square";
    case LossKind::Hinge: return "hinge";
    case LossKind::Mae: return "mae";
  }
  return "?";
}

std::string to_string(OptimizerKind k) {
  switch (k) {
    case OptimizerKind::GD: return "gd";
    case OptimizerKind::Adam: return "adam";
    case OptimizerKind::AdaGrad: return "adagrad";
    case OptimizerKind::NesterovMomentum: return "nesterov";
  }
  return "?";
}

LossKind loss_from_string(const std::string& s) {
  if (s == "cross_entropy") return LossKind::CrossEntropy;
  if (s == "square") return LossKind::Square;
  if (s == "hinge") return LossKind::Hinge;
  if (s == "mae") return LossKind::Mae;
  throw BadConfig("unknown loss: " + s);
}

OptimizerKind optimizer_from_string(const std::string& s) {
  if (s == "gd") return OptimizerKind::GD;
  if (s == "adam") return OptimizerKind::Adam;
  if (s == "adagrad") return OptimizerKind::AdaGrad;
  if (s == "nesterov") return OptimizerKind::NesterovMomentum;
  throw BadConfig("unknown optimizer: " + s);
}

double loss_value(LossKind kind, double score, double label) {
  switch (kind) {
    case LossKind::CrossEntropy: {
      if (label != 0.0 && label != 1.0) throw LabelDomainMismatch("cross_entropy needs labels in {0,1}");
      const double s = std::clamp(score, 1e-10, 1.0 - 1e-10);
      return -(label * std::log(s) + (1.0 - label) * std::log(1.0 - s));
    }
    case LossKind::Square:
      if (label != 0.0 && label != 1.0) throw LabelDomainMismatch("square needs labels in {0,1}");
      return (score - label) * (score - label);
    case LossKind::Mae:
      if (label != 0.0 && label != 1.0) throw LabelDomainMismatch("mae needs labels in {0,1}");
      return std::abs(score - label);
    case LossKind::Hinge:
      if (label != -1.0 && label != 1.0) throw LabelDomainMismatch("hinge needs labels in {-1,+1}");
      return std::max(0.0, 1.0 - label * score);
  }
  return 0.0;
}

double loss_derivative(LossKind kind, double score, double label) {
  switch (kind) {
    case LossKind::CrossEntropy: {
      const double s = std::clamp(score, 1e-10, 1.0 - 1e-10);
      return (s - label) / (s * (1.0 - s));
    }
    case LossKind::Square:
      return 2.0 * (score - label);
    case LossKind::Mae:
      return score > label ? 1.0 : (score < label ? -1.0 : 0.0);
    case LossKind::Hinge:
      return (1.0 - label * score) > 0.0 ? -label : 0.0;
  }
  return 0.0;
}

void TrainConfig::validate(Measurement measurement) const {
  if (schedule.empty()) throw BadConfig("schedule must not be empty");
  for (const Phase& p : schedule) {
    if (p.learning_rate <= 0.0) throw BadConfig("learning_rate must be positive");
    if (p.epochs < 1) throw BadConfig("epochs must be >= 1");
  }
  const bool hinge = loss == LossKind::Hinge;
  if (hinge && measurement != Measurement::EXP)
    throw LabelDomainMismatch("hinge loss pairs only with EXP measurement");
  if (!hinge && measurement != Measurement::PROB)
    throw LabelDomainMismatch("probability losses pair only with PROB measurement");
}

OptimizerState make_optimizer(OptimizerKind kind, std::size_t n_params) {
  OptimizerState s;
  s.kind = kind;
  s.m.assign(n_params, 0.0);
  s.v.assign(n_params, 0.0);
  s.t = 0;
  return s;
}

void optimizer_step(OptimizerState& state, std::vector<double>& params,
                    const std::vector<double>& grads, double lr) {
  const std::size_t n = params.size();
  switch (state.kind) {
    case OptimizerKind::GD:
      for (std::size_t i = 0; i < n; ++i) params[i] -= lr * grads[i];
      break;
    case OptimizerKind::Adam: {
      constexpr double b1 = 0.9, b2 = 0.999, eps = 1e-8;
      ++state.t;
      const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.t));
      const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.t));
      for (std::size_t i = 0; i < n; ++i) {
        state.m[i] = b1 * state.m[i] + (1.0 - b1) * grads[i];
        state.v[i] = b2 * state.v[i] + (1.0 - b2) * grads[i] * grads[i];
        params[i] -= lr * (state.m[i] / c1) / (std::sqrt(state.v[i] / c2) + eps);
      }
      break;
    }
    case OptimizerKind::AdaGrad: {
      constexpr double eps = 1e-8;
      for (std::size_t i = 0; i < n; ++i) {
        state.v[i] += grads[i] * grads[i];
        params[i] -= lr * grads[i] / (std::sqrt(state.v[i]) + eps);
      }
      break;
    }
    case OptimizerKind::NesterovMomentum: {
      constexpr double mu = 0.9;
      for (std::size_t i = 0; i < n; ++i) {
        state.m[i] = mu * state.m[i] + grads[i];
        params[i] -= lr * (grads[i] + mu * state.m[i]);
      }
      break;
    }
  }
}

double exact_score(const BoundCircuit& c, std::size_t measured_qubit, Measurement m) {
  const auto psi = sim::run_statevector(c);
  const double p1 = sim::measure_probs(psi, measured_qubit).second;
  return m == Measurement::PROB ? p1 : 1.0 - 2.0 * p1;
}

namespace {

struct SlotUse {
  std::size_t gate = 0;
  std::size_t angle = 0;
  double scale = 1.0;
  bool shift_rule = true;
};

std::vector<std::vector<SlotUse>> slot_uses(const Circuit& c) {
  std::vector<std::vector<SlotUse>> uses(c.param_count);
  for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
    const GateInstance& g = c.gates[gi];
    for (std::size_t ai = 0; ai < g.angle_count(); ++ai) {
      const AngleSource& s = g.angles[ai];
      if (s.kind == AngleSource::Kind::Parameter)
        uses[s.index].push_back({gi, ai, s.scale, circuit::gate_has_shift_rule(g.kind)});
    }
  }
  return uses;
}

double label_for_loss(LossKind loss, int y01) {
  return loss == LossKind::Hinge ? 1.0 - 2.0 * y01 : static_cast<double>(y01);
}

}  // namespace

std::vector<double> gradient(const Circuit& c, std::size_t measured_qubit, Measurement measurement,
                             LossKind loss, const std::vector<double>& params,
                             const std::vector<std::vector<double>>& batch_x,
                             const std::vector<int>& batch_y) {
  const std::size_t n_params = c.param_count;
  const std::size_t n_samples = batch_x.size();
  const auto uses = slot_uses(c);
  constexpr double fd_h = 1e-4;

  std::vector<std::vector<double>> rows(n_samples, std::vector<double>(n_params, 0.0));
#pragma omp parallel for schedule(dynamic)
  for (long long si = 0; si < static_cast<long long>(n_samples); ++si) {
    const auto s = static_cast<std::size_t>(si);
    BoundCircuit bound = circuit::bind(c, params, batch_x[s]);
    const double score = exact_score(bound, measured_qubit, measurement);
    const double dl = loss_derivative(loss, score, label_for_loss(loss, batch_y[s]));
    if (dl == 0.0) continue;
    for (std::size_t k = 0; k < n_params; ++k) {
      double ds = 0.0;
      for (const SlotUse& u : uses[k]) {
        const double saved = bound.gates[u.gate].angles[u.angle];
        double plus, minus;
        if (u.shift_rule) {
          bound.gates[u.gate].angles[u.angle] = saved + M_PI / 2;
          plus = exact_score(bound, measured_qubit, measurement);
          bound.gates[u.gate].angles[u.angle] = saved - M_PI / 2;
          minus = exact_score(bound, measured_qubit, measurement);
          ds += u.scale * 0.5 * (plus - minus);
        } else {
          bound.gates[u.gate].angles[u.angle] = saved + u.scale * fd_h;
          plus = exact_score(bound, measured_qubit, measurement);
          bound.gates[u.gate].angles[u.angle] = saved - u.scale * fd_h;
          minus = exact_score(bound, measured_qubit, measurement);
          ds += (plus - minus) / (2.0 * fd_h);
        }
        bound.gates[u.gate].angles[u.angle] = saved;
      }
      rows[s][k] = dl * ds;
    }
  }

  // fixed-order reduction keeps results independent of the thread count
  std::vector<double> grad(n_params, 0.0);
  for (std::size_t s = 0; s < n_samples; ++s)
    for (std::size_t k = 0; k < n_params; ++k) grad[k] += rows[s][k];
  const double inv = n_samples > 0 ? 1.0 / static_cast<double>(n_samples) : 0.0;
  for (double& g : grad) g *= inv;
  return grad;
}

double exact_accuracy(const Circuit& c, std::size_t measured_qubit, Measurement measurement,
                      const std::vector<double>& params, const Dataset& ds) {
  const std::size_t n = ds.n();
  std::vector<int> correct(n, 0);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const auto s = static_cast<std::size_t>(i);
    const BoundCircuit bound = circuit::bind(c, params, ds.x[s]);
    const auto pred = sim::predict_bound(bound, measured_qubit, measurement, sim::ExecOptions::exact());
    correct[s] = pred.label == ds.y[s] ? 1 : 0;
  }
  return static_cast<double>(std::accumulate(correct.begin(), correct.end(), 0)) /
         static_cast<double>(n);
}

TrainedModel train(const ModelSpec& spec, const SplitDataset& split, const TrainConfig& cfg) {
  cfg.validate(spec.measurement);
  const Circuit c = circuit::build_model_circuit(spec);

  TrainedModel model;
  model.spec = spec;
  model.config = cfg;
  model.seed = cfg.seed;
  model.params.resize(c.param_count);
  {
    Rng rng(derive_seed(cfg.seed, 0x1217));
    for (double& p : model.params) p = rng.uniform(-M_PI, M_PI);
  }

  const Dataset& tr = split.train;
  std::vector<std::size_t> order(tr.n());
  std::iota(order.begin(), order.end(), std::size_t{0});

  for (std::size_t phase_idx = 0; phase_idx < cfg.schedule.size(); ++phase_idx) {
    const Phase& phase = cfg.schedule[phase_idx];
    OptimizerState state = make_optimizer(phase.optimizer, c.param_count);
    const std::size_t batch = phase.batch_size == 0 ? tr.n() : std::min(phase.batch_size, tr.n());
    for (std::size_t epoch = 0; epoch < phase.epochs; ++epoch) {
      Rng shuffle_rng(derive_seed(cfg.seed, 0xe90c * (phase_idx + 1) + epoch));
      shuffle_rng.shuffle(order);
      for (std::size_t start = 0; start < tr.n(); start += batch) {
        const std::size_t stop = std::min(start + batch, tr.n());
        std::vector<std::vector<double>> bx;
        std::vector<int> by;
        bx.reserve(stop - start);
        for (std::size_t i = start; i < stop; ++i) {
          bx.push_back(tr.x[order[i]]);
          by.push_back(tr.y[order[i]]);
        }
        const auto g = gradient(c, spec.measured_qubit, spec.measurement, cfg.loss, model.params, bx, by);
        optimizer_step(state, model.params, g, phase.learning_rate);
      }
      // epoch summary on the train split, exact mode
      EpochStats stats;
      const std::size_t n = tr.n();
      std::vector<double> losses(n, 0.0);
      std::vector<int> correct(n, 0);
#pragma omp parallel for schedule(dynamic)
      for (long long i = 0; i < static_cast<long long>(n); ++i) {
        const auto s = static_cast<std::size_t>(i);
        const BoundCircuit bound = circuit::bind(c, model.params, tr.x[s]);
        const double score = exact_score(bound, spec.measured_qubit, spec.measurement);
        losses[s] = loss_value(cfg.loss, score, label_for_loss(cfg.loss, tr.y[s]));
        const int pred = spec.measurement == Measurement::PROB ? (score >= 0.5 ? 1 : 0)
                                                               : (score >= 0.0 ? 0 : 1);
        correct[s] = pred == tr.y[s] ? 1 : 0;
      }
      stats.loss = std::accumulate(losses.begin(), losses.end(), 0.0) / static_cast<double>(n);
      stats.accuracy = static_cast<double>(std::accumulate(correct.begin(), correct.end(), 0)) /
                       static_cast<double>(n);
      model.history.push_back(stats);
    }
  }

  model.sim_accuracy = exact_accuracy(c, spec.measured_qubit, spec.measurement, model.params, split.test);
  return model;
}

std::vector<TrainedModel> select_models(const std::vector<TrainedModel>& models, double threshold) {
  if (threshold <= 0.0 || threshold >= 1.0) throw BadConfig("selection threshold must lie in (0,1)");
  std::vector<TrainedModel> out;
  for (const TrainedModel& m : models)
    if (m.sim_accuracy > threshold) out.push_back(m);
  return out;
}

namespace {

nlohmann::json spec_to_json(const ModelSpec& s) {
  return {{"family", circuit::to_string(s.family)},
          {"encoding", circuit::to_string(s.encoding)},
          {"ansatz", s.ansatz},
          {"n_qubits", s.n_qubits},
          {"layers", s.layers},
          {"measurement", circuit::to_string(s.measurement)},
          {"measured_qubit", s.measured_qubit},
          {"feature_count", s.feature_count}};
}

ModelSpec spec_from_json(const nlohmann::json& j) {
  ModelSpec s;
  s.family = circuit::family_from_string(j.at("family").get<std::string>());
  s.encoding = circuit::encoding_from_string(j.at("encoding").get<std::string>());
  s.ansatz = j.at("ansatz").get<std::string>();
  s.n_qubits = j.at("n_qubits").get<std::size_t>();
  s.layers = j.at("layers").get<std::size_t>();
  s.measurement = circuit::measurement_from_string(j.at("measurement").get<std::string>());
  s.measured_qubit = j.at("measured_qubit").get<std::size_t>();
  s.feature_count = j.value("feature_count", std::size_t{0});
  return s;
}

}  // namespace

void save_model(const TrainedModel& model, const std::string& path) {
  nlohmann::json j;
  j["spec"] = spec_to_json(model.spec);
  j["params"] = model.params;
  j["sim_accuracy"] = model.sim_accuracy;
  j["seed"] = model.seed;
  nlohmann::json sched = nlohmann::json::array();
  for (const Phase& p : model.config.schedule)
    sched.push_back({{"optimizer", to_string(p.optimizer)},
                     {"epochs", p.epochs},
                     {"batch_size", p.batch_size},
                     {"learning_rate", p.learning_rate}});
  j["config"] = {{"loss", to_string(model.config.loss)}, {"schedule", sched}, {"seed", model.config.seed}};
  nlohmann::json hist = nlohmann::json::array();
  for (const EpochStats& e : model.history)
    hist.push_back({{"loss", e.loss}, {"accuracy", e.accuracy}});
  j["history"] = hist;
  std::ofstream out(path);
  if (!out) throw BadConfig("cannot write " + path);
  out << j.dump(2) << "\n";
}

TrainedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadConfig("cannot read " + path);
  nlohmann::json j;
  in >> j;
  TrainedModel m;
  m.spec = spec_from_json(j.at("spec"));
  m.params = j.at("params").get<std::vector<double>>();
  m.sim_accuracy = j.at("sim_accuracy").get<double>();
  m.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("config")) {
    const auto& cj = j["config"];
    m.config.loss = loss_from_string(cj.at("loss").get<std::string>());
    m.config.seed = cj.value("seed", std::uint64_t{0});
    m.config.schedule.clear();
    for (const auto& pj : cj.at("schedule"))
      m.config.schedule.push_back({optimizer_from_string(pj.at("optimizer").get<std::string>()),
                                   pj.at("epochs").get<std::size_t>(),
                                   pj.at("batch_size").get<std::size_t>(),
                                   pj.at("learning_rate").get<double>()});
  }
  if (j.contains("history"))
    for (const auto& ej : j["history"])
      m.history.push_back({ej.at("loss").get<double>(), ej.at("accuracy").get<double>()});
  return m;
}

}  // namespace vqlab::train
