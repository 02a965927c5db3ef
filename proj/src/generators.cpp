#include "vqlab/datagen/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "vqlab/util/errors.hpp"
#include "vqlab/util/rng.hpp"

namespace vqlab::datagen {

namespace {

// balanced labels: top half of the score ranking gets label 1, ties broken
// by row index so degenerate scores still split evenly
std::vector<int> rank_median_labels(const std::vector<double>& score) {
  const std::size_t n = score.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });
  std::vector<int> y(n, 0);
  for (std::size_t r = n / 2; r < n; ++r) y[order[r]] = 1;
  return y;
}

void shuffle_rows(Dataset& ds, Rng& rng) {
  std::vector<std::size_t> idx(ds.n());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  rng.shuffle(idx);
  std::vector<std::vector<double>> nx(ds.n());
  std::vector<int> ny(ds.n());
  for (std::size_t i = 0; i < ds.n(); ++i) {
    nx[i] = std::move(ds.x[idx[i]]);
    ny[i] = ds.y[idx[i]];
  }
  ds.x = std::move(nx);
  ds.y = std::move(ny);
}

void check_output(const Dataset& ds) {
  bool has0 = false, has1 = false;
  for (int v : ds.y) (v == 0 ? has0 : has1) = true;
  if (!has0 || !has1) throw BadConfig("generator produced a single class");
  for (const auto& row : ds.x)
    for (double v : row)
      if (!std::isfinite(v)) throw BadConfig("generator produced a non-finite value");
}

std::vector<std::vector<double>> random_matrix(std::size_t r, std::size_t c, Rng& rng,
                                               double scale) {
  std::vector<std::vector<double>> m(r, std::vector<double>(c));
  for (auto& row : m)
    for (double& v : row) v = rng.normal() * scale;
  return m;
}

}  // namespace

Dataset gen_linear(std::size_t n, std::size_t d, std::uint64_t seed, const LinearConfig& cfg) {
  if (d < 2) throw BadConfig("linear generator needs d >= 2");
  if (n < 20) throw BadConfig("linear generator needs n >= 20");
  if (cfg.clusters_per_class < 1) throw BadConfig("clusters_per_class >= 1");
  if (cfg.frac_informative <= 0.0 || cfg.frac_informative > 1.0) throw BadConfig("bad frac_informative");

  Rng rng(derive_seed(seed, 0x11aa));
  std::size_t n_inf = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(cfg.frac_informative * static_cast<double>(d))));
  n_inf = std::min(n_inf, d);
  std::size_t n_red = static_cast<std::size_t>(std::llround(cfg.frac_redundant * static_cast<double>(d)));
  n_red = std::min(n_red, d - n_inf);

  const std::size_t n_clusters = 2 * cfg.clusters_per_class;
  // hypercube vertices scaled by class_sep; cluster c belongs to class c % 2
  std::vector<std::vector<double>> centroid(n_clusters, std::vector<double>(n_inf));
  for (std::size_t c = 0; c < n_clusters; ++c) {
    const std::uint64_t bits = splitmix64(derive_seed(seed, 0xc0de + c));
    for (std::size_t f = 0; f < n_inf; ++f) {
      bool bit = (bits >> f) & 1u;
      if (f == 0) bit = c & 1u;  // first coordinate separates the classes
      centroid[c][f] = bit ? cfg.class_sep : -cfg.class_sep;
    }
  }

  const auto mix = random_matrix(n_inf, n_inf, rng, 1.0 / std::sqrt(static_cast<double>(n_inf)));
  const auto red = random_matrix(n_red, n_inf, rng, 1.0 / std::sqrt(static_cast<double>(n_inf)));

  Dataset ds;
  ds.generator = "linear";
  ds.seed = seed;
  nlohmann::json echo = {{"clusters_per_class", cfg.clusters_per_class},
                         {"class_sep", cfg.class_sep},
                         {"flip_frac", cfg.flip_frac},
                         {"frac_informative", cfg.frac_informative},
                         {"frac_redundant", cfg.frac_redundant}};
  ds.config_echo = echo.dump();

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t cluster = i % n_clusters;
    int label = static_cast<int>(cluster % 2);
    std::vector<double> inf(n_inf);
    for (std::size_t f = 0; f < n_inf; ++f) inf[f] = centroid[cluster][f] + rng.normal();
    std::vector<double> row(d, 0.0);
    for (std::size_t f = 0; f < n_inf; ++f) {
      double acc = 0.0;
      for (std::size_t g = 0; g < n_inf; ++g) acc += mix[f][g] * inf[g];
      row[f] = acc;
    }
    for (std::size_t f = 0; f < n_red; ++f) {
      double acc = 0.0;
      for (std::size_t g = 0; g < n_inf; ++g) acc += red[f][g] * inf[g];
      row[n_inf + f] = acc;
    }
    for (std::size_t f = n_inf + n_red; f < d; ++f) row[f] = rng.normal();
    if (cfg.flip_frac > 0.0 && rng.bernoulli(cfg.flip_frac)) label = 1 - label;
    ds.x.push_back(std::move(row));
    ds.y.push_back(label);
  }
  shuffle_rows(ds, rng);
  check_output(ds);
  return ds;
}

Dataset gen_nonlinear_copula(std::size_t n, std::size_t d, std::uint64_t seed,
                             const CopulaConfig& cfg) {
  if (cfg.n_informative + cfg.n_redundant + cfg.n_nuisance != d)
    throw BadConfig("informative + redundant + nuisance must equal d");
  if (cfg.corr < 0.0 || cfg.corr >= 1.0) throw BadConfig("corr must lie in [0,1)");
  if (cfg.n_redundant > 0 && cfg.n_informative == 0)
    throw BadConfig("redundant features need informative ones");

  Rng rng(derive_seed(seed, 0x22bb));
  const std::size_t ni = cfg.n_informative;

  // per-feature Kumaraswamy shapes give non-Gaussian marginals
  std::vector<double> ka(ni), kb(ni);
  for (std::size_t f = 0; f < ni; ++f) {
    ka[f] = rng.uniform(0.5, 3.0);
    kb[f] = rng.uniform(0.5, 3.0);
  }
  std::vector<double> w1(ni), w2(ni);
  std::vector<std::vector<double>> wp(ni, std::vector<double>(ni, 0.0));
  for (std::size_t f = 0; f < ni; ++f) {
    w1[f] = rng.normal();
    w2[f] = rng.normal();
    for (std::size_t g = f + 1; g < ni; ++g) wp[f][g] = rng.normal();
  }
  const auto red = random_matrix(cfg.n_redundant, std::max<std::size_t>(ni, 1), rng,
                                 ni > 0 ? 1.0 / std::sqrt(static_cast<double>(ni)) : 1.0);

  Dataset ds;
  ds.generator = "nonlinear_copula";
  ds.seed = seed;
  nlohmann::json echo = {{"n_informative", cfg.n_informative},
                         {"n_redundant", cfg.n_redundant},
                         {"n_nuisance", cfg.n_nuisance},
                         {"corr", cfg.corr}};
  ds.config_echo = echo.dump();

  std::vector<double> score(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(d, 0.0);
    std::vector<double> v(ni, 0.0);
    // one-factor Gaussian copula with pairwise correlation corr
    const double common = rng.normal();
    for (std::size_t f = 0; f < ni; ++f) {
      const double z = std::sqrt(cfg.corr) * common + std::sqrt(1.0 - cfg.corr) * rng.normal();
      const double u = 0.5 * (1.0 + std::erf(z / std::sqrt(2.0)));
      const double x01 = std::pow(1.0 - std::pow(1.0 - u, 1.0 / kb[f]), 1.0 / ka[f]);
      v[f] = 2.0 * x01 - 1.0;
      row[f] = v[f];
    }
    double s = 0.0;
    for (std::size_t f = 0; f < ni; ++f) {
      s += w1[f] * v[f] + w2[f] * v[f] * v[f];
      for (std::size_t g = f + 1; g < ni; ++g) s += wp[f][g] * v[f] * v[g];
    }
    score[i] = s;
    for (std::size_t f = 0; f < cfg.n_redundant; ++f) {
      double acc = 0.0;
      for (std::size_t g = 0; g < ni; ++g) acc += red[f][g] * v[g];
      row[ni + f] = acc;
    }
    for (std::size_t f = ni + cfg.n_redundant; f < d; ++f) row[f] = rng.uniform(-1.0, 1.0);
    ds.x.push_back(std::move(row));
  }
  ds.y = rank_median_labels(score);
  shuffle_rows(ds, rng);
  check_output(ds);
  return ds;
}

Dataset gen_hidden_manifold(std::size_t n, std::size_t d, std::uint64_t seed,
                            const ManifoldConfig& cfg) {
  if (cfg.manifold_dim >= d) throw BadConfig("manifold_dim must be below d");
  if (cfg.manifold_dim < 1 || cfg.teacher_width < 1) throw BadConfig("bad manifold config");

  Rng rng(derive_seed(seed, 0x33cc));
  const std::size_t m = cfg.manifold_dim;
  const auto proj = random_matrix(d, m, rng, 1.0);
  const auto tw = random_matrix(cfg.teacher_width, m, rng, 1.0);
  std::vector<double> tb(cfg.teacher_width), tv(cfg.teacher_width);
  for (std::size_t k = 0; k < cfg.teacher_width; ++k) {
    tb[k] = rng.normal();
    tv[k] = rng.normal();
  }

  Dataset ds;
  ds.generator = "hidden_manifold";
  ds.seed = seed;
  nlohmann::json echo = {{"manifold_dim", cfg.manifold_dim}, {"teacher_width", cfg.teacher_width}};
  ds.config_echo = echo.dump();

  std::vector<double> score(n, 0.0);
  const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> z(m);
    for (double& v : z) v = rng.normal();
    std::vector<double> row(d);
    for (std::size_t f = 0; f < d; ++f) {
      double acc = 0.0;
      for (std::size_t g = 0; g < m; ++g) acc += proj[f][g] * z[g];
      row[f] = std::tanh(acc * inv_sqrt_m);
    }
    double t = 0.0;
    for (std::size_t k = 0; k < cfg.teacher_width; ++k) {
      double acc = tb[k];
      for (std::size_t g = 0; g < m; ++g) acc += tw[k][g] * z[g];
      t += tv[k] * std::tanh(acc);
    }
    score[i] = t;
    ds.x.push_back(std::move(row));
  }
  ds.y = rank_median_labels(score);
  shuffle_rows(ds, rng);
  check_output(ds);
  return ds;
}

Dataset gen_hyperplanes(std::size_t n, std::size_t d, std::uint64_t seed,
                        const HyperplanesConfig& cfg) {
  if (cfg.k_hyperplanes < 1) throw BadConfig("k_hyperplanes >= 1");
  const std::size_t ld = cfg.latent_dim == 0 ? d : std::min(cfg.latent_dim, d);

  Rng rng(derive_seed(seed, 0x44dd));
  std::vector<std::vector<double>> w(cfg.k_hyperplanes, std::vector<double>(ld));
  std::vector<double> b(cfg.k_hyperplanes);
  for (std::size_t k = 0; k < cfg.k_hyperplanes; ++k) {
    double norm2 = 0.0;
    for (double& v : w[k]) {
      v = rng.normal();
      norm2 += v * v;
    }
    for (double& v : w[k]) v /= std::sqrt(norm2);
    b[k] = rng.uniform(-0.2, 0.2);
  }

  Dataset ds;
  ds.generator = "hyperplanes";
  ds.seed = seed;
  nlohmann::json echo = {{"k_hyperplanes", cfg.k_hyperplanes}, {"latent_dim", ld}};
  ds.config_echo = echo.dump();

  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(d);
    for (double& v : row) v = rng.uniform(-1.0, 1.0);
    std::size_t positive = 0;
    for (std::size_t k = 0; k < cfg.k_hyperplanes; ++k) {
      double s = b[k];
      for (std::size_t f = 0; f < ld; ++f) s += w[k][f] * row[f];
      if (s > 0.0) ++positive;
    }
    ds.x.push_back(std::move(row));
    ds.y.push_back(static_cast<int>(positive % 2));
  }
  check_output(ds);
  return ds;
}

Dataset gen_two_curves(std::size_t n, std::size_t d, std::uint64_t seed,
                       const TwoCurvesConfig& cfg) {
  if (cfg.degree < 1) throw BadConfig("degree >= 1");
  if (cfg.noise < 0.0) throw BadConfig("noise >= 0");

  Rng rng(derive_seed(seed, 0x55ee));
  const std::size_t deg = cfg.degree;
  const double coeff_scale = 1.0 / std::sqrt(static_cast<double>(deg));
  const auto fa = random_matrix(d, deg, rng, coeff_scale);
  const auto fb = random_matrix(d, deg, rng, coeff_scale);
  std::vector<double> u(d);
  double un = 0.0;
  for (double& v : u) {
    v = rng.normal();
    un += v * v;
  }
  for (double& v : u) v /= std::sqrt(un);

  Dataset ds;
  ds.generator = "two_curves";
  ds.seed = seed;
  nlohmann::json echo = {{"degree", cfg.degree}, {"offset", cfg.offset}, {"noise", cfg.noise}};
  ds.config_echo = echo.dump();

  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    const double t = rng.uniform(0.0, 2.0 * M_PI);
    std::vector<double> row(d);
    for (std::size_t f = 0; f < d; ++f) {
      double acc = 0.0;
      for (std::size_t k = 1; k <= deg; ++k)
        acc += fa[f][k - 1] * std::cos(static_cast<double>(k) * t) +
               fb[f][k - 1] * std::sin(static_cast<double>(k) * t);
      acc += label * cfg.offset * u[f];
      if (cfg.noise > 0.0) acc += rng.normal(0.0, cfg.noise);
      row[f] = acc;
    }
    ds.x.push_back(std::move(row));
    ds.y.push_back(label);
  }
  shuffle_rows(ds, rng);
  check_output(ds);
  return ds;
}

}  // namespace vqlab::datagen
