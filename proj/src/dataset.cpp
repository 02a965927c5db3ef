#include "vqlab/datagen/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "vqlab/util/errors.hpp"
#include "vqlab/util/rng.hpp"

namespace vqlab::datagen {

Dataset normalize(const Dataset& ds, NormConvention convention) {
  const double lo = convention == NormConvention::Angle ? 0.0 : -1.0;
  const double hi = convention == NormConvention::Angle ? M_PI : 1.0;
  Dataset out = ds;
  out.normalization = convention == NormConvention::Angle ? "angle" : "symmetric";
  const std::size_t d = ds.d();
  for (std::size_t c = 0; c < d; ++c) {
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    for (const auto& row : ds.x) {
      mn = std::min(mn, row[c]);
      mx = std::max(mx, row[c]);
    }
    if (mx - mn <= 0.0) {
      for (auto& row : out.x) row[c] = 0.5 * (lo + hi);
    } else {
      const double scale = (hi - lo) / (mx - mn);
      for (auto& row : out.x) row[c] = lo + (row[c] - mn) * scale;
    }
  }
  return out;
}

SplitDataset split_80_20(const Dataset& ds, std::uint64_t seed) {
  if (ds.n() < 10) throw BadConfig("split needs at least 10 rows");
  std::vector<std::size_t> idx(ds.n());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(derive_seed(seed, 0x5eed5));
  rng.shuffle(idx);
  const std::size_t n_train = ds.n() * 4 / 5;
  SplitDataset out;
  auto fill = [&](Dataset& dst, std::size_t from, std::size_t to) {
    dst.generator = ds.generator;
    dst.seed = ds.seed;
    dst.config_echo = ds.config_echo;
    dst.normalization = ds.normalization;
    for (std::size_t i = from; i < to; ++i) {
      dst.x.push_back(ds.x[idx[i]]);
      dst.y.push_back(ds.y[idx[i]]);
    }
  };
  fill(out.train, 0, n_train);
  fill(out.test, n_train, ds.n());
  return out;
}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

}  // namespace

std::vector<std::size_t> k_medoids(const std::vector<std::vector<double>>& points, std::size_t k,
                                   std::uint64_t /*seed*/) {
  const std::size_t n = points.size();
  if (k < 1 || k > n) throw BadK("k must lie in [1, n]");
  if (k == n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    return all;
  }

  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = std::sqrt(sq_dist(points[i], points[j]));
      dist[i * n + j] = d;
      dist[j * n + i] = d;
    }

  std::vector<std::size_t> medoids;
  std::vector<char> is_medoid(n, 0);

  // BUILD: start from the most central point, then greedily add the point
  // with the largest cost reduction
  {
    std::size_t best = 0;
    double best_sum = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += dist[i * n + j];
      if (s < best_sum) {
        best_sum = s;
        best = i;
      }
    }
    medoids.push_back(best);
    is_medoid[best] = 1;
  }
  std::vector<double> nearest(n);
  auto refresh_nearest = [&] {
    for (std::size_t j = 0; j < n; ++j) {
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t mi : medoids) m = std::min(m, dist[mi * n + j]);
      nearest[j] = m;
    }
  };
  refresh_nearest();
  while (medoids.size() < k) {
    std::size_t best = n;
    double best_gain = -std::numeric_limits<double>::infinity();
    for (std::size_t cand = 0; cand < n; ++cand) {
      if (is_medoid[cand]) continue;
      double gain = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        gain += std::max(0.0, nearest[j] - dist[cand * n + j]);
      if (gain > best_gain) {
        best_gain = gain;
        best = cand;
      }
    }
    medoids.push_back(best);
    is_medoid[best] = 1;
    refresh_nearest();
  }

  // SWAP: take the best improving (medoid, candidate) exchange until none
  auto objective = [&](const std::vector<std::size_t>& meds) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t mi : meds) m = std::min(m, dist[mi * n + j]);
      s += m;
    }
    return s;
  };
  double cur = objective(medoids);
  bool improved = true;
  while (improved) {
    improved = false;
    std::size_t best_m = 0, best_c = 0;
    double best_obj = cur;
    for (std::size_t mi = 0; mi < medoids.size(); ++mi) {
      for (std::size_t cand = 0; cand < n; ++cand) {
        if (is_medoid[cand]) continue;
        std::vector<std::size_t> trial = medoids;
        trial[mi] = cand;
        const double obj = objective(trial);
        if (obj < best_obj - 1e-12) {
          best_obj = obj;
          best_m = mi;
          best_c = cand;
        }
      }
    }
    if (best_obj < cur - 1e-12) {
      is_medoid[medoids[best_m]] = 0;
      is_medoid[best_c] = 1;
      medoids[best_m] = best_c;
      cur = best_obj;
      improved = true;
    }
  }
  std::sort(medoids.begin(), medoids.end());
  return medoids;
}

void save_csv(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw BadConfig("cannot write " + path);
  const std::size_t d = ds.d();
  for (std::size_t c = 0; c < d; ++c) out << "f" << c << ",";
  out << "label\n";
  char buf[40];
  for (std::size_t i = 0; i < ds.n(); ++i) {
    for (std::size_t c = 0; c < d; ++c) {
      std::snprintf(buf, sizeof(buf), "%.17g", ds.x[i][c]);
      out << buf << ",";
    }
    out << ds.y[i] << "\n";
  }
  nlohmann::json side;
  side["generator"] = ds.generator;
  side["seed"] = ds.seed;
  side["normalization"] = ds.normalization;
  side["config"] = ds.config_echo.empty() ? nlohmann::json::object()
                                          : nlohmann::json::parse(ds.config_echo);
  std::ofstream sout(path + ".json");
  sout << side.dump(2) << "\n";
}

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadConfig("cannot read " + path);
  Dataset ds;
  std::string line;
  if (!std::getline(in, line)) throw BadConfig("empty dataset file " + path);
  const std::size_t d = static_cast<std::size_t>(std::count(line.begin(), line.end(), ','));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row(d);
    std::stringstream ss(line);
    std::string cell;
    for (std::size_t c = 0; c < d; ++c) {
      std::getline(ss, cell, ',');
      row[c] = std::stod(cell);
    }
    std::getline(ss, cell, ',');
    ds.x.push_back(std::move(row));
    ds.y.push_back(std::stoi(cell));
  }
  std::ifstream sin(path + ".json");
  if (sin) {
    nlohmann::json side;
    sin >> side;
    ds.generator = side.value("generator", "");
    ds.seed = side.value("seed", std::uint64_t{0});
    ds.normalization = side.value("normalization", "");
    if (side.contains("config")) ds.config_echo = side["config"].dump();
  }
  return ds;
}

}  // namespace vqlab::datagen
