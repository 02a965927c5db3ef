#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "vqlab/datagen/dataset.hpp"
#include "vqlab/datagen/generators.hpp"
#include "vqlab/util/errors.hpp"
#include "vqlab/util/rng.hpp"

using namespace vqlab;
using namespace vqlab::datagen;

namespace {

// pocket perceptron, used as a linear-separability oracle
double perceptron_accuracy(const Dataset& train, const Dataset& test, int epochs = 200) {
  const std::size_t d = train.d();
  std::vector<double> w(d + 1, 0.0), best(d + 1, 0.0);
  auto acc_on = [&](const Dataset& ds, const std::vector<double>& wv) {
    std::size_t ok = 0;
    for (std::size_t i = 0; i < ds.n(); ++i) {
      double s = wv[d];
      for (std::size_t f = 0; f < d; ++f) s += wv[f] * ds.x[i][f];
      if ((s >= 0.0 ? 1 : 0) == ds.y[i]) ++ok;
    }
    return static_cast<double>(ok) / static_cast<double>(ds.n());
  };
  double best_acc = acc_on(train, w);
  for (int e = 0; e < epochs; ++e) {
    for (std::size_t i = 0; i < train.n(); ++i) {
      double s = w[d];
      for (std::size_t f = 0; f < d; ++f) s += w[f] * train.x[i][f];
      const int pred = s >= 0.0 ? 1 : 0;
      if (pred != train.y[i]) {
        const double dir = train.y[i] == 1 ? 1.0 : -1.0;
        for (std::size_t f = 0; f < d; ++f) w[f] += dir * train.x[i][f];
        w[d] += dir;
      }
    }
    const double a = acc_on(train, w);
    if (a > best_acc) {
      best_acc = a;
      best = w;
    }
  }
  return acc_on(test, best);
}

double class_balance(const Dataset& ds) {
  double ones = 0;
  for (int v : ds.y) ones += v;
  return ones / static_cast<double>(ds.n());
}

bool same_data(const Dataset& a, const Dataset& b) {
  if (a.n() != b.n() || a.d() != b.d()) return false;
  for (std::size_t i = 0; i < a.n(); ++i) {
    if (a.y[i] != b.y[i]) return false;
    for (std::size_t f = 0; f < a.d(); ++f)
      if (a.x[i][f] != b.x[i][f]) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("gen_linear") {
  SUBCASE("well separated data is linearly solvable") {
    LinearConfig cfg;
    cfg.class_sep = 10.0;
    cfg.clusters_per_class = 1;
    cfg.flip_frac = 0.0;
    Dataset ds = gen_linear(400, 4, 3, cfg);
    auto split = split_80_20(ds, 1);
    CHECK(perceptron_accuracy(split.train, split.test) >= 0.97);
  }
  SUBCASE("row count and both classes") {
    Dataset ds = gen_linear(100, 4, 5, {});
    CHECK(ds.n() == 100);
    CHECK(class_balance(ds) > 0.2);
    CHECK(class_balance(ds) < 0.8);
  }
  SUBCASE("deterministic") {
    LinearConfig cfg;
    cfg.flip_frac = 0.1;
    CHECK(same_data(gen_linear(50, 4, 9, cfg), gen_linear(50, 4, 9, cfg)));
  }
  SUBCASE("config validation") {
    CHECK_THROWS_AS(gen_linear(10, 4, 1, {}), BadConfig);
    CHECK_THROWS_AS(gen_linear(100, 1, 1, {}), BadConfig);
  }
}

TEST_CASE("gen_nonlinear_copula") {
  SUBCASE("nuisance-only stays balanced") {
    CopulaConfig cfg{0, 0, 6, 0.0};
    Dataset ds = gen_nonlinear_copula(1000, 6, 11, cfg);
    CHECK(std::abs(class_balance(ds) - 0.5) <= 0.05);
  }
  SUBCASE("nuisance features carry no label signal") {
    CopulaConfig cfg{2, 0, 2, 0.2};
    Dataset ds = gen_nonlinear_copula(5000, 4, 13, cfg);
    for (std::size_t f = 2; f < 4; ++f) {
      double mx = 0, my = 0;
      for (std::size_t i = 0; i < ds.n(); ++i) {
        mx += ds.x[i][f];
        my += ds.y[i];
      }
      mx /= static_cast<double>(ds.n());
      my /= static_cast<double>(ds.n());
      double sxy = 0, sxx = 0, syy = 0;
      for (std::size_t i = 0; i < ds.n(); ++i) {
        sxy += (ds.x[i][f] - mx) * (ds.y[i] - my);
        sxx += (ds.x[i][f] - mx) * (ds.x[i][f] - mx);
        syy += (ds.y[i] - my) * (ds.y[i] - my);
      }
      CHECK(std::abs(sxy / std::sqrt(sxx * syy)) <= 0.1);
    }
  }
  SUBCASE("deterministic") {
    CopulaConfig cfg{2, 1, 1, 0.4};
    CHECK(same_data(gen_nonlinear_copula(60, 4, 21, cfg), gen_nonlinear_copula(60, 4, 21, cfg)));
  }
  SUBCASE("dimension bookkeeping is validated") {
    CHECK_THROWS_AS(gen_nonlinear_copula(100, 4, 1, CopulaConfig{2, 1, 2, 0.3}), BadConfig);
  }
}

TEST_CASE("gen_hidden_manifold") {
  SUBCASE("one-dimensional manifold concentrates variance") {
    ManifoldConfig cfg{1, 6};
    Dataset ds = gen_hidden_manifold(500, 5, 7, cfg);
    // power iteration on the centered covariance: the top direction must
    // dominate the total variance
    const std::size_t d = ds.d();
    std::vector<double> mean(d, 0.0);
    for (const auto& r : ds.x)
      for (std::size_t f = 0; f < d; ++f) mean[f] += r[f];
    for (double& v : mean) v /= static_cast<double>(ds.n());
    std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
    double total = 0.0;
    for (const auto& r : ds.x)
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) cov[a][b] += (r[a] - mean[a]) * (r[b] - mean[b]);
    for (std::size_t a = 0; a < d; ++a) total += cov[a][a];
    std::vector<double> v(d, 1.0);
    for (int it = 0; it < 200; ++it) {
      std::vector<double> nv(d, 0.0);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) nv[a] += cov[a][b] * v[b];
      double norm = 0.0;
      for (double q : nv) norm += q * q;
      for (double& q : nv) q /= std::sqrt(norm);
      v = nv;
    }
    double top = 0.0;
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) top += v[a] * cov[a][b] * v[b];
    CHECK(top / total >= 0.85);
  }
  SUBCASE("balance and determinism") {
    ManifoldConfig cfg{2, 8};
    Dataset ds = gen_hidden_manifold(5000, 4, 17, cfg);
    CHECK(std::abs(class_balance(ds) - 0.5) <= 0.02);
    CHECK(same_data(gen_hidden_manifold(80, 4, 17, cfg), gen_hidden_manifold(80, 4, 17, cfg)));
  }
  SUBCASE("latent dimension must fit") {
    CHECK_THROWS_AS(gen_hidden_manifold(100, 4, 1, ManifoldConfig{4, 4}), BadConfig);
  }
}

TEST_CASE("gen_hyperplanes") {
  SUBCASE("single hyperplane is linearly separable") {
    HyperplanesConfig cfg{1, 0};
    Dataset ds = gen_hyperplanes(600, 4, 19, cfg);
    auto split = split_80_20(ds, 2);
    CHECK(perceptron_accuracy(split.train, split.test) >= 0.95);
  }
  SUBCASE("two hyperplanes defeat a linear model") {
    HyperplanesConfig cfg{2, 0};
    Dataset ds = gen_hyperplanes(1200, 4, 23, cfg);
    auto split = split_80_20(ds, 2);
    CHECK(perceptron_accuracy(split.train, split.test) <= 0.75);
  }
  SUBCASE("deterministic") {
    HyperplanesConfig cfg{3, 2};
    CHECK(same_data(gen_hyperplanes(70, 4, 29, cfg), gen_hyperplanes(70, 4, 29, cfg)));
  }
}

TEST_CASE("gen_two_curves") {
  SUBCASE("separated noiseless curves are easy for nearest centroid") {
    TwoCurvesConfig cfg{2, 4.0, 0.0};
    Dataset ds = gen_two_curves(600, 4, 31, cfg);
    auto split = split_80_20(ds, 3);
    // nearest-centroid oracle
    std::vector<double> c0(ds.d(), 0.0), c1(ds.d(), 0.0);
    double n0 = 0, n1 = 0;
    for (std::size_t i = 0; i < split.train.n(); ++i) {
      auto& c = split.train.y[i] == 0 ? c0 : c1;
      (split.train.y[i] == 0 ? n0 : n1) += 1;
      for (std::size_t f = 0; f < ds.d(); ++f) c[f] += split.train.x[i][f];
    }
    for (std::size_t f = 0; f < ds.d(); ++f) {
      c0[f] /= n0;
      c1[f] /= n1;
    }
    std::size_t ok = 0;
    for (std::size_t i = 0; i < split.test.n(); ++i) {
      double d0 = 0, d1 = 0;
      for (std::size_t f = 0; f < ds.d(); ++f) {
        d0 += (split.test.x[i][f] - c0[f]) * (split.test.x[i][f] - c0[f]);
        d1 += (split.test.x[i][f] - c1[f]) * (split.test.x[i][f] - c1[f]);
      }
      if ((d1 < d0 ? 1 : 0) == split.test.y[i]) ++ok;
    }
    CHECK(static_cast<double>(ok) / static_cast<double>(split.test.n()) >= 0.99);
  }
  SUBCASE("zero offset makes the classes coincide") {
    TwoCurvesConfig cfg{2, 0.0, 0.0};
    Dataset ds = gen_two_curves(1000, 4, 37, cfg);
    auto split = split_80_20(ds, 5);
    const double acc = perceptron_accuracy(split.train, split.test);
    CHECK(acc >= 0.35);
    CHECK(acc <= 0.65);
  }
  SUBCASE("deterministic") {
    TwoCurvesConfig cfg{3, 0.5, 0.1};
    CHECK(same_data(gen_two_curves(90, 4, 41, cfg), gen_two_curves(90, 4, 41, cfg)));
  }
}

TEST_CASE("normalize") {
  Dataset ds;
  ds.x = {{0.0, 5.0}, {10.0, 5.0}, {2.5, 5.0}};
  ds.y = {0, 1, 0};
  SUBCASE("endpoints are exact, constants hit the midpoint") {
    Dataset out = normalize(ds, NormConvention::Angle);
    CHECK(out.x[0][0] == doctest::Approx(0.0));
    CHECK(out.x[1][0] == doctest::Approx(M_PI));
    CHECK(out.x[2][0] == doctest::Approx(M_PI / 4));
    CHECK(out.x[0][1] == doctest::Approx(M_PI / 2));
  }
  SUBCASE("idempotent") {
    Dataset once = normalize(ds, NormConvention::Symmetric);
    Dataset twice = normalize(once, NormConvention::Symmetric);
    for (std::size_t i = 0; i < once.n(); ++i)
      for (std::size_t f = 0; f < once.d(); ++f)
        CHECK(std::abs(once.x[i][f] - twice.x[i][f]) <= 1e-12);
  }
}

TEST_CASE("split_80_20") {
  Dataset big = gen_linear(5000, 4, 51, {});
  auto s = split_80_20(big, 9);
  CHECK(s.train.n() == 4000);
  CHECK(s.test.n() == 1000);

  Dataset small = gen_linear(20, 4, 52, {});
  small.x.resize(10);
  small.y.resize(10);
  auto s2 = split_80_20(small, 9);
  CHECK(s2.train.n() == 8);
  CHECK(s2.test.n() == 2);

  auto s3 = split_80_20(big, 9);
  CHECK(same_data(s.train, s3.train));
  CHECK(same_data(s.test, s3.test));
}

TEST_CASE("k_medoids") {
  SUBCASE("k equal to n returns every index") {
    std::vector<std::vector<double>> pts = {{0}, {1}, {2}};
    auto m = k_medoids(pts, 3, 0);
    CHECK(m == std::vector<std::size_t>{0, 1, 2});
  }
  SUBCASE("k=1 picks the cost minimizer") {
    std::vector<std::vector<double>> pts = {{0}, {0}, {10}};
    auto m = k_medoids(pts, 1, 0);
    REQUIRE(m.size() == 1);
    CHECK(pts[m[0]][0] == doctest::Approx(0.0));
  }
  SUBCASE("two blobs get one medoid each, matching brute force") {
    Rng rng(61);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 12; ++i) pts.push_back({rng.normal() * 0.3, rng.normal() * 0.3});
    for (int i = 0; i < 12; ++i) pts.push_back({8 + rng.normal() * 0.3, 8 + rng.normal() * 0.3});
    auto m = k_medoids(pts, 2, 0);
    REQUIRE(m.size() == 2);
    CHECK(((m[0] < 12) != (m[1] < 12)));

    auto objective = [&](std::size_t a, std::size_t b) {
      double s = 0.0;
      for (const auto& p : pts) {
        double da = std::hypot(p[0] - pts[a][0], p[1] - pts[a][1]);
        double db = std::hypot(p[0] - pts[b][0], p[1] - pts[b][1]);
        s += std::min(da, db);
      }
      return s;
    };
    double best = 1e300;
    for (std::size_t a = 0; a < pts.size(); ++a)
      for (std::size_t b = a + 1; b < pts.size(); ++b) best = std::min(best, objective(a, b));
    CHECK(objective(m[0], m[1]) == doctest::Approx(best).epsilon(1e-9));
  }
  SUBCASE("beats random medoid sets") {
    Rng rng(67);
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 60; ++i) pts.push_back({rng.uniform(-3, 3), rng.uniform(-3, 3)});
    const std::size_t k = 4;
    auto m = k_medoids(pts, k, 0);
    auto objective = [&](const std::vector<std::size_t>& meds) {
      double s = 0.0;
      for (const auto& p : pts) {
        double mn = 1e300;
        for (std::size_t mi : meds)
          mn = std::min(mn, std::hypot(p[0] - pts[mi][0], p[1] - pts[mi][1]));
        s += mn;
      }
      return s;
    };
    const double ours = objective(m);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<std::size_t> rand_set;
      while (rand_set.size() < k) {
        std::size_t c = rng.uniform_int(pts.size());
        if (std::find(rand_set.begin(), rand_set.end(), c) == rand_set.end()) rand_set.push_back(c);
      }
      CHECK(ours <= objective(rand_set) + 1e-9);
    }
  }
  SUBCASE("bad k") {
    std::vector<std::vector<double>> pts = {{0}, {1}};
    CHECK_THROWS_AS(k_medoids(pts, 0, 0), BadK);
    CHECK_THROWS_AS(k_medoids(pts, 3, 0), BadK);
  }
}

TEST_CASE("csv round trip") {
  Dataset ds = gen_linear(40, 3, 71, {});
  ds = normalize(ds, NormConvention::Angle);
  const std::string path = (std::filesystem::temp_directory_path() / "vqlab_ds_test.csv").string();
  save_csv(ds, path);
  Dataset back = load_csv(path);
  CHECK(same_data(ds, back));
  CHECK(back.generator == "linear");
  CHECK(back.normalization == "angle");
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".json");
}
