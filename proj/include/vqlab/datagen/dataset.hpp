#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vqlab::datagen {

struct Dataset {
  std::vector<std::vector<double>> x;
  std::vector<int> y;  // labels in {0,1}

  // provenance echo
  std::string generator;
  std::uint64_t seed = 0;
  std::string config_echo;    // JSON text of the generator config
  std::string normalization;  // "", "angle" ([0,pi]) or "symmetric" ([-1,1])

  std::size_t n() const { return x.size(); }
  std::size_t d() const { return x.empty() ? 0 : x.front().size(); }
};

struct SplitDataset {
  Dataset train;
  Dataset test;
};

enum class NormConvention { Angle, Symmetric };

// Per-feature affine min-max map onto [0,pi] or [-1,1]; constant features
// land on the interval midpoint.
Dataset normalize(const Dataset& ds, NormConvention convention);

// Seeded shuffle, then floor(0.8 n) / rest.
SplitDataset split_80_20(const Dataset& ds, std::uint64_t seed);

// PAM (build + swap) under Euclidean distance. The algorithm is
// deterministic; the seed parameter is recorded for interface stability and
// unused.
std::vector<std::size_t> k_medoids(const std::vector<std::vector<double>>& points, std::size_t k,
                                   std::uint64_t seed);

// CSV persistence: header f0..f{d-1},label plus a JSON sidecar
// (<path>.json) carrying the provenance fields.
void save_csv(const Dataset& ds, const std::string& path);
Dataset load_csv(const std::string& path);

}  // namespace vqlab::datagen
