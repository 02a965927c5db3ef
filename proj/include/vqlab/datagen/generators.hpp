#pragma once

#include "vqlab/datagen/dataset.hpp"

namespace vqlab::datagen {

// Gaussian clusters at hypercube vertices with a random linear mixing of
// the informative block.
struct LinearConfig {
  std::size_t clusters_per_class = 1;
  double class_sep = 2.0;
  double flip_frac = 0.0;
  double frac_informative = 0.5;
  double frac_redundant = 0.25;
};
Dataset gen_linear(std::size_t n, std::size_t d, std::uint64_t seed, const LinearConfig& cfg);

// Gaussian copula with non-Gaussian marginals; labels from a fixed
// quadratic score, median-balanced.
struct CopulaConfig {
  std::size_t n_informative = 2;
  std::size_t n_redundant = 1;
  std::size_t n_nuisance = 1;
  double corr = 0.3;
};
Dataset gen_nonlinear_copula(std::size_t n, std::size_t d, std::uint64_t seed,
                             const CopulaConfig& cfg);

// Inputs on a low-dimensional manifold labelled by a random shallow teacher
// network on the latent coordinates.
struct ManifoldConfig {
  std::size_t manifold_dim = 2;
  std::size_t teacher_width = 8;
};
Dataset gen_hidden_manifold(std::size_t n, std::size_t d, std::uint64_t seed,
                            const ManifoldConfig& cfg);

// Uniform cube points labelled by the parity of positive perceptron sides.
struct HyperplanesConfig {
  std::size_t k_hyperplanes = 2;
  std::size_t latent_dim = 0;  // 0 means all d coordinates
};
Dataset gen_hyperplanes(std::size_t n, std::size_t d, std::uint64_t seed,
                        const HyperplanesConfig& cfg);

// Two low-degree Fourier curves separated by a random offset direction.
struct TwoCurvesConfig {
  std::size_t degree = 3;
  double offset = 0.5;
  double noise = 0.05;
};
Dataset gen_two_curves(std::size_t n, std::size_t d, std::uint64_t seed,
                       const TwoCurvesConfig& cfg);

}  // namespace vqlab::datagen
