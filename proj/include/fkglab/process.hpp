#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fkglab/measure.hpp"
#include "fkglab/rng.hpp"

namespace fkglab {

enum class InterpolationMode { Rcll, Linear };

// Discrete trajectory carried onto the uniform grid t_j = Tj/n, j = 0..n.
// Rcll mode holds value v_j on [t_j, t_{j+1}) and v_n at T; Linear mode
// interpolates between nodes. Both are monotone in the input path.
struct InterpolatedPath {
  std::vector<double> times;
  std::vector<double> values;
  InterpolationMode mode = InterpolationMode::Rcll;
  double at(double t) const;
};

InterpolatedPath interpolate(std::span<const double> path, double horizon,
                             InterpolationMode mode, double start_value = 0.0);
InterpolatedPath interpolate(std::span<const int64_t> path, double horizon,
                             InterpolationMode mode, int64_t start_value = 0);

// Componentwise multiplication by n^{-1/2} (diffusive scaling).
std::vector<double> scale_path(std::span<const int64_t> path, unsigned n);

// Birth-death chain on {0..max_state} approximating the Bessel process of
// index nu > -1: p_{i,i+1} = 1/2 (1 + (2nu+1)/(2i)) clamped into [0,1],
// p_{0,1} = 1. The o(1/i) slack in the generator licenses the clamp.
TransitionKernel bessel_kernel(const Rational& nu, int64_t max_state);

struct LevyTriplet {
  struct Jump {
    std::vector<double> atom;
    double rate = 0;
  };
  int dimension = 1;
  std::vector<double> drift;
  std::vector<std::vector<double>> sigma;  // symmetric PSD
  std::vector<Jump> jumps;                 // finite-activity jump measure

  void validate() const;  // throws std::invalid_argument
};

enum class LevyFailure { GaussianSign, JumpQuadrant };

struct LevyVerdict {
  bool associated = true;
  std::optional<LevyFailure> failed_condition;
  std::optional<std::pair<int, int>> sigma_entry;  // offending sigma_{i,j} < 0
  std::optional<size_t> jump_index;                // atom outside R_+^d ∪ R_-^d
};

// Path-space association classifier: associated iff all sigma entries are
// >= 0 and every jump atom is componentwise all->=0 or all-<=0. Dimension 1
// is always associated.
LevyVerdict levy_check_association(const LevyTriplet& triplet);

// Symmetric square root of a PSD matrix via Jacobi eigendecomposition;
// throws when the matrix is not (numerically) PSD.
std::vector<std::vector<double>> symmetric_sqrt(
    const std::vector<std::vector<double>>& matrix, double tolerance = 1e-9);

// One Euler grid path on t_j = jT/n, j = 0..n (value 0 at t=0): per step
// drift*dt + Gauss(0, Sigma*dt) + compound-Poisson jumps. Consumes, per
// step, d Box-Muller normals then one Poisson count per jump atom.
// `root` must be symmetric_sqrt(triplet.sigma).
std::vector<std::vector<double>> sample_levy_single(
    const LevyTriplet& triplet, const std::vector<std::vector<double>>& root,
    double horizon, int grid, RngStream& rng);

// count paths; path i consumes stream (seed, i).
std::vector<std::vector<std::vector<double>>> sample_levy_path(
    const LevyTriplet& triplet, double horizon, int grid, uint64_t seed,
    size_t count);

}  // namespace fkglab
