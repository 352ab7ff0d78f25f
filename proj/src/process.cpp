#include "fkglab/process.hpp"

#include <algorithm>
#include <cmath>

namespace fkglab {

double InterpolatedPath::at(double t) const {
  if (times.empty()) throw std::logic_error("empty interpolated path");
  double T = times.back();
  if (t < 0 || t > T) throw std::invalid_argument("time outside [0,T]");
  size_t n = times.size() - 1;
  if (t >= T) return values.back();
  double step = T / static_cast<double>(n);
  size_t j = static_cast<size_t>(std::floor(t / step));
  if (j >= n) j = n - 1;
  if (mode == InterpolationMode::Rcll) return values[j];
  double frac = (t - times[j]) / step;
  if (frac < 0) frac = 0;
  if (frac > 1) frac = 1;
  // The (1-f)a + f b form is monotone in (a, b) under IEEE rounding, so
  // pointwise-dominated inputs give pointwise-dominated interpolants.
  return (1.0 - frac) * values[j] + frac * values[j + 1];
}

namespace {
InterpolatedPath build_interpolation(std::vector<double> values, double horizon,
                                     InterpolationMode mode) {
  if (values.size() < 2)
    throw std::invalid_argument("interpolation needs at least one step");
  if (horizon <= 0) throw std::invalid_argument("horizon must be > 0");
  size_t n = values.size() - 1;
  InterpolatedPath out;
  out.mode = mode;
  out.values = std::move(values);
  out.times.resize(n + 1);
  for (size_t j = 0; j <= n; ++j)
    out.times[j] = horizon * static_cast<double>(j) / static_cast<double>(n);
  return out;
}
}  // namespace

InterpolatedPath interpolate(std::span<const double> path, double horizon,
                             InterpolationMode mode, double start_value) {
  std::vector<double> values;
  values.reserve(path.size() + 1);
  values.push_back(start_value);
  values.insert(values.end(), path.begin(), path.end());
  return build_interpolation(std::move(values), horizon, mode);
}

InterpolatedPath interpolate(std::span<const int64_t> path, double horizon,
                             InterpolationMode mode, int64_t start_value) {
  std::vector<double> values;
  values.reserve(path.size() + 1);
  values.push_back(static_cast<double>(start_value));
  for (int64_t x : path) values.push_back(static_cast<double>(x));
  return build_interpolation(std::move(values), horizon, mode);
}

std::vector<double> scale_path(std::span<const int64_t> path, unsigned n) {
  if (n == 0) throw std::invalid_argument("scale_path: n must be > 0");
  double factor = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<double> out;
  out.reserve(path.size());
  for (int64_t x : path) out.push_back(static_cast<double>(x) * factor);
  return out;
}

TransitionKernel bessel_kernel(const Rational& nu, int64_t max_state) {
  if (nu <= -1)
    throw std::invalid_argument("bessel_kernel: index must satisfy nu > -1");
  if (max_state < 2)
    throw std::invalid_argument("bessel_kernel: window needs at least {0,1,2}");
  std::vector<std::vector<std::pair<int64_t, Rational>>> rows;
  rows.reserve(static_cast<size_t>(max_state + 1));
  rows.push_back({{1, Rational(1)}});  // reflecting boundary: p_{0,1} = 1
  for (int64_t i = 1; i <= max_state; ++i) {
    // p_{i,i+1} = (2i + 2nu + 1) / (4i), clamped into [0,1].
    Rational up = (Rational(2 * i) + 2 * nu + 1) / Rational(4 * i);
    if (up > 1) up = 1;
    if (up < 0) up = 0;
    std::vector<std::pair<int64_t, Rational>> row;
    if (up < 1) row.push_back({i - 1, 1 - up});
    if (up > 0) row.push_back({i + 1, up});
    rows.push_back(std::move(row));
  }
  return TransitionKernel(0, max_state, std::move(rows));
}

void LevyTriplet::validate() const {
  size_t d = static_cast<size_t>(dimension);
  if (dimension < 1) throw std::invalid_argument("levy triplet: dimension must be >= 1");
  if (drift.size() != d) throw std::invalid_argument("levy triplet: drift size mismatch");
  if (sigma.size() != d) throw std::invalid_argument("levy triplet: sigma must be d x d");
  for (const auto& row : sigma)
    if (row.size() != d) throw std::invalid_argument("levy triplet: sigma must be d x d");
  for (size_t i = 0; i < d; ++i)
    for (size_t j = i + 1; j < d; ++j)
      if (std::fabs(sigma[i][j] - sigma[j][i]) >
          1e-12 * (1 + std::fabs(sigma[i][j])))
        throw std::invalid_argument("levy triplet: sigma must be symmetric");
  symmetric_sqrt(sigma);  // existence of the factorization = PSD check
  for (const auto& jump : jumps) {
    if (jump.atom.size() != d)
      throw std::invalid_argument("levy triplet: jump atom dimension mismatch");
    if (!(jump.rate > 0))
      throw std::invalid_argument("levy triplet: jump rates must be > 0");
  }
}

LevyVerdict levy_check_association(const LevyTriplet& triplet) {
  triplet.validate();
  LevyVerdict verdict;
  if (triplet.dimension == 1) return verdict;  // 1-d: always associated
  for (int i = 0; i < triplet.dimension; ++i) {
    for (int j = 0; j < triplet.dimension; ++j) {
      if (triplet.sigma[i][j] < 0) {
        verdict.associated = false;
        verdict.failed_condition = LevyFailure::GaussianSign;
        verdict.sigma_entry = {i, j};
        return verdict;
      }
    }
  }
  for (size_t k = 0; k < triplet.jumps.size(); ++k) {
    const auto& atom = triplet.jumps[k].atom;
    bool all_nonneg = std::all_of(atom.begin(), atom.end(),
                                  [](double x) { return x >= 0; });
    bool all_nonpos = std::all_of(atom.begin(), atom.end(),
                                  [](double x) { return x <= 0; });
    if (!all_nonneg && !all_nonpos) {
      verdict.associated = false;
      verdict.failed_condition = LevyFailure::JumpQuadrant;
      verdict.jump_index = k;
      return verdict;
    }
  }
  return verdict;
}

std::vector<std::vector<double>> symmetric_sqrt(
    const std::vector<std::vector<double>>& matrix, double tolerance) {
  size_t d = matrix.size();
  for (const auto& row : matrix)
    if (row.size() != d) throw std::invalid_argument("matrix must be square");
  // Cyclic Jacobi rotations; d here is small (a few coordinates).
  std::vector<std::vector<double>> a = matrix;
  std::vector<std::vector<double>> q(d, std::vector<double>(d, 0.0));
  for (size_t i = 0; i < d; ++i) q[i][i] = 1.0;

  double scale = 0.0;
  for (size_t i = 0; i < d; ++i) scale = std::max(scale, std::fabs(a[i][i]));
  if (scale == 0.0) scale = 1.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (size_t i = 0; i < d; ++i)
      for (size_t j = i + 1; j < d; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30 * scale * scale) break;
    for (size_t p = 0; p < d; ++p) {
      for (size_t r = p + 1; r < d; ++r) {
        if (std::fabs(a[p][r]) < 1e-300) continue;
        double theta = (a[r][r] - a[p][p]) / (2.0 * a[p][r]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (size_t k = 0; k < d; ++k) {
          double akp = a[k][p], akr = a[k][r];
          a[k][p] = c * akp - s * akr;
          a[k][r] = s * akp + c * akr;
        }
        for (size_t k = 0; k < d; ++k) {
          double apk = a[p][k], ark = a[r][k];
          a[p][k] = c * apk - s * ark;
          a[r][k] = s * apk + c * ark;
        }
        for (size_t k = 0; k < d; ++k) {
          double qkp = q[k][p], qkr = q[k][r];
          q[k][p] = c * qkp - s * qkr;
          q[k][r] = s * qkp + c * qkr;
        }
      }
    }
  }

  std::vector<double> eig(d);
  for (size_t i = 0; i < d; ++i) {
    eig[i] = a[i][i];
    if (eig[i] < -tolerance * scale)
      throw std::invalid_argument("matrix is not positive semidefinite");
    if (eig[i] < 0) eig[i] = 0;
  }
  // Q sqrt(Lambda) Q^T
  std::vector<std::vector<double>> out(d, std::vector<double>(d, 0.0));
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      for (size_t k = 0; k < d; ++k)
        out[i][j] += q[i][k] * std::sqrt(eig[k]) * q[j][k];
  return out;
}

std::vector<std::vector<double>> sample_levy_single(
    const LevyTriplet& triplet, const std::vector<std::vector<double>>& root,
    double horizon, int grid, RngStream& rng) {
  if (grid < 1) throw std::invalid_argument("levy sampling: grid must be >= 1");
  if (horizon <= 0) throw std::invalid_argument("levy sampling: horizon must be > 0");
  size_t d = static_cast<size_t>(triplet.dimension);
  double dt = horizon / static_cast<double>(grid);
  double sqrt_dt = std::sqrt(dt);
  std::vector<std::vector<double>> path(grid + 1, std::vector<double>(d, 0.0));
  std::vector<double> z(d);
  for (int step = 1; step <= grid; ++step) {
    for (size_t k = 0; k < d; ++k) z[k] = rng.gaussian();
    std::vector<double>& x = path[step];
    const std::vector<double>& prev = path[step - 1];
    for (size_t k = 0; k < d; ++k) {
      double g = 0;
      for (size_t l = 0; l < d; ++l) g += root[k][l] * z[l];
      x[k] = prev[k] + triplet.drift[k] * dt + sqrt_dt * g;
    }
    for (const auto& jump : triplet.jumps) {
      long hits = rng.poisson(jump.rate * dt);
      if (hits > 0)
        for (size_t k = 0; k < d; ++k)
          x[k] += static_cast<double>(hits) * jump.atom[k];
    }
  }
  return path;
}

std::vector<std::vector<std::vector<double>>> sample_levy_path(
    const LevyTriplet& triplet, double horizon, int grid, uint64_t seed,
    size_t count) {
  triplet.validate();
  auto root = symmetric_sqrt(triplet.sigma);
  std::vector<std::vector<std::vector<double>>> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    RngStream rng(seed, i);
    out.push_back(sample_levy_single(triplet, root, horizon, grid, rng));
  }
  return out;
}

}  // namespace fkglab
