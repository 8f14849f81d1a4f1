#ifndef CARNOT_GRID_HPP
#define CARNOT_GRID_HPP

#include <Eigen/Core>

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace carnot {

using Complex = std::complex<double>;

/// Uniform symmetric grid in exponential coordinates: per axis, N_j points
/// (odd, so 0 is a grid point) on [-R_j, R_j]. N_j = 1 denotes the single
/// point 0 on an axis that is never integrated over.
struct GridSpec {
  /// Point budget guarding against accidental huge allocations.
  static constexpr long kMaxPoints = 1L << 24;

  Eigen::VectorXd half_width;
  Eigen::VectorXi points;

  GridSpec() = default;
  GridSpec(const Eigen::VectorXd& r, const Eigen::VectorXi& n);
  /// Isotropic convenience constructor.
  static GridSpec cube(int dim, double r, int n);

  int dim() const { return static_cast<int>(points.size()); }
  double spacing(int j) const {
    return points(j) > 1 ? 2.0 * half_width(j) / (points(j) - 1) : 0.0;
  }
  /// Product of spacings over axes with more than one point (Haar weight of
  /// one cell; Haar = Lebesgue in exponential coordinates).
  double cell_volume() const;
  long total_points() const;

  Eigen::VectorXd coordinate(const Eigen::VectorXi& idx) const;
  Eigen::VectorXd coordinate(long flat) const;
  Eigen::VectorXi unflatten(long flat) const;
  long flatten(const Eigen::VectorXi& idx) const;
  bool operator==(const GridSpec& other) const;

  std::string describe() const;
};

/// Values of a function on a GridSpec, with a coarse support claim used by
/// safety checks before convolution.
enum class SupportClaim { CompactInterior, SchwartzDecay, Unknown };

struct SampledFunction {
  GridSpec grid;
  Eigen::VectorXcd values;
  SupportClaim claim = SupportClaim::Unknown;

  SampledFunction() = default;
  SampledFunction(const GridSpec& g, SupportClaim c = SupportClaim::Unknown)
      : grid(g), values(Eigen::VectorXcd::Zero(g.total_points())), claim(c) {}

  static SampledFunction from_function(const GridSpec& g,
                                       const std::function<Complex(const Eigen::VectorXd&)>& f,
                                       SupportClaim c = SupportClaim::Unknown);

  Complex& at(const Eigen::VectorXi& idx) { return values(grid.flatten(idx)); }
  Complex at(const Eigen::VectorXi& idx) const { return values(grid.flatten(idx)); }
};

/// Multilinear interpolation with zero extension outside the box.
Complex interpolate(const SampledFunction& f, const Eigen::VectorXd& point);

/// Multilinear interpolation of raw values on a grid (zero outside).
Complex interpolate_values(const GridSpec& grid, const Eigen::VectorXcd& values,
                           const Eigen::VectorXd& point);

/// Riemann integral: cell volume times the pairwise sum of the values.
Complex integral(const SampledFunction& f);

/// Sum in a fixed pairwise tree order; bit-stable across thread counts
/// because it is always applied to deterministic, fully materialized arrays.
Complex pairwise_sum(std::span<const Complex> values);
double pairwise_sum(std::span<const double> values);

/// Runs fn(i) for i in [0, n) in parallel over a deterministic partition.
/// Thread count is capped by the CARNOT_THREADS environment variable.
void parallel_for(long n, const std::function<void(long)>& fn);

int max_threads();

}  // namespace carnot

#endif  // CARNOT_GRID_HPP
