#include "carnot/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carnot {

std::uint64_t DetRng::next_raw() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double DetRng::uniform(double lo, double hi) {
  const double u = static_cast<double>(next_raw() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Eigen::VectorXd DetRng::uniform_vector(int dim, double lo, double hi) {
  Eigen::VectorXd v(dim);
  for (int j = 0; j < dim; ++j) v(j) = uniform(lo, hi);
  return v;
}

double quasi_norm(const GradedLieAlgebra& alg, const Eigen::VectorXd& x) {
  if (x.size() != alg.dim()) throw std::invalid_argument("coordinate arity mismatch");
  double sum = 0;
  for (int j = 0; j < alg.dim(); ++j) {
    sum += std::pow(std::abs(x(j)), 1.0 / to_double(alg.weight(j)));
  }
  return sum;
}

double quasi_norm(const GroupEvaluator& g, const Eigen::VectorXd& x) {
  double sum = 0;
  for (int j = 0; j < g.dim; ++j) sum += std::pow(std::abs(x(j)), 1.0 / g.weights[j]);
  return sum;
}

TriangleProbe triangle_constant_probe(const GradedLieAlgebra& alg, long samples,
                                      std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  const GroupEvaluator g(alg);
  DetRng rng(seed);
  double max_ratio = 0;
  double half_max = 0;
  for (long s = 0; s < samples; ++s) {
    const Eigen::VectorXd x = rng.uniform_vector(g.dim, -2.0, 2.0);
    const Eigen::VectorXd y = rng.uniform_vector(g.dim, -2.0, 2.0);
    const double nx = quasi_norm(g, x);
    const double ny = quasi_norm(g, y);
    if (nx + ny < 1e-12) continue;
    const double ratio = quasi_norm(g, g.multiply(x, y)) / (nx + ny);
    max_ratio = std::max(max_ratio, ratio);
    if (s < samples / 2) half_max = std::max(half_max, ratio);
  }
  return {max_ratio, half_max};
}

namespace {

/// All partial-derivative arrays d^I f for |I| <= N by repeated 2nd-order
/// central differences; entries are valid only where the stencil fits.
struct DerivativeTable {
  std::vector<MultiIndex> orders;
  std::vector<Eigen::VectorXcd> data;
};

Eigen::VectorXcd central_difference(const GridSpec& grid, const Eigen::VectorXcd& values,
                                    int axis) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(values.size());
  const double h = grid.spacing(axis);
  if (h == 0.0) return out;
  const long total = grid.total_points();
  // Stride of the axis in the row-major flattening.
  long stride = 1;
  for (int j = grid.dim() - 1; j > axis; --j) stride *= grid.points(j);
  const long extent = grid.points(axis);
  for (long i = 0; i < total; ++i) {
    const long axis_idx = (i / stride) % extent;
    if (axis_idx == 0 || axis_idx + 1 >= extent) continue;
    out(i) = (values(i + stride) - values(i - stride)) / (2.0 * h);
  }
  return out;
}

void build_derivatives(const GridSpec& grid, const Eigen::VectorXcd& values, int order_left,
                       int start_axis, MultiIndex& current, DerivativeTable& table) {
  table.orders.push_back(current);
  table.data.push_back(values);
  if (order_left == 0) return;
  for (int j = start_axis; j < grid.dim(); ++j) {
    current[j] += 1;
    const Eigen::VectorXcd d = central_difference(grid, values, j);
    build_derivatives(grid, d, order_left - 1, j, current, table);
    current[j] -= 1;
  }
}

}  // namespace

SeminormResult schwartz_seminorm(const GradedLieAlgebra& alg, const SampledFunction& f, int N) {
  if (N < 0) throw std::invalid_argument("seminorm order must be nonnegative");
  const double q_hom = to_double(homogeneous_dimension(alg));
  const double exponent = (N + 1) * (q_hom + 1);

  DerivativeTable table;
  MultiIndex current(f.grid.dim(), 0);
  build_derivatives(f.grid, f.values, N, 0, current, table);

  SeminormResult result;
  result.value = 0;
  result.attained_at = Eigen::VectorXd::Zero(f.grid.dim());
  result.attained_order = 0;
  // Central stencils of depth N need N points of margin; if the margin eats
  // most of an axis the requested order is too high for this grid.
  int min_points = f.grid.points.minCoeff();
  result.resolution_warning = (2 * N + 1 > min_points);

  const long total = f.grid.total_points();
  for (size_t t = 0; t < table.data.size(); ++t) {
    const int order = [&] {
      int s = 0;
      for (int v : table.orders[t]) s += v;
      return s;
    }();
    for (long i = 0; i < total; ++i) {
      // Skip points where the stencil leaked over the boundary.
      const Eigen::VectorXi idx = f.grid.unflatten(i);
      bool interior = true;
      for (int j = 0; j < f.grid.dim(); ++j) {
        if (idx(j) < order || idx(j) + order >= f.grid.points(j)) {
          interior = false;
          break;
        }
      }
      if (!interior && order > 0) continue;
      const Eigen::VectorXd x = f.grid.coordinate(idx);
      const double weight = std::pow(1.0 + quasi_norm(alg, x), exponent);
      const double candidate = weight * std::abs(table.data[t](i));
      if (candidate > result.value) {
        result.value = candidate;
        result.attained_at = x;
        result.attained_order = order;
      }
    }
  }
  return result;
}

SampledFunction convolve(const GradedLieAlgebra& alg, const SampledFunction& f,
                         const SampledFunction& g) {
  if (!(f.grid == g.grid)) throw std::invalid_argument("convolution grid mismatch");
  // Compactly supported factors must keep their mass well inside the box, or
  // the zero extension silently truncates the convolution.
  for (const SampledFunction* h : {&f, &g}) {
    if (h->claim == SupportClaim::CompactInterior) {
      const double scale = h->values.cwiseAbs().maxCoeff();
      if (scale > 0 && !supported_in_inner_half(*h, 1e-9 * scale)) {
        throw std::invalid_argument(
            "convolution factor claims compact support but exceeds the inner half box");
      }
    }
  }
  const GroupEvaluator ev(alg);
  if (ev.dim != f.grid.dim()) throw std::invalid_argument("grid dimension mismatch");
  const double vol = f.grid.cell_volume();
  const long total = f.grid.total_points();

  SampledFunction out(f.grid, SupportClaim::Unknown);
  // Precompute coordinates once.
  std::vector<Eigen::VectorXd> coords(total);
  for (long i = 0; i < total; ++i) coords[i] = f.grid.coordinate(i);

  parallel_for(total, [&](long ix) {
    const Eigen::VectorXd& x = coords[ix];
    std::vector<Complex> contributions;
    contributions.reserve(total);
    for (long iy = 0; iy < total; ++iy) {
      const Complex fy = f.values(iy);
      if (fy == Complex{0.0, 0.0}) {
        contributions.push_back({0.0, 0.0});
        continue;
      }
      const Eigen::VectorXd arg = ev.left_quotient(coords[iy], x);
      contributions.push_back(fy * interpolate(g, arg));
    }
    out.values(ix) = vol * pairwise_sum(std::span<const Complex>(contributions));
  });
  return out;
}

SampledFunction group_involution(const SampledFunction& f) {
  SampledFunction out(f.grid, f.claim);
  const long total = f.grid.total_points();
  for (long i = 0; i < total; ++i) {
    const Eigen::VectorXi idx = f.grid.unflatten(i);
    Eigen::VectorXi mirrored(idx.size());
    for (int j = 0; j < idx.size(); ++j) mirrored(j) = f.grid.points(j) - 1 - idx(j);
    out.values(f.grid.flatten(mirrored)) = std::conj(f.values(i));
  }
  return out;
}

SampledFunction dilate(const GradedLieAlgebra& alg, const SampledFunction& f, double lambda) {
  if (!(lambda > 0)) throw std::domain_error("dilation parameter must be positive");
  const GroupEvaluator ev(alg);
  const double factor = std::pow(lambda, ev.homogeneous_dim);
  SampledFunction out(f.grid, f.claim);
  const long total = f.grid.total_points();
  for (long i = 0; i < total; ++i) {
    const Eigen::VectorXd x = f.grid.coordinate(i);
    out.values(i) = factor * interpolate(f, ev.dilate_point(lambda, x));
  }
  return out;
}

Complex moment(const GradedLieAlgebra& alg, const SampledFunction& f, const MultiIndex& alpha) {
  (void)alg;
  if (static_cast<int>(alpha.size()) != f.grid.dim()) {
    throw std::invalid_argument("moment multi-index arity mismatch");
  }
  const long total = f.grid.total_points();
  std::vector<Complex> terms(total);
  for (long i = 0; i < total; ++i) {
    const Eigen::VectorXd v = f.grid.coordinate(i);
    double mono = 1.0;
    for (int j = 0; j < f.grid.dim(); ++j) {
      for (int k = 0; k < alpha[j]; ++k) mono *= v(j);
    }
    terms[i] = mono * f.values(i);
  }
  return f.grid.cell_volume() * pairwise_sum(std::span<const Complex>(terms));
}

SampledFunction project_to_mean_zero(const GradedLieAlgebra& alg, const SampledFunction& f) {
  // Fixed interior bump k with discrete integral normalized to 1. A narrow
  // Gaussian keeps resampled means small (its alias under grid coarsening is
  // spectrally small) while staying inside the inner half box to 1e-12.
  SampledFunction bump(f.grid, SupportClaim::CompactInterior);
  const long total = f.grid.total_points();
  for (long i = 0; i < total; ++i) {
    const Eigen::VectorXd x = f.grid.coordinate(i);
    double value = 1.0;
    for (int j = 0; j < f.grid.dim(); ++j) {
      const double r = f.grid.points(j) > 1 ? x(j) / (0.09 * f.grid.half_width(j)) : 0.0;
      value *= std::exp(-r * r);
    }
    bump.values(i) = value;
  }
  const Complex bump_mass = integral(bump);
  const Complex f_mass = moment(alg, f, MultiIndex(f.grid.dim(), 0));
  SampledFunction out = f;
  out.values -= (f_mass / bump_mass) * bump.values;
  return out;
}

CutoffFamily::CutoffFamily(double a, double b) : a_(a), b_(b) {
  if (!(a > 0) || !(a < 1) || !(b > 1)) {
    throw std::invalid_argument("cutoff plateau must satisfy 0 < a < 1 < b");
  }
}

double CutoffFamily::operator()(double lambda) const {
  if (!(lambda > 0)) return 0.0;
  if (lambda < a_ / 2 || lambda > 2 * b_) return 0.0;
  if (lambda >= a_ && lambda <= b_) return 1.0;
  auto smooth = [](double u) {
    u = std::clamp(u, 0.0, 1.0);
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
  };
  if (lambda < a_) return smooth(std::log(2.0 * lambda / a_) / std::log(2.0));
  return smooth(std::log(2.0 * b_ / lambda) / std::log(2.0));
}

SampledFunction average_over_dilations(const GradedLieAlgebra& alg, const SampledFunction& f,
                                       const CutoffFamily& cutoff, int n_lambda,
                                       double mean_tol) {
  if (n_lambda < 1) throw std::invalid_argument("need at least one quadrature node");
  const Complex mean = moment(alg, f, MultiIndex(f.grid.dim(), 0));
  if (std::abs(mean) >= mean_tol) {
    throw std::invalid_argument(
        "average_over_dilations requires a vanishing integral (mean-zero hypothesis); "
        "got |mean| = " +
        std::to_string(std::abs(mean)));
  }
  const GroupEvaluator ev(alg);
  const double s_min = std::log(cutoff.lower_support());
  const double s_max = std::log(cutoff.upper_support());
  const double ds = (s_max - s_min) / n_lambda;

  SampledFunction out(f.grid, SupportClaim::Unknown);
  const long total = f.grid.total_points();
  parallel_for(total, [&](long i) {
    const Eigen::VectorXd v = f.grid.coordinate(i);
    std::vector<Complex> terms(n_lambda);
    for (int k = 0; k < n_lambda; ++k) {
      const double lambda = std::exp(s_min + (k + 0.5) * ds);
      const double weight = cutoff(lambda) * std::pow(lambda, ev.homogeneous_dim);
      terms[k] = weight != 0.0 ? weight * interpolate(f, ev.dilate_point(lambda, v))
                               : Complex{0.0, 0.0};
    }
    out.values(i) = ds * pairwise_sum(std::span<const Complex>(terms));
  });
  return out;
}

double homogeneity_defect(const GradedLieAlgebra& alg, const SampledFunction& u, double lambda,
                          const Annulus& annulus, double rho) {
  if (!(lambda > 0)) throw std::domain_error("dilation parameter must be positive");
  const GroupEvaluator ev(alg);
  const double factor = std::pow(lambda, rho);
  double sup_defect = 0;
  double sup_u = 0;
  const long total = u.grid.total_points();
  for (long i = 0; i < total; ++i) {
    const Eigen::VectorXd v = u.grid.coordinate(i);
    const double r = quasi_norm(alg, v);
    if (r < annulus.inner || r > annulus.outer) continue;
    sup_u = std::max(sup_u, std::abs(u.values(i)));
    const Complex dilated = factor * interpolate(u, ev.dilate_point(lambda, v));
    sup_defect = std::max(sup_defect, std::abs(dilated - u.values(i)));
  }
  if (sup_u == 0) return 0;
  return sup_defect / sup_u;
}

double homogeneity_defect(const GradedLieAlgebra& alg, const SampledFunction& u, double lambda,
                          const Annulus& annulus) {
  return homogeneity_defect(alg, u, lambda, annulus, to_double(homogeneous_dimension(alg)));
}

SampledFunction difference_op(const GradedLieAlgebra& alg, const SampledFunction& u,
                              const MultiIndex& alpha) {
  if (static_cast<int>(alpha.size()) != u.grid.dim()) {
    throw std::invalid_argument("difference operator multi-index arity mismatch");
  }
  (void)alg;
  SampledFunction out(u.grid, u.claim);
  const long total = u.grid.total_points();
  for (long i = 0; i < total; ++i) {
    const Eigen::VectorXd v = u.grid.coordinate(i);
    double mono = 1.0;
    for (int j = 0; j < u.grid.dim(); ++j) {
      for (int k = 0; k < alpha[j]; ++k) mono *= v(j);
    }
    out.values(i) = mono * u.values(i);
  }
  return out;
}

Eigen::MatrixXcd convolution_operator_matrix(const GradedLieAlgebra& alg,
                                             const SampledFunction& u, const GridSpec& grid,
                                             ConvolutionSide side) {
  const GroupEvaluator ev(alg);
  const long total = grid.total_points();
  const double vol = grid.cell_volume();
  Eigen::MatrixXcd m(total, total);
  std::vector<Eigen::VectorXd> coords(total);
  for (long i = 0; i < total; ++i) coords[i] = grid.coordinate(i);
  parallel_for(total, [&](long r) {
    for (long c = 0; c < total; ++c) {
      const Eigen::VectorXd arg = side == ConvolutionSide::Left
                                      ? ev.multiply(coords[r], -coords[c])
                                      : ev.left_quotient(coords[c], coords[r]);
      m(r, c) = vol * interpolate(u, arg);
    }
  });
  return m;
}

double operator_norm(const Eigen::MatrixXcd& m) {
  const long n = m.cols();
  if (n == 0) return 0;
  Eigen::VectorXcd v = Eigen::VectorXcd::Constant(n, Complex{1.0, 0.0});
  v /= v.norm();
  double estimate = 0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXcd w = m * v;
    Eigen::VectorXcd z = m.adjoint() * w;
    const double znorm = z.norm();
    if (znorm == 0) return 0;
    const double next = std::sqrt(w.squaredNorm());
    z /= znorm;
    const double change = std::abs(next - estimate);
    estimate = next;
    v = z;
    if (it > 0 && change < 1e-10 * std::max(1.0, estimate)) break;
  }
  return estimate;
}

SampledFunction orbit_average_on_section(const std::vector<double>& section_weights,
                                         const SampledFunction& f, const CutoffFamily& cutoff,
                                         int n_lambda) {
  if (static_cast<int>(section_weights.size()) != f.grid.dim()) {
    throw std::invalid_argument("section weight arity mismatch");
  }
  if (n_lambda < 1) throw std::invalid_argument("need at least one quadrature node");
  const double s_min = std::log(cutoff.lower_support());
  const double s_max = std::log(cutoff.upper_support());
  const double ds = (s_max - s_min) / n_lambda;
  SampledFunction out(f.grid, SupportClaim::Unknown);
  const long total = f.grid.total_points();
  parallel_for(total, [&](long i) {
    const Eigen::VectorXd x = f.grid.coordinate(i);
    std::vector<Complex> terms(n_lambda);
    for (int k = 0; k < n_lambda; ++k) {
      const double lambda = std::exp(s_min + (k + 0.5) * ds);
      const double chi = cutoff(lambda);
      if (chi == 0.0) {
        terms[k] = {0.0, 0.0};
        continue;
      }
      Eigen::VectorXd arg(x.size());
      for (int j = 0; j < x.size(); ++j) {
        arg(j) = std::pow(lambda, -section_weights[j]) * x(j);
      }
      terms[k] = chi * interpolate(f, arg);
    }
    out.values(i) = ds * pairwise_sum(std::span<const Complex>(terms));
  });
  return out;
}

bool supported_in_inner_half(const SampledFunction& f, double tol) {
  const long total = f.grid.total_points();
  for (long i = 0; i < total; ++i) {
    if (std::abs(f.values(i)) <= tol) continue;
    const Eigen::VectorXd x = f.grid.coordinate(i);
    for (int j = 0; j < f.grid.dim(); ++j) {
      if (f.grid.points(j) > 1 && std::abs(x(j)) > 0.5 * f.grid.half_width(j)) return false;
    }
  }
  return true;
}

}  // namespace carnot
