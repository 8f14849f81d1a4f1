#ifndef CARNOT_HARMONIC_HPP
#define CARNOT_HARMONIC_HPP

#include "carnot/grid.hpp"
#include "carnot/group_law.hpp"

#include <cstdint>

namespace carnot {

/// Deterministic pseudo-random stream (splitmix64) for sampled probes.
class DetRng {
 public:
  explicit DetRng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}
  std::uint64_t next_raw();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  Eigen::VectorXd uniform_vector(int dim, double lo, double hi);

 private:
  std::uint64_t state_;
};

/// Homogeneous quasi-norm |x| = sum_j |x_j|^{1/q_j}.
double quasi_norm(const GradedLieAlgebra& alg, const Eigen::VectorXd& x);
double quasi_norm(const GroupEvaluator& g, const Eigen::VectorXd& x);

struct TriangleProbe {
  double constant;        // max |xy| / (|x| + |y|) over the sampled pairs
  double half_sample_max; // same maximum over the first half of the samples
};

/// Empirical constant for |xy| <= C (|x| + |y|).
TriangleProbe triangle_constant_probe(const GradedLieAlgebra& alg, long samples,
                                      std::uint64_t seed);

struct SeminormResult {
  double value;
  Eigen::VectorXd attained_at;  // reported so truncation artifacts are visible
  int attained_order;           // |I| of the attaining derivative
  bool resolution_warning;      // derivative order high for the grid
};

/// Discrete Schwartz-type seminorm
///   sup_{|I| <= N, x} (1 + |x|)^{(N+1)(Q+1)} |d^I f(x)|
/// with 2nd-order central differences, sup over interior points where the
/// stencil fits.
SeminormResult schwartz_seminorm(const GradedLieAlgebra& alg, const SampledFunction& f, int N);

/// Group convolution (f*g)(x) = int f(y) g(y^{-1} x) dy as a Riemann sum,
/// g evaluated by multilinear interpolation, zero outside the box.
SampledFunction convolve(const GradedLieAlgebra& alg, const SampledFunction& f,
                         const SampledFunction& g);

/// Involution f^*(x) = conj f(x^{-1}); exact on the symmetric grid.
SampledFunction group_involution(const SampledFunction& f);

/// (sigma_lambda f)(x) = lambda^Q f(alpha_lambda x), resampled.
SampledFunction dilate(const GradedLieAlgebra& alg, const SampledFunction& f, double lambda);

/// Riemann moment int v^alpha f(v) dv.
Complex moment(const GradedLieAlgebra& alg, const SampledFunction& f, const MultiIndex& alpha);

/// f minus (int f) times a fixed normalized interior bump; the result has
/// zeroth moment at machine scale.
SampledFunction project_to_mean_zero(const GradedLieAlgebra& alg, const SampledFunction& f);

/// Smooth plateau cutoff chi: 1 on [a, b], 0 outside [a/2, 2b], quintic
/// smoothstep transitions in log-lambda; chi(1/l) = chi(l) when b = 1/a.
class CutoffFamily {
 public:
  CutoffFamily(double a, double b);
  double a() const { return a_; }
  double b() const { return b_; }
  double lower_support() const { return a_ / 2; }
  double upper_support() const { return 2 * b_; }
  double operator()(double lambda) const;

 private:
  double a_, b_;
};

/// Dilation average int chi(l) sigma_l(f) dl/l by log-uniform midpoint
/// quadrature with n_lambda nodes over the cutoff support. Requires
/// |moment(f, 0)| < mean_tol (default 1e-10); otherwise throws
/// std::invalid_argument citing the vanishing-integral hypothesis.
SampledFunction average_over_dilations(const GradedLieAlgebra& alg, const SampledFunction& f,
                                       const CutoffFamily& cutoff, int n_lambda,
                                       double mean_tol = 1e-10);

struct Annulus {
  double inner;
  double outer;
};

/// sup over annulus grid points of |lambda^rho u(alpha_lambda v) - u(v)|
/// normalized by sup |u| on the annulus. rho = Q detects kernels of type 0;
/// a kernel of type nu has vanishing defect at rho = Q - nu.
double homogeneity_defect(const GradedLieAlgebra& alg, const SampledFunction& u, double lambda,
                          const Annulus& annulus, double rho);
double homogeneity_defect(const GradedLieAlgebra& alg, const SampledFunction& u, double lambda,
                          const Annulus& annulus);

/// v -> v^alpha u(v), the kernel-side difference operator.
SampledFunction difference_op(const GradedLieAlgebra& alg, const SampledFunction& u,
                              const MultiIndex& alpha);

enum class ConvolutionSide {
  Left,   // psi -> u * psi, kernel K(x,y) = u(x y^{-1})
  Right,  // psi -> psi * u, kernel K(x,y) = u(y^{-1} x)
};

/// Dense matrix of the convolution operator on the L^2 grid, entries
/// (cell volume) * u(...) with interpolation.
Eigen::MatrixXcd convolution_operator_matrix(const GradedLieAlgebra& alg,
                                             const SampledFunction& u, const GridSpec& grid,
                                             ConvolutionSide side);

/// Spectral norm by power iteration on M^H M; fixed all-ones start vector,
/// 200 iterations or relative change < 1e-10.
double operator_norm(const Eigen::MatrixXcd& m);

/// Orbit average F(x) = int f(lambda^{-w} . x) dlambda/lambda of the scaling
/// action (lambda . x)_j = lambda^{w_j} x_j on a cross-section, cut off by
/// chi; log-uniform quadrature. F is constant on orbits.
SampledFunction orbit_average_on_section(const std::vector<double>& section_weights,
                                         const SampledFunction& f, const CutoffFamily& cutoff,
                                         int n_lambda);

/// Support-radius safety check: claims CompactInterior iff all values with
/// |x_j| > R_j / 2 are below tol in magnitude.
bool supported_in_inner_half(const SampledFunction& f, double tol = 1e-12);

}  // namespace carnot

#endif  // CARNOT_HARMONIC_HPP
