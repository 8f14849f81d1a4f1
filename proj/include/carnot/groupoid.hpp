#ifndef CARNOT_GROUPOID_HPP
#define CARNOT_GROUPOID_HPP

#include "carnot/harmonic.hpp"

namespace carnot {

/// Base-point behaviour when a kernel is evaluated off the x-grid. Zero
/// matches compactly supported kernels; Constant declares an x-independent
/// kernel stored as a single-point x-grid (the fiber data is broadcast).
enum class XExtension { Zero, Constant };

/// Sampled element f(x, t, v) of the tangent-groupoid convolution algebra.
/// The t-grid is {0} followed by increasing positive nodes (log-uniform);
/// the x- and v-grids are uniform symmetric boxes.
struct GroupoidKernel {
  GridSpec xgrid;
  std::vector<double> tgrid;
  GridSpec vgrid;
  XExtension x_extension = XExtension::Zero;
  Eigen::VectorXcd values;  // flat index (ix * nt + it) * nv + iv

  GroupoidKernel() = default;
  GroupoidKernel(const GridSpec& xg, std::vector<double> tg, const GridSpec& vg,
                 XExtension ext = XExtension::Zero);

  long xcount() const { return xgrid.total_points(); }
  long tcount() const { return static_cast<long>(tgrid.size()); }
  long vcount() const { return vgrid.total_points(); }
  long flat(long ix, long it, long iv) const { return (ix * tcount() + it) * vcount() + iv; }
  Complex at(long ix, long it, long iv) const { return values(flat(ix, it, iv)); }
  Complex& at(long ix, long it, long iv) { return values(flat(ix, it, iv)); }

  /// The v-fiber over (ix, it) as a sampled function on the v-grid.
  SampledFunction slice(long ix, long it) const;

  bool grids_match(const GroupoidKernel& other) const;
};

/// t-grid {0} u {t_min * r^k} with n_positive log-uniform nodes ending at T.
std::vector<double> make_tgrid(double t_min, double t_max, int n_positive);

GroupoidKernel make_kernel(
    const GridSpec& xg, std::vector<double> tg, const GridSpec& vg,
    const std::function<Complex(const Eigen::VectorXd&, double, const Eigen::VectorXd&)>& fn,
    XExtension ext = XExtension::Zero);

/// Kernel value at arbitrary (x, t, v): multilinear in x (per the extension
/// policy) and v, linear in t between bracketing nodes, zero past the last.
Complex evaluate_kernel(const GroupoidKernel& f, const Eigen::VectorXd& x, double t,
                        const Eigen::VectorXd& v);

/// (f*g)(x,t,v) = int f(x,t,w) g(x alpha_t(w), t, w^{-1} v) dw per slice;
/// at t = 0 this degenerates to fiberwise group convolution. Grids must match.
GroupoidKernel groupoid_convolve(const GradedLieAlgebra& alg, const GroupoidKernel& f,
                                 const GroupoidKernel& g);

/// f^*(x,t,v) = conj f(x alpha_t(v), t, v^{-1}).
GroupoidKernel groupoid_involution(const GradedLieAlgebra& alg, const GroupoidKernel& f);

/// max( sup_{(x,t)} int |f| dv , same for f^* ).
double I_norm(const GradedLieAlgebra& alg, const GroupoidKernel& f);
double I_norm_one_sided(const GroupoidKernel& f);

/// sup over (x, t) of the fiberwise Schwartz seminorm of order N.
double kernel_seminorm(const GradedLieAlgebra& alg, const GroupoidKernel& f, int N);

/// Zoom (sigma_lambda f)(x,t,v) = lambda^Q f(x, t/lambda, alpha_lambda v),
/// resampled on the same grids (index shift in t when lambda lies on the
/// t-grid ratio lattice, interpolation otherwise).
GroupoidKernel zoom(const GradedLieAlgebra& alg, const GroupoidKernel& f, double lambda);

/// Zoom onto the exactly dilated v-grid (no v interpolation); used where a
/// fixed grid cannot resolve strongly zoomed kernels.
GroupoidKernel zoom_rescaled(const GradedLieAlgebra& alg, const GroupoidKernel& f, double lambda);

/// Empty report iff sup_x |int f(x, 0, v) dv| <= tol.
ValidationReport ideal_membership(const GroupoidKernel& f, double tol);

/// p_t as a dense matrix on the l2 grid:
///   K(x,y) = t^{-Q} f(x, t, alpha_{1/t}(x^{-1} y)) * cell volume.
Eigen::MatrixXcd represent_pt(const GradedLieAlgebra& alg, const GroupoidKernel& f, double t);
Eigen::MatrixXcd represent_pt(const GradedLieAlgebra& alg, const GroupoidKernel& f, double t,
                              const GridSpec& l2grid);

/// Normalized sup-entry difference between represent_pt(zoom(f, lambda), t)
/// and represent_pt(f, t / lambda).
double zoom_covariance_check(const GradedLieAlgebra& alg, const GroupoidKernel& f, double t,
                             double lambda);

/// T(h) = int chi(lambda) p_lambda(h) dlambda/lambda by log-uniform midpoint
/// quadrature with n_lambda nodes per decade, on a lattice anchored at
/// lambda = 1 (so quadratures under different cutoffs share nodes).
/// Requires ideal_membership(h, membership_tol) to pass.
Eigen::MatrixXcd averaged_operator(const GradedLieAlgebra& alg, const GroupoidKernel& h,
                                   const CutoffFamily& cutoff, int n_lambda,
                                   double membership_tol = 1e-8);

/// (lambda, I_norm(zoom(f, lambda) * g^*)) for each lambda; the zoomed factor
/// is carried on its exactly dilated grid so large zooms stay resolved.
std::vector<std::pair<double, double>> decay_estimate_probe(const GradedLieAlgebra& alg,
                                                            const GroupoidKernel& f,
                                                            const GroupoidKernel& g,
                                                            const std::vector<double>& lambdas);

/// Least-squares slope of log I against log lambda.
double fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

struct MeanValueProbe {
  double max_ratio;
  double half_sample_max;
  double seminorm_k;
};

/// Sampled ratio |g(gamma . eta) - g(gamma)| divided by the mean-value bound
/// without its constant:
///   |g|_(k) (1+|w|)^{(k+2)(Q+1)} (1+|v|)^{-k(Q+1)} sum_j |w|^{q_j}.
MeanValueProbe mean_value_ratio_probe(const GradedLieAlgebra& alg, const GroupoidKernel& g, int k,
                                      long samples, std::uint64_t seed);

}  // namespace carnot

#endif  // CARNOT_GROUPOID_HPP
