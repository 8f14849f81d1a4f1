#include "carnot/groupoid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace carnot {

namespace {

void check_tgrid(const std::vector<double>& tgrid) {
  if (tgrid.empty() || tgrid.front() != 0.0) {
    throw std::invalid_argument("t-grid must start at t = 0");
  }
  for (size_t i = 1; i < tgrid.size(); ++i) {
    if (!(tgrid[i] > tgrid[i - 1])) throw std::invalid_argument("t-grid must be increasing");
  }
}

/// Index of t on the grid if it coincides with a node (fp tolerance), else -1.
long t_node_index(const std::vector<double>& tgrid, double t) {
  for (size_t i = 0; i < tgrid.size(); ++i) {
    const double node = tgrid[i];
    if (std::abs(t - node) <= 1e-12 * std::max(1.0, std::abs(node))) return static_cast<long>(i);
  }
  return -1;
}

/// Fast multilinear interpolation from a raw value pointer, zero outside.
Complex interp_raw(const GridSpec& grid, const Complex* values, const double* point) {
  const int d = grid.dim();
  if (d > 8) throw std::invalid_argument("grid dimension too large");
  int base[8];
  double frac[8];
  long stride[8];
  long run = 1;
  for (int j = d - 1; j >= 0; --j) {
    stride[j] = run;
    run *= grid.points(j);
  }
  for (int j = 0; j < d; ++j) {
    if (grid.points(j) == 1) {
      if (point[j] != 0.0) return {0.0, 0.0};
      base[j] = 0;
      frac[j] = 0.0;
      continue;
    }
    const double h = grid.spacing(j);
    const double t = (point[j] + grid.half_width(j)) / h;
    if (t < 0.0 || t > grid.points(j) - 1) return {0.0, 0.0};
    int cell = static_cast<int>(t);
    if (cell >= grid.points(j) - 1) cell = grid.points(j) - 2;
    base[j] = cell;
    frac[j] = t - cell;
  }
  Complex sum{0.0, 0.0};
  const int corners = 1 << d;
  for (int corner = 0; corner < corners; ++corner) {
    double weight = 1.0;
    long flat = 0;
    bool skip = false;
    for (int j = 0; j < d; ++j) {
      const bool high = (corner >> j) & 1;
      if (grid.points(j) == 1) {
        if (high) {
          skip = true;
          break;
        }
        continue;
      }
      weight *= high ? frac[j] : 1.0 - frac[j];
      flat += (base[j] + (high ? 1 : 0)) * stride[j];
    }
    if (skip || weight == 0.0) continue;
    sum += weight * values[flat];
  }
  return sum;
}

}  // namespace

GroupoidKernel::GroupoidKernel(const GridSpec& xg, std::vector<double> tg, const GridSpec& vg,
                               XExtension ext)
    : xgrid(xg), tgrid(std::move(tg)), vgrid(vg), x_extension(ext) {
  check_tgrid(tgrid);
  values = Eigen::VectorXcd::Zero(xcount() * tcount() * vcount());
}

SampledFunction GroupoidKernel::slice(long ix, long it) const {
  SampledFunction f(vgrid);
  f.values = values.segment(flat(ix, it, 0), vcount());
  return f;
}

bool GroupoidKernel::grids_match(const GroupoidKernel& other) const {
  return xgrid == other.xgrid && vgrid == other.vgrid && tgrid == other.tgrid &&
         x_extension == other.x_extension;
}

std::vector<double> make_tgrid(double t_min, double t_max, int n_positive) {
  if (!(t_min > 0) || !(t_max > t_min) || n_positive < 2) {
    throw std::invalid_argument("need 0 < t_min < t_max and at least two positive nodes");
  }
  std::vector<double> t{0.0};
  const double ratio = std::pow(t_max / t_min, 1.0 / (n_positive - 1));
  for (int k = 0; k < n_positive; ++k) t.push_back(t_min * std::pow(ratio, k));
  return t;
}

GroupoidKernel make_kernel(
    const GridSpec& xg, std::vector<double> tg, const GridSpec& vg,
    const std::function<Complex(const Eigen::VectorXd&, double, const Eigen::VectorXd&)>& fn,
    XExtension ext) {
  GroupoidKernel k(xg, std::move(tg), vg, ext);
  for (long ix = 0; ix < k.xcount(); ++ix) {
    const Eigen::VectorXd x = k.xgrid.coordinate(ix);
    for (long it = 0; it < k.tcount(); ++it) {
      for (long iv = 0; iv < k.vcount(); ++iv) {
        k.at(ix, it, iv) = fn(x, k.tgrid[it], k.vgrid.coordinate(iv));
      }
    }
  }
  return k;
}

namespace {

/// Interpolation in (x, v) at a fixed t-node.
Complex eval_slice(const GroupoidKernel& f, const Eigen::VectorXd& x, long it,
                   const Eigen::VectorXd& v) {
  if (f.x_extension == XExtension::Constant || f.xcount() == 1) {
    if (f.x_extension == XExtension::Zero && f.xcount() == 1) {
      // Single-point grid with zero extension: only x = 0 carries data.
      for (int j = 0; j < x.size(); ++j) {
        if (x(j) != 0.0) return {0.0, 0.0};
      }
    }
    return interp_raw(f.vgrid, f.values.data() + f.flat(0, it, 0), v.data());
  }
  // Multilinear in x over slices.
  const int d = f.xgrid.dim();
  int base[8];
  double frac[8];
  if (d > 8) throw std::invalid_argument("x-grid dimension too large");
  for (int j = 0; j < d; ++j) {
    const double h = f.xgrid.spacing(j);
    const double t = (x(j) + f.xgrid.half_width(j)) / h;
    if (t < 0.0 || t > f.xgrid.points(j) - 1) return {0.0, 0.0};
    int cell = static_cast<int>(t);
    if (cell >= f.xgrid.points(j) - 1) cell = f.xgrid.points(j) - 2;
    base[j] = cell;
    frac[j] = t - cell;
  }
  Complex sum{0.0, 0.0};
  for (int corner = 0; corner < (1 << d); ++corner) {
    double weight = 1.0;
    long flat = 0;
    for (int j = 0; j < d; ++j) {
      const bool high = (corner >> j) & 1;
      weight *= high ? frac[j] : 1.0 - frac[j];
      flat = flat * f.xgrid.points(j) + base[j] + (high ? 1 : 0);
    }
    if (weight == 0.0) continue;
    sum += weight * interp_raw(f.vgrid, f.values.data() + f.flat(flat, it, 0), v.data());
  }
  return sum;
}

}  // namespace

Complex evaluate_kernel(const GroupoidKernel& f, const Eigen::VectorXd& x, double t,
                        const Eigen::VectorXd& v) {
  if (t < 0) return {0.0, 0.0};
  const long node = t_node_index(f.tgrid, t);
  if (node >= 0) return eval_slice(f, x, node, v);
  // Linear interpolation between bracketing t-nodes; zero past the end.
  const auto upper = std::upper_bound(f.tgrid.begin(), f.tgrid.end(), t);
  if (upper == f.tgrid.end()) return {0.0, 0.0};
  const long hi = upper - f.tgrid.begin();
  const long lo = hi - 1;
  const double w = (t - f.tgrid[lo]) / (f.tgrid[hi] - f.tgrid[lo]);
  return (1.0 - w) * eval_slice(f, x, lo, v) + w * eval_slice(f, x, hi, v);
}

namespace {

/// Bounding box (lo..hi per axis, inclusive) of the nonzero entries of a
/// v-slice; false when the slice vanishes.
bool slice_support_box(const GroupoidKernel& f, long ix, long it, Eigen::VectorXi& lo,
                       Eigen::VectorXi& hi) {
  const int d = f.vgrid.dim();
  lo = f.vgrid.points;
  hi = Eigen::VectorXi::Constant(d, -1);
  bool any = false;
  for (long iv = 0; iv < f.vcount(); ++iv) {
    if (f.at(ix, it, iv) == Complex{0.0, 0.0}) continue;
    any = true;
    const Eigen::VectorXi idx = f.vgrid.unflatten(iv);
    for (int j = 0; j < d; ++j) {
      lo(j) = std::min(lo(j), idx(j));
      hi(j) = std::max(hi(j), idx(j));
    }
  }
  return any;
}

/// Core convolution: out(x,t,v) = int f(x,t,w) g(x alpha_t(w), t, w^{-1}v) dw
/// with w running over f's v-grid and the output sampled on out_vgrid.
/// The inner loop is allocation-free; each output entry is produced by a
/// single thread with a fixed summation order.
GroupoidKernel convolve_core(const GroupEvaluator& ev, const GroupoidKernel& f,
                             const GroupoidKernel& g, const GridSpec& out_vgrid) {
  GroupoidKernel out(f.xgrid, f.tgrid, out_vgrid, f.x_extension);
  const double vol = f.vgrid.cell_volume();
  const long nw = f.vcount();
  const long nv = out_vgrid.total_points();
  const int d = ev.dim;
  if (d > 8) throw std::invalid_argument("grid dimension too large");

  std::vector<double> wflat(nw * d), vflat(nv * d);
  for (long iw = 0; iw < nw; ++iw) {
    const Eigen::VectorXd w = f.vgrid.coordinate(iw);
    for (int j = 0; j < d; ++j) wflat[iw * d + j] = w(j);
  }
  for (long iv = 0; iv < nv; ++iv) {
    const Eigen::VectorXd v = out_vgrid.coordinate(iv);
    for (int j = 0; j < d; ++j) vflat[iv * d + j] = v(j);
  }

  const bool x_const = f.x_extension == XExtension::Constant;
  for (long ix = 0; ix < out.xcount(); ++ix) {
    const Eigen::VectorXd x = out.xgrid.coordinate(ix);
    for (long it = 0; it < out.tcount(); ++it) {
      const double t = out.tgrid[it];
      Eigen::VectorXi lo, hi;
      if (!slice_support_box(f, ix, it, lo, hi)) continue;
      // Flat list of support indices, in index order.
      std::vector<long> support;
      {
        Eigen::VectorXi idx = lo;
        while (true) {
          support.push_back(f.vgrid.flatten(idx));
          int j = f.vgrid.dim() - 1;
          while (j >= 0) {
            if (++idx(j) <= hi(j)) break;
            idx(j) = lo(j);
            --j;
          }
          if (j < 0) break;
        }
      }
      const long gt = t_node_index(g.tgrid, t);
      if (gt < 0) throw std::logic_error("convolution t-node missing from the other factor");
      const Complex* fslice = f.values.data() + f.flat(ix, it, 0);
      const Complex* gslice_const = g.values.data() + g.flat(x_const ? 0 : ix, gt, 0);
      parallel_for(nv, [&](long iv) {
        thread_local std::vector<Complex> terms;
        terms.assign(support.size(), Complex{0.0, 0.0});
        const double* v = &vflat[iv * d];
        double pt[16];
        double arg[8];
        for (size_t s = 0; s < support.size(); ++s) {
          const long iw = support[s];
          const Complex fw = fslice[iw];
          if (fw == Complex{0.0, 0.0}) continue;
          const double* w = &wflat[iw * d];
          for (int j = 0; j < d; ++j) {
            pt[j] = -w[j];
            pt[d + j] = v[j];
          }
          ev.product.evaluate(pt, arg);  // w^{-1} v
          Complex gval;
          if (x_const || t == 0.0) {
            // x-independent data, or alpha_0(w) = 0 making the base point the
            // grid node x itself: the slice convolution needs no
            // x-interpolation.
            gval = interp_raw(g.vgrid, gslice_const, arg);
          } else {
            Eigen::VectorXd wvec(d);
            for (int j = 0; j < d; ++j) wvec(j) = w[j];
            const Eigen::VectorXd base = ev.multiply(x, ev.dilate_point(t, wvec));
            Eigen::VectorXd argvec(d);
            for (int j = 0; j < d; ++j) argvec(j) = arg[j];
            gval = eval_slice(g, base, gt, argvec);
          }
          terms[s] = fw * gval;
        }
        out.at(ix, it, iv) = vol * pairwise_sum(std::span<const Complex>(terms));
      });
    }
  }
  return out;
}

}  // namespace

GroupoidKernel groupoid_convolve(const GradedLieAlgebra& alg, const GroupoidKernel& f,
                                 const GroupoidKernel& g) {
  if (!f.grids_match(g)) throw std::invalid_argument("groupoid convolution grid mismatch");
  const GroupEvaluator ev(alg);
  return convolve_core(ev, f, g, f.vgrid);
}

GroupoidKernel groupoid_involution(const GradedLieAlgebra& alg, const GroupoidKernel& f) {
  const GroupEvaluator ev(alg);
  GroupoidKernel out(f.xgrid, f.tgrid, f.vgrid, f.x_extension);
  const bool x_const = f.x_extension == XExtension::Constant;
  for (long ix = 0; ix < f.xcount(); ++ix) {
    const Eigen::VectorXd x = f.xgrid.coordinate(ix);
    for (long it = 0; it < f.tcount(); ++it) {
      const double t = f.tgrid[it];
      for (long iv = 0; iv < f.vcount(); ++iv) {
        const Eigen::VectorXi idx = f.vgrid.unflatten(iv);
        Eigen::VectorXi mirrored(idx.size());
        for (int j = 0; j < idx.size(); ++j) mirrored(j) = f.vgrid.points(j) - 1 - idx(j);
        const long inv_iv = f.vgrid.flatten(mirrored);
        if (x_const || t == 0.0) {
          out.at(ix, it, iv) = std::conj(f.at(ix, it, inv_iv));
        } else {
          const Eigen::VectorXd v = f.vgrid.coordinate(iv);
          const Eigen::VectorXd base = ev.multiply(x, ev.dilate_point(t, v));
          const Eigen::VectorXd inv_v = f.vgrid.coordinate(inv_iv);
          out.at(ix, it, iv) = std::conj(eval_slice(f, base, it, inv_v));
        }
      }
    }
  }
  return out;
}

double I_norm_one_sided(const GroupoidKernel& f) {
  double sup = 0;
  const double vol = f.vgrid.cell_volume();
  std::vector<double> mags(f.vcount());
  for (long ix = 0; ix < f.xcount(); ++ix) {
    for (long it = 0; it < f.tcount(); ++it) {
      for (long iv = 0; iv < f.vcount(); ++iv) mags[iv] = std::abs(f.at(ix, it, iv));
      sup = std::max(sup, vol * pairwise_sum(std::span<const double>(mags)));
    }
  }
  return sup;
}

double I_norm(const GradedLieAlgebra& alg, const GroupoidKernel& f) {
  return std::max(I_norm_one_sided(f), I_norm_one_sided(groupoid_involution(alg, f)));
}

double kernel_seminorm(const GradedLieAlgebra& alg, const GroupoidKernel& f, int N) {
  double sup = 0;
  for (long ix = 0; ix < f.xcount(); ++ix) {
    for (long it = 0; it < f.tcount(); ++it) {
      sup = std::max(sup, schwartz_seminorm(alg, f.slice(ix, it), N).value);
    }
  }
  return sup;
}

namespace {

/// Ratio of the positive t-grid, or 0 when it is not log-uniform.
double tgrid_ratio(const std::vector<double>& tgrid) {
  if (tgrid.size() < 3) return 0.0;
  const double r = tgrid[2] / tgrid[1];
  for (size_t i = 2; i + 1 < tgrid.size(); ++i) {
    if (std::abs(tgrid[i + 1] / tgrid[i] - r) > 1e-9 * r) return 0.0;
  }
  return r;
}

/// lambda as an integer power of the grid ratio, if it is one.
std::optional<long> ratio_lattice_exponent(const std::vector<double>& tgrid, double lambda) {
  const double r = tgrid_ratio(tgrid);
  if (r <= 0 || r == 1.0) return std::nullopt;
  const double s = std::log(lambda) / std::log(r);
  const double rounded = std::round(s);
  if (std::abs(s - rounded) > 1e-9) return std::nullopt;
  return static_cast<long>(rounded);
}

/// Value of f at (x-node ix, t, v-node iv) with t handled by exact index
/// shift when possible, interpolation otherwise.
Complex t_resample(const GroupoidKernel& f, long ix, double t, long iv,
                   std::optional<long> shift_from_node) {
  if (shift_from_node) {
    const long source = *shift_from_node;
    if (source < 0) return {0.0, 0.0};
    return f.at(ix, source, iv);
  }
  // interpolate between bracketing nodes
  if (t < 0) return {0.0, 0.0};
  const long node = t_node_index(f.tgrid, t);
  if (node >= 0) return f.at(ix, node, iv);
  const auto upper = std::upper_bound(f.tgrid.begin(), f.tgrid.end(), t);
  if (upper == f.tgrid.end()) return {0.0, 0.0};
  const long hi = upper - f.tgrid.begin();
  const long lo = hi - 1;
  const double w = (t - f.tgrid[lo]) / (f.tgrid[hi] - f.tgrid[lo]);
  return (1.0 - w) * f.at(ix, lo, iv) + w * f.at(ix, hi, iv);
}

/// Source node index for slice it under t -> t/lambda when lambda = ratio^s:
/// positive nodes shift down by s; node 0 stays; nodes falling below the
/// first positive node signal interpolation (returned as nullopt).
std::optional<long> shifted_source(const GroupoidKernel& f, long it, long s) {
  if (it == 0) return 0;
  const long source = it - s;
  if (source >= 1 && source < f.tcount()) return source;
  return std::nullopt;
}

}  // namespace

GroupoidKernel zoom(const GradedLieAlgebra& alg, const GroupoidKernel& f, double lambda) {
  if (!(lambda > 0)) throw std::domain_error("zoom parameter must be positive");
  const GroupEvaluator ev(alg);
  const double factor = std::pow(lambda, ev.homogeneous_dim);
  const auto lattice = ratio_lattice_exponent(f.tgrid, lambda);
  GroupoidKernel out(f.xgrid, f.tgrid, f.vgrid, f.x_extension);
  for (long ix = 0; ix < f.xcount(); ++ix) {
    const Eigen::VectorXd x = f.xgrid.coordinate(ix);
    for (long it = 0; it < f.tcount(); ++it) {
      const double t_target = f.tgrid[it] / lambda;
      std::optional<long> shift;
      if (lattice) shift = shifted_source(f, it, *lattice);
      for (long iv = 0; iv < f.vcount(); ++iv) {
        const Eigen::VectorXd v = ev.dilate_point(lambda, f.vgrid.coordinate(iv));
        Complex value;
        if (shift) {
          // v still needs interpolation on the fixed grid.
          value = interp_raw(f.vgrid, f.values.data() + f.flat(ix, *shift, 0), v.data());
        } else {
          value = evaluate_kernel(f, x, t_target, v);
        }
        out.at(ix, it, iv) = factor * value;
      }
    }
  }
  return out;
}

GroupoidKernel zoom_rescaled(const GradedLieAlgebra& alg, const GroupoidKernel& f,
                             double lambda) {
  if (!(lambda > 0)) throw std::domain_error("zoom parameter must be positive");
  const GroupEvaluator ev(alg);
  const double factor = std::pow(lambda, ev.homogeneous_dim);
  Eigen::VectorXd r(f.vgrid.dim());
  for (int j = 0; j < f.vgrid.dim(); ++j) {
    r(j) = f.vgrid.half_width(j) / std::pow(lambda, ev.weights[j]);
  }
  GroupoidKernel out(f.xgrid, f.tgrid, GridSpec(r, f.vgrid.points), f.x_extension);
  const auto lattice = ratio_lattice_exponent(f.tgrid, lambda);
  for (long ix = 0; ix < f.xcount(); ++ix) {
    for (long it = 0; it < f.tcount(); ++it) {
      const double t_target = f.tgrid[it] / lambda;
      std::optional<long> shift;
      if (lattice) shift = shifted_source(f, it, *lattice);
      for (long iv = 0; iv < f.vcount(); ++iv) {
        // alpha_lambda maps the rescaled node exactly onto the source node.
        out.at(ix, it, iv) = factor * t_resample(f, ix, t_target, iv, shift);
      }
    }
  }
  return out;
}

ValidationReport ideal_membership(const GroupoidKernel& f, double tol) {
  ValidationReport report;
  const double vol = f.vgrid.cell_volume();
  std::vector<Complex> slice(f.vcount());
  for (long ix = 0; ix < f.xcount(); ++ix) {
    for (long iv = 0; iv < f.vcount(); ++iv) slice[iv] = f.at(ix, 0, iv);
    const double mean = std::abs(vol * pairwise_sum(std::span<const Complex>(slice)));
    if (mean > tol) {
      report.violations.push_back("t = 0 fiber over x-index " + std::to_string(ix) +
                                  " has |int f dv| = " + std::to_string(mean) + " > tol");
    }
  }
  return report;
}

Eigen::MatrixXcd represent_pt(const GradedLieAlgebra& alg, const GroupoidKernel& f, double t,
                              const GridSpec& l2grid) {
  if (!(t > 0)) throw std::domain_error("represent_pt requires t > 0");
  const GroupEvaluator ev(alg);
  const long n = l2grid.total_points();
  const double vol = l2grid.cell_volume();
  const double tq = std::pow(t, -ev.homogeneous_dim);
  Eigen::MatrixXcd k(n, n);
  std::vector<Eigen::VectorXd> coords(n);
  for (long i = 0; i < n; ++i) coords[i] = l2grid.coordinate(i);
  parallel_for(n, [&](long r) {
    for (long c = 0; c < n; ++c) {
      const Eigen::VectorXd arg = ev.dilate_point(1.0 / t, ev.left_quotient(coords[r], coords[c]));
      k(r, c) = tq * vol * evaluate_kernel(f, coords[r], t, arg);
    }
  });
  return k;
}

Eigen::MatrixXcd represent_pt(const GradedLieAlgebra& alg, const GroupoidKernel& f, double t) {
  return represent_pt(alg, f, t, f.xgrid);
}

double zoom_covariance_check(const GradedLieAlgebra& alg, const GroupoidKernel& f, double t,
                             double lambda) {
  const Eigen::MatrixXcd lhs = represent_pt(alg, zoom(alg, f, lambda), t);
  const Eigen::MatrixXcd rhs = represent_pt(alg, f, t / lambda);
  const double scale = rhs.cwiseAbs().maxCoeff();
  if (scale == 0) return 0;
  return (lhs - rhs).cwiseAbs().maxCoeff() / scale;
}

Eigen::MatrixXcd averaged_operator(const GradedLieAlgebra& alg, const GroupoidKernel& h,
                                   const CutoffFamily& cutoff, int n_lambda,
                                   double membership_tol) {
  const auto membership = ideal_membership(h, membership_tol);
  if (!membership.ok()) {
    throw std::invalid_argument(
        "averaged_operator requires the t = 0 fibers to have vanishing integrals "
        "(ideal membership): " +
        membership.violations.front());
  }
  if (n_lambda < 1) throw std::invalid_argument("need at least one quadrature node");
  // Log-uniform midpoint nodes on an absolute lattice anchored at lambda = 1,
  // n_lambda nodes per decade: quadratures with different cutoffs share their
  // nodes on the common support, so operator differences isolate the cutoff
  // tails instead of node reshuffling.
  const double ds = std::log(10.0) / n_lambda;
  const double s_min = std::log(cutoff.lower_support());
  const double s_max = std::log(cutoff.upper_support());
  const long k_lo = static_cast<long>(std::ceil(s_min / ds - 0.5));
  const long k_hi = static_cast<long>(std::floor(s_max / ds - 0.5));
  const long n = h.xgrid.total_points();
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(n, n);
  for (long k = k_lo; k <= k_hi; ++k) {
    const double lambda = std::exp((k + 0.5) * ds);
    const double chi = cutoff(lambda);
    if (chi == 0.0) continue;
    if (lambda >= h.tgrid.back()) continue;  // kernel vanishes past the last node
    total += (chi * ds) * represent_pt(alg, h, lambda);
  }
  return total;
}

std::vector<std::pair<double, double>> decay_estimate_probe(const GradedLieAlgebra& alg,
                                                            const GroupoidKernel& f,
                                                            const GroupoidKernel& g,
                                                            const std::vector<double>& lambdas) {
  const GroupEvaluator ev(alg);
  const GroupoidKernel g_star = groupoid_involution(alg, g);
  std::vector<std::pair<double, double>> out;
  for (double lambda : lambdas) {
    const GroupoidKernel zoomed = zoom_rescaled(alg, f, lambda);
    const GroupoidKernel h = convolve_core(ev, zoomed, g_star, g.vgrid);
    out.emplace_back(lambda, I_norm(alg, h));
  }
  return out;
}

double fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long n = 0;
  for (const auto& [x, y] : points) {
    if (!(x > 0) || !(y > 0)) continue;
    const double lx = std::log(x);
    const double ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++n;
  }
  if (n < 2) throw std::invalid_argument("need at least two positive points for a slope fit");
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

MeanValueProbe mean_value_ratio_probe(const GradedLieAlgebra& alg, const GroupoidKernel& g, int k,
                                      long samples, std::uint64_t seed) {
  const GroupEvaluator ev(alg);
  const double q_hom = ev.homogeneous_dim;
  const double seminorm = kernel_seminorm(alg, g, k);
  DetRng rng(seed);
  double max_ratio = 0;
  double half_max = 0;
  for (long s = 0; s < samples; ++s) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(g.xgrid.dim());
    if (g.x_extension == XExtension::Zero && g.xcount() > 1) {
      for (int j = 0; j < g.xgrid.dim(); ++j) {
        x(j) = rng.uniform(-0.5 * g.xgrid.half_width(j), 0.5 * g.xgrid.half_width(j));
      }
    }
    const double t = g.tgrid[rng.next_raw() % g.tgrid.size()];
    Eigen::VectorXd v(g.vgrid.dim()), w(g.vgrid.dim());
    for (int j = 0; j < g.vgrid.dim(); ++j) {
      v(j) = rng.uniform(-0.4 * g.vgrid.half_width(j), 0.4 * g.vgrid.half_width(j));
      w(j) = rng.uniform(-0.2 * g.vgrid.half_width(j), 0.2 * g.vgrid.half_width(j));
    }
    const Eigen::VectorXd vw = ev.multiply(v, w);
    const Complex moved = evaluate_kernel(g, x, t, vw);
    const Complex stayed = evaluate_kernel(g, x, t, v);
    const double lhs = std::abs(moved - stayed);
    double wsum = 0;
    const double wnorm = quasi_norm(ev, w);
    for (int j = 0; j < ev.dim; ++j) wsum += std::pow(wnorm, ev.weights[j]);
    const double rhs = seminorm * std::pow(1.0 + wnorm, (k + 2) * (q_hom + 1)) /
                       std::pow(1.0 + quasi_norm(ev, v), k * (q_hom + 1)) * wsum;
    if (rhs == 0) continue;
    const double ratio = lhs / rhs;
    max_ratio = std::max(max_ratio, ratio);
    if (s < samples / 2) half_max = std::max(half_max, ratio);
  }
  return {max_ratio, half_max, seminorm};
}

}  // namespace carnot
