#include "carnot/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace carnot {

GridSpec::GridSpec(const Eigen::VectorXd& r, const Eigen::VectorXi& n) : half_width(r), points(n) {
  if (r.size() != n.size()) throw std::invalid_argument("grid spec arity mismatch");
  long total = 1;
  for (int j = 0; j < n.size(); ++j) {
    if (n(j) < 1 || (n(j) > 1 && n(j) % 2 == 0)) {
      throw std::invalid_argument("grid points per axis must be odd (or 1)");
    }
    if (!(r(j) > 0) && n(j) > 1) throw std::invalid_argument("grid half-width must be positive");
    total *= n(j);
  }
  if (total > kMaxPoints) throw std::invalid_argument("grid exceeds the point budget");
}

GridSpec GridSpec::cube(int dim, double r, int n) {
  return GridSpec(Eigen::VectorXd::Constant(dim, r), Eigen::VectorXi::Constant(dim, n));
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int j = 0; j < dim(); ++j) {
    if (points(j) > 1) v *= spacing(j);
  }
  return v;
}

long GridSpec::total_points() const {
  long t = 1;
  for (int j = 0; j < dim(); ++j) t *= points(j);
  return t;
}

Eigen::VectorXd GridSpec::coordinate(const Eigen::VectorXi& idx) const {
  Eigen::VectorXd x(dim());
  for (int j = 0; j < dim(); ++j) {
    x(j) = points(j) > 1 ? -half_width(j) + spacing(j) * idx(j) : 0.0;
  }
  return x;
}

Eigen::VectorXd GridSpec::coordinate(long flat) const { return coordinate(unflatten(flat)); }

Eigen::VectorXi GridSpec::unflatten(long flat) const {
  Eigen::VectorXi idx(dim());
  for (int j = dim() - 1; j >= 0; --j) {
    idx(j) = static_cast<int>(flat % points(j));
    flat /= points(j);
  }
  return idx;
}

long GridSpec::flatten(const Eigen::VectorXi& idx) const {
  long flat = 0;
  for (int j = 0; j < dim(); ++j) {
    if (idx(j) < 0 || idx(j) >= points(j)) throw std::out_of_range("grid index out of range");
    flat = flat * points(j) + idx(j);
  }
  return flat;
}

bool GridSpec::operator==(const GridSpec& other) const {
  return points.size() == other.points.size() && points == other.points &&
         half_width == other.half_width;
}

std::string GridSpec::describe() const {
  std::ostringstream out;
  out << "dim=" << dim();
  for (int j = 0; j < dim(); ++j) {
    out << ";axis" << j << ":N=" << points(j) << ",R=" << half_width(j);
  }
  return out.str();
}

SampledFunction SampledFunction::from_function(
    const GridSpec& g, const std::function<Complex(const Eigen::VectorXd&)>& f, SupportClaim c) {
  SampledFunction out(g, c);
  const long total = g.total_points();
  for (long i = 0; i < total; ++i) out.values(i) = f(g.coordinate(i));
  return out;
}

Complex interpolate_values(const GridSpec& grid, const Eigen::VectorXcd& values,
                           const Eigen::VectorXd& point) {
  const int d = grid.dim();
  // Per-axis cell index and fractional offset; zero outside the box.
  int base[8];
  double frac[8];
  bool on_axis[8];
  if (d > 8) throw std::invalid_argument("grid dimension too large");
  for (int j = 0; j < d; ++j) {
    if (grid.points(j) == 1) {
      base[j] = 0;
      frac[j] = 0.0;
      on_axis[j] = false;
      if (point(j) != 0.0) return {0.0, 0.0};
      continue;
    }
    const double h = grid.spacing(j);
    const double t = (point(j) + grid.half_width(j)) / h;
    if (t < 0.0 || t > grid.points(j) - 1) return {0.0, 0.0};
    int cell = static_cast<int>(t);
    if (cell >= grid.points(j) - 1) cell = grid.points(j) - 2;
    base[j] = cell;
    frac[j] = t - cell;
    on_axis[j] = true;
  }
  // Accumulate over the 2^k corners of the cell (k = number of active axes).
  Complex sum{0.0, 0.0};
  const int corners = 1 << d;
  for (int corner = 0; corner < corners; ++corner) {
    double weight = 1.0;
    long flat = 0;
    bool skip = false;
    for (int j = 0; j < d; ++j) {
      const bool high = (corner >> j) & 1;
      if (!on_axis[j]) {
        if (high) {
          skip = true;
          break;
        }
        flat = flat * grid.points(j);
        continue;
      }
      weight *= high ? frac[j] : 1.0 - frac[j];
      flat = flat * grid.points(j) + base[j] + (high ? 1 : 0);
    }
    if (skip || weight == 0.0) continue;
    sum += weight * values(flat);
  }
  return sum;
}

Complex interpolate(const SampledFunction& f, const Eigen::VectorXd& point) {
  return interpolate_values(f.grid, f.values, point);
}

namespace {

template <typename T>
T pairwise_sum_impl(std::span<const T> values) {
  const size_t n = values.size();
  if (n == 0) return T{};
  if (n <= 8) {
    T sum = values[0];
    for (size_t i = 1; i < n; ++i) sum += values[i];
    return sum;
  }
  const size_t half = n / 2;
  return pairwise_sum_impl(values.first(half)) + pairwise_sum_impl(values.subspan(half));
}

}  // namespace

Complex pairwise_sum(std::span<const Complex> values) { return pairwise_sum_impl(values); }
double pairwise_sum(std::span<const double> values) { return pairwise_sum_impl(values); }

Complex integral(const SampledFunction& f) {
  return f.grid.cell_volume() *
         pairwise_sum(std::span<const Complex>(f.values.data(), f.values.size()));
}

int max_threads() {
  int n = static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("CARNOT_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) n = std::min(n, cap);
  }
  return n;
}

void parallel_for(long n, const std::function<void(long)>& fn) {
  const int threads = static_cast<int>(std::min<long>(max_threads(), n));
  if (threads <= 1) {
    for (long i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  // Deterministic contiguous partition: worker t handles [t*n/T, (t+1)*n/T).
  for (int t = 0; t < threads; ++t) {
    const long begin = n * t / threads;
    const long end = n * (t + 1) / threads;
    pool.emplace_back([&fn, begin, end] {
      for (long i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace carnot
