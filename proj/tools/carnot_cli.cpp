// Command-line front end: loads group specs, dispatches computations and
// writes JSON/CSV reports. Exit codes: 0 success, 1 validation failure,
// 2 I/O error.

#include "carnot/acceptance.hpp"
#include "carnot/coadjoint.hpp"
#include "carnot/diff_op.hpp"
#include "carnot/group_spec_io.hpp"
#include "carnot/groupoid.hpp"
#include "carnot/harmonic.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using carnot::Complex;
using carnot::GradedLieAlgebra;
using carnot::Rational;
using json = nlohmann::json;

struct Options {
  std::string group_file;
  std::string out_dir = ".";
  std::string format = "json";
  std::string covector;
  int grid_n = 0;  // 0: choose by dimension
  double grid_r = 4.0;
  double lambda_min = 1e-3;
  double lambda_max = 1e3;
  int n_lambda = 400;
  long samples = 200;
  std::uint64_t seed = 7;
  double tol = 1e-10;
  std::string groups_dir = "data/groups";
};

int default_grid_n(int dim) {
  if (dim <= 1) return 65;
  if (dim <= 3) return 17;
  return 9;
}

std::ofstream open_output(const Options& opt, const std::string& filename) {
  std::filesystem::create_directories(opt.out_dir);
  const auto path = std::filesystem::path(opt.out_dir) / filename;
  std::ofstream out(path);
  if (!out) throw carnot::IoError("cannot write " + path.string());
  std::cout << "wrote " << path.string() << "\n";
  return out;
}

carnot::Covector parse_covector(const std::string& text, int dim) {
  carnot::Covector l(dim);
  std::stringstream stream(text);
  std::string item;
  int j = 0;
  while (std::getline(stream, item, ',')) {
    if (j >= dim) throw carnot::SpecError("covector has too many entries");
    l(j++) = carnot::parse_rational(item);
  }
  if (j != dim) throw carnot::SpecError("covector needs " + std::to_string(dim) + " entries");
  return l;
}

json polyvec_to_json(const carnot::PolyVec& m, int n) {
  json out = json::object();
  for (int j = 0; j < m.size(); ++j) {
    json terms = json::array();
    for (const auto& [e, c] : m[j].terms()) {
      json alpha = json::array(), beta = json::array();
      for (int v = 0; v < n; ++v) alpha.push_back(e[v]);
      for (int v = n; v < 2 * n; ++v) beta.push_back(e[v]);
      terms.push_back({{"alpha", alpha}, {"beta", beta}, {"coeff", carnot::to_string(c)}});
    }
    out[std::to_string(j + 1)] = terms;
  }
  return out;
}

json diffop_to_json(const carnot::DiffOp& op) {
  json terms = json::array();
  for (const auto& [partial, coeff] : op.terms()) {
    json term;
    term["partial"] = partial;
    json monomials = json::array();
    for (const auto& [e, c] : coeff.terms()) {
      monomials.push_back({{"exponents", e}, {"coeff", carnot::to_string(c)}});
    }
    term["coefficient"] = monomials;
    terms.push_back(term);
  }
  return terms;
}

std::vector<std::string> law_var_names(const GradedLieAlgebra& alg) {
  std::vector<std::string> names;
  for (int j = 0; j < alg.dim(); ++j) names.push_back("x" + std::to_string(j + 1));
  for (int j = 0; j < alg.dim(); ++j) names.push_back("y" + std::to_string(j + 1));
  return names;
}

void write_sampled_csv(std::ofstream& out, const carnot::SampledFunction& f) {
  out << "# grid," << f.grid.describe() << "\n";
  for (int j = 0; j < f.grid.dim(); ++j) out << "i" << j << ",";
  out << "re,im\n";
  out.precision(17);
  for (long i = 0; i < f.grid.total_points(); ++i) {
    const Eigen::VectorXi idx = f.grid.unflatten(i);
    for (int j = 0; j < f.grid.dim(); ++j) out << idx(j) << ",";
    out << f.values(i).real() << "," << f.values(i).imag() << "\n";
  }
}

int cmd_check_algebra(const Options& opt) {
  const GradedLieAlgebra alg = carnot::load_group_spec(opt.group_file);
  auto report = carnot::validate_algebra(alg);
  const auto dilation = carnot::validate_dilation_compatibility(alg);
  report.violations.insert(report.violations.end(), dilation.violations.begin(),
                           dilation.violations.end());
  if (!report.ok()) {
    std::cout << "invalid algebra '" << alg.name() << "':\n";
    for (const auto& v : report.violations) std::cout << "  - " << v << "\n";
    return 1;
  }
  std::cout << "valid graded algebra, Q=" << carnot::to_string(carnot::homogeneous_dimension(alg))
            << ", step " << carnot::nilpotency_step(alg) << "\n";
  return 0;
}

int cmd_group_law(const Options& opt) {
  const GradedLieAlgebra alg = carnot::load_group_spec(opt.group_file);
  const carnot::PolyVec m = carnot::bch_product(alg);
  const auto names = law_var_names(alg);
  for (int j = 0; j < alg.dim(); ++j) {
    std::cout << "m_" << j + 1 << "(x,y) = " << m[j].to_string(names) << "\n";
  }
  auto out = open_output(opt, alg.name() + "_group_law.json");
  out << polyvec_to_json(m, alg.dim()).dump(2) << "\n";
  return 0;
}

int cmd_vector_fields(const Options& opt) {
  const GradedLieAlgebra alg = carnot::load_group_spec(opt.group_file);
  const auto left = carnot::left_invariant_fields(alg);
  const auto right = carnot::right_invariant_fields(alg);
  std::vector<std::string> names;
  for (int j = 0; j < alg.dim(); ++j) names.push_back("x" + std::to_string(j + 1));
  json doc;
  for (int j = 0; j < alg.dim(); ++j) {
    std::cout << "X_" << j + 1 << " = " << left[j].to_string(names) << "\n";
    std::cout << "Y_" << j + 1 << " = " << right[j].to_string(names) << "\n";
    doc["left"][std::to_string(j + 1)] = diffop_to_json(left[j]);
    doc["right"][std::to_string(j + 1)] = diffop_to_json(right[j]);
  }
  const auto form = carnot::verify_vectorfield_form(alg, left);
  doc["triangular_form_ok"] = form.ok();
  auto out = open_output(opt, alg.name() + "_vector_fields.json");
  out << doc.dump(2) << "\n";
  return form.ok() ? 0 : 1;
}

int cmd_rockland(const Options& opt) {
  const GradedLieAlgebra alg = carnot::load_group_spec(opt.group_file);
  const auto candidate = carnot::rockland_candidate(alg);
  std::vector<std::string> names;
  for (int j = 0; j < alg.dim(); ++j) names.push_back("x" + std::to_string(j + 1));
  std::cout << "R = " << candidate.op.to_string(names) << "\n";
  std::cout << "homogeneous degree " << carnot::to_string(candidate.degree) << "\n";
  json doc;
  doc["degree"] = carnot::to_string(candidate.degree);
  doc["operator"] = diffop_to_json(candidate.op);
  auto out = open_output(opt, alg.name() + "_rockland.json");
  out << doc.dump(2) << "\n";
  return 0;
}

int cmd_strata(const Options& opt) {
  const GradedLieAlgebra alg = carnot::load_group_spec(opt.group_file);
  const auto strata = carnot::stratify(alg, opt.samples, opt.seed);
  json doc = json::array();
  for (const auto& s : strata) {
    json entry;
    entry["d"] = s.d;
    entry["S"] = std::vector<int>(s.jump_set.begin(), s.jump_set.end());
    entry["T"] = std::vector<int>(s.nonjump_set.begin(), s.nonjump_set.end());
    entry["samples"] = s.sample_count;
    json examples = json::array();
    for (const auto& p : s.sample_points) {
      json pt = json::array();
      for (int j = 0; j < p.size(); ++j) pt.push_back(carnot::to_string(p(j)));
      examples.push_back(pt);
    }
    entry["example_points"] = examples;
    doc.push_back(entry);
  }
  if (opt.format == "csv") {
    auto out = open_output(opt, alg.name() + "_strata.csv");
    out << "d,S,T,samples\n";
    for (const auto& s : strata) {
      auto join = [](const auto& xs) {
        std::string text;
        for (const auto& x : xs) text += (text.empty() ? "" : " ") + std::to_string(x);
        return text;
      };
      out << "\"" << join(s.d) << "\",\"" << join(s.jump_set) << "\",\"" << join(s.nonjump_set)
          << "\"," << s.sample_count << "\n";
    }
  } else {
    auto out = open_output(opt, alg.name() + "_strata.json");
    out << doc.dump(2) << "\n";
  }
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_orbit_dims(const Options& opt) {
  const GradedLieAlgebra alg = carnot::load_group_spec(opt.group_file);
  const auto l = parse_covector(opt.covector, alg.dim());
  const auto d = carnot::dimension_sequence(alg, l);
  const auto [s, t] = carnot::jump_set(d);
  json doc;
  doc["d"] = d;
  doc["S"] = std::vector<int>(s.begin(), s.end());
  doc["T"] = std::vector<int>(t.begin(), t.end());
  doc["on_cross_section"] = carnot::cross_section_membership(alg, l);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_polarization(const Options& opt) {
  const GradedLieAlgebra alg = carnot::load_group_spec(opt.group_file);
  const auto l = parse_covector(opt.covector, alg.dim());
  const auto h = carnot::vergne_polarization(alg, l);
  json doc;
  json basis = json::array();
  for (int c = 0; c < h.cols(); ++c) {
    json vec = json::array();
    for (int r = 0; r < h.rows(); ++r) vec.push_back(carnot::to_string(h(r, c)));
    basis.push_back(vec);
  }
  doc["basis"] = basis;
  doc["dimension"] = static_cast<int>(h.cols());
  doc["character_multiplicative"] = carnot::character_check(alg, l, h);
  std::cout << doc.dump(2) << "\n";
  return 0;
}

int cmd_type0_kernel(const Options& opt) {
  const GradedLieAlgebra alg = carnot::load_group_spec(opt.group_file);
  const int n = alg.dim();
  const int grid_n = opt.grid_n > 0 ? opt.grid_n : (n == 1 ? 257 : default_grid_n(n));
  const carnot::GridSpec grid = carnot::GridSpec::cube(n, opt.grid_r, grid_n);
  // Mean-zero seed: first coordinate times a Gaussian envelope.
  const carnot::SampledFunction f = carnot::SampledFunction::from_function(
      grid,
      [](const Eigen::VectorXd& v) { return Complex{v(0) * std::exp(-v.squaredNorm()), 0.0}; },
      carnot::SupportClaim::SchwartzDecay);

  auto conv = open_output(opt, alg.name() + "_type0_convergence.csv");
  conv << "cutoff_a,cutoff_b,homogeneity_defect,operator_norm\n";
  conv.precision(17);
  carnot::SampledFunction u;
  const bool norms_feasible = grid.total_points() <= 4096;
  for (double a : {1e-1, 1e-2, std::min(opt.lambda_min, 1e-3)}) {
    const double b = 1.0 / a;
    const carnot::CutoffFamily cutoff(a, std::max(b, opt.lambda_max));
    u = carnot::average_over_dilations(alg, f, cutoff, opt.n_lambda);
    const double defect = carnot::homogeneity_defect(alg, u, 2.0, carnot::Annulus{0.5, 2.0});
    double norm = std::numeric_limits<double>::quiet_NaN();
    if (norms_feasible) {
      norm = carnot::operator_norm(carnot::convolution_operator_matrix(
          alg, u, grid, carnot::ConvolutionSide::Left));
    }
    conv << a << "," << std::max(b, opt.lambda_max) << "," << defect << "," << norm << "\n";
  }
  auto out = open_output(opt, alg.name() + "_type0_kernel.csv");
  write_sampled_csv(out, u);
  return 0;
}

carnot::GroupoidKernel demo_kernel(const GradedLieAlgebra& alg, const Options& opt) {
  const int n = alg.dim();
  const int grid_n = opt.grid_n > 0 ? opt.grid_n : default_grid_n(n);
  const carnot::GridSpec xgrid = carnot::GridSpec::cube(n, opt.grid_r, n <= 1 ? grid_n : 1);
  const carnot::GridSpec vgrid = carnot::GridSpec::cube(n, opt.grid_r, grid_n);
  const auto ext = n <= 1 ? carnot::XExtension::Zero : carnot::XExtension::Constant;
  return carnot::make_kernel(
      xgrid, carnot::make_tgrid(0.25, 2.0, 4), vgrid,
      [&](const Eigen::VectorXd& x, double t, const Eigen::VectorXd& v) {
        double bump = 1.0;
        for (int j = 0; j < v.size(); ++j) {
          const double r = 2.0 * v(j) / opt.grid_r;
          const double s = 1.0 - r * r;
          if (s <= 0.0) return Complex{0.0, 0.0};
          bump *= std::exp(1.0 - 1.0 / s);
        }
        const double a = ext == carnot::XExtension::Zero ? std::exp(-x.squaredNorm()) : 1.0;
        return Complex{a * v(0) * bump * std::exp(-t * t), 0.0};
      },
      ext);
}

int cmd_zoom_demo(const Options& opt) {
  const GradedLieAlgebra alg = carnot::load_group_spec(opt.group_file);
  const auto f = demo_kernel(alg, opt);
  auto out = open_output(opt, alg.name() + "_zoom_demo.csv");
  // The zoomed kernel rides on its exactly dilated grid, so the isometry
  // defect shows only the t-resampling.
  out << "lambda,i_norm_zoomed,isometry_defect\n";
  out.precision(17);
  const double base = carnot::I_norm(alg, f);
  for (double lambda : {0.5, 1.0, 1.7, 2.0, 4.0}) {
    const double zoomed = carnot::I_norm(alg, carnot::zoom_rescaled(alg, f, lambda));
    out << lambda << "," << zoomed << "," << std::abs(zoomed - base) / base << "\n";
  }
  auto kernel_csv = open_output(opt, alg.name() + "_zoom_demo_kernel.csv");
  kernel_csv << "# xgrid," << f.xgrid.describe() << "\n";
  kernel_csv << "# vgrid," << f.vgrid.describe() << "\n";
  for (int j = 0; j < f.xgrid.dim(); ++j) kernel_csv << "ix" << j << ",";
  kernel_csv << "t,";
  for (int j = 0; j < f.vgrid.dim(); ++j) kernel_csv << "iv" << j << ",";
  kernel_csv << "re,im\n";
  kernel_csv.precision(17);
  for (long ix = 0; ix < f.xcount(); ++ix) {
    const Eigen::VectorXi xi = f.xgrid.unflatten(ix);
    for (long it = 0; it < f.tcount(); ++it) {
      for (long iv = 0; iv < f.vcount(); ++iv) {
        const Eigen::VectorXi vi = f.vgrid.unflatten(iv);
        for (int j = 0; j < xi.size(); ++j) kernel_csv << xi(j) << ",";
        kernel_csv << f.tgrid[it] << ",";
        for (int j = 0; j < vi.size(); ++j) kernel_csv << vi(j) << ",";
        const Complex value = f.at(ix, it, iv);
        kernel_csv << value.real() << "," << value.imag() << "\n";
      }
    }
  }
  return 0;
}

int cmd_fix_operator(const Options& opt) {
  const GradedLieAlgebra alg = carnot::load_group_spec(opt.group_file);
  if (alg.dim() != 1) {
    std::cout << "fix-operator demo runs on a one-dimensional group\n";
    return 1;
  }
  const carnot::GridSpec grid = carnot::GridSpec::cube(1, 6.0, opt.grid_n > 0 ? opt.grid_n : 65);
  const auto tgrid = carnot::make_tgrid(1e-5, 2.0, 64);
  const auto h = carnot::make_kernel(
      grid, tgrid, grid, [](const Eigen::VectorXd& x, double t, const Eigen::VectorXd& v) {
        return Complex{t * v(0) * std::exp(-0.5 * x(0) * x(0) - t * t - 2.0 * v(0) * v(0)), 0.0};
      });
  auto out = open_output(opt, alg.name() + "_fix_operator.csv");
  out << "cutoff_a,norm_T,diff_prev\n";
  out.precision(17);
  Eigen::MatrixXcd prev;
  for (double a : {1e-1, 1e-2, 1e-3, 1e-4}) {
    const Eigen::MatrixXcd t_i =
        carnot::averaged_operator(alg, h, carnot::CutoffFamily(a, 2.0), 100);
    const double diff = prev.size() ? carnot::operator_norm(t_i - prev) : 0.0;
    out << a << "," << carnot::operator_norm(t_i) << "," << diff << "\n";
    prev = t_i;
  }
  return 0;
}

int cmd_decay_probe(const Options& opt) {
  const GradedLieAlgebra alg = carnot::load_group_spec(opt.group_file);
  const auto f = demo_kernel(alg, opt);
  const auto curve = carnot::decay_estimate_probe(alg, f, f, {4, 8, 16, 32, 64});
  auto out = open_output(opt, alg.name() + "_decay_probe.csv");
  out << "lambda,i_norm\n";
  out.precision(17);
  for (const auto& [lambda, value] : curve) out << lambda << "," << value << "\n";
  std::cout << "log-log slope: " << carnot::fit_loglog_slope(curve) << "\n";
  return 0;
}

int cmd_report_all(const Options& opt) {
  const auto results = carnot::run_acceptance(opt.groups_dir);
  json doc;
  json criteria = json::array();
  bool all_pass = true;
  double total = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name << " ("
              << r.seconds << " s)\n";
    if (!r.detail.empty()) std::cout << "       " << r.detail << "\n";
    criteria.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"detail", r.detail},
                        {"seconds", r.seconds},
                        {"time_limit_seconds", r.time_limit_seconds}});
    all_pass = all_pass && r.pass;
    total += r.seconds;
  }
  doc["criteria"] = criteria;
  doc["all_pass"] = all_pass;
  doc["total_seconds"] = total;
  doc["within_total_budget"] = total < 300.0;
  auto out = open_output(opt, "acceptance_report.json");
  out << doc.dump(2) << "\n";
  return all_pass && total < 300.0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact and numerical computations on graded nilpotent Lie groups"};
  app.require_subcommand(1);

  Options opt;
  auto add_common = [&](CLI::App* cmd, bool needs_group) {
    if (needs_group) cmd->add_option("group", opt.group_file, "group spec JSON")->required();
    cmd->add_option("--grid-n", opt.grid_n, "points per axis (odd); 0 = auto");
    cmd->add_option("--grid-r", opt.grid_r, "half-width per axis");
    cmd->add_option("--lambda-min", opt.lambda_min, "lower cutoff plateau edge");
    cmd->add_option("--lambda-max", opt.lambda_max, "upper cutoff plateau edge");
    cmd->add_option("--n-lambda", opt.n_lambda, "quadrature nodes in lambda");
    cmd->add_option("--samples", opt.samples, "sample count");
    cmd->add_option("--seed", opt.seed, "deterministic seed");
    cmd->add_option("--tol", opt.tol, "tolerance");
    cmd->add_option("--out", opt.out_dir, "output directory");
    cmd->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  std::map<std::string, std::function<int(const Options&)>> handlers;
  auto subcommand = [&](const std::string& name, const std::string& help, bool needs_group,
                        std::function<int(const Options&)> fn) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, needs_group);
    if (name == "orbit-dims" || name == "polarization") {
      cmd->add_option("--covector", opt.covector, "comma-separated rationals")->required();
    }
    if (name == "report-all") {
      cmd->add_option("--groups-dir", opt.groups_dir, "directory with the bundled group specs");
    }
    handlers[name] = std::move(fn);
    return cmd;
  };

  subcommand("check-algebra", "validate a graded Lie algebra spec", true, cmd_check_algebra);
  subcommand("group-law", "print the exact group law", true, cmd_group_law);
  subcommand("vector-fields", "left/right invariant vector fields", true, cmd_vector_fields);
  subcommand("rockland", "homogeneous Rockland-type operator", true, cmd_rockland);
  subcommand("strata", "coadjoint coarse stratification", true, cmd_strata);
  subcommand("orbit-dims", "orbit dimension sequence of a covector", true, cmd_orbit_dims);
  subcommand("polarization", "Vergne polarization of a covector", true, cmd_polarization);
  subcommand("type0-kernel", "dilation-average a mean-zero seed to a type-0 kernel", true,
             cmd_type0_kernel);
  subcommand("zoom-demo", "zoom action demo on groupoid kernels", true, cmd_zoom_demo);
  subcommand("fix-operator", "averaged operator convergence", true, cmd_fix_operator);
  subcommand("decay-probe", "I-norm decay of zoomed convolutions", true, cmd_decay_probe);
  subcommand("report-all", "run the acceptance suite, emit a JSON summary", false,
             cmd_report_all);

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    return handlers.at(name)(opt);
  } catch (const carnot::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 2;
  } catch (const carnot::SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
