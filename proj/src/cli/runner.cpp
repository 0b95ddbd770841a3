// Copyright 2026 The phasequant Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cli/output.hpp"
#include "json.hpp"
#include "pq/diagnostics.hpp"
#include "pq/metaplectic.hpp"
#include "pq/modspace.hpp"
#include "pq/parallel.hpp"
#include "pq/statecheck.hpp"
#include "pq/toeplitz.hpp"
#include "pq/transforms.hpp"
#include "pq/weyl.hpp"

#ifndef PQ_VERSION
#define PQ_VERSION "0.0.0"
#endif

namespace pq::cli {

using json = nlohmann::ordered_json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct TaskContext {
  const ExperimentConfig& config;
  const PhaseGrid& grid;
  std::filesystem::path dir;
  const TaskSpec& task;
  std::vector<std::string> files;
  json report = json::object();

  std::filesystem::path file(const std::string& suffix) {
    const std::string name = task.name + suffix;
    files.push_back(name);
    return dir / name;
  }
  WaveFunction window(const std::string& id) const {
    return make_window(config.windows.at(id), grid);
  }
};

json complex_json(cplx v) { return json::array({v.real(), v.imag()}); }

json report_json(const DensityReport& r) {
  return json{{"verdict", r.verdict},
              {"hermiticity_defect", r.hermiticity_defect},
              {"trace", r.trace},
              {"trace_defect", r.trace_defect},
              {"min_eigenvalue", r.min_eigenvalue},
              {"purity", r.purity},
              {"leading_eigenvalues",
               std::vector<double>(r.eigenvalues.begin(),
                                   r.eigenvalues.begin() + std::min<size_t>(8, r.eigenvalues.size()))},
              {"tolerances", {{"trace", r.tol_trace}, {"psd", r.tol_psd}, {"hermitian", r.tol_hermitian}}}};
}

json estimate_json(const NormEstimate& e) {
  return json{{"value", e.value},
              {"window", e.window_id},
              {"resolution", e.resolution},
              {"points", e.points},
              {"box", {e.box_x, e.box_p}}};
}

std::vector<double> eigenvalues_of(const OperatorMatrix& op) {
  const Spectrum s = spectral(op);
  return std::vector<double>(s.eigenvalues.data(), s.eigenvalues.data() + s.eigenvalues.size());
}

void run_wigner(TaskContext& ctx) {
  const WaveFunction psi = ctx.window(ctx.task.window);
  const WaveFunction phi = ctx.task.other.empty() ? psi : ctx.window(ctx.task.other);
  const PhaseFunction w = cross_wigner(psi, phi);
  const int c = ctx.grid.size() / 2;
  ctx.report["window"] = ctx.task.window;
  if (!ctx.task.other.empty()) ctx.report["with"] = ctx.task.other;
  ctx.report["value_at_origin"] = complex_json(w.values(c, c));
  ctx.report["integral"] = complex_json(w.integral());
  ctx.report["inner_product"] = complex_json(l2_inner(psi, phi));
  ctx.report["sup_abs"] = w.sup_norm();
  ctx.report["sup_imag"] = w.values.imag().cwiseAbs().maxCoeff();
  write_grid_csv(ctx.file("_grid.csv"), w.values.real(), "wigner_re", "1/action");
  if (!ctx.task.other.empty()) {
    write_grid_csv(ctx.file("_grid_imag.csv"), w.values.imag(), "wigner_im", "1/action");
  }
}

void run_quantize(TaskContext& ctx) {
  const PhaseFunction a = make_field(*ctx.task.field, ctx.grid);
  const OperatorMatrix op = weyl_quantize(a);
  const PhaseFunction back = weyl_symbol(op);
  ctx.report["matrix_trace"] = complex_json(op.trace());
  ctx.report["trace_via_symbol"] = trace_via_symbol(a);
  ctx.report["hermiticity_defect"] = (op.kernel - op.kernel.adjoint()).cwiseAbs().maxCoeff();
  ctx.report["round_trip_error"] = (back.values - a.values).cwiseAbs().maxCoeff();
  write_grid_csv(ctx.file("_grid.csv"), a.values.real(), "symbol", "1");
  if (a.values.imag().cwiseAbs().maxCoeff() == 0.0) {
    write_spectrum_csv(ctx.file("_spectrum.csv"), eigenvalues_of(op));
  }
}

void run_toeplitz(TaskContext& ctx) {
  const PhaseFunction a = make_field(*ctx.task.field, ctx.grid);
  const WaveFunction phi = ctx.window(ctx.task.window);
  std::optional<OperatorMatrix> direct;
  std::optional<OperatorMatrix> conv;
  if (ctx.task.path != "conv") {
    const auto t0 = Clock::now();
    direct = toeplitz_direct(a, phi, ctx.task.thinning);
    ctx.report["direct_seconds"] = seconds_since(t0);
    ctx.report["thinning"] = ctx.task.thinning > 0 ? ctx.task.thinning : default_thinning(ctx.grid);
  }
  if (ctx.task.path != "direct") {
    const auto t0 = Clock::now();
    conv = toeplitz_conv(a, phi);
    ctx.report["conv_seconds"] = seconds_since(t0);
  }
  if (direct && conv) ctx.report["path_distance"] = direct->relative_distance(*conv);
  const OperatorMatrix& op = conv ? *conv : *direct;
  ctx.report["trace"] = complex_json(op.trace());
  ctx.report["hermiticity_defect"] = (op.kernel - op.kernel.adjoint()).cwiseAbs().maxCoeff();
  write_grid_csv(ctx.file("_grid.csv"), a.values.real(), "symbol", "1");
  if (a.values.imag().cwiseAbs().maxCoeff() == 0.0) {
    write_spectrum_csv(ctx.file("_spectrum.csv"), eigenvalues_of(op));
  }
}

void report_density(TaskContext& ctx, const DensityState& st) {
  const DensityReport r = validate_density(st.rho, ctx.task.tol_trace, ctx.task.tol_psd);
  ctx.report["density"] = report_json(r);
  ctx.report["raw_trace"] = st.raw_trace;
  ctx.report["thinning"] = st.thinning;
  ctx.report["wigner_integral"] = st.wigner.integral().real();
  write_grid_csv(ctx.file("_grid.csv"), st.wigner.values.real(), "wigner", "1/action");
  write_spectrum_csv(ctx.file("_spectrum.csv"), r.eigenvalues);
}

void run_density(TaskContext& ctx) {
  const WaveFunction phi = ctx.window(ctx.task.window);
  const FieldSpec& f = *ctx.task.field;
  ctx.report["path"] = f.type == "atoms" ? "lattice" : ctx.task.path;
  if (f.type == "atoms") {
    report_density(ctx, density_from_measure(LatticeMixture{f.atoms}, phi));
    return;
  }
  const ProbabilityDensity mu = ProbabilityDensity::from_values(make_field(f, ctx.grid));
  ctx.report["measure_normalization"] = mu.normalization;
  const ToeplitzPath path = ctx.task.path == "direct" ? ToeplitzPath::direct : ToeplitzPath::conv;
  report_density(ctx, density_from_measure(mu, phi, path, ctx.task.thinning));
}

void run_lattice(TaskContext& ctx) {
  const WaveFunction phi = ctx.window(ctx.task.window);
  const DensityState st = lattice_mixed_state(LatticeMixture{ctx.task.field->atoms}, phi);
  const PhaseFunction from_op = wigner_of_density(st.rho);
  ctx.report["wigner_consistency"] = (from_op.values - st.wigner.values).cwiseAbs().maxCoeff();
  report_density(ctx, st);
}

void run_covariance(TaskContext& ctx) {
  const PhaseFunction a = make_field(*ctx.task.field, ctx.grid);
  const WaveFunction phi = ctx.window(ctx.task.window);
  json rows = json::array();
  for (const auto& items : ctx.task.words) {
    const MetaplecticWord word = parse_word(items);
    const SymplecticMat s = word_symplectic(word);
    rows.push_back(json{{"word", items},
                        {"symplectic", {{s(0, 0), s(0, 1)}, {s(1, 0), s(1, 1)}}},
                        {"weyl_residual", weyl_covariance_residual(a, word)},
                        {"toeplitz_residual", toeplitz_covariance_residual(a, phi, word)},
                        {"wigner_residual", wigner_covariance_residual(phi, word)}});
  }
  ctx.report["window"] = ctx.task.window;
  ctx.report["words"] = rows;
}

void run_norms(TaskContext& ctx) {
  if (!ctx.task.other.empty()) {
    const WaveFunction psi = ctx.window(ctx.task.window.empty() ? ctx.task.other : ctx.task.window);
    const WaveFunction phi = ctx.window(ctx.task.other);
    ctx.report["m1"] = estimate_json(m1_norm(psi, phi));
  }
  if (ctx.task.field) {
    const PhaseFunction a = make_field(*ctx.task.field, ctx.grid);
    json sup = json::array();
    json full = json::array();
    for (int m : ctx.task.points) {
      sup.push_back(estimate_json(m1inf_norm(a, ctx.task.b_scale, m)));
      full.push_back(estimate_json(m1_phase_norm(a, ctx.task.b_scale, m)));
    }
    ctx.report["m1inf"] = sup;
    ctx.report["m1_phase"] = full;
    if (!ctx.task.window.empty()) {
      const PhaseFunction w = wigner(ctx.window(ctx.task.window));
      const PhaseFunction conv = convolve(a, w);
      json wj = json::array();
      json cj = json::array();
      for (int m : ctx.task.points) {
        wj.push_back(estimate_json(m1_phase_norm(w, ctx.task.b_scale, m)));
        cj.push_back(estimate_json(m1_phase_norm(conv, ctx.task.b_scale, m)));
      }
      ctx.report["window_wigner_m1_phase"] = wj;
      ctx.report["convolution_m1_phase"] = cj;
    }
  }
}

void run_bench(TaskContext& ctx) {
  json rows = json::array();
  const WindowSpec& wspec = ctx.config.windows.at(ctx.task.window);
  for (int n : ctx.task.sizes) {
    const PhaseGrid g = make_grid(n, ctx.config.half_width, ctx.config.hbar);
    const WaveFunction phi = make_window(wspec, g);
    const PhaseFunction a = ctx.task.field ? make_field(*ctx.task.field, g)
                                           : PhaseFunction::from_function(g, [](double x, double p) {
                                               return cplx(std::exp(-0.5 * (x * x + p * p)));
                                             });
    const int thinning = ctx.task.thinning > 0 ? ctx.task.thinning : 1;
    auto t0 = Clock::now();
    const OperatorMatrix d = toeplitz_direct(a, phi, thinning);
    const double td = seconds_since(t0);
    t0 = Clock::now();
    const OperatorMatrix c = toeplitz_conv(a, phi);
    const double tc = seconds_since(t0);
    rows.push_back(json{{"n_points", n},
                        {"thinning", thinning},
                        {"direct_seconds", td},
                        {"conv_seconds", tc},
                        {"conv_over_direct", tc / td},
                        {"path_distance", d.relative_distance(c)}});
  }
  ctx.report["runs"] = rows;
}

void write_json(const std::filesystem::path& file, const json& j) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << j.dump(2) << "\n";
}

Eigen::VectorXcd window_samples(const WindowSpec& spec, const PhaseGrid& grid) {
  const auto rows = read_numeric_csv(spec.file);
  if (static_cast<int>(rows.size()) != grid.size()) {
    throw std::runtime_error(spec.file.string() + ": expected " + std::to_string(grid.size()) +
                             " rows, found " + std::to_string(rows.size()));
  }
  Eigen::VectorXcd s(grid.size());
  for (int j = 0; j < grid.size(); ++j) {
    const auto& r = rows[static_cast<size_t>(j)];
    if (r.empty() || r.size() > 2) {
      throw std::runtime_error(spec.file.string() + ": rows must be 're' or 're,im'");
    }
    s[j] = cplx(r[0], r.size() == 2 ? r[1] : 0.0);
  }
  return s;
}

}  // namespace

WaveFunction make_window(const WindowSpec& spec, const PhaseGrid& grid) {
  WaveFunction w = spec.kind == "samples"
                       ? WaveFunction::from_samples(grid, window_samples(spec, grid))
                       : standard_window(parse_window_kind(spec.kind, spec.z0), grid);
  if (spec.normalize) w = normalize(w);
  return w;
}

PhaseFunction make_field(const FieldSpec& f, const PhaseGrid& grid) {
  if (f.type == "gaussian") {
    return PhaseFunction::from_function(grid, [&](double x, double p) {
      const double u = x - f.x0;
      const double v = p - f.p0;
      return cplx(f.amplitude * std::exp(-u * u / (2.0 * f.variance_x) - v * v / (2.0 * f.variance_p)));
    });
  }
  if (f.type == "constant") {
    return PhaseFunction::from_function(grid, [&](double, double) { return cplx(f.amplitude); });
  }
  if (f.type == "indicator") {
    return PhaseFunction::from_function(grid, [&](double x, double p) {
      const bool inside = std::abs(x - f.x0) <= f.half_x && std::abs(p - f.p0) <= f.half_p;
      return cplx(inside ? f.amplitude : 0.0);
    });
  }
  if (f.type == "samples") {
    const auto rows = read_numeric_csv(f.file);
    const int n = grid.size();
    if (static_cast<int>(rows.size()) != n) {
      throw std::runtime_error(f.file.string() + ": expected " + std::to_string(n) + " rows");
    }
    PhaseFunction out = PhaseFunction::zeros(grid);
    for (int j = 0; j < n; ++j) {
      const auto& r = rows[static_cast<size_t>(j)];
      if (static_cast<int>(r.size()) != n) {
        throw std::runtime_error(f.file.string() + ": row " + std::to_string(j) + " must have " +
                                 std::to_string(n) + " values");
      }
      for (int k = 0; k < n; ++k) out.values(j, k) = f.amplitude * r[static_cast<size_t>(k)];
    }
    return out;
  }
  throw std::invalid_argument("field of type '" + f.type + "' cannot be sampled on the grid");
}

int run_config(const ExperimentConfig& config, const RunOptions& options, std::ostream& log) {
  const std::filesystem::path dir = options.output_dir.value_or(config.output_dir);
  std::filesystem::create_directories(dir);
  const PhaseGrid grid = make_grid(config.n_points, config.half_width, config.hbar);

  json manifest;
  manifest["tool"] = "pq";
  manifest["version"] = PQ_VERSION;
  manifest["config"] = config.source.string();
  manifest["parameters"] = {{"n_points", config.n_points},
                            {"half_width", config.half_width},
                            {"hbar", config.hbar},
                            {"dx", grid.dx()},
                            {"dp", grid.dp()}};
  json windows = json::object();
  for (const auto& [id, w] : config.windows) {
    json wj{{"kind", w.kind}};
    if (w.kind == "displaced_gaussian") wj["z0"] = {w.z0.x, w.z0.p};
    windows[id] = wj;
  }
  manifest["windows"] = windows;
  manifest["threads"] = thread_limit();
  manifest["tasks"] = json::array();
  if (!config.tasks.empty()) {
    write_coordinates(dir, grid);
    manifest["coordinate_files"] = {"grid_x.csv", "grid_p.csv"};
  }
  write_json(dir / "manifest.json", manifest);

  int status = 0;
  for (const TaskSpec& task : config.tasks) {
    json entry{{"name", task.name}, {"kind", task.kind}};
    if (status != 0) {
      entry["status"] = "skipped";
      manifest["tasks"].push_back(entry);
      continue;
    }
    if (!options.quiet) log << "[pq] " << task.name << " (" << task.kind << ")\n";
    TaskContext ctx{config, grid, dir, task, {}, json::object()};
    ctx.report["task"] = task.name;
    ctx.report["kind"] = task.kind;
    std::vector<std::string> warnings;
    const auto t0 = Clock::now();
    try {
      WarningCapture capture;
      if (task.kind == "wigner") run_wigner(ctx);
      else if (task.kind == "quantize") run_quantize(ctx);
      else if (task.kind == "toeplitz") run_toeplitz(ctx);
      else if (task.kind == "density") run_density(ctx);
      else if (task.kind == "lattice") run_lattice(ctx);
      else if (task.kind == "covariance") run_covariance(ctx);
      else if (task.kind == "norms") run_norms(ctx);
      else run_bench(ctx);
      warnings = capture.messages();
      entry["status"] = "ok";
    } catch (const std::exception& e) {
      entry["status"] = "failed";
      entry["error"] = e.what();
      ctx.report["error"] = e.what();
      log << "pq: task '" << task.name << "' failed: " << e.what() << "\n";
      status = 1;
    }
    entry["seconds"] = seconds_since(t0);
    ctx.report["warnings"] = warnings;
    if (!options.quiet) {
      for (const auto& w : warnings) log << "warning: " << task.name << ": " << w << "\n";
    }
    write_json(ctx.file("_report.json"), ctx.report);
    entry["files"] = ctx.files;
    manifest["tasks"].push_back(entry);
    write_json(dir / "manifest.json", manifest);
  }
  write_json(dir / "manifest.json", manifest);
  return status;
}

}  // namespace pq::cli
