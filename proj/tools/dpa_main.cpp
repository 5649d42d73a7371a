// dpa: grow directed preferential attachment graphs and check the Gaussian
// limit theory of their joint degree counts against Monte Carlo ensembles.
//
// Subcommands: limits, xi, xi-matrix, covariance, simulate, enumerate,
// verify. Exit codes: 0 success, 1 input/validation error, 2 internal error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dpa/covariance.hpp"
#include "dpa/ensemble.hpp"
#include "dpa/errors.hpp"
#include "dpa/exact.hpp"
#include "dpa/io.hpp"
#include "dpa/limits.hpp"
#include "dpa/martingale.hpp"
#include "dpa/params.hpp"
#include "dpa/simulator.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct ParamFlags {
  double alpha = 0, gamma = 0, lambda = 0, mu = 0;
  CLI::Option *oa = nullptr, *og = nullptr, *ol = nullptr, *om = nullptr;
};

void add_param_flags(CLI::App* sub, ParamFlags& pf) {
  pf.oa = sub->add_option("--alpha", pf.alpha, "in-attachment probability");
  pf.og = sub->add_option("--gamma", pf.gamma, "out-attachment probability");
  pf.ol = sub->add_option("--lambda", pf.lambda, "in-degree offset");
  pf.om = sub->add_option("--mu", pf.mu, "out-degree offset");
  sub->set_config("--config", "",
                  "key = value file (keys: alpha, gamma, lambda, mu); "
                  "explicit flags win");
}

// All four parameters or none (none selects the symmetric reference set).
dpa::ModelParams resolve_params(const ParamFlags& pf) {
  const int given = (pf.oa->count() > 0) + (pf.og->count() > 0) +
                    (pf.ol->count() > 0) + (pf.om->count() > 0);
  if (given == 0) return dpa::ModelParams::validate(0.5, 0.5, 1.0, 1.0);
  if (given < 4) {
    throw dpa::ValidationError(
        "model parameters must be given together: --alpha --gamma --lambda "
        "--mu (or none for the defaults)");
  }
  return dpa::ModelParams::validate(pf.alpha, pf.gamma, pf.lambda, pf.mu);
}

std::pair<int, int> parse_int_pair(const std::string& text,
                                   const char* what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw dpa::ValidationError(std::string(what) + " must look like I,O");
  }
  try {
    return {std::stoi(text.substr(0, comma)),
            std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw dpa::ValidationError(std::string(what) + " must look like I,O");
  }
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string piece =
        text.substr(start, comma == std::string::npos ? std::string::npos
                                                      : comma - start);
    if (!piece.empty()) out.push_back(std::stoull(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

json params_json(const dpa::ModelParams& p) {
  return {{"alpha", p.alpha()},
          {"gamma", p.gamma()},
          {"lambda", p.lambda()},
          {"mu", p.mu()}};
}

dpa::ManifestOutput record_output(const fs::path& path) {
  const std::string bytes = dpa::read_text_file(path);
  return {path.filename().string(), bytes.size(), dpa::fnv1a64_hex(bytes)};
}

void emit_manifest(const fs::path& primary_out, const std::string& command,
                   const json& settings,
                   const std::vector<fs::path>& outputs) {
  std::vector<dpa::ManifestOutput> recs;
  for (const auto& p : outputs) recs.push_back(record_output(p));
  fs::path manifest = primary_out;
  manifest += ".manifest.json";
  dpa::write_manifest(manifest, command, settings.dump(), recs);
}

std::string joined_command(int argc, char** argv) {
  std::string cmd;
  for (int k = 0; k < argc; ++k) {
    if (k) cmd += ' ';
    cmd += argv[k];
  }
  return cmd;
}

json matrix_json(const std::vector<double>& values, std::size_t dim) {
  json rows = json::array();
  for (std::size_t r = 0; r < dim; ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < dim; ++c) row.push_back(values[r * dim + c]);
    rows.push_back(std::move(row));
  }
  return rows;
}

int run(int argc, char** argv) {
  CLI::App app{"directed preferential attachment degree-count toolkit"};
  app.require_subcommand(1);
  const std::string command = joined_command(argc, argv);

  // ---- limits ----
  auto* limits = app.add_subcommand(
      "limits", "limiting joint degree distribution p_ij on a rectangle");
  ParamFlags lim_pf;
  add_param_flags(limits, lim_pf);
  int lim_imax = 0, lim_jmax = 0;
  std::string lim_out;
  limits->add_option("--imax", lim_imax, "largest in-degree")->required();
  limits->add_option("--jmax", lim_jmax, "largest out-degree")->required();
  limits->add_option("--out", lim_out, "output CSV path")->required();

  // ---- xi ----
  auto* xi = app.add_subcommand(
      "xi", "martingale coefficient limits for one target pair");
  ParamFlags xi_pf;
  add_param_flags(xi, xi_pf);
  int xi_i = 0, xi_j = 0;
  std::string xi_out;
  xi->add_option("--i", xi_i, "target in-degree")->required();
  xi->add_option("--j", xi_j, "target out-degree")->required();
  xi->add_option("--out", xi_out, "output CSV path")->required();

  // ---- xi-matrix ----
  auto* xim = app.add_subcommand(
      "xi-matrix", "window matrix of coefficient limits (long-form CSV)");
  ParamFlags xim_pf;
  add_param_flags(xim, xim_pf);
  std::string xim_window, xim_out;
  xim->add_option("--window", xim_window, "window I,O")->required();
  xim->add_option("--out", xim_out, "output CSV path")->required();

  // ---- covariance ----
  auto* cov = app.add_subcommand(
      "covariance", "asymptotic covariance of scaled degree counts");
  ParamFlags cov_pf;
  add_param_flags(cov, cov_pf);
  std::string cov_window, cov_box, cov_variant = "corrected", cov_out;
  bool cov_tail = false;
  double cov_tol = 1e-6;
  cov->add_option("--window", cov_window, "window I,O")->required();
  cov->add_option("--box", cov_box,
                  "summation box R,Q (default: window max + 10)");
  cov->add_option("--variant", cov_variant, "corrected|verbatim")
      ->check(CLI::IsMember({"corrected", "verbatim"}));
  cov->add_flag("--tail-accel", cov_tail,
                "add the analytic tail outside the box");
  cov->add_option("--box-tol", cov_tol, "remainder tolerance");
  cov->add_option("--out", cov_out, "output JSON path")->required();

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "grow one graph, emit counts");
  ParamFlags sim_pf;
  add_param_flags(sim, sim_pf);
  std::uint64_t sim_n = 0, sim_seed = 0;
  std::string sim_cps, sim_window = "8,8", sim_out;
  sim->add_option("--n", sim_n, "target node count")->required();
  sim->add_option("--seed", sim_seed, "RNG seed")->required();
  sim->add_option("--checkpoints", sim_cps, "comma list of sizes");
  sim->add_option("--window", sim_window, "count window I,O");
  sim->add_option("--out", sim_out, "output directory")->required();

  // ---- enumerate ----
  auto* enu = app.add_subcommand(
      "enumerate", "exact count-grid distribution for tiny n");
  ParamFlags enu_pf;
  add_param_flags(enu, enu_pf);
  int enu_n = 0;
  std::string enu_out = "exact.json";
  enu->add_option("--n", enu_n, "steps (at most 6)")->required();
  enu->add_option("--out", enu_out, "output JSON path");

  // ---- verify ----
  auto* ver = app.add_subcommand(
      "verify", "Monte Carlo check of the Gaussian limit");
  ParamFlags ver_pf;
  add_param_flags(ver, ver_pf);
  std::uint64_t ver_n = 0, ver_seed = 0;
  int ver_runs = 0, ver_workers = 1;
  std::string ver_window, ver_variant = "corrected";
  std::string ver_report = "report.json", ver_qq;
  ver->add_option("--n", ver_n, "nodes per run")->required();
  ver->add_option("--runs", ver_runs, "replications")->required();
  ver->add_option("--window", ver_window, "window I,O")->required();
  ver->add_option("--seed", ver_seed, "base seed (required)")->required();
  ver->add_option("--variant", ver_variant, "corrected|verbatim")
      ->check(CLI::IsMember({"corrected", "verbatim"}));
  ver->add_option("--workers", ver_workers, "parallel workers");
  ver->add_option("--report", ver_report, "report JSON path");
  ver->add_option("--qq", ver_qq, "QQ data CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e);
      return 0;
    }
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  if (*limits) {
    const auto params = resolve_params(lim_pf);
    const auto grid = dpa::p_grid(params, lim_imax, lim_jmax);
    dpa::CsvTable csv;
    csv.header = {"i", "j", "p"};
    for (int i = 0; i <= grid.rmax; ++i) {
      for (int j = 0; j <= grid.qmax; ++j) {
        csv.rows.push_back({std::to_string(i), std::to_string(j),
                            dpa::format_double(grid.at(i, j))});
      }
    }
    dpa::write_text_file(lim_out, csv.to_string());
    json diag = {{"total_mass", grid.total_mass},
                 {"mean_i", grid.mean_i},
                 {"mean_j", grid.mean_j}};
    fs::path diag_path = fs::path(lim_out);
    diag_path += ".diagnostics.json";
    dpa::write_text_file(diag_path, diag.dump(2) + "\n");
    json settings = {{"params", params_json(params)},
                     {"imax", lim_imax},
                     {"jmax", lim_jmax}};
    emit_manifest(lim_out, command, settings, {lim_out, diag_path});
    return 0;
  }

  if (*xi) {
    const auto params = resolve_params(xi_pf);
    const auto table = dpa::xi_table(params, xi_i, xi_j);
    dpa::CsvTable csv;
    csv.header = {"k", "l", "xi"};
    for (int k = 0; k <= table.ti; ++k) {
      for (int l = 0; l <= table.tj; ++l) {
        csv.rows.push_back({std::to_string(k), std::to_string(l),
                            dpa::format_double(table.at(k, l))});
      }
    }
    dpa::write_text_file(xi_out, csv.to_string());
    json settings = {{"params", params_json(params)},
                     {"i", xi_i},
                     {"j", xi_j},
                     {"raw00", table.raw00}};
    emit_manifest(xi_out, command, settings, {xi_out});
    return 0;
  }

  if (*xim) {
    const auto params = resolve_params(xim_pf);
    const auto [wi, wo] = parse_int_pair(xim_window, "--window");
    const auto window = dpa::IndexWindow::make(wi, wo);
    const auto matrix = dpa::xi_matrix(params, window.coords);
    dpa::CsvTable csv;
    csv.header = {"i", "j", "k", "l", "xi"};
    for (std::size_t r = 0; r < matrix.dim(); ++r) {
      for (std::size_t c = 0; c < matrix.dim(); ++c) {
        csv.rows.push_back({std::to_string(matrix.coords[r].i),
                            std::to_string(matrix.coords[r].j),
                            std::to_string(matrix.coords[c].i),
                            std::to_string(matrix.coords[c].j),
                            dpa::format_double(matrix.at(r, c))});
      }
    }
    dpa::write_text_file(xim_out, csv.to_string());
    json settings = {{"params", params_json(params)},
                     {"window", {{"imax", wi}, {"jmax", wo}}}};
    emit_manifest(xim_out, command, settings, {xim_out});
    return 0;
  }

  if (*cov) {
    const auto params = resolve_params(cov_pf);
    const auto [wi, wo] = parse_int_pair(cov_window, "--window");
    const auto window = dpa::IndexWindow::make(wi, wo);
    dpa::BoxPolicy box;
    if (!cov_box.empty()) {
      const auto [r, q] = parse_int_pair(cov_box, "--box");
      box.rmax = r;
      box.qmax = q;
    }
    box.tail_accel = cov_tail;
    box.tolerance = cov_tol;
    const int rneed = std::max(box.rmax, wi + 11);
    const int qneed = std::max(box.qmax, wo + 11);
    const auto grid = dpa::p_grid(params, rneed, qneed);
    const auto variant = cov_variant == "corrected"
                             ? dpa::BVariant::corrected
                             : dpa::BVariant::verbatim;
    const auto model =
        dpa::final_covariance(params, window.coords, grid, variant, box);
    const std::size_t dim = model.dim();
    json coords = json::array();
    for (const auto& c : model.coords) coords.push_back({c.i, c.j});
    json out = {{"tool", dpa::kToolVersion},
                {"params", params_json(params)},
                {"window", {{"imax", wi}, {"jmax", wo}}},
                {"coords", std::move(coords)},
                {"variant", cov_variant},
                {"box",
                 {{"rmax", box.rmax},
                  {"qmax", box.qmax},
                  {"tail_accel", box.tail_accel},
                  {"tolerance", box.tolerance}}},
                {"a", matrix_json(model.a, dim)},
                {"b", matrix_json(model.b, dim)},
                {"c", matrix_json(model.c, dim)},
                {"ctilde", matrix_json(model.ctilde, dim)},
                {"final_cov", matrix_json(model.final_cov, dim)},
                {"diagnostics", {{"max_remainder", model.max_remainder}}}};
    dpa::write_text_file(cov_out, out.dump(2) + "\n");
    json settings = {{"params", params_json(params)},
                     {"window", {{"imax", wi}, {"jmax", wo}}},
                     {"variant", cov_variant}};
    emit_manifest(cov_out, command, settings, {cov_out});
    return 0;
  }

  if (*sim) {
    const auto params = resolve_params(sim_pf);
    const auto [wi, wo] = parse_int_pair(sim_window, "--window");
    dpa::GrowOptions opts;
    opts.window = dpa::IndexWindow::make(wi, wo);
    opts.checkpoints = parse_u64_list(sim_cps);
    opts.checkpoints.push_back(sim_n);
    const auto result = dpa::grow(params, sim_n, sim_seed, opts);
    fs::create_directories(sim_out);
    dpa::CsvTable csv;
    csv.header = {"checkpoint_n", "i", "j", "count"};
    for (const auto& snap : result.snapshots) {
      for (std::size_t c = 0; c < opts.window->coords.size(); ++c) {
        csv.rows.push_back({std::to_string(snap.n),
                            std::to_string(opts.window->coords[c].i),
                            std::to_string(opts.window->coords[c].j),
                            std::to_string(snap.counts[c])});
      }
    }
    const fs::path run_csv = fs::path(sim_out) / "run.csv";
    dpa::write_text_file(run_csv, csv.to_string());
    json settings = {{"params", params_json(params)},
                     {"n", sim_n},
                     {"seed", sim_seed},
                     {"window", {{"imax", wi}, {"jmax", wo}}},
                     {"checkpoints", opts.checkpoints}};
    dpa::write_manifest(fs::path(sim_out) / "manifest.json", command,
                        settings.dump(), {record_output(run_csv)});
    return 0;
  }

  if (*enu) {
    const auto params = resolve_params(enu_pf);
    const auto levels = dpa::enumerate_exact(params, enu_n);
    json states = json::array();
    for (const auto& [state, prob] : levels.back()) {
      json cells = json::array();
      for (const auto& cell : state) {
        cells.push_back({cell.i, cell.j, cell.count});
      }
      states.push_back({{"state", std::move(cells)}, {"prob", prob}});
    }
    dpa::write_text_file(enu_out, states.dump(2) + "\n");
    json settings = {{"params", params_json(params)}, {"n", enu_n}};
    emit_manifest(enu_out, command, settings, {enu_out});
    return 0;
  }

  if (*ver) {
    const auto params = resolve_params(ver_pf);
    const auto [wi, wo] = parse_int_pair(ver_window, "--window");
    dpa::EnsembleSpec spec{params,   ver_n,
                           ver_runs, ver_seed,
                           dpa::IndexWindow::make(wi, wo), ver_workers};
    dpa::BoxPolicy box;
    box.rmax = wi + 16;
    box.qmax = wo + 16;
    box.tail_accel = true;
    const auto grid = dpa::p_grid(params, box.rmax, box.qmax);
    const auto corrected = dpa::final_covariance(
        params, spec.window.coords, grid, dpa::BVariant::corrected, box);
    const auto verbatim = dpa::final_covariance(
        params, spec.window.coords, grid, dpa::BVariant::verbatim, box);
    const auto counts = dpa::run_ensemble(spec);
    const auto selected = ver_variant == "corrected"
                              ? dpa::BVariant::corrected
                              : dpa::BVariant::verbatim;
    const auto report = dpa::analyze_ensemble(spec, counts, grid, corrected,
                                              verbatim, selected);
    dpa::write_text_file(ver_report, dpa::report_to_json(report));
    std::vector<fs::path> outputs = {ver_report};
    if (!ver_qq.empty()) {
      const auto& sel =
          selected == dpa::BVariant::corrected ? corrected : verbatim;
      dpa::write_text_file(ver_qq, dpa::qq_csv(spec, counts, grid, sel));
      outputs.push_back(ver_qq);
    }
    json settings = {{"params", params_json(params)},
                     {"n", ver_n},
                     {"runs", ver_runs},
                     {"seed", ver_seed},
                     {"window", {{"imax", wi}, {"jmax", wo}}},
                     {"variant", ver_variant},
                     {"workers", ver_workers}};
    emit_manifest(ver_report, command, settings, outputs);
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const dpa::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\nrun with --help for usage\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
