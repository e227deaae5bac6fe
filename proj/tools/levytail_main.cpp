// levytail: command-line front end for the tail-distance toolkit.
//
// Subcommands: simulate, curve, sweep, convergence, bound.  Outputs are
// plot-ready CSV/JSON with 17-significant-digit numbers; every run writes a
// manifest carrying the fully resolved configuration so results can be
// reproduced bit-identically on the same platform.
//
// Exit codes: 0 success, 1 usage, 2 I/O, 3 numeric failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "levytail/levytail.hpp"

using nlohmann::json;
namespace lt = levytail;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lt::CsvError("cannot open input file: " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string utc_timestamp() {
  std::time_t now = std::time(nullptr);
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

// Staged output writing: everything lands under a .tmp name first and is
// renamed only when the whole set succeeded, so partial failures leave no
// half-written results behind.
class OutputSet {
 public:
  void add(std::string path, std::string content) {
    files_.emplace_back(std::move(path), std::move(content));
  }

  void commit() {
    std::vector<std::string> staged;
    try {
      for (const auto& [path, content] : files_) {
        const std::string tmp = path + ".tmp";
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw lt::CsvError("cannot write output file: " + tmp);
        out << content;
        out.close();
        if (!out) throw lt::CsvError("failed writing output file: " + tmp);
        staged.push_back(tmp);
      }
      for (const auto& [path, content] : files_) {
        const std::string tmp = path + ".tmp";
        if (std::rename(tmp.c_str(), path.c_str()) != 0)
          throw lt::CsvError("cannot move output into place: " + path);
      }
    } catch (...) {
      for (const auto& tmp : staged) std::remove(tmp.c_str());
      throw;
    }
  }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

json base_manifest(const std::string& command) {
  json m;
  m["tool"] = "levytail";
  m["version"] = lt::kVersion;
  m["command"] = command;
  m["timestamp_utc"] = utc_timestamp();
  return m;
}

// --- flag payloads ----------------------------------------------------------

struct GridSpec {
  double lo = 0.5, hi = 8.0, step = 0.01;
};

GridSpec parse_alpha_grid(const std::string& text) {
  GridSpec g;
  if (text.empty()) return g;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &g.lo, &g.hi, &g.step) != 3 ||
      !(g.step > 0.0) || !(g.hi > g.lo) || !(g.lo > 0.0))
    throw CLI::ValidationError("--alpha-grid", "expected lo:hi:step with 0 < lo < hi");
  return g;
}

struct RhoGridSpec {
  double lo = 0.0, hi = 0.0;
  std::size_t count = 40;
  bool given = false;
};

RhoGridSpec parse_rho_grid(const std::string& text) {
  RhoGridSpec g;
  if (text.empty()) return g;
  unsigned long count = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lu", &g.lo, &g.hi, &count) != 3 ||
      !(g.lo > 0.0) || !(g.hi > g.lo) || count < 2)
    throw CLI::ValidationError("--rho-grid",
                               "expected lo:hi:count with 0 < lo < hi, count >= 2");
  g.count = count;
  g.given = true;
  return g;
}

lt::JumpMeasure parse_measure(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  auto num = [&](std::size_t i, double fallback, bool required) {
    if (i >= parts.size()) {
      if (required) throw CLI::ValidationError("measure", "missing parameter: " + text);
      return fallback;
    }
    double v;
    if (!lt::parse_double_strict(parts[i], v))
      throw CLI::ValidationError("measure", "bad number in: " + text);
    return v;
  };
  if (parts.empty()) throw CLI::ValidationError("measure", "empty spec");
  try {
    if (parts[0] == "powerlaw")
      return lt::PowerLawTail(num(1, 0, true), num(2, 0, true), num(3, 1.0, false));
    if (parts[0] == "stable")
      return lt::StableTailMeasure(num(1, 0, true), num(2, 0, true), num(3, 0, true));
    if (parts[0] == "gaussian")
      return lt::GaussianJumpLaw(num(1, 0, true), num(2, 1.0, false));
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError("measure", e.what());
  }
  throw CLI::ValidationError("measure",
                             "unknown kind '" + parts[0] +
                                 "' (powerlaw:alpha:rho0[:intensity], "
                                 "stable:alpha:c_minus:c_plus, "
                                 "gaussian:sigma[:intensity])");
}

json measure_json(const lt::JumpMeasure& m) {
  json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, lt::PowerLawTail>) {
          j = {{"kind", "powerlaw"},
               {"alpha", v.alpha},
               {"rho0", v.rho0},
               {"intensity", v.intensity}};
        } else if constexpr (std::is_same_v<T, lt::StableTailMeasure>) {
          j = {{"kind", "stable"},
               {"alpha", v.alpha},
               {"c_minus", v.c_minus},
               {"c_plus", v.c_plus}};
        } else {
          j = {{"kind", "gaussian"}, {"sigma", v.sigma}, {"intensity", v.intensity}};
        }
      },
      m);
  return j;
}

// --- shared input pipeline ---------------------------------------------------

struct InputFlags {
  std::string path;
  std::string column;
  bool increments_given = false;
  bool no_normalize = false;
  std::string iqr_from = "increments";
};

void add_input_flags(CLI::App* cmd, InputFlags& in) {
  cmd->add_option("--input", in.path, "input CSV (raw series or increments)")
      ->required();
  cmd->add_option("--column", in.column,
                  "column to read: name (headered files) or 0-based index");
  cmd->add_flag("--increments-given", in.increments_given,
                "input rows are increments already, skip differencing");
  cmd->add_flag("--no-normalize", in.no_normalize,
                "skip interquartile-range non-dimensionalization");
  cmd->add_option("--iqr-from", in.iqr_from,
                  "scale by the IQR of 'increments' (default) or of the 'raw' series")
      ->check(CLI::IsMember({"increments", "raw"}));
}

struct LoadedInput {
  lt::IncrementSeries increments;
  std::string digest;
  std::size_t rows = 0;
  std::size_t dropped = 0;
};

LoadedInput load_increments(const InputFlags& in) {
  LoadedInput out;
  out.digest = fnv1a64_hex(read_file_bytes(in.path));
  const auto column = lt::read_csv_column(in.path, in.column);
  out.rows = column.values.size();
  out.dropped = column.dropped_rows;
  if (out.dropped > 0) {
    std::cerr << "warning: dropped " << out.dropped
              << " rows with missing values from " << in.path << "\n";
  }
  if (in.increments_given) {
    out.increments.increments = column.values;
    out.increments.source_length = column.values.size() + 1;
  } else {
    out.increments = lt::extract_increments(column.values);
  }
  if (!in.no_normalize) {
    if (in.iqr_from == "raw" && !in.increments_given) {
      const double iqr = lt::interquartile_range(column.values);
      if (!(iqr > 0.0)) throw std::invalid_argument("raw series has zero IQR");
      for (auto& x : out.increments.increments) x /= iqr;
      out.increments.iqr = iqr;
      out.increments.normalized = true;
    } else {
      out.increments = lt::nondimensionalize(out.increments);
    }
  }
  return out;
}

json input_json(const InputFlags& in, const LoadedInput& loaded) {
  return {{"path", in.path},
          {"fnv1a64", loaded.digest},
          {"rows", loaded.rows},
          {"dropped_rows", loaded.dropped},
          {"column", in.column},
          {"increments_given", in.increments_given},
          {"normalized", loaded.increments.normalized},
          {"iqr", loaded.increments.iqr},
          {"iqr_from", in.iqr_from}};
}

// --- curve assembly shared by cmd_curve --------------------------------------

struct SideCurves {
  lt::DistanceCurve combined;  // sum over requested sides
  std::size_t n_points = 0;
};

SideCurves curves_for_side(const lt::IncrementSeries& incr, const std::string& side,
                           double rho, std::span<const double> grid,
                           lt::TruncationLevel s) {
  const auto split = lt::split_tails(incr, rho);
  std::vector<const std::vector<double>*> tails;
  if (side == "pos" || side == "both") tails.push_back(&split.positive);
  if (side == "neg" || side == "both") tails.push_back(&split.negative);
  SideCurves out;
  out.combined.alpha_grid.assign(grid.begin(), grid.end());
  out.combined.values.assign(grid.size(), 0.0);
  out.combined.rho = rho;
  out.combined.s = s.s;
  bool any = false;
  for (const auto* tail : tails) {
    if (tail->empty()) continue;
    any = true;
    out.n_points += tail->size();
    const lt::OrderedSample sample{std::vector<double>(*tail)};
    const auto curve = lt::distance_curve(sample, rho, grid, s);
    for (std::size_t k = 0; k < grid.size(); ++k)
      out.combined.values[k] += curve.values[k];
  }
  if (!any)
    throw std::invalid_argument("no exceedances beyond rho on the requested side");
  out.combined.argmin_index = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (out.combined.values[k] < out.combined.values[out.combined.argmin_index])
      out.combined.argmin_index = k;
  }
  out.combined.alpha_hat = out.combined.alpha_grid[out.combined.argmin_index];
  out.combined.min_value = out.combined.values[out.combined.argmin_index];
  out.combined.n_points = out.n_points;
  return out;
}

// --- subcommands --------------------------------------------------------------

int cmd_simulate(const std::string& dist, double alpha0, double rho0, double sigma,
                 std::size_t n, std::uint64_t seed, const std::string& out_path) {
  std::vector<double> jumps;
  if (dist == "powerlaw") {
    jumps = lt::sample_power_law_jumps(n, alpha0, rho0, seed);
  } else {
    jumps = lt::sample_gaussian_jumps(n, sigma, seed);
  }
  std::string csv;
  csv.reserve(jumps.size() * 20);
  for (double x : jumps) {
    csv += lt::format_double(x);
    csv += '\n';
  }
  json manifest = base_manifest("simulate");
  manifest["config"] = {{"dist", dist}, {"n", n},       {"seed", seed},
                        {"alpha0", alpha0}, {"rho0", rho0}, {"sigma", sigma}};
  manifest["outputs"] = {out_path};

  OutputSet outputs;
  outputs.add(out_path, csv);
  outputs.add(out_path + ".manifest.json", manifest.dump(2) + "\n");
  outputs.commit();
  return kExitOk;
}

int cmd_curve(const InputFlags& in, const std::string& side, double rho,
              const GridSpec& grid_spec, double s, const std::string& prefix) {
  const auto loaded = load_increments(in);
  const auto grid = lt::linear_grid(grid_spec.lo, grid_spec.hi, grid_spec.step);
  const lt::TruncationLevel trunc(s);
  const auto curves = curves_for_side(loaded.increments, side, rho, grid, trunc);

  std::string csv = "alpha,w_tilde\n";
  for (std::size_t k = 0; k < grid.size(); ++k) {
    csv += lt::format_double(curves.combined.alpha_grid[k]);
    csv += ',';
    csv += lt::format_double(curves.combined.values[k]);
    csv += '\n';
  }

  json summary;
  summary["alpha_hat"] = curves.combined.alpha_hat;
  summary["min_value"] = curves.combined.min_value;
  summary["n_points"] = curves.n_points;
  summary["rho"] = rho;
  summary["s"] = s;
  summary["iqr"] = loaded.increments.iqr;
  summary["side"] = side;
  // triangle-bound diagnostic at lambda* = 1 and the fastest admissible rate
  summary["model_bound"] = std::sqrt(curves.combined.min_value);
  summary["rate_kappa_max"] =
      curves.combined.alpha_hat / (curves.combined.alpha_hat + 2.0);

  json manifest = base_manifest("curve");
  manifest["config"] = {{"side", side},
                        {"rho", rho},
                        {"alpha_grid", {{"lo", grid_spec.lo},
                                        {"hi", grid_spec.hi},
                                        {"step", grid_spec.step}}},
                        {"s", s}};
  manifest["input"] = input_json(in, loaded);
  manifest["outputs"] = {prefix + "_curve.csv", prefix + "_summary.json"};

  OutputSet outputs;
  outputs.add(prefix + "_curve.csv", csv);
  outputs.add(prefix + "_summary.json", summary.dump(2) + "\n");
  outputs.add(prefix + "_manifest.json", manifest.dump(2) + "\n");
  outputs.commit();
  return kExitOk;
}

int cmd_sweep(const InputFlags& in, const std::string& side,
              const RhoGridSpec& rho_spec, const GridSpec& grid_spec, double s,
              std::size_t min_points, const std::string& prefix, unsigned threads) {
  const auto loaded = load_increments(in);
  const auto alpha_grid = lt::linear_grid(grid_spec.lo, grid_spec.hi, grid_spec.step);
  const std::vector<double> cutoff_grid =
      rho_spec.given ? lt::log_grid(rho_spec.lo, rho_spec.hi, rho_spec.count)
                     : lt::default_cutoff_grid(loaded.increments);
  const lt::Side side_enum = side == "pos" ? lt::Side::positive : lt::Side::negative;

  lt::SweepOptions opts;
  opts.min_points = min_points;
  opts.threads = threads;
  const auto sweep = lt::cutoff_sweep(loaded.increments, side_enum, cutoff_grid,
                                      alpha_grid, lt::TruncationLevel(s), opts);

  std::string long_csv = "rho,alpha,w_tilde,n_points\n";
  for (std::size_t k = 0; k < sweep.curves.size(); ++k) {
    const auto& curve = sweep.curves[k];
    for (std::size_t j = 0; j < curve.values.size(); ++j) {
      long_csv += lt::format_double(sweep.cutoff_grid[k]);
      long_csv += ',';
      long_csv += lt::format_double(curve.alpha_grid[j]);
      long_csv += ',';
      long_csv += lt::format_double(curve.values[j]);
      long_csv += ',';
      long_csv += std::to_string(sweep.locus[k].n_points);
      long_csv += '\n';
    }
  }

  std::string locus_csv = "rho,alpha_hat,min_value,n_points,reliable\n";
  for (const auto& row : sweep.locus) {
    locus_csv += lt::format_double(row.rho);
    locus_csv += ',';
    locus_csv += row.n_points > 0 ? lt::format_double(row.alpha_hat) : "";
    locus_csv += ',';
    locus_csv += row.n_points > 0 ? lt::format_double(row.min_value) : "";
    locus_csv += ',';
    locus_csv += std::to_string(row.n_points);
    locus_csv += ',';
    locus_csv += row.reliable ? "1" : "0";
    locus_csv += '\n';
  }

  json best;
  if (sweep.global_best) {
    best["rho_star"] = sweep.global_best->rho;
    best["alpha_star"] = sweep.global_best->alpha;
    best["distance"] = sweep.global_best->distance;
    best["n_points"] = sweep.locus[sweep.global_best->row_index].n_points;
    best["model_bound"] = std::sqrt(sweep.global_best->distance);
  } else {
    best["note"] = "no cutoff retained the minimum reliable sample size";
  }
  best["min_points"] = min_points;
  best["side"] = side;
  best["s"] = s;

  json manifest = base_manifest("sweep");
  manifest["config"] = {{"side", side},
                        {"alpha_grid", {{"lo", grid_spec.lo},
                                        {"hi", grid_spec.hi},
                                        {"step", grid_spec.step}}},
                        {"s", s},
                        {"min_points", min_points},
                        {"cutoff_grid", cutoff_grid}};
  manifest["input"] = input_json(in, loaded);
  manifest["outputs"] = {prefix + "_sweep.csv", prefix + "_locus.csv",
                         prefix + "_best.json"};

  OutputSet outputs;
  outputs.add(prefix + "_sweep.csv", long_csv);
  outputs.add(prefix + "_locus.csv", locus_csv);
  outputs.add(prefix + "_best.json", best.dump(2) + "\n");
  outputs.add(prefix + "_manifest.json", manifest.dump(2) + "\n");
  outputs.commit();
  return kExitOk;
}

int cmd_convergence(std::vector<double> alpha0_list, double rho0,
                    std::vector<std::size_t> n_list, std::size_t m,
                    std::uint64_t seed, double s, const std::string& prefix,
                    unsigned threads) {
  std::vector<lt::ConvergenceReport> reports;
  for (std::size_t idx = 0; idx < alpha0_list.size(); ++idx) {
    lt::SimulationConfig config;
    config.alpha0 = alpha0_list[idx];
    config.rho0 = rho0;
    config.n_list = n_list;
    config.replications = m;
    // one substream block per alpha0 so cells are independent
    config.seed = seed + 1000003ull * idx;
    config.s = lt::TruncationLevel(s);
    config.threads = threads;
    reports.push_back(lt::convergence_experiment(config));
  }

  std::string t1 = "alpha0,n,alpha_hat_mean,alpha_hat_var,w_star_mean,w_star_var\n";
  for (const auto& rep : reports) {
    for (const auto& cell : rep.cells) {
      t1 += lt::format_double(rep.alpha0);
      t1 += ',';
      t1 += std::to_string(cell.n);
      t1 += ',';
      t1 += lt::format_double(cell.alpha_hat_mean);
      t1 += ',';
      t1 += lt::format_double(cell.alpha_hat_var);
      t1 += ',';
      t1 += lt::format_double(cell.w_star_mean);
      t1 += ',';
      t1 += lt::format_double(cell.w_star_var);
      t1 += '\n';
    }
  }

  auto quotient_table = [&](bool use_r) {
    std::string table = "alpha0,theoretical";
    for (std::size_t c = 0; c + 1 < n_list.size(); ++c) {
      table += ',';
      table += (use_r ? "r_" : "q_");
      table += std::to_string(n_list[c]);
      table += '_';
      table += std::to_string(n_list[c + 1]);
    }
    table += '\n';
    for (const auto& rep : reports) {
      table += lt::format_double(rep.alpha0);
      table += ',';
      table += lt::format_double(rep.theoretical_rate);
      const auto& values = use_r ? rep.r : rep.q;
      for (double v : values) {
        table += ',';
        table += lt::format_double(v);
      }
      table += '\n';
    }
    return table;
  };

  json manifest = base_manifest("convergence");
  manifest["config"] = {{"alpha0", alpha0_list}, {"rho0", rho0}, {"n_list", n_list},
                        {"m", m},     {"seed", seed}, {"s", s}};
  manifest["outputs"] = {prefix + "_table1.csv", prefix + "_table2.csv",
                         prefix + "_table3.csv"};

  OutputSet outputs;
  outputs.add(prefix + "_table1.csv", t1);
  outputs.add(prefix + "_table2.csv", quotient_table(false));
  outputs.add(prefix + "_table3.csv", quotient_table(true));
  outputs.add(prefix + "_manifest.json", manifest.dump(2) + "\n");
  outputs.commit();
  return kExitOk;
}

int cmd_bound(const std::string& nu1_spec, const std::string& nu2_spec, double a1,
              double a2, double diff1, double diff2, double x1, double x2, double ell,
              double lambda, double s, const std::string& constants,
              const std::string& out_path) {
  const lt::JumpMeasure nu1 = parse_measure(nu1_spec);
  const lt::JumpMeasure nu2 = parse_measure(nu2_spec);
  const lt::LevyTriplet t1(a1, diff1, nu1);
  const lt::LevyTriplet t2(a2, diff2, nu2);
  const lt::BoundConstants c = constants == "rounded" ? lt::BoundConstants::rounded()
                                                    : lt::BoundConstants::exact();
  const auto result =
      lt::theorem_bound(t1, t2, x1, x2, ell, lambda, lt::TruncationLevel(s), c);

  json out;
  out["q1"] = result.q1;
  out["q2"] = result.q2;
  out["bound"] = result.bound;
  out["t_lambda"] = result.t_lambda;
  out["u1"] = result.u1;
  out["u2"] = result.u2;
  out["lambda"] = lambda;
  out["s"] = s;
  out["ell"] = ell;
  out["constants"] = {{"mode", constants}, {"c0", c.c0}, {"c1", c.c1}, {"c2", c.c2},
                      {"c3", c.c3},        {"c4", c.c4}, {"c5", c.c5}, {"c6", c.c6}};
  out["inputs"] = {{"nu1", measure_json(nu1)},
                   {"nu2", measure_json(nu2)},
                   {"a1", a1},
                   {"a2", a2},
                   {"A1", diff1},
                   {"A2", diff2},
                   {"x1", x1},
                   {"x2", x2}};
  out["manifest"] = base_manifest("bound");

  OutputSet outputs;
  outputs.add(out_path, out.dump(2) + "\n");
  outputs.commit();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tail-distance analysis of time series against power-law jump models"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("levytail ") + lt::kVersion);

  unsigned threads = 0;
  app.add_option("--threads", threads,
                 "worker cap (default: LEVYTAIL_THREADS or hardware)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "draw jump increments from a model");
  std::string sim_dist = "powerlaw";
  double sim_alpha0 = 1.6, sim_rho0 = 0.5, sim_sigma = 1.0;
  std::size_t sim_n = 0;
  std::uint64_t sim_seed = 1;
  std::string sim_out;
  sim->add_option("--dist", sim_dist)->check(CLI::IsMember({"powerlaw", "gaussian"}));
  sim->add_option("--alpha0", sim_alpha0, "tail exponent (powerlaw)")
      ->check(CLI::PositiveNumber);
  sim->add_option("--rho0", sim_rho0, "anchor (powerlaw)")->check(CLI::PositiveNumber);
  sim->add_option("--sigma", sim_sigma, "std deviation (gaussian)")
      ->check(CLI::PositiveNumber);
  sim->add_option("--n", sim_n, "number of increments")->required()
      ->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "64-bit seed");
  sim->add_option("--out", sim_out, "output CSV (one value per line)")->required();

  // curve
  auto* curve = app.add_subcommand("curve", "distance curve at one cutoff");
  InputFlags curve_in;
  add_input_flags(curve, curve_in);
  std::string curve_side = "both";
  double curve_rho = 0.0, curve_s = 1.0;
  std::string curve_grid_text, curve_prefix;
  curve->add_option("--side", curve_side)->check(CLI::IsMember({"pos", "neg", "both"}));
  curve->add_option("--rho", curve_rho, "cutoff")->required()
      ->check(CLI::PositiveNumber);
  curve->add_option("--alpha-grid", curve_grid_text, "lo:hi:step (default 0.5:8:0.01)");
  curve->add_option("--s", curve_s, "truncation level")->check(CLI::PositiveNumber);
  curve->add_option("--out-prefix", curve_prefix)->required();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "cutoff sensitivity sweep");
  InputFlags sweep_in;
  add_input_flags(sweep, sweep_in);
  std::string sweep_side = "neg";
  double sweep_s = 1.0;
  std::size_t sweep_min_points = 30;
  std::string sweep_grid_text, sweep_rho_text, sweep_prefix;
  sweep->add_option("--side", sweep_side)->check(CLI::IsMember({"pos", "neg"}));
  sweep->add_option("--rho-grid", sweep_rho_text,
                    "lo:hi:count log-spaced (default: quantile grid)");
  sweep->add_option("--alpha-grid", sweep_grid_text, "lo:hi:step (default 0.5:8:0.01)");
  sweep->add_option("--s", sweep_s, "truncation level")->check(CLI::PositiveNumber);
  sweep->add_option("--min-points", sweep_min_points,
                    "reliability threshold per cutoff");
  sweep->add_option("--out-prefix", sweep_prefix)->required();

  // convergence
  auto* conv = app.add_subcommand("convergence", "Monte Carlo rate experiment");
  std::vector<double> conv_alpha0{1.4, 1.8, 3.0};
  double conv_rho0 = 0.5, conv_s = 1.0;
  std::vector<std::size_t> conv_n{100, 1000, 10000, 100000};
  std::size_t conv_m = 100;
  std::uint64_t conv_seed = 1;
  std::string conv_prefix;
  conv->add_option("--alpha0", conv_alpha0, "true exponents (repeatable)")
      ->check(CLI::PositiveNumber);
  conv->add_option("--rho0", conv_rho0)->check(CLI::PositiveNumber);
  conv->add_option("--n-list", conv_n, "observation lengths (ascending)");
  conv->add_option("--m", conv_m, "replications")->check(CLI::PositiveNumber);
  conv->add_option("--seed", conv_seed);
  conv->add_option("--s", conv_s)->check(CLI::PositiveNumber);
  conv->add_option("--out-prefix", conv_prefix)->required();

  // bound
  auto* bound = app.add_subcommand("bound", "explicit path-space bound");
  std::string bound_nu1, bound_nu2, bound_constants = "exact", bound_out;
  double bound_a1 = 0, bound_a2 = 0, bound_A1 = 0, bound_A2 = 0;
  double bound_x1 = 0, bound_x2 = 0, bound_ell = 0, bound_lambda = 0, bound_s = 1.0;
  bound->add_option("--nu1", bound_nu1, "jump measure spec")->required();
  bound->add_option("--nu2", bound_nu2, "jump measure spec")->required();
  bound->add_option("--a1", bound_a1, "drift 1");
  bound->add_option("--a2", bound_a2, "drift 2");
  bound->add_option("--A1", bound_A1, "diffusion variance 1")
      ->check(CLI::NonNegativeNumber);
  bound->add_option("--A2", bound_A2, "diffusion variance 2")
      ->check(CLI::NonNegativeNumber);
  bound->add_option("--x1", bound_x1, "initial value 1");
  bound->add_option("--x2", bound_x2, "initial value 2");
  bound->add_option("--ell", bound_ell, "one-sided Lipschitz constant")->required()
      ->check(CLI::PositiveNumber);
  bound->add_option("--lambda", bound_lambda, "intensity level")->required()
      ->check(CLI::PositiveNumber);
  bound->add_option("--s", bound_s, "truncation level")->check(CLI::PositiveNumber);
  bound->add_option("--constants", bound_constants)
      ->check(CLI::IsMember({"exact", "rounded"}));
  bound->add_option("--out", bound_out, "output JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sim->parsed())
      return cmd_simulate(sim_dist, sim_alpha0, sim_rho0, sim_sigma, sim_n, sim_seed,
                          sim_out);
    if (curve->parsed())
      return cmd_curve(curve_in, curve_side, curve_rho,
                       parse_alpha_grid(curve_grid_text), curve_s, curve_prefix);
    if (sweep->parsed())
      return cmd_sweep(sweep_in, sweep_side, parse_rho_grid(sweep_rho_text),
                       parse_alpha_grid(sweep_grid_text), sweep_s, sweep_min_points,
                       sweep_prefix, threads);
    if (conv->parsed())
      return cmd_convergence(conv_alpha0, conv_rho0, conv_n, conv_m, conv_seed,
                             conv_s, conv_prefix, threads);
    if (bound->parsed())
      return cmd_bound(bound_nu1, bound_nu2, bound_a1, bound_a2, bound_A1, bound_A2,
                       bound_x1, bound_x2, bound_ell, bound_lambda, bound_s,
                       bound_constants, bound_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const lt::CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const lt::InfiniteMomentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const lt::QuadratureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
