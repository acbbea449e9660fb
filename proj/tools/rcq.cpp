// Command line front end: Monte Carlo experiment drivers, scaling fits, and
// threshold summaries for low-depth random circuit codes.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcq/experiments.hpp"
#include "rcq/records.hpp"
#include "rcq/scaling_fit.hpp"

namespace {

using nlohmann::json;

double parse_rate(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    return std::stod(text);
  }
  const double num = std::stod(text.substr(0, slash));
  const double den = std::stod(text.substr(slash + 1));
  if (den == 0.0) {
    throw CLI::ValidationError("--rate", "zero denominator");
  }
  return num / den;
}

std::vector<double> parse_grid(const std::string& text) {
  // Either a comma list "0.01,0.02" or a range "0.01:0.05:0.01".
  std::vector<double> grid;
  if (text.find(':') != std::string::npos) {
    double lo = 0, hi = 0, step = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0) {
      throw CLI::ValidationError("--p-grid", "expected lo:hi:step");
    }
    for (double p = lo; p <= hi + step * 1e-9; p += step) {
      grid.push_back(p);
    }
    return grid;
  }
  std::string cur;
  for (char c : text + ",") {
    if (c == ',') {
      if (!cur.empty()) {
        grid.push_back(std::stod(cur));
      }
      cur.clear();
    } else {
      cur += c;
    }
  }
  return grid;
}

struct CommonArgs {
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  std::size_t trials = 1000;
  std::string config_path;
  std::string rate = "1/3";
  std::string p_grid;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--out-dir", args.out_dir, "Output directory");
  cmd->add_option("--seed", args.seed, "Master RNG seed");
  cmd->add_option("--trials", args.trials, "Trials per data point");
  cmd->add_option("--config", args.config_path,
                  "JSON config file (explicit flags override its fields)");
  cmd->add_option("--rate", args.rate, "Encoding rate, e.g. 1/3 or 0.25");
  cmd->add_option("--p-grid", args.p_grid, "Error rates: comma list or lo:hi:step");
}

json load_config(const CommonArgs& args, const CLI::App* cmd, json base) {
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) {
      throw std::runtime_error("cannot open config " + args.config_path);
    }
    json from_file;
    in >> from_file;
    for (auto& [key, value] : from_file.items()) {
      base[key] = value;
    }
  }
  // Flags given explicitly on the command line win over the file.
  if (cmd->count("--seed") || !base.contains("seed")) {
    base["seed"] = args.seed;
  }
  if (cmd->count("--trials") || !base.contains("trials")) {
    base["trials"] = args.trials;
  }
  if (cmd->count("--rate") || !base.contains("rate")) {
    base["rate"] = parse_rate(args.rate);
  }
  if (cmd->count("--p-grid") || !base.contains("p_grid")) {
    if (args.p_grid.empty()) {
      throw CLI::ValidationError("--p-grid", "required (or supply via --config)");
    }
    base["p_grid"] = parse_grid(args.p_grid);
  }
  return base;
}

int run_and_report(const json& config, const std::string& out_dir) {
  const auto outputs = rcq::run_experiment_config(config, out_dir);
  std::cout << "record: " << outputs.record_csv << "\n";
  std::cout << "manifest: " << outputs.manifest_json << "\n";
  if (!outputs.fit_json.empty()) {
    std::cout << "fit: " << outputs.fit_json << "\n";
  }
  if (!outputs.diagnostics_json.empty()) {
    std::cout << "diagnostics: " << outputs.diagnostics_json << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulation and decoding workbench for low-depth random circuit codes"};
  app.require_subcommand(1);

  // code-capacity
  CommonArgs cc_args;
  cc_args.rate = "1/4";
  std::size_t cc_n = 50;
  std::vector<std::size_t> cc_depths{4, 5};
  std::string cc_decoder = "minweight";
  auto* cc = app.add_subcommand("code-capacity",
                                "Depolarizing-noise failure rates with the "
                                "marginal or minimum-weight decoder");
  add_common(cc, cc_args);
  cc->add_option("--n", cc_n, "Core qubits (padding excluded)");
  cc->add_option("--depths", cc_depths, "Encoding depths")->delimiter(',');
  cc->add_option("--decoder", cc_decoder, "minweight or marginal")
      ->check(CLI::IsMember({"minweight", "marginal"}));

  // entropy
  CommonArgs en_args;
  std::size_t en_n = 51, en_d = 6, en_qmax = 6;
  auto* en = app.add_subcommand("entropy",
                                "Entropy density of distilled encoded states");
  add_common(en, en_args);
  en->add_option("--n", en_n, "Physical qubits per block");
  en->add_option("--d", en_d, "Encoding depth");
  en->add_option("--q-max", en_qmax, "Distillation rounds (entropy recorded "
                                     "after every two)");

  // mutual-info
  CommonArgs mi_args;
  std::size_t mi_n = 51, mi_rounds = 10;
  std::vector<std::size_t> mi_depths{2, 4, 6};
  std::vector<std::size_t> mi_qs;
  auto* mi = app.add_subcommand("mutual-info",
                                "Encoded-EPR mutual information after noisy "
                                "error correction");
  add_common(mi, mi_args);
  mi->add_option("--n", mi_n, "Physical qubits per block");
  mi->add_option("--depths", mi_depths, "Encoding depths")->delimiter(',');
  mi->add_option("--qs", mi_qs, "Distillation rounds per depth (default: q = d)")
      ->delimiter(',');
  mi->add_option("--rounds", mi_rounds, "Error-correction rounds");

  // spacetime
  CommonArgs st_args;
  std::size_t st_n = 51, st_ec = 3;
  std::vector<std::size_t> st_depths{2, 4};
  std::vector<std::size_t> st_qs;
  auto* st = app.add_subcommand("spacetime",
                                "Erasure decoding failure rate of the full "
                                "noisy protocol");
  add_common(st, st_args);
  st->add_option("--n", st_n, "Physical qubits per block");
  st->add_option("--depths", st_depths, "Encoding depths")->delimiter(',');
  st->add_option("--qs", st_qs, "Distillation rounds per depth (default: q = d)")
      ->delimiter(',');
  st->add_option("--ec-rounds", st_ec, "Error-correction rounds");

  // fit
  std::string fit_record_path, fit_out = "fit.json";
  double fit_lo = 0.0, fit_hi = 1.0, fit_truncate = 2.0;
  bool fit_no_jackknife = false;
  auto* fit = app.add_subcommand("fit", "Finite-size scaling fit of a stored record");
  fit->add_option("--record", fit_record_path, "Record CSV path")->required();
  fit->add_option("--out", fit_out, "Fit JSON output path");
  fit->add_option("--window-lo", fit_lo, "Lower edge of the p window");
  fit->add_option("--window-hi", fit_hi, "Upper edge of the p window");
  fit->add_option("--truncate-factor", fit_truncate,
                  "Drop end points that inflate sigma(p_c) beyond this factor "
                  "(0 disables)");
  fit->add_flag("--no-jackknife", fit_no_jackknife, "Skip the jackknife pass");

  // threshold-summary
  std::vector<std::string> summary_runs;
  std::string summary_out = "threshold_summary.csv";
  auto* summary = app.add_subcommand(
      "threshold-summary", "Tabulate fitted thresholds against the hashing bound");
  summary->add_option("--runs", summary_runs,
                      "Run directories (each with record.csv + manifest.json)")
      ->delimiter(',')
      ->required();
  summary->add_option("--out", summary_out, "Summary CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cc->parsed()) {
      json config{{"kind", "code-capacity"}, {"n", cc_n}, {"depths", cc_depths},
                  {"decoder", cc_decoder}};
      return run_and_report(load_config(cc_args, cc, config), cc_args.out_dir);
    }
    if (en->parsed()) {
      json config{{"kind", "entropy"}, {"n", en_n}, {"d", en_d}, {"q_max", en_qmax}};
      return run_and_report(load_config(en_args, en, config), en_args.out_dir);
    }
    if (mi->parsed()) {
      json config{{"kind", "mutual-info"}, {"n", mi_n}, {"depths", mi_depths},
                  {"rounds", mi_rounds}};
      if (!mi_qs.empty()) {
        config["qs"] = mi_qs;
      }
      return run_and_report(load_config(mi_args, mi, config), mi_args.out_dir);
    }
    if (st->parsed()) {
      json config{{"kind", "spacetime"}, {"n", st_n}, {"depths", st_depths},
                  {"ec_rounds", st_ec}};
      if (!st_qs.empty()) {
        config["qs"] = st_qs;
      }
      return run_and_report(load_config(st_args, st, config), st_args.out_dir);
    }
    if (fit->parsed()) {
      const rcq::ExperimentRecord record = rcq::read_record_csv(fit_record_path);
      rcq::FitOptions options;
      options.window_lo = fit_lo;
      options.window_hi = fit_hi;
      options.truncate_factor = fit_truncate;
      options.jackknife = !fit_no_jackknife;
      const rcq::ScalingFit result = rcq::fit_record(record, options);
      rcq::write_file_atomic(fit_out,
                             rcq::scaling_fit_to_json(result).dump(2) + "\n");
      std::cout << "fit: " << fit_out << "\n";
      return 0;
    }
    if (summary->parsed()) {
      std::string csv = "rate,p_c,sigma_p_c,p_hashing,kind,record\n";
      for (const auto& dir : summary_runs) {
        namespace fs = std::filesystem;
        const auto record_path = (fs::path(dir) / "record.csv").string();
        const auto manifest_path = (fs::path(dir) / "manifest.json").string();
        const rcq::ExperimentRecord record = rcq::read_record_csv(record_path);
        json manifest;
        {
          std::ifstream in(manifest_path);
          if (!in) {
            throw std::runtime_error("cannot open " + manifest_path);
          }
          in >> manifest;
        }
        const double rate = manifest.at("config").at("rate").get<double>();
        std::set<double> ps;
        for (const auto& pt : record.points) {
          ps.insert(pt.p);
        }
        rcq::FitOptions options;
        options.window_lo = *ps.begin();
        options.window_hi = *ps.rbegin();
        const rcq::ScalingFit result = rcq::fit_record(record, options);
        csv += rcq::format_double(rate) + "," + rcq::format_double(result.p_c) +
               "," + rcq::format_double(result.sigma_pc) + "," +
               rcq::format_double(rcq::hashing_bound(rate)) + "," + record.kind +
               "," + record_path + "\n";
      }
      rcq::write_file_atomic(summary_out, csv);
      std::cout << "summary: " << summary_out << "\n";
      return 0;
    }
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
