#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "subdcor/subdcor.hpp"
#include "subdcor/csv.hpp"

namespace subdcor::cli {
namespace {

namespace fs = std::filesystem;

struct ProbabilityOptions {
  std::optional<double> q;
  std::string q_grid = "0.01,0.99,10";
  std::size_t m = 100;
  std::size_t min_effective = 10;

  void attach(CLI::App& app) {
    auto* single = app.add_option("--q", q, "Single inclusion probability (disables the grid search)")
                       ->check(CLI::Range(0.0, 1.0));
    app.add_option("--q-grid", q_grid, "Probability grid as lo,hi,count")->excludes(single);
    app.add_option("--m", m, "Subsampled datasets per ensemble")->check(CLI::Range(2, 1000000));
    app.add_option("--min-effective", min_effective, "Minimum retained observations per subsample");
  }

  SubsampleConfig config(std::uint64_t seed) const {
    SubsampleConfig cfg;
    cfg.m = m;
    cfg.seed = seed;
    cfg.min_effective = min_effective;
    if (q) {
      cfg.p_grid = {*q};
    } else {
      std::vector<std::string> parts;
      std::stringstream ss(q_grid);
      for (std::string part; std::getline(ss, part, ',');) parts.push_back(part);
      if (parts.size() != 3) throw CLI::ValidationError("--q-grid", "expected lo,hi,count");
      try {
        cfg.p_grid = linspace(std::stod(parts[0]), std::stod(parts[1]), std::stoul(parts[2]));
      } catch (const std::logic_error&) {
        throw CLI::ValidationError("--q-grid", "expected lo,hi,count");
      }
    }
    try {
      cfg.validate();
    } catch (const Error& e) {
      throw CLI::ValidationError("--q/--q-grid/--m", e.what());
    }
    return cfg;
  }
};

std::string join_csv_line(std::initializer_list<std::string> fields) {
  std::string s;
  for (const auto& f : fields) {
    if (!s.empty()) s += ',';
    s += f;
  }
  return s;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::io, "cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw Error(Errc::io, "failed writing '" + path + "'");
}

std::string summary(const DirectionReport& r, const DiscreteDataset& ds) {
  std::ostringstream os;
  os << "decision=" << to_string(r.decision) << " s_f=" << format_number(r.forward_score)
     << " s_b=" << format_number(r.backward_score) << " p_star=" << format_number(r.p_star)
     << " p_f=" << format_number(r.p_f) << " p_b=" << format_number(r.p_b)
     << " relative_gap=" << format_number(r.relative_gap) << " support_x=" << ds.x_support()
     << " support_y=" << ds.y_support() << " n=" << ds.size();
  return os.str();
}

std::string per_p_csv(const DirectionReport& r) {
  std::string s = "p,forward,backward\n";
  const auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const auto& g : r.per_p_scores) s += join_csv_line({format_number(g.p), opt(g.forward), opt(g.backward)}) + '\n';
  return s;
}

LoadOptions load_options(bool skip_header, const std::vector<std::size_t>& columns) {
  LoadOptions lo;
  lo.skip_header = skip_header;
  if (!columns.empty()) {
    if (columns.size() != 2 || columns[0] == 0 || columns[1] == 0 || columns[0] == columns[1]) {
      throw CLI::ValidationError("--columns", "expected two distinct 1-based column numbers");
    }
    lo.columns = {columns[0] - 1, columns[1] - 1};
  }
  return lo;
}

}  // namespace

int dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Causal direction inference for discrete data via subsampled distance correlation", "subdcor"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::uint64_t seed = 0;
  const auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "Master RNG seed")->required();
  };

  // infer
  auto* infer = app.add_subcommand("infer", "Infer the direction of one pair file");
  std::string infer_path, infer_out;
  int infer_k = 0;
  bool infer_skip_header = false;
  std::vector<std::size_t> infer_columns;
  ProbabilityOptions infer_prob;
  infer->add_option("pairfile", infer_path, "Two-column pair file")->required()->check(CLI::ExistingFile);
  add_seed(infer);
  infer_prob.attach(*infer);
  infer->add_option("--k", infer_k, "Quantization resolution: values become round(10^k * v)")->check(CLI::Range(0, 18));
  infer->add_flag("--skip-header", infer_skip_header, "Ignore the first line");
  infer->add_option("--columns", infer_columns, "Cause and effect columns, 1-based")->delimiter(',');
  infer->add_option("--out", infer_out, "CSV of per-probability scores");

  // synth
  auto* synth = app.add_subcommand("synth", "Write a generated dataset");
  std::string synth_family, synth_out;
  GeneratorSpec synth_spec;
  std::optional<std::size_t> synth_support;
  synth->add_option("family", synth_family, "exp1-original|exp1-modified|exp2-original|exp2-modified")->required();
  add_seed(synth);
  auto* synth_both = synth->add_option("--support", synth_support, "Support size for both variables");
  synth->add_option("--support-x", synth_spec.x_support, "Cause support size")->excludes(synth_both);
  synth->add_option("--support-y", synth_spec.y_support, "Effect support size (|Y0| or |Y|)")->excludes(synth_both);
  synth->add_option("--n-samples", synth_spec.n, "Observations")->check(CLI::PositiveNumber);
  synth->add_option("--noise", synth_spec.noise_support, "Noise support values")->delimiter(',');
  synth->add_option("--out", synth_out, "Pair file to write; metadata goes to <out>.meta.json")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Replicated accuracy benchmark on synthetic data");
  BenchmarkSpec bench_spec;
  std::string bench_family = "exp1-modified", bench_out, bench_methods = "SUB,DC";
  std::vector<std::size_t> bench_support{20};
  bool paper_scale = false;
  ProbabilityOptions bench_prob;
  add_seed(bench);
  bench_prob.attach(*bench);
  bench->add_option("--family", bench_family, "Generator family");
  bench->add_option("--support", bench_support, "Support sizes, |X| = |Y|")->delimiter(',');
  bench->add_option("--n-datasets", bench_spec.n_datasets, "Replications per support size")->check(CLI::PositiveNumber);
  bench->add_option("--n-samples", bench_spec.n_samples, "Observations per dataset")->check(CLI::PositiveNumber);
  bench->add_option("--methods", bench_methods, "Comma-separated subset of SUB,DC");
  bench->add_option("--noise", bench_spec.generator.noise_support, "Noise support values")->delimiter(',');
  bench->add_option("--threads", bench_spec.threads, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--tie-credit", bench_spec.tie_credit, "Accuracy credit for a tie")->check(CLI::Range(0.0, 1.0));
  bench->add_flag("--paper-scale", paper_scale, "1000 datasets of 2000 samples per support size");
  bench->add_flag("--timing", bench_spec.record_timing, "Fill the seconds column");
  bench->add_option("--out", bench_out, "CSV report path");

  // mcurve
  auto* mcurve = app.add_subcommand("mcurve", "Score mean and spread versus ensemble size");
  std::string mcurve_path, mcurve_family, mcurve_out;
  std::vector<std::size_t> m_values{10, 20, 50, 100};
  std::size_t mcurve_reps = 20, mcurve_support = 20, mcurve_n = 2000;
  int mcurve_k = 0;
  ProbabilityOptions mcurve_prob;
  auto* mc_path = mcurve->add_option("pairfile", mcurve_path, "Pair file")->check(CLI::ExistingFile);
  add_seed(mcurve);
  mcurve_prob.attach(*mcurve);
  mcurve->add_option("--family", mcurve_family, "Generate the dataset from this family instead")->excludes(mc_path);
  mcurve->add_option("--support", mcurve_support, "Support size for generated data");
  mcurve->add_option("--n-samples", mcurve_n, "Observations for generated data")->check(CLI::PositiveNumber);
  mcurve->add_option("--k", mcurve_k, "Quantization resolution for pair files")->check(CLI::Range(0, 18));
  mcurve->add_option("--m-values", m_values, "Ensemble sizes")->delimiter(',');
  mcurve->add_option("--reps", mcurve_reps, "Repetitions per ensemble size")->check(CLI::PositiveNumber);
  mcurve->add_option("--out", mcurve_out, "CSV path");

  // pairs
  auto* pairs = app.add_subcommand("pairs", "Resolution scan over a directory of pair files");
  std::string pairs_dir, pairs_meta, pairs_out;
  std::vector<int> pairs_k{0};
  PreprocessSpec pre;
  bool pairs_skip_header = false;
  ProbabilityOptions pairs_prob;
  pairs->add_option("dir", pairs_dir, "Directory of pair files (*.txt)")->required()->check(CLI::ExistingDirectory);
  add_seed(pairs);
  pairs_prob.attach(*pairs);
  pairs->add_option("--k", pairs_k, "Resolutions to scan")->delimiter(',');
  pairs->add_option("--tolerance", pre.support_equality_tolerance, "Largest allowed support difference");
  pairs->add_option("--max-support", pre.max_support, "Supports must be below this")->check(CLI::Range(2, 1 << 30));
  pairs->add_option("--meta", pairs_meta, "Metadata: pair-id cause-column effect-column")->check(CLI::ExistingFile);
  pairs->add_flag("--skip-header", pairs_skip_header, "Ignore the first line of each file");
  pairs->add_option("--out", pairs_out, "CSV path");

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*infer) {
      const RawPair raw = load_pair(infer_path, load_options(infer_skip_header, infer_columns));
      const DiscreteDataset ds = discretize(raw, infer_k);
      const DirectionReport rep = infer_direction(ds, infer_prob.config(seed));
      if (!infer_out.empty()) write_text(infer_out, per_p_csv(rep));
      out << summary(rep, ds) << '\n';
    } else if (*synth) {
      synth_spec.family = parse_family(synth_family);
      if (synth_support) synth_spec.x_support = synth_spec.y_support = *synth_support;
      synth_spec.seed = seed;
      const GroundTruthDataset g = generate(synth_spec);
      write_pair_file(g.dataset, synth_out);
      write_metadata(synth_spec, g, synth_out + ".meta.json");
      out << "family=" << to_string(synth_spec.family) << " n=" << g.dataset.size()
          << " support_x=" << g.dataset.x_support() << " support_y=" << g.dataset.y_support()
          << " truth=" << to_string(g.truth) << " out=" << synth_out << '\n';
    } else if (*bench) {
      bench_spec.generator.family = parse_family(bench_family);
      bench_spec.support_sizes = bench_support;
      bench_spec.methods.clear();
      std::stringstream ss(bench_methods);
      for (std::string name; std::getline(ss, name, ',');) bench_spec.methods.push_back(parse_method(name));
      if (paper_scale) {
        bench_spec.n_datasets = 1000;
        bench_spec.n_samples = 2000;
      }
      bench_spec.subsample = bench_prob.config(seed);
      bench_spec.master_seed = seed;
      const AccuracyReport report = run_benchmark(bench_spec);
      std::ostringstream csv;
      emit_report(report, csv);
      if (!bench_out.empty()) write_text(bench_out, csv.str());
      out << "cells=" << report.cells.size();
      for (const auto& c : report.cells) {
        out << ' ' << to_string(c.method) << '@' << c.support << "=" << format_number(c.accuracy);
      }
      out << '\n';
    } else if (*mcurve) {
      DiscreteDataset ds;
      if (!mcurve_family.empty()) {
        GeneratorSpec g;
        g.family = parse_family(mcurve_family);
        g.x_support = g.y_support = mcurve_support;
        g.n = mcurve_n;
        g.seed = Rng(seed).derive(0).key();
        ds = generate(g).dataset;
      } else if (!mcurve_path.empty()) {
        ds = discretize(load_pair(mcurve_path), mcurve_k);
      } else {
        throw CLI::ValidationError("mcurve", "give a pair file or --family");
      }
      SubsampleConfig cfg = mcurve_prob.config(seed);
      double q = cfg.p_grid.front();
      if (cfg.p_grid.size() > 1) {
        const std::size_t m_max = *std::max_element(m_values.begin(), m_values.end());
        q = select_p(ds, m_max, cfg.p_grid, Rng(seed).derive(1), {cfg.min_effective, cfg.max_retries}).p_star;
      }
      const auto curve = m_stability_curve(ds, q, m_values, mcurve_reps, Rng(seed).derive(2),
                                           {cfg.min_effective, cfg.max_retries});
      std::string csv = "m,forward_mean,forward_sd,backward_mean,backward_sd\n";
      for (const auto& pt : curve) {
        csv += join_csv_line({std::to_string(pt.m), format_number(pt.forward_mean), format_number(pt.forward_sd),
                              format_number(pt.backward_mean), format_number(pt.backward_sd)}) +
               '\n';
      }
      if (!mcurve_out.empty()) write_text(mcurve_out, csv);
      out << "rows=" << curve.size() << " q=" << format_number(q) << '\n';
    } else if (*pairs) {
      std::map<std::string, ColumnRoles> meta;
      if (!pairs_meta.empty()) meta = load_metadata(pairs_meta);
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(pairs_dir)) {
        const auto name = entry.path().filename().string();
        if (entry.is_regular_file() && entry.path().extension() == ".txt" && name.find("_des") == std::string::npos &&
            name.rfind("README", 0) != 0) {
          files.push_back(entry.path());
        }
      }
      std::sort(files.begin(), files.end());
      const SubsampleConfig cfg = pairs_prob.config(seed);
      std::vector<ScanResult> scans;
      std::size_t failed = 0, stable = 0;
      for (const auto& file : files) {
        LoadOptions lo;
        lo.skip_header = pairs_skip_header;
        const auto it = meta.find(file.stem().string());
        if (it != meta.end()) lo.columns = it->second;
        try {
          RawPair raw = load_pair(file.string(), lo);
          if (it != meta.end()) raw.roles = it->second;
          scans.push_back(resolution_scan(raw, pairs_k, pre, cfg));
          if (scans.back().stable) ++stable;
        } catch (const Error& e) {
          ++failed;
          err << file.string() << ": " << e.what() << '\n';
        }
      }
      std::ostringstream csv;
      write_scan_csv(scans, csv);
      if (!pairs_out.empty()) write_text(pairs_out, csv.str());
      out << "pairs=" << scans.size() << " stable=" << stable << " failed=" << failed << '\n';
    }
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace subdcor::cli
