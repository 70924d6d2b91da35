#include "subdcor/benchmark.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <thread>

#include "subdcor/csv.hpp"
#include "subdcor/dc_baseline.hpp"
#include "subdcor/error.hpp"

namespace subdcor {
namespace {

struct Outcome {
  bool failed = false;
  Decision decision = Decision::tie;
  double gap = 0.0;
  double seconds = 0.0;
};

Outcome run_method(Method method, const DiscreteDataset& ds, const SubsampleConfig& cfg, bool timing) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    if (method == Method::sub) {
      const auto rep = infer_direction(ds, cfg);
      o.decision = rep.decision;
      o.gap = rep.relative_gap;
    } else {
      const auto rep = dc_infer(ds);
      o.decision = rep.decision;
      o.gap = relative_gap(rep.forward.score, rep.backward.score);
    }
  } catch (const Error&) {
    o.failed = true;
  }
  if (timing) o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return o;
}

}  // namespace

std::string_view to_string(Method m) noexcept { return m == Method::sub ? "SUB" : "DC"; }

Method parse_method(std::string_view name) {
  if (name == "SUB" || name == "sub") return Method::sub;
  if (name == "DC" || name == "dc") return Method::dc;
  throw Error(Errc::invalid_input, "unknown method '" + std::string(name) + "'");
}

void BenchmarkSpec::validate() const {
  if (n_datasets < 1) throw Error(Errc::invalid_input, "n_datasets must be positive");
  if (n_samples < 1) throw Error(Errc::invalid_input, "n_samples must be positive");
  if (methods.empty()) throw Error(Errc::invalid_input, "no methods selected");
  if (!(tie_credit >= 0.0 && tie_credit <= 1.0)) throw Error(Errc::invalid_input, "tie credit must lie in [0, 1]");
  for (std::size_t s : support_sizes) {
    GeneratorSpec g = generator;
    g.x_support = g.y_support = s;
    g.n = n_samples;
    g.validate();
  }
  subsample.validate();
}

AccuracyReport run_benchmark(const BenchmarkSpec& spec) {
  spec.validate();
  const std::size_t n_methods = spec.methods.size();
  const std::size_t n_tasks = spec.support_sizes.size() * spec.n_datasets;
  // outcomes[task * n_methods + method]; task = support index * n_datasets + replication.
  std::vector<Outcome> outcomes(n_tasks * n_methods);

  const Rng master(spec.master_seed);
  const auto run_task = [&](std::size_t task) {
    const std::size_t si = task / spec.n_datasets;
    const std::size_t rep = task % spec.n_datasets;
    const std::size_t support = spec.support_sizes[si];
    const Rng stream = master.derive(support).derive(rep);
    GeneratorSpec g = spec.generator;
    g.x_support = g.y_support = support;
    g.n = spec.n_samples;
    g.seed = stream.derive(0).key();
    std::optional<DiscreteDataset> ds;
    try {
      ds = generate(g).dataset;
    } catch (const Error&) {
    }
    SubsampleConfig cfg = spec.subsample;
    cfg.seed = stream.derive(1).key();
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      Outcome& o = outcomes[task * n_methods + mi];
      if (!ds) {
        o.failed = true;
        continue;
      }
      o = run_method(spec.methods[mi], *ds, cfg, spec.record_timing);
    }
  };

  const std::size_t threads = std::max<std::size_t>(1, std::min(spec.threads, n_tasks));
  if (threads == 1) {
    for (std::size_t t = 0; t < n_tasks; ++t) run_task(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < n_tasks; t = next++) run_task(t);
      });
    }
  }

  AccuracyReport report;
  for (std::size_t mi = 0; mi < n_methods; ++mi) {
    for (std::size_t si = 0; si < spec.support_sizes.size(); ++si) {
      AccuracyCell cell;
      cell.method = spec.methods[mi];
      cell.support = spec.support_sizes[si];
      double gap_sum = 0.0;
      std::size_t scored = 0;
      for (std::size_t rep = 0; rep < spec.n_datasets; ++rep) {
        const Outcome& o = outcomes[(si * spec.n_datasets + rep) * n_methods + mi];
        cell.seconds += o.seconds;
        if (o.failed) {
          ++cell.failures;
          continue;
        }
        ++scored;
        gap_sum += o.gap;
        if (o.decision == Decision::x_to_y) ++cell.correct;
        else if (o.decision == Decision::tie) ++cell.ties;
        else ++cell.incorrect;
      }
      cell.accuracy = (static_cast<double>(cell.correct) + spec.tie_credit * static_cast<double>(cell.ties)) /
                      static_cast<double>(spec.n_datasets);
      cell.mean_relative_gap = scored > 0 ? gap_sum / static_cast<double>(scored) : 0.0;
      report.cells.push_back(cell);
    }
  }
  return report;
}

void emit_report(const AccuracyReport& report, std::ostream& out) {
  out << "method,support_size,accuracy,mean_relative_gap,ties,failures,seconds\n";
  for (const auto& c : report.cells) {
    out << to_string(c.method) << ',' << c.support << ',' << format_number(c.accuracy) << ','
        << format_number(c.mean_relative_gap) << ',' << c.ties << ',' << c.failures << ','
        << format_number(c.seconds) << '\n';
  }
}

void emit_report(const AccuracyReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::io, "cannot open '" + path + "' for writing");
  emit_report(report, out);
  if (!out) throw Error(Errc::io, "failed writing '" + path + "'");
}

}  // namespace subdcor
