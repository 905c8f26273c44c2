#pragma once

// Command-line front end. Every command writes an envelope of metadata plus a
// payload, as CSV (metadata on leading '#' lines) or JSON
// ({"metadata": ..., "payload": ...}). The payload depends only on the
// command line; the timestamp lives in the metadata.
//
// Exit codes: 0 success, 2 usage/configuration error, 3 internal invariant
// violation.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hybrid_search/hybrid.hpp"
#include "hybrid_search/oracles.hpp"
#include "hybrid_search/query_model.hpp"

namespace hybrid_search::cli {

inline constexpr const char* kToolName = "hsearch";
inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kOk = 0, kUsage = 2, kInternal = 3 };

using json = nlohmann::ordered_json;

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

/// Scientific notation straight from the log, so 1e-50 prints without
/// underflow concerns.
inline std::string sci(const LogReal& x) {
  if (x.is_zero()) return "0";
  const double l10 = x.log10();
  double exponent = std::floor(l10);
  double mantissa = std::pow(10.0, l10 - exponent);
  if (mantissa >= 9.9999995) {
    mantissa /= 10.0;
    exponent += 1.0;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6fe%+03d", mantissa, static_cast<int>(exponent));
  return buf;
}

inline std::string log10_str(const LogReal& x) { return fmt("%.15g", x.log10()); }
inline std::string num(double v) { return fmt("%.17g", v); }

/// A tabular payload that renders to CSV or JSON.
struct Table {
  std::vector<std::string> columns;
  std::vector<json> rows;  // objects keyed by column
};

inline std::string csv_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_float()) return num(v.get<double>());
  return v.dump();
}

class Envelope {
 public:
  Envelope(std::string format, std::string command, std::optional<std::uint64_t> seed)
      : format_(std::move(format)), command_(std::move(command)), seed_(seed) {}

  void write(std::ostream& out, const Table& table, const json& payload) const {
    if (format_ == "json") {
      json doc;
      doc["metadata"] = metadata();
      doc["payload"] = payload;
      out << doc.dump(2) << "\n";
      return;
    }
    const json meta = metadata();
    for (const auto& [key, value] : meta.items()) {
      out << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
          << "\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << table.columns[c];
    }
    out << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << csv_cell(row.at(table.columns[c]));
      }
      out << "\n";
    }
  }

 private:
  json metadata() const {
    json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["command"] = command_;
    if (seed_) {
      m["seed"] = *seed_;
    } else {
      m["seed"] = nullptr;
    }
    m["timestamp"] = timestamp();
    return m;
  }

  static std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  std::string format_;
  std::string command_;
  std::optional<std::uint64_t> seed_;
};

inline const std::vector<std::string> kGainColumns = {
    "n", "k", "M", "log10_NG", "log10_NC", "log10_NGC", "log10_G", "G_sci"};

inline json gain_row(const HybridModel& m) {
  json r;
  r["n"] = m.n;
  r["k"] = m.k;
  r["M"] = m.M.str();
  r["log10_NG"] = m.n_g.log10();
  r["log10_NC"] = m.n_c.log10();
  r["log10_NGC"] = m.n_gc.log10();
  r["log10_G"] = m.gain.log10();
  r["G_sci"] = sci(m.gain);
  return r;
}

// Payload builders. Each returns the CSV table and the JSON payload.

inline std::pair<Table, json> gain_payload(long long n, long long k) {
  const json row = gain_row(evaluate(n, k));
  return {Table{kGainColumns, {row}}, row};
}

inline std::pair<Table, json> kopt_payload(long long n, bool with_sweep) {
  if (n < 1 || n > kMaxModelWidth) {
    throw DomainError("n must be in [1, 1024], got " + std::to_string(n));
  }
  const auto all = sweep(n);
  const KOpt best = k_opt(n);
  const LogReal closed = g_min_closed_form(n);
  json summary;
  summary["n"] = n;
  summary["k_star"] = best.k_star;
  summary["M"] = best.model.M.str();
  summary["log10_G"] = best.model.gain.log10();
  summary["G_sci"] = sci(best.model.gain);
  summary["log10_G_min_closed_form"] = closed.log10();
  summary["G_min_closed_form_sci"] = sci(closed);
  if (!with_sweep) {
    Table t{{"n", "k_star", "M", "log10_G", "G_sci", "log10_G_min_closed_form",
             "G_min_closed_form_sci"},
            {summary}};
    return {t, summary};
  }
  Table t;
  t.columns = kGainColumns;
  t.columns.push_back("is_kopt");
  t.columns.push_back("log10_G_min_closed_form");
  json rows = json::array();
  for (const auto& m : all) {
    json r = gain_row(m);
    r["is_kopt"] = m.k == best.k_star;
    r["log10_G_min_closed_form"] = closed.log10();
    t.rows.push_back(r);
    rows.push_back(gain_row(m));
  }
  summary["sweep"] = rows;
  return {t, summary};
}

inline std::pair<Table, json> table1_payload() {
  Table t{{"n", "k_paper", "G_paper", "G_at_k_paper", "log10_G_at_k_paper", "k_star",
           "G_at_k_star", "log10_G_at_k_star", "G_closed_form", "log10_G_closed_form",
           "delta_k", "dlog10_at_k_paper", "dlog10_at_k_star", "dlog10_closed_form"},
          {}};
  json rows = json::array();
  for (const auto& row : table1()) {
    const double lp = std::log10(row.g_paper);
    json r;
    r["n"] = row.n;
    r["k_paper"] = row.k_paper;
    r["G_paper"] = fmt("%.4g", row.g_paper);
    r["G_at_k_paper"] = sci(row.g_at_k_paper);
    r["log10_G_at_k_paper"] = row.g_at_k_paper.log10();
    r["k_star"] = row.k_star;
    r["G_at_k_star"] = sci(row.g_at_k_star);
    r["log10_G_at_k_star"] = row.g_at_k_star.log10();
    r["G_closed_form"] = sci(row.g_closed_form);
    r["log10_G_closed_form"] = row.g_closed_form.log10();
    r["delta_k"] = row.k_star - row.k_paper;
    r["dlog10_at_k_paper"] = row.g_at_k_paper.log10() - lp;
    r["dlog10_at_k_star"] = row.g_at_k_star.log10() - lp;
    r["dlog10_closed_form"] = row.g_closed_form.log10() - lp;
    t.rows.push_back(r);
    rows.push_back(r);
  }
  return {t, rows};
}

inline std::optional<Strategy> parse_strategy(const std::string& s) {
  if (s == "hybrid") return Strategy::hybrid;
  if (s == "quantum") return Strategy::pure_quantum;
  if (s == "classical") return Strategy::pure_classical;
  if (s == "smart") return Strategy::smart_classical;
  return std::nullopt;
}

inline json stat_json(const Stat& s) {
  json j;
  j["mean"] = s.mean;
  j["stddev"] = s.stddev;
  j["min"] = s.min;
  j["max"] = s.max;
  j["ci95_low"] = s.ci95_low;
  j["ci95_high"] = s.ci95_high;
  return j;
}

inline std::pair<Table, json> simulate_payload(const MonteCarloConfig& c) {
  const MonteCarloSummary s = monte_carlo(c);
  json flat;
  flat["strategy"] = std::string(to_string(c.strategy));
  flat["n"] = c.n;
  flat["k"] = c.strategy == Strategy::hybrid ? c.k : (c.strategy == Strategy::pure_classical ? c.n : 0);
  flat["trials"] = s.trials;
  flat["seed"] = c.seed;
  flat["engine"] = std::string(to_string(c.engine));
  flat["order"] = std::string(to_string(c.order));
  json nested = flat;
  const std::pair<const char*, const Stat*> quantities[] = {
      {"distance_queries", &s.distance_queries},
      {"threshold_queries", &s.threshold_queries},
      {"promise_queries", &s.promise_queries},
      {"equality_queries", &s.equality_queries},
      {"quantum_oracle_calls", &s.quantum_oracle_calls},
      {"total_queries", &s.total_queries},
      {"restarts", &s.restarts},
  };
  json stats;
  for (const auto& [name, st] : quantities) {
    const json sj = stat_json(*st);
    stats[name] = sj;
    for (const auto& [field, value] : sj.items()) flat[std::string(name) + "_" + field] = value;
  }
  nested["stats"] = stats;
  json model = nullptr;
  if (s.model) {
    model = gain_row(*s.model);
    for (const auto& [field, value] : model.items()) {
      if (field != "n" && field != "k") flat["model_" + field] = value;
    }
  } else {
    for (const auto& field : kGainColumns) {
      if (field != "n" && field != "k") flat["model_" + field] = "";
    }
  }
  nested["model"] = model;
  flat["log10_grover_baseline"] = s.grover_baseline.log10();
  flat["executed_gain"] = s.executed_gain;
  nested["log10_grover_baseline"] = s.grover_baseline.log10();
  nested["executed_gain"] = s.executed_gain;
  Table t;
  for (const auto& [key, value] : flat.items()) t.columns.push_back(key);
  t.rows.push_back(flat);
  return {t, nested};
}

/// Parsed promise g-spec: "distance" or "prefix:<bits>".
inline PromiseFunction parse_promise(const std::string& spec, std::size_t n, std::size_t l,
                                     std::size_t k) {
  if (spec == "distance") return distance_promise(l, k);
  const std::string prefix = "prefix:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string digits = spec.substr(prefix.size());
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos ||
        digits.size() > 5) {
      throw DomainError("bad prefix length in g-spec '" + spec + "'");
    }
    const std::size_t bits = std::stoul(digits);
    if (bits < 1 || bits > n) {
      throw DomainError("prefix length must be in [1, n=" + std::to_string(n) + "]");
    }
    return prefix_match_promise(bits, l, k);
  }
  throw DomainError("g-spec must be 'distance' or 'prefix:<bits>', got '" + spec + "'");
}

inline constexpr std::size_t kMaxPromiseEnumerationWidth = 16;

inline std::pair<Table, json> promise_payload(long long n, long long k, const std::string& g_spec,
                                              long long l) {
  if (n < 1 || n > kMaxModelWidth) {
    throw DomainError("n must be in [1, 1024], got " + std::to_string(n));
  }
  if (k < 0 || k > n) throw DomainError("k must be in [0, n]");
  if (l < 0) throw DomainError("l must be >= 0");
  const auto un = static_cast<std::size_t>(n);
  const PromiseFunction pf =
      parse_promise(g_spec, un, static_cast<std::size_t>(l), static_cast<std::size_t>(k));

  // Analytic size of the sublevel set {g <= l}.
  BigCount m_gl;
  if (g_spec == "distance") {
    m_gl = ball_count(n, std::min(l, n));
  } else {
    const auto bits = static_cast<long long>(std::stoul(g_spec.substr(7)));
    m_gl = ball_count(bits, std::min(l, bits)) << static_cast<unsigned>(n - bits);
  }
  const PromiseModel model = evaluate_promise(n, k, m_gl);

  json r;
  r["n"] = n;
  r["k"] = k;
  r["g"] = pf.name;
  r["l"] = l;
  r["M_gl"] = model.m_gl.str();
  r["M_ball"] = model.ball.str();
  r["log10_NG"] = model.n_g.log10();
  r["log10_NC"] = model.n_c.log10();
  r["log10_NGC"] = model.n_gc.log10();
  r["log10_G"] = model.gain.log10();
  r["NGC_sci"] = sci(model.n_gc);
  r["G_sci"] = sci(model.gain);
  r["enumerated"] = false;
  r["M_gl_enumerated"] = "";
  r["diameter"] = "";

  // Counts do not depend on the solution, so the all-zero string stands in.
  if (un <= kMaxPromiseEnumerationWidth) {
    const SolutionInstance inst{BitString(un)};
    const MarkedSet marked = inst.marked_set(PromisePredicate{pf});
    if (BigCount(marked.size()) != model.m_gl) {
      throw InvariantError("enumerated M(g,l)=" + std::to_string(marked.size()) +
                           " disagrees with the analytic count " + model.m_gl.str());
    }
    const std::size_t diameter = marked_set_diameter(marked);
    if (diameter > pf.k) {
      throw ConstraintError("promise violated: strings with g <= l span Hamming distance " +
                            std::to_string(diameter) + " > k=" + std::to_string(pf.k));
    }
    r["enumerated"] = true;
    r["M_gl_enumerated"] = std::to_string(marked.size());
    r["diameter"] = diameter;
  }
  Table t;
  for (const auto& [key, value] : r.items()) t.columns.push_back(key);
  t.rows.push_back(r);
  return {t, r};
}

/// Entry point shared by the executable and the tests.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid quantum/classical search: cost models, gain-table reconciliation and "
               "query-counting simulation",
               kToolName};
  app.require_subcommand(1);

  std::string format = "csv";
  const auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  long long n = 0;
  long long k = 0;
  long long l = 0;

  auto* gain = app.add_subcommand("gain", "Cost model and gain at (n, k)");
  gain->add_option("--n", n, "Bits")->required();
  gain->add_option("--k", k, "Ball radius")->required();
  add_format(gain);

  bool with_sweep = false;
  auto* kopt = app.add_subcommand("kopt", "Gain-minimising radius for n");
  kopt->add_option("--n", n, "Bits")->required();
  kopt->add_flag("--sweep", with_sweep, "Also list every k");
  add_format(kopt);

  auto* tab = app.add_subcommand("table1", "Reconciliation against the published gain table");
  add_format(tab);

  std::string strategy = "hybrid";
  std::string engine = "statevector";
  std::string order = "shuffled";
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  auto* sim = app.add_subcommand("simulate", "Monte Carlo query accounting");
  sim->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"hybrid", "quantum", "classical", "smart"}));
  sim->add_option("--n", n, "Bits")->required();
  sim->add_option("--k", k, "Ball radius (hybrid)");
  sim->add_option("--trials", trials);
  sim->add_option("--seed", seed)->required();
  sim->add_option("--engine", engine)->check(CLI::IsMember({"statevector", "idealized"}));
  sim->add_option("--order", order)->check(CLI::IsMember({"shuffled", "canonical"}));
  sim->add_option("--threads", threads, "Worker threads (0: all cores)");
  add_format(sim);

  std::string g_spec;
  auto* prom = app.add_subcommand("promise", "Promise-oracle cost model");
  prom->add_option("--n", n, "Bits")->required();
  prom->add_option("--k", k, "Promised diameter bound")->required();
  prom->add_option("--g", g_spec, "distance | prefix:<bits>")->required();
  prom->add_option("--l", l, "Threshold on g")->required();
  add_format(prom);

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back(kToolName);
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  std::string command;
  for (std::size_t i = 0; i < args.size(); ++i) command += (i ? " " : "") + args[i];

  try {
    std::optional<std::uint64_t> envelope_seed;
    std::pair<Table, json> result;
    if (gain->parsed()) {
      result = gain_payload(n, k);
    } else if (kopt->parsed()) {
      result = kopt_payload(n, with_sweep);
    } else if (tab->parsed()) {
      result = table1_payload();
    } else if (sim->parsed()) {
      if (n < 1 || k < 0) throw DomainError("n must be >= 1 and k >= 0");
      MonteCarloConfig c;
      c.strategy = *parse_strategy(strategy);
      c.n = static_cast<std::size_t>(n);
      c.k = static_cast<std::size_t>(k);
      c.trials = trials;
      c.seed = seed;
      c.engine = engine == "idealized" ? Engine::idealized : Engine::statevector;
      c.order = order == "canonical" ? ScanOrder::canonical : ScanOrder::shuffled;
      c.threads = threads;
      envelope_seed = seed;
      result = simulate_payload(c);
    } else {
      result = promise_payload(n, k, g_spec, l);
    }
    Envelope(format, command, envelope_seed).write(out, result.first, result.second);
    return kOk;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace hybrid_search::cli
