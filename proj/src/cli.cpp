#include "cmhop/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "cmhop/degree_model.hpp"
#include "cmhop/errors.hpp"
#include "cmhop/limit_laws.hpp"
#include "cmhop/montecarlo.hpp"
#include "cmhop/oracle.hpp"
#include "cmhop/report.hpp"
#include "cmhop/stats.hpp"

namespace cmhop {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "1.0.0";

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::string default_output_dir() {
  const char* env = std::getenv(kOutputDirEnv);
  return env != nullptr && *env != '\0' ? env : "cmhop-out";
}

// Options shared by the experiment-style subcommands.
struct ExperimentFlags {
  double tau = 0.0;
  std::optional<double> alpha;
  std::string sizes;
  std::uint64_t replicas = 1000;
  std::uint64_t seed = 42;
  std::uint32_t cutoff = kDefaultCutoff;
  std::string giants = "topk";
  std::size_t k = 10;
  double epsilon = 0.5;
  bool flags = false;
  bool eager = false;
  bool random_pair = false;
  unsigned threads = 0;
  std::optional<std::uint64_t> stub_cap;

  ExperimentConfig to_config() const {
    ExperimentConfig cfg;
    cfg.tau = tau;
    cfg.alpha = alpha;
    cfg.sizes = parse_size_list(sizes);
    cfg.replicas = replicas;
    cfg.master_seed = seed;
    cfg.cutoff = cutoff;
    if (giants == "topk") {
      cfg.giants_mode = GiantsMode::topk;
    } else if (giants == "beta") {
      cfg.giants_mode = GiantsMode::beta;
    } else {
      throw InputError("--giants must be topk or beta");
    }
    cfg.giants_k = k;
    cfg.epsilon = epsilon;
    cfg.collect_flags = flags;
    cfg.lazy = !eager;
    cfg.random_pair = random_pair;
    cfg.threads = threads;
    cfg.stub_cap = stub_cap;
    cfg.validate();
    return cfg;
  }
};

void add_experiment_options(CLI::App* sub, ExperimentFlags& f, bool with_flags_switch) {
  sub->add_option("--tau", f.tau, "power-law exponent, in (1,2)")->required();
  sub->add_option("--alpha", f.alpha, "condition degrees on D < N^alpha");
  sub->add_option("--n", f.sizes, "comma-separated node counts, e.g. 1e3,1e4")->required();
  sub->add_option("--replicas", f.replicas, "replicas per node count");
  sub->add_option("--seed", f.seed, "master seed");
  sub->add_option("--cutoff", f.cutoff, "largest hopcount explored");
  sub->add_option("--giants", f.giants, "giant selection: topk | beta");
  sub->add_option("--k", f.k, "number of top-k giants");
  sub->add_option("--epsilon", f.epsilon, "epsilon for event D (b_{D,eps})");
  if (with_flags_switch) sub->add_flag("--flags", f.flags, "collect event flags B/C/D/A");
  sub->add_flag("--eager", f.eager, "materialize the full matching (default: lazy)");
  sub->add_flag("--random-pair", f.random_pair, "measure a uniform random pair instead of nodes 1,2");
  sub->add_option("--threads", f.threads, "worker threads (0: all cores)");
  sub->add_option("--stub-cap", f.stub_cap, "maximum total stub count");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << text;
}

void write_manifest(const fs::path& dir, const std::string& subcommand, nlohmann::ordered_json config,
                    const std::vector<std::string>& outputs) {
  nlohmann::ordered_json manifest;
  manifest["tool"] = "cmhop";
  manifest["version"] = kVersion;
  manifest["subcommand"] = subcommand;
  manifest["config"] = std::move(config);
  manifest["outputs"] = outputs;
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
}

fs::path prepare_dir(const std::string& dir) {
  fs::path path(dir);
  fs::create_directories(path);
  return path;
}

void print_summary(std::ostream& out, const SizeSummary& s) {
  out << "N=" << s.N << "  completed=" << s.completed << "  failed=" << s.failed << '\n';
  for (std::size_t i = 0; i < s.counts.size(); ++i) {
    if (s.counts[i] == 0) continue;
    const Interval ci = s.interval(i);
    out << "  H=" << std::setw(4) << bucket_label(i, s.cutoff) << "  p=" << std::fixed << std::setprecision(4)
        << s.probability(i) << "  [" << ci.lo << ", " << ci.hi << "]\n";
  }
  try {
    const PEstimate p = estimate_p(s);
    out << "  p_hat=" << p.p << "  [" << p.ci.lo << ", " << p.ci.hi << "]\n";
  } catch (const EstimationError&) {
    out << "  p_hat unavailable\n";
  }
  out.unsetf(std::ios::floatfield);
  out << std::setprecision(6);
}

struct RunFiles {
  std::vector<std::string> outputs;
  std::uint64_t failed = 0;
  std::uint64_t total = 0;
};

RunFiles run_and_write(const ExperimentConfig& cfg, const fs::path& dir, std::ostream& out, std::ostream& err,
                       int verbosity, ExperimentResult* keep = nullptr) {
  RunFiles files;
  std::ofstream csv(dir / "replicas.csv", std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write replicas.csv");
  write_replica_csv_header(csv);
  RunOptions options;
  options.on_outcome = [&](const ReplicaOutcome& o) { write_replica_csv_row(csv, o); };
  options.on_size_done = [&](const SizeSummary& s) {
    if (verbosity > 0) err << "finished N=" << s.N << '\n';
    print_summary(out, s);
  };
  ExperimentResult result = run_experiment(cfg, options);
  csv.close();
  files.outputs.push_back("replicas.csv");
  write_text(dir / "summary.json", summary_json(result.summary).dump(2) + "\n");
  files.outputs.push_back("summary.json");
  for (const SizeSummary& s : result.summary.sizes) {
    std::ostringstream tsv;
    write_histogram_tsv(tsv, s);
    const std::string name = "histogram_N" + std::to_string(s.N) + ".tsv";
    write_text(dir / name, tsv.str());
    files.outputs.push_back(name);
    files.failed += s.failed;
    files.total += s.failed + s.completed;
  }
  if (keep != nullptr) *keep = std::move(result);
  return files;
}

int resource_exit(const RunFiles& files, std::ostream& err) {
  if (files.total > 0 && 10 * files.failed > files.total) {
    err << "error: " << files.failed << " of " << files.total << " replicas hit the stub cap\n";
    return kExitResource;
  }
  return kExitOk;
}

int cmd_simulate(const ExperimentFlags& f, const std::string& out_dir, int verbosity, std::ostream& out,
                 std::ostream& err) {
  const ExperimentConfig cfg = f.to_config();
  if (cfg.alpha && !std::isinf(*cfg.alpha) && verbosity > 0 && !beta_regime(cfg.tau, *cfg.alpha) &&
      *cfg.alpha < 1.0 / (cfg.tau - 1.0)) {
    err << "note: alpha outside (1/tau, 1/(tau-1)); no limit theorem covers this regime\n";
  }
  const fs::path dir = prepare_dir(out_dir);
  RunFiles files = run_and_write(cfg, dir, out, err, verbosity);
  files.outputs.push_back("manifest.json");
  write_manifest(dir, "simulate", config_json(cfg), files.outputs);
  return resource_exit(files, err);
}

int cmd_diagnose(ExperimentFlags f, const std::string& out_dir, int verbosity, std::ostream& out,
                 std::ostream& err) {
  f.flags = true;
  const ExperimentConfig cfg = f.to_config();
  const Degree b = quantile_b(DegreeLaw::power_law(cfg.tau), cfg.epsilon);
  out << "b_{D,eps}=" << b << "  (tau=" << cfg.tau << ", eps=" << cfg.epsilon << ")\n";
  if (cfg.giants_mode == GiantsMode::beta) {
    out << "beta=" << beta_exponent(cfg.tau, *cfg.alpha) << '\n';
    if (!beta_regime(cfg.tau, *cfg.alpha)) {
      err << "warning: alpha=" << *cfg.alpha << " is outside (1/tau, 1/(tau-1)); computing anyway\n";
    }
  }
  const fs::path dir = prepare_dir(out_dir);
  ExperimentResult result;
  RunFiles files = run_and_write(cfg, dir, out, err, verbosity, &result);

  std::ostringstream tsv;
  tsv << "N\tflag_replicas\tP_B\tP_C\tP_D\tP_A\tse_C\tviolations\tmean_giant_mass\n";
  std::uint64_t violations = 0;
  for (const SizeSummary& s : result.summary.sizes) {
    const double n = static_cast<double>(std::max<std::uint64_t>(1, s.flags_recorded));
    const double pc = static_cast<double>(s.count_C) / n;
    tsv << s.N << '\t' << s.flags_recorded << '\t' << format_double(static_cast<double>(s.count_B) / n) << '\t'
        << format_double(pc) << '\t' << format_double(static_cast<double>(s.count_D) / n) << '\t'
        << format_double(static_cast<double>(s.count_A) / n) << '\t'
        << format_double(std::sqrt(pc * (1.0 - pc) / n)) << '\t' << s.violations << '\t'
        << (s.giant_mass_n > 0 ? format_double(s.giant_mass_sum / static_cast<double>(s.giant_mass_n)) : "")
        << '\n';
    out << "N=" << s.N << "  P(A)=" << static_cast<double>(s.count_A) / n << "  P(C)=" << pc
        << "  violations(A and H>3)=" << s.violations << '\n';
    violations += s.violations;
  }
  write_text(dir / "events.tsv", tsv.str());
  files.outputs.push_back("events.tsv");
  files.outputs.push_back("manifest.json");
  auto config = config_json(cfg);
  config["b_D_eps"] = b;
  write_manifest(dir, "diagnose", config, files.outputs);
  out << "total violations: " << violations << '\n';
  const int code = resource_exit(files, err);
  if (code != kExitOk) return code;
  return violations == 0 ? kExitOk : kExitCheckFailed;
}

struct LimitFlags {
  double tau = 0.0;
  std::string size;
  std::uint64_t replicas = 10000;
  std::uint64_t seed = 42;
  int k = 1;
  double threshold = 0.02;
  unsigned threads = 0;
};

int cmd_limitcheck(const LimitFlags& f, const std::string& out_dir, std::ostream& out) {
  if (f.k < 1 || f.k > kMaxJointOrder) throw InputError("--k must lie in 1..8");
  const DegreeLaw law = DegreeLaw::power_law(f.tau);
  const auto sizes = parse_size_list(f.size);
  if (sizes.size() != 1) throw InputError("limitcheck takes a single --n");
  const std::size_t n = sizes.front();
  if (static_cast<std::size_t>(f.k) > n) throw InputError("--k exceeds N");
  if (f.replicas < 1) throw InputError("replicas must be at least 1");

  const auto stats = sample_order_stats(law, n, f.replicas, f.seed, static_cast<std::size_t>(f.k), 0, f.threads);
  std::vector<std::vector<double>> samples(static_cast<std::size_t>(f.k));
  for (const OrderStats& s : stats) {
    for (int j = 0; j < f.k; ++j) samples[static_cast<std::size_t>(j)].push_back(s.ratios[static_cast<std::size_t>(j)]);
  }
  nlohmann::ordered_json ks = nlohmann::ordered_json::object();
  bool pass = true;
  std::ostringstream table;
  table << "x";
  for (int j = 1; j <= f.k; ++j) table << "\temp_k" << j << "\tana_k" << j;
  table << '\n';
  for (auto& col : samples) std::sort(col.begin(), col.end());
  for (int i = 1; i <= 50; ++i) {
    const double x = i / 10.0;
    table << format_double(x);
    for (int j = 1; j <= f.k; ++j) {
      table << '\t' << format_double(empirical_cdf(samples[static_cast<std::size_t>(j - 1)], x)) << '\t'
            << format_double(xi_marginal_cdf({f.tau, j}, x));
    }
    table << '\n';
  }
  for (int j = 1; j <= f.k; ++j) {
    const double d = ks_one_sample(samples[static_cast<std::size_t>(j - 1)],
                                   [&](double x) { return xi_marginal_cdf({f.tau, j}, x); });
    ks["k" + std::to_string(j)] = d;
    pass = pass && d <= f.threshold;
    out << "k=" << j << "  KS=" << d << (d <= f.threshold ? "  ok" : "  FAIL") << '\n';
  }
  const fs::path dir = prepare_dir(out_dir);
  write_text(dir / "limitcheck.tsv", table.str());
  nlohmann::ordered_json report{{"threshold", f.threshold}, {"ks", ks}, {"pass", pass}};
  write_text(dir / "ks.json", report.dump(2) + "\n");
  nlohmann::ordered_json config{{"tau", f.tau},   {"N", n},           {"replicas", f.replicas},
                                {"master_seed", f.seed}, {"k", f.k}, {"ks_threshold", f.threshold}};
  write_manifest(dir, "limitcheck", config, {"limitcheck.tsv", "ks.json", "manifest.json"});
  return pass ? kExitOk : kExitCheckFailed;
}

struct OracleFlags {
  std::string degrees;
  NodeId a = 1;
  NodeId b = 2;
  std::uint32_t cutoff = kDefaultCutoff;
};

int cmd_oracle(const OracleFlags& f, const std::string& out_dir, std::ostream& out) {
  std::vector<Degree> degrees;
  std::stringstream ss(f.degrees);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    std::size_t used = 0;
    unsigned long long d = 0;
    try {
      d = std::stoull(item, &used);
    } catch (const std::exception&) {
      throw InputError("bad degree '" + item + "'");
    }
    if (used != item.size()) throw InputError("bad degree '" + item + "'");
    degrees.push_back(d);
  }
  if (f.a < 1 || f.b < 1 || f.a > degrees.size() || f.b > degrees.size()) {
    throw InputError("--a/--b must be 1-based node ids");
  }
  const ExactDistribution dist = exact_distribution(degrees, f.a - 1, f.b - 1, f.cutoff);
  const double total = static_cast<double>(dist.matchings);
  out << "matchings: " << dist.matchings << '\n';
  out << "hopcount H(" << f.a << "," << f.b << "):\n";
  nlohmann::ordered_json hop = nlohmann::ordered_json::object();
  for (const auto& [label, count] : dist.hopcount) {
    out << "  H=" << label << "  " << count << "/" << dist.matchings << " = " << count / total << '\n';
    hop[label] = {{"count", count}, {"p", count / total}};
  }
  out << "multigraphs:\n";
  nlohmann::ordered_json graphs = nlohmann::ordered_json::object();
  for (const auto& [edges, count] : dist.multigraphs) {
    out << "  {" << edges << "}  " << count << "/" << dist.matchings << '\n';
    graphs[edges] = {{"count", count}, {"p", count / total}};
  }
  const fs::path dir = prepare_dir(out_dir);
  nlohmann::ordered_json report{{"matchings", dist.matchings}, {"hopcount", hop}, {"multigraphs", graphs}};
  write_text(dir / "oracle.json", report.dump(2) + "\n");
  nlohmann::ordered_json config{{"degrees", degrees}, {"a", f.a}, {"b", f.b}, {"cutoff", f.cutoff}};
  write_manifest(dir, "oracle", config, {"oracle.json", "manifest.json"});
  return kExitOk;
}

}  // namespace

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> sizes;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    item = trim(item);
    if (item.empty()) continue;
    char* end = nullptr;
    const double value = std::strtod(item.c_str(), &end);
    if (end != item.c_str() + item.size() || !std::isfinite(value) || value != std::floor(value) || value < 2 ||
        value >= 4294967295.0) {
      throw InputError("bad node count '" + item + "'");
    }
    sizes.push_back(static_cast<std::size_t>(value));
  }
  if (sizes.empty()) throw InputError("empty node count list");
  return sizes;
}

std::vector<std::string> read_config_tokens(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw InputError("cannot read config file " + path);
  std::vector<std::string> tokens;
  std::string line;
  for (int lineno = 1; std::getline(file, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InputError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw InputError(path + ":" + std::to_string(lineno) + ": empty key");
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hopcount simulation for configuration-model graphs with infinite-mean power-law degrees",
               "cmhop"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string out_dir = default_output_dir();
  std::string config_path;
  int verbosity = 0;

  auto common = [&](CLI::App* sub) {
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--out", out_dir, std::string("output directory (default: $") + kOutputDirEnv + " or ./cmhop-out)");
    sub->add_option("--config", config_path, "flat key=value config file; flags override it");
    sub->add_flag("-v,--verbose", verbosity, "progress on stderr");
  };

  ExperimentFlags sim;
  CLI::App* simulate = app.add_subcommand("simulate", "hopcount Monte Carlo over a grid of N");
  common(simulate);
  add_experiment_options(simulate, sim, true);

  ExperimentFlags diag;
  CLI::App* diagnose = app.add_subcommand("diagnose", "event flags B/C/D/A and the A => H<=3 check");
  common(diagnose);
  add_experiment_options(diagnose, diag, false);

  LimitFlags lim;
  CLI::App* limitcheck = app.add_subcommand("limitcheck", "top-k degree ratios vs the extreme-value limit");
  common(limitcheck);
  limitcheck->add_option("--tau", lim.tau, "power-law exponent, in (1,2)")->required();
  limitcheck->add_option("--n", lim.size, "node count")->required();
  limitcheck->add_option("--replicas", lim.replicas, "replicas");
  limitcheck->add_option("--seed", lim.seed, "master seed");
  limitcheck->add_option("--k", lim.k, "number of order statistics, 1..8");
  limitcheck->add_option("--ks-threshold", lim.threshold, "largest accepted KS distance");
  limitcheck->add_option("--threads", lim.threads, "worker threads (0: all cores)");

  OracleFlags orc;
  CLI::App* oracle = app.add_subcommand("oracle", "exact enumeration for tiny degree sequences");
  common(oracle);
  oracle->add_option("--degrees", orc.degrees, "comma-separated degrees, total <= 12")->required();
  oracle->add_option("--a", orc.a, "first endpoint (1-based)");
  oracle->add_option("--b", orc.b, "second endpoint (1-based)");
  oracle->add_option("--cutoff", orc.cutoff, "largest hopcount explored");

  try {
    // Splice config-file tokens right after the subcommand so later flags win.
    std::vector<std::string> tokens(args);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      std::string path;
      if (tokens[i] == "--config" && i + 1 < tokens.size()) {
        path = tokens[i + 1];
      } else if (tokens[i].rfind("--config=", 0) == 0) {
        path = tokens[i].substr(9);
      } else {
        continue;
      }
      const auto sub = std::find_if(tokens.begin(), tokens.end(), [](const std::string& t) {
        return t == "simulate" || t == "diagnose" || t == "limitcheck" || t == "oracle";
      });
      const auto file_tokens = read_config_tokens(path);
      tokens.insert(sub == tokens.end() ? tokens.begin() : sub + 1, file_tokens.begin(), file_tokens.end());
      break;
    }
    std::reverse(tokens.begin(), tokens.end());
    app.parse(tokens);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(sim, out_dir, verbosity, out, err);
    if (diagnose->parsed()) return cmd_diagnose(diag, out_dir, verbosity, out, err);
    if (limitcheck->parsed()) return cmd_limitcheck(lim, out_dir, out);
    if (oracle->parsed()) return cmd_oracle(orc, out_dir, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  }
  return kExitConfig;
}

}  // namespace cmhop
