#include "tempora/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "tempora/anchors.hpp"
#include "tempora/error.hpp"
#include "tempora/serialization.hpp"

namespace tempora {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  return parts;
}

double parse_real(const std::string& s, const char* flag) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || !std::isfinite(x)) {
    throw UsageError(std::string(flag) + ": not a number: '" + s + "'");
  }
  return x;
}

std::vector<double> parse_reals(const std::string& s, std::size_t n, const char* flag) {
  const auto parts = split_commas(s);
  if (parts.size() != n) {
    throw UsageError(std::string(flag) + " expects " + std::to_string(n) +
                     " comma-separated values");
  }
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(parse_real(p, flag));
  return out;
}

std::vector<std::uint32_t> parse_t_list(const std::string& s) {
  std::vector<std::uint32_t> out;
  for (const auto& p : split_commas(s)) {
    std::size_t used = 0;
    long long v = -1;
    try {
      v = std::stoll(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != p.size() || p.empty() || v < 0 || v > 1'000'000) {
      throw UsageError("--t-list: invalid delay '" + p + "'");
    }
    out.push_back(static_cast<std::uint32_t>(v));
  }
  if (out.empty()) throw UsageError("--t-list must not be empty");
  return out;
}

// Raw option values shared by the subcommands.
struct Options {
  std::string kind = "hmm";
  std::uint64_t count = 1'000'000;
  bool full_scale = false;
  std::uint64_t seed = 42;
  std::uint32_t bins = 400;
  std::string range = "0,4";
  std::string mode = "symmetrized";
  std::string convention;
  std::string t_list;
  std::string quantum_mode = "vector-sum";
  std::string out;
  std::string format = "json";
  unsigned threads = 0;
  bool random_initial = false;
  std::string angles;
  std::string machine_file;
};

void add_sweep_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--kind", o.kind, "Machine family: mm, hmm, hqmm, hqmm-proj")
      ->check(CLI::IsMember({"mm", "hmm", "hqmm", "hqmm-proj"}));
  auto* count = cmd->add_option("--count", o.count, "Number of trials");
  cmd->add_flag("--full-scale", o.full_scale, "Run 10^8 trials")->excludes(count);
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--bins", o.bins, "Histogram bins");
  cmd->add_option("--range", o.range, "Histogram range lo,hi");
  cmd->add_option("--threads", o.threads, "Worker threads (0: TEMPORA_THREADS or all cores)");
  cmd->add_flag("--random-initial", o.random_initial,
                "Draw a random initial state per trial instead of the -1 state");
}

void add_scoring_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode", o.mode, "Ordering: symmetrized, a-first, b-first")
      ->check(CLI::IsMember({"symmetrized", "a-first", "b-first"}));
  cmd->add_option("--convention", o.convention, "Score: canonical or max-relabel")
      ->check(CLI::IsMember({"canonical", "max-relabel"}));
}

void add_output_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Output path (default: stdout)");
  cmd->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

void add_delay_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--t-list", o.t_list, "Comma-separated delays, e.g. 0,1,2,3");
  cmd->add_option("--quantum-mode", o.quantum_mode, "vector-sum or channel")
      ->check(CLI::IsMember({"vector-sum", "channel"}));
}

SweepConfig make_config(const Options& o, ScoreConvention default_conv) {
  SweepConfig cfg;
  cfg.kind = *parse_machine_kind(o.kind);
  cfg.count = o.full_scale ? 100'000'000ULL : o.count;
  cfg.master_seed = o.seed;
  cfg.bins = o.bins;
  const auto range = parse_reals(o.range, 2, "--range");
  cfg.lo = range[0];
  cfg.hi = range[1];
  cfg.mode = *parse_ordering_mode(o.mode);
  cfg.convention =
      o.convention.empty() ? default_conv : *parse_score_convention(o.convention);
  cfg.random_initial_state = o.random_initial;
  return cfg;
}

// Writes to --out or to `out`.
template <typename Fn>
void emit(const Options& o, std::ostream& out, Fn&& write) {
  if (o.out.empty()) {
    write(out);
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file " + o.out);
  write(file);
}

int run_sample(const Options& o, std::ostream& out) {
  const SweepConfig cfg = make_config(o, ScoreConvention::canonical);
  const SweepResult r = run_sweep(cfg, o.threads);
  emit(o, out, [&](std::ostream& os) {
    if (o.format == "csv") {
      write_histogram_csv(os, r.histogram);
    } else {
      os << sweep_result_to_json(cfg, r).dump(2) << '\n';
    }
  });
  return kExitOk;
}

int run_delay(const Options& o, std::ostream& out) {
  SweepConfig cfg = make_config(o, ScoreConvention::canonical);
  cfg.delay = DelayConfig{parse_t_list(o.t_list.empty() ? "0,1,2,3,4,5" : o.t_list),
                          *parse_quantum_delay_mode(o.quantum_mode)};
  const DelayStats stats = run_delay_sweep(cfg, o.threads);
  emit(o, out, [&](std::ostream& os) {
    if (o.format == "csv") {
      write_delay_csv(os, stats);
    } else {
      os << delay_stats_to_json(cfg, stats).dump(2) << '\n';
    }
  });
  return kExitOk;
}

int run_score(const Options& o, std::ostream& out) {
  const MachineFile f = load_machine_file(o.machine_file);
  const auto mode = *parse_ordering_mode(o.mode);
  const auto conv = o.convention.empty() ? ScoreConvention::max_relabel
                                         : *parse_score_convention(o.convention);
  const MachineState state = f.initial_state();
  nlohmann::json doc{{"schema", kSchema},
                     {"result", chsh_result_to_json(chsh_score(f.alice, f.bob, state, mode, conv))}};
  if (!o.t_list.empty()) {
    if (!f.charlie) throw UsageError("--t-list needs a machine file with \"charlie\"");
    const auto qmode = *parse_quantum_delay_mode(o.quantum_mode);
    nlohmann::json delayed = nlohmann::json::array();
    for (std::uint32_t t : parse_t_list(o.t_list)) {
      const auto r = delayed_chsh_score(f.alice, f.bob, state, {*f.charlie, t, qmode},
                                        mode, conv);
      delayed.push_back({{"t", t}, {"result", chsh_result_to_json(r)}});
    }
    doc["delayed"] = delayed;
  }
  emit(o, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return kExitOk;
}

int run_spatial(const Options& o, std::ostream& out) {
  const auto a = parse_reals(o.angles, 4, "--angles");
  const SpatialResult r = spatial_reference_score(a[0], a[1], a[2], a[3]);
  const nlohmann::json doc{{"c11", r.c11}, {"c12", r.c12},
                           {"c21", r.c21}, {"c22", r.c22},
                           {"s_canonical", r.s_canonical}, {"s_max", r.s_max}};
  emit(o, out, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  return kExitOk;
}

int run_verify(std::ostream& out) {
  bool ok = true;
  auto report = [&](bool pass, const std::string& line) {
    out << (pass ? "PASS  " : "FAIL  ") << line << '\n';
    ok = ok && pass;
  };
  const double tsirelson = 2.0 * std::numbers::sqrt2;

  const ChshResult s3 = chsh_score(anchors::s3_alice(), anchors::s3_bob(),
                                   minus_state(false));
  report(std::abs(s3.s_max - 3.0) <= 1e-12 && std::abs(s3.s_canonical - 1.0) <= 1e-12,
         "S=3 anchor: classical example s_max=" + format_double(s3.s_max) +
             " s_canonical=" + format_double(s3.s_canonical));

  const ChshResult q = chsh_score(anchors::tsirelson_alice(), anchors::tsirelson_bob(),
                                  minus_state(true));
  report(std::abs(q.s_max - tsirelson) <= 1e-9,
         "2sqrt2 anchor: projective temporal s_max=" + format_double(q.s_max));

  const SpatialResult sp = spatial_reference_score(0.0, std::numbers::pi / 2,
                                                   -std::numbers::pi / 4,
                                                   std::numbers::pi / 4);
  report(std::abs(sp.s_max - tsirelson) <= 1e-9,
         "2sqrt2 anchor: spatial s_max=" + format_double(sp.s_max));
  return ok ? kExitOk : kExitValidation;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Temporal CHSH scores of classical and quantum one-bit generators"};
  app.require_subcommand(1);
  Options o;

  auto* sample = app.add_subcommand("sample", "Sweep random machines into a score histogram");
  add_sweep_options(sample, o);
  add_scoring_options(sample, o);
  add_output_options(sample, o);

  auto* delay = app.add_subcommand("delay", "Sweep scores with Charlie applied t times");
  add_sweep_options(delay, o);
  add_scoring_options(delay, o);
  add_delay_options(delay, o);
  add_output_options(delay, o);

  auto* score = app.add_subcommand("score", "Score the machines in a machine file");
  score->add_option("machine_file", o.machine_file, "Machine JSON file")->required();
  add_scoring_options(score, o);
  add_delay_options(score, o);
  score->add_option("--out", o.out, "Output path (default: stdout)");

  auto* verify = app.add_subcommand("verify", "Check the built-in anchor values");

  auto* spatial = app.add_subcommand("spatial", "Closed-form spatial CHSH for four angles");
  spatial->add_option("--angles", o.angles, "theta_a1,theta_a2,theta_b1,theta_b2 (radians)")
      ->required()
      ->allow_extra_args(false);
  spatial->add_option("--out", o.out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sample) return run_sample(o, out);
    if (*delay) return run_delay(o, out);
    if (*score) return run_score(o, out);
    if (*verify) return run_verify(out);
    if (*spatial) return run_spatial(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Config ? kExitUsage : kExitValidation;
  }
  return kExitUsage;
}

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"tempora"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace tempora
