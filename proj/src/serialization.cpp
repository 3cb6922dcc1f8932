#include "tempora/serialization.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tempora/error.hpp"

namespace tempora {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(std::string_view where, const std::string& what) {
  throw Error(ErrorKind::Parse, std::string(where) + ": " + what);
}

double number_at(const json& j, std::string_view where) {
  if (!j.is_number()) parse_fail(where, "expected a number, got " + j.dump());
  const double x = j.get<double>();
  if (!std::isfinite(x)) parse_fail(where, "number is not finite");
  return x;
}

const json& field(const json& j, const char* key, std::string_view where) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) parse_fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

json real_matrix(const Mat2R& m) {
  return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

Mat2R real_matrix_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) parse_fail(where, "expected 2 rows");
  Mat2R m;
  for (std::size_t r = 0; r < 2; ++r) {
    if (!j[r].is_array() || j[r].size() != 2) {
      parse_fail(where + "[" + std::to_string(r) + "]", "expected 2 columns");
    }
    for (std::size_t c = 0; c < 2; ++c) {
      m(r, c) = number_at(j[r][c], where + "[" + std::to_string(r) + "][" +
                                       std::to_string(c) + "]");
    }
  }
  return m;
}

json complex_number(const cplx& z) { return json::array({z.real(), z.imag()}); }

cplx complex_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) parse_fail(where, "expected [re, im]");
  return {number_at(j[0], where + "[0]"), number_at(j[1], where + "[1]")};
}

json complex_matrix(const Mat2C& m) {
  json out = json::array();
  for (const auto& z : m.e) out.push_back(complex_number(z));
  return out;
}

Mat2C complex_matrix_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) {
    parse_fail(where, "expected 4 [re, im] entries in row-major order");
  }
  Mat2C m;
  for (std::size_t k = 0; k < 4; ++k) {
    m.e[k] = complex_from(j[k], where + "[" + std::to_string(k) + "]");
  }
  return m;
}

template <typename Enum>
Enum parse_enum_field(const json& j, const char* key,
                      std::optional<Enum> (*parse)(std::string_view),
                      std::string_view where) {
  const json& v = field(j, key, where);
  if (!v.is_string()) parse_fail(where, std::string(key) + " must be a string");
  const auto e = parse(v.get<std::string>());
  if (!e) parse_fail(where, std::string("unknown ") + key + " \"" +
                                v.get<std::string>() + "\"");
  return *e;
}

}  // namespace

// ------------------------------------------------------------------ machines

json machine_to_json(const Machine& m) {
  if (const auto* t = std::get_if<TransitionPair>(&m)) {
    return {{"kind", "classical"},
            {"t_minus", real_matrix(t->t_minus)},
            {"t_plus", real_matrix(t->t_plus)}};
  }
  const auto& k = std::get<KrausPair>(m);
  return {{"kind", "quantum"},
          {"k_minus", complex_matrix(k.k_minus)},
          {"k_plus", complex_matrix(k.k_plus)}};
}

Machine machine_from_json(const json& j, std::string_view where) {
  const std::string w(where);
  const json& kind = field(j, "kind", where);
  Machine m;
  if (kind == "classical") {
    m = TransitionPair{real_matrix_from(field(j, "t_minus", where), w + ".t_minus"),
                       real_matrix_from(field(j, "t_plus", where), w + ".t_plus")};
  } else if (kind == "quantum") {
    m = KrausPair{complex_matrix_from(field(j, "k_minus", where), w + ".k_minus"),
                  complex_matrix_from(field(j, "k_plus", where), w + ".k_plus")};
  } else {
    parse_fail(where, "kind must be \"classical\" or \"quantum\", got " + kind.dump());
  }
  try {
    validate_machine(m);
  } catch (const Error& e) {
    throw Error(ErrorKind::Validation, w + ": " + e.what());
  }
  return m;
}

json state_to_json(const MachineState& s) {
  if (const auto* eta = std::get_if<ProbVector>(&s)) {
    return json::array({eta->p_minus, eta->p_plus});
  }
  const auto& psi = std::get<Vec2C>(s);
  return json::array({complex_number(psi.e[0]), complex_number(psi.e[1])});
}

MachineState state_from_json(const json& j, bool quantum, std::string_view where) {
  const std::string w(where);
  if (!j.is_array() || j.size() != 2) parse_fail(where, "expected 2 components");
  MachineState s;
  if (quantum) {
    s = Vec2C{{complex_from(j[0], w + "[0]"), complex_from(j[1], w + "[1]")}};
  } else {
    s = ProbVector{number_at(j[0], w + "[0]"), number_at(j[1], w + "[1]")};
  }
  try {
    validate_state(s);
  } catch (const Error& e) {
    throw Error(ErrorKind::Validation, w + ": " + e.what());
  }
  return s;
}

MachineState MachineFile::initial_state() const {
  return initial ? *initial : minus_state(quantum());
}

json machine_file_to_json(const MachineFile& f) {
  json out{{"schema", kSchema},
           {"parties",
            {{"alice", {machine_to_json(f.alice.basis[0]), machine_to_json(f.alice.basis[1])}},
             {"bob", {machine_to_json(f.bob.basis[0]), machine_to_json(f.bob.basis[1])}}}}};
  if (f.charlie) out["charlie"] = machine_to_json(*f.charlie);
  if (f.initial) out["initial"] = state_to_json(*f.initial);
  return out;
}

MachineFile machine_file_from_json(const json& j) {
  const json& schema = field(j, "schema", "file");
  if (schema != kSchema) {
    parse_fail("file.schema", "unsupported schema " + schema.dump());
  }
  const json& parties = field(j, "parties", "file");
  auto party = [&](const char* name) {
    const std::string where = std::string("parties.") + name;
    const json& arr = field(parties, name, "parties");
    if (!arr.is_array() || arr.size() != 2) parse_fail(where, "expected 2 machines");
    return PartySpec{{machine_from_json(arr[0], where + "[0]"),
                      machine_from_json(arr[1], where + "[1]")}};
  };
  MachineFile f{party("alice"), party("bob"), std::nullopt, std::nullopt};
  if (j.contains("charlie")) f.charlie = machine_from_json(j["charlie"], "charlie");

  const bool quantum = f.quantum();
  auto check = [&](const Machine& m, const std::string& where) {
    if (is_quantum(m) != quantum) {
      throw Error(ErrorKind::Validation,
                  where + " is " + std::string(kind_name(m)) +
                      " but parties.alice[0] is " +
                      std::string(kind_name(f.alice.basis[0])));
    }
  };
  check(f.alice.basis[1], "parties.alice[1]");
  check(f.bob.basis[0], "parties.bob[0]");
  check(f.bob.basis[1], "parties.bob[1]");
  if (f.charlie) check(*f.charlie, "charlie");
  if (j.contains("initial")) f.initial = state_from_json(j["initial"], quantum);
  return f;
}

MachineFile parse_machine_file(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t k = 0; k + 1 < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::ostringstream os;
    os << "line " << line << ", column " << col << ": " << e.what();
    throw Error(ErrorKind::Parse, os.str());
  }
  return machine_file_from_json(j);
}

MachineFile load_machine_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_machine_file(ss.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

// --------------------------------------------------------------------- enums

std::string_view to_string(OrderingMode m) {
  switch (m) {
    case OrderingMode::a_first: return "a-first";
    case OrderingMode::b_first: return "b-first";
    case OrderingMode::symmetrized: return "symmetrized";
  }
  return "?";
}

std::string_view to_string(ScoreConvention c) {
  return c == ScoreConvention::canonical ? "canonical" : "max-relabel";
}

std::string_view to_string(QuantumDelayMode m) {
  return m == QuantumDelayMode::vector_sum ? "vector-sum" : "channel";
}

std::optional<OrderingMode> parse_ordering_mode(std::string_view s) {
  for (auto m : {OrderingMode::a_first, OrderingMode::b_first, OrderingMode::symmetrized}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

std::optional<ScoreConvention> parse_score_convention(std::string_view s) {
  for (auto c : {ScoreConvention::canonical, ScoreConvention::max_relabel}) {
    if (s == to_string(c)) return c;
  }
  return std::nullopt;
}

std::optional<QuantumDelayMode> parse_quantum_delay_mode(std::string_view s) {
  for (auto m : {QuantumDelayMode::vector_sum, QuantumDelayMode::channel}) {
    if (s == to_string(m)) return m;
  }
  return std::nullopt;
}

// ------------------------------------------------------------------- results

json chsh_result_to_json(const ChshResult& r) {
  return {{"c11", r.c11},
          {"c12", r.c12},
          {"c21", r.c21},
          {"c22", r.c22},
          {"s_canonical", r.s_canonical},
          {"s_max", r.s_max},
          {"score", r.score()},
          {"mode", to_string(r.mode)},
          {"convention", to_string(r.convention)},
          {"raw_sum_min", r.raw_sum_min},
          {"raw_sum_max", r.raw_sum_max}};
}

json config_to_json(const SweepConfig& cfg) {
  json out{{"kind", to_string(cfg.kind)},
           {"count", cfg.count},
           {"seed", cfg.master_seed},
           {"bins", cfg.bins},
           {"range", json::array({cfg.lo, cfg.hi})},
           {"mode", to_string(cfg.mode)},
           {"convention", to_string(cfg.convention)},
           {"initial_state", cfg.random_initial_state ? "random" : "minus"},
           {"measure", measure_description(cfg.kind)},
           {"stream", "xoshiro256** seeded per trial from splitmix64(seed, trial)"}};
  if (cfg.delay) {
    out["delay"] = {{"t_list", cfg.delay->t_list},
                    {"quantum_mode", to_string(cfg.delay->quantum_mode)}};
  }
  return out;
}

SweepConfig config_from_json(const json& j) {
  SweepConfig cfg;
  cfg.kind = parse_enum_field<MachineKind>(j, "kind", parse_machine_kind, "config");
  try {
    cfg.count = field(j, "count", "config").get<std::uint64_t>();
    cfg.master_seed = field(j, "seed", "config").get<std::uint64_t>();
    cfg.bins = field(j, "bins", "config").get<std::uint32_t>();
  } catch (const json::exception& e) {
    parse_fail("config", e.what());
  }
  const json& range = field(j, "range", "config");
  if (!range.is_array() || range.size() != 2) parse_fail("config.range", "expected [lo, hi]");
  cfg.lo = number_at(range[0], "config.range[0]");
  cfg.hi = number_at(range[1], "config.range[1]");
  cfg.mode = parse_enum_field<OrderingMode>(j, "mode", parse_ordering_mode, "config");
  cfg.convention =
      parse_enum_field<ScoreConvention>(j, "convention", parse_score_convention, "config");
  if (j.contains("initial_state")) cfg.random_initial_state = j["initial_state"] == "random";
  if (j.contains("delay")) {
    const json& d = j["delay"];
    DelayConfig dc;
    try {
      dc.t_list = field(d, "t_list", "config.delay").get<std::vector<std::uint32_t>>();
    } catch (const json::exception& e) {
      parse_fail("config.delay.t_list", e.what());
    }
    dc.quantum_mode = parse_enum_field<QuantumDelayMode>(
        d, "quantum_mode", parse_quantum_delay_mode, "config.delay");
    cfg.delay = dc;
  }
  return cfg;
}

namespace {

json optional_number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

json sweep_result_to_json(const SweepConfig& cfg, const SweepResult& r) {
  const Histogram& h = r.histogram;
  return {{"schema", kSchema},
          {"config", config_to_json(cfg)},
          {"summary",
           {{"total", r.summary.total},
            {"mean", r.summary.mean},
            {"s_max_observed", optional_number(h.total ? h.observed_max : NAN)},
            {"s_min_observed", optional_number(h.total ? h.observed_min : NAN)},
            {"fraction_above_2", r.summary.fraction_above_2()},
            {"fraction_above_2sqrt2", r.summary.fraction_above_2sqrt2()}}},
          {"histogram",
           {{"lo", h.lo},
            {"hi", h.hi},
            {"counts", h.counts},
            {"total", h.total},
            {"underflow", h.underflow},
            {"overflow", h.overflow}}}};
}

Histogram histogram_from_json(const json& j) {
  try {
    const auto counts = field(j, "counts", "histogram").get<std::vector<std::uint64_t>>();
    if (counts.empty()) parse_fail("histogram.counts", "no bins");
    Histogram h(number_at(field(j, "lo", "histogram"), "histogram.lo"),
                number_at(field(j, "hi", "histogram"), "histogram.hi"),
                static_cast<std::uint32_t>(counts.size()));
    h.counts = counts;
    h.total = field(j, "total", "histogram").get<std::uint64_t>();
    h.underflow = field(j, "underflow", "histogram").get<std::uint64_t>();
    h.overflow = field(j, "overflow", "histogram").get<std::uint64_t>();
    return h;
  } catch (const json::exception& e) {
    parse_fail("histogram", e.what());
  }
}

json delay_stats_to_json(const SweepConfig& cfg, const DelayStats& s) {
  json points = json::array();
  for (const auto& p : s.points) {
    points.push_back({{"t", p.t},
                      {"mean_s", p.mean_s},
                      {"max_s", p.max_s},
                      {"fraction_above_2", p.fraction_above_2},
                      {"min_raw_sum", p.min_raw_sum}});
  }
  return {{"schema", kSchema},
          {"config", config_to_json(cfg)},
          {"count", s.count},
          {"points", points}};
}

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_histogram_csv(std::ostream& os, const Histogram& h) {
  os << "bin_lo,bin_hi,count\n";
  for (std::uint32_t b = 0; b < h.bins(); ++b) {
    os << format_double(h.bin_lo(b)) << ',' << format_double(h.bin_hi(b)) << ','
       << h.counts[b] << '\n';
  }
}

void write_delay_csv(std::ostream& os, const DelayStats& s) {
  os << "t,mean_s,max_s,fraction_above_2,min_raw_sum\n";
  for (const auto& p : s.points) {
    os << p.t << ',' << format_double(p.mean_s) << ',' << format_double(p.max_s)
       << ',' << format_double(p.fraction_above_2) << ','
       << format_double(p.min_raw_sum) << '\n';
  }
}

}  // namespace tempora
