#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tempora/chsh.hpp"
#include "tempora/sampler.hpp"

namespace tempora {

inline constexpr std::string_view kSchema = "tempora/v1";

/// Parties, optional Charlie and optional initial state loaded from a
/// machine file.
struct MachineFile {
  PartySpec alice;
  PartySpec bob;
  std::optional<Machine> charlie;
  std::optional<MachineState> initial;

  bool quantum() const { return is_quantum(alice.basis[0]); }
  /// The stored initial state, or the -1 state.
  MachineState initial_state() const;
};

nlohmann::json machine_to_json(const Machine& m);
/// Throws Error(Parse) naming `where` on malformed input and
/// Error(Validation) if the machine fails its validator.
Machine machine_from_json(const nlohmann::json& j, std::string_view where = "machine");

nlohmann::json state_to_json(const MachineState& s);
MachineState state_from_json(const nlohmann::json& j, bool quantum,
                             std::string_view where = "initial");

nlohmann::json machine_file_to_json(const MachineFile& f);
MachineFile machine_file_from_json(const nlohmann::json& j);
/// Parses text; JSON syntax errors become Error(Parse) with line and column.
MachineFile parse_machine_file(std::string_view text);
MachineFile load_machine_file(const std::string& path);

std::string_view to_string(OrderingMode m);
std::string_view to_string(ScoreConvention c);
std::string_view to_string(QuantumDelayMode m);
std::optional<OrderingMode> parse_ordering_mode(std::string_view s);
std::optional<ScoreConvention> parse_score_convention(std::string_view s);
std::optional<QuantumDelayMode> parse_quantum_delay_mode(std::string_view s);

nlohmann::json chsh_result_to_json(const ChshResult& r);

/// Config echo carried in result files; config_from_json inverts it.
nlohmann::json config_to_json(const SweepConfig& cfg);
SweepConfig config_from_json(const nlohmann::json& j);

nlohmann::json sweep_result_to_json(const SweepConfig& cfg, const SweepResult& r);
nlohmann::json delay_stats_to_json(const SweepConfig& cfg, const DelayStats& s);
Histogram histogram_from_json(const nlohmann::json& j);

/// "bin_lo,bin_hi,count" with one LF-terminated row per bin.
void write_histogram_csv(std::ostream& os, const Histogram& h);
/// "t,mean_s,max_s,fraction_above_2,min_raw_sum".
void write_delay_csv(std::ostream& os, const DelayStats& s);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

}  // namespace tempora
