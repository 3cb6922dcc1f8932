#pragma once

#include <string_view>
#include <variant>

#include "tempora/classical.hpp"
#include "tempora/quantum.hpp"

namespace tempora {

using Machine = std::variant<TransitionPair, KrausPair>;
/// ProbVector for classical machines, a unit Vec2C for quantum ones.
using MachineState = std::variant<ProbVector, Vec2C>;

inline bool is_quantum(const Machine& m) { return std::holds_alternative<KrausPair>(m); }
inline bool is_quantum(const MachineState& s) { return std::holds_alternative<Vec2C>(s); }
inline std::string_view kind_name(const Machine& m) {
  return is_quantum(m) ? "quantum" : "classical";
}

/// Runs validate_classical or validate_kraus as appropriate.
void validate_machine(const Machine& m);
void validate_state(const MachineState& s);

/// The -1 state: eta = (1, 0) or psi = |-1>.
MachineState minus_state(bool quantum);

}  // namespace tempora
