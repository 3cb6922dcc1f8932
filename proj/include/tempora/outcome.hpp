#pragma once

#include <array>
#include <cstddef>

namespace tempora {

/// A dichotomic measurement result, either -1 or +1.
enum class Outcome : int { minus = -1, plus = +1 };

inline constexpr std::array<Outcome, 2> kOutcomes{Outcome::minus, Outcome::plus};

constexpr int value(Outcome o) { return static_cast<int>(o); }
constexpr std::size_t index(Outcome o) { return o == Outcome::minus ? 0 : 1; }

/// Probabilities at or below this are treated as an impossible branch.
inline constexpr double kZeroBranchTol = 1e-12;

}  // namespace tempora
