#pragma once

#include "tempora/chsh.hpp"

namespace tempora::anchors {

/// Deterministic one-bit machines whose symmetrized correlators, from the
/// -1 state, are (1, 0, -1, 1): canonical score 1, relabel-maximised 3.
PartySpec s3_alice();
PartySpec s3_bob();

/// Projective machines at phi_A = {0, pi/4}, phi_B = {pi/8, -pi/8}; their
/// symmetrized correlators are cos 2(phi_A - phi_B), giving 2 sqrt 2.
PartySpec tsirelson_alice();
PartySpec tsirelson_bob();

}  // namespace tempora::anchors
