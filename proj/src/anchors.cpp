#include "tempora/anchors.hpp"

#include <numbers>

namespace tempora::anchors {

namespace {

TransitionPair pair(Mat2R minus, Mat2R plus) { return {minus, plus}; }

}  // namespace

PartySpec s3_alice() {
  // Basis 1 always emits -1 and moves to +1; basis 2 always emits +1 and
  // moves to -1.
  return {{pair(Mat2R{{0, 0, 1, 1}}, Mat2R::zero()),
           pair(Mat2R::zero(), Mat2R{{1, 1, 0, 0}})}};
}

PartySpec s3_bob() {
  // Basis 2 reads the state out with the opposite sign and leaves it in place.
  return {{pair(Mat2R{{0, 0, 1, 1}}, Mat2R::zero()),
           pair(Mat2R{{0, 0, 0, 1}}, Mat2R{{1, 0, 0, 0}})}};
}

PartySpec tsirelson_alice() {
  return {{projective_kraus(ProjectiveAngle(0.0)),
           projective_kraus(ProjectiveAngle(std::numbers::pi / 4))}};
}

PartySpec tsirelson_bob() {
  return {{projective_kraus(ProjectiveAngle(std::numbers::pi / 8)),
           projective_kraus(ProjectiveAngle(-std::numbers::pi / 8))}};
}

}  // namespace tempora::anchors
