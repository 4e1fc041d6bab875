#pragma once

#include <optional>
#include <string>

#include "mkn/error.hpp"

namespace mkn {

/// Categorical symptom status. Direct numeric mapping: absent 0, possible 1,
/// present 2.
enum class Modifier { Absent, Possible, Present };

const char* to_string(Modifier m);
std::optional<Modifier> parse_modifier(const std::string& text);

enum class EncodingKind { ModifierDirect, Sigmoid, ImprovedSigmoid };

const char* to_string(EncodingKind kind);

/// A raw symptom observation: either a modifier, or a numeric measurement
/// paired with the symptom's normal value.
struct SymptomObservation {
  std::string symptom;
  std::optional<Modifier> modifier;
  std::optional<double> value;
  std::optional<double> normal;

  static SymptomObservation from_modifier(std::string symptom, Modifier m) {
    return {std::move(symptom), m, std::nullopt, std::nullopt};
  }
  static SymptomObservation from_value(std::string symptom, double value,
                                       double normal) {
    return {std::move(symptom), std::nullopt, value, normal};
  }
};

/// Bounded deviation score 2/(1+e^(-(x-normal)^2)) - 1, in [0,1) and
/// symmetric about the normal value.
double improved_sigmoid(double x, double x_normal);

/// Plain logistic of (x - normal).
double plain_sigmoid(double x, double x_normal);

/// Maps one observation to the model's symptom variable x. Modifiers route
/// through {0,1,2} with normal value 0 before any continuous encoding;
/// ModifierDirect rejects numeric input.
double encode(const SymptomObservation& obs, EncodingKind kind);

}  // namespace mkn
