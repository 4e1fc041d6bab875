#include "mkn/encode.hpp"

#include <cmath>

namespace mkn {

const char* to_string(Modifier m) {
  switch (m) {
    case Modifier::Absent: return "absent";
    case Modifier::Possible: return "possible";
    case Modifier::Present: return "present";
  }
  return "?";
}

std::optional<Modifier> parse_modifier(const std::string& text) {
  if (text == "absent") return Modifier::Absent;
  if (text == "possible") return Modifier::Possible;
  if (text == "present") return Modifier::Present;
  return std::nullopt;
}

const char* to_string(EncodingKind kind) {
  switch (kind) {
    case EncodingKind::ModifierDirect: return "modifier";
    case EncodingKind::Sigmoid: return "sigmoid";
    case EncodingKind::ImprovedSigmoid: return "improved-sigmoid";
  }
  return "?";
}

double improved_sigmoid(double x, double x_normal) {
  const double dev = x - x_normal;
  const double s = 2.0 / (1.0 + std::exp(-dev * dev)) - 1.0;
  // The true value is strictly below 1 for every finite input; keep it that
  // way after rounding (large deviations would otherwise round up to 1.0).
  return s < 1.0 ? s : std::nextafter(1.0, 0.0);
}

double plain_sigmoid(double x, double x_normal) {
  return 1.0 / (1.0 + std::exp(-(x - x_normal)));
}

namespace {

double modifier_level(Modifier m) {
  switch (m) {
    case Modifier::Absent: return 0.0;
    case Modifier::Possible: return 1.0;
    case Modifier::Present: return 2.0;
  }
  return 0.0;
}

}  // namespace

double encode(const SymptomObservation& obs, EncodingKind kind) {
  double x, x_normal;
  if (obs.modifier) {
    x = modifier_level(*obs.modifier);
    x_normal = 0.0;  // absent is the normal state
  } else {
    if (kind == EncodingKind::ModifierDirect) {
      throw Error(ErrorKind::ModifierRequired,
                  "modifier encoding cannot take numeric observation for \"" +
                      obs.symptom + "\"");
    }
    if (!obs.value || !obs.normal) {
      throw Error(ErrorKind::MissingNormalValue,
                  "numeric observation for \"" + obs.symptom +
                      "\" needs both a value and a normal value");
    }
    x = *obs.value;
    x_normal = *obs.normal;
  }

  switch (kind) {
    case EncodingKind::ModifierDirect: return x;
    case EncodingKind::Sigmoid: return plain_sigmoid(x, x_normal);
    case EncodingKind::ImprovedSigmoid: return improved_sigmoid(x, x_normal);
  }
  return 0.0;
}

}  // namespace mkn
