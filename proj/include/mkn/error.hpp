#pragma once

#include <stdexcept>
#include <string>

namespace mkn {

enum class ErrorKind {
  MalformedLine,
  DuplicateRule,
  EmptyRuleSet,
  MissingWeight,
  InvalidName,
  MissingNormalValue,
  ModifierRequired,
  EnumerationTooLarge,
  UnknownDisease,
  UnknownSymptom,
  GivenHasZeroMass,
  DivergenceDetected,
  EmptyGoldSet,
  EmptyCorpus,
  InvalidSpec,
  IoError,
};

/// Library-wide exception; `kind()` carries the failure category so callers
/// (and the CLI exit-code mapping) can dispatch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mkn
