#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "doctest.h"
#include "mkn/encode.hpp"

using namespace mkn;

TEST_SUITE("encode/improved-sigmoid") {
  TEST_CASE("the normal value maps to exactly zero") {
    CHECK(improved_sigmoid(0.0, 0.0) == 0.0);
    CHECK(improved_sigmoid(36.6, 36.6) == 0.0);
  }

  TEST_CASE("unit deviations match the closed form") {
    // 2/(1+e^{-t^2}) - 1 == tanh(t^2/2); frozen values for t = 1 and t = 2.
    CHECK(std::abs(improved_sigmoid(1.0, 0.0) - 0.46211715726000974) < 1e-12);
    CHECK(std::abs(improved_sigmoid(2.0, 0.0) - 0.9640275800758169) < 1e-12);
    CHECK(std::abs(improved_sigmoid(1.0, 0.0) -
                   (2.0 / (1.0 + std::exp(-1.0)) - 1.0)) < 1e-12);
    CHECK(std::abs(improved_sigmoid(2.0, 0.0) -
                   (2.0 / (1.0 + std::exp(-4.0)) - 1.0)) < 1e-12);
  }

  TEST_CASE("tanh identity holds across moderate deviations") {
    for (double dev = -6.0; dev <= 6.0; dev += 0.37) {
      CHECK(std::abs(improved_sigmoid(dev, 0.0) - std::tanh(dev * dev / 2.0)) <
            1e-12);
    }
  }

  TEST_CASE("symmetric about the normal value") {
    for (double t : {0.25, 1.0, 3.5, 17.0}) {
      CHECK(improved_sigmoid(5.0 + t, 5.0) == improved_sigmoid(5.0 - t, 5.0));
    }
  }

  TEST_CASE("monotone in the deviation magnitude") {
    double previous = -1.0;
    for (double dev = 0.0; dev <= 5.0; dev += 0.05) {
      const double s = improved_sigmoid(dev, 0.0);
      CHECK(s > previous);
      previous = s;
    }
  }

  TEST_CASE("stays inside the half-open unit interval everywhere") {
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> exponent(-300.0, 300.0);
    for (int i = 0; i < 100000; ++i) {
      const double x = unit(rng) * std::pow(10.0, exponent(rng));
      const double s = improved_sigmoid(x, 0.0);
      CHECK(s >= 0.0);
      CHECK(s < 1.0);
    }
    // Extremes included by hand: the clamp keeps even these below one.
    for (double x : {1e8, 1e154, 1e308, std::numeric_limits<double>::max(),
                     std::numeric_limits<double>::denorm_min()}) {
      CHECK(improved_sigmoid(x, 0.0) >= 0.0);
      CHECK(improved_sigmoid(x, 0.0) < 1.0);
      CHECK(improved_sigmoid(-x, 0.0) < 1.0);
    }
  }
}

TEST_SUITE("encode/observations") {
  TEST_CASE("plain sigmoid is the logistic of the deviation") {
    CHECK(plain_sigmoid(0.0, 0.0) == 0.5);
    CHECK(std::abs(plain_sigmoid(1.0, 0.0) - 1.0 / (1.0 + std::exp(-1.0))) <
          1e-15);
    CHECK(std::abs(plain_sigmoid(3.0, 5.0) - 1.0 / (1.0 + std::exp(2.0))) <
          1e-15);
  }

  TEST_CASE("modifiers carry their direct numeric values") {
    CHECK(encode(SymptomObservation::from_modifier("s", Modifier::Absent),
                 EncodingKind::ModifierDirect) == 0.0);
    CHECK(encode(SymptomObservation::from_modifier("s", Modifier::Possible),
                 EncodingKind::ModifierDirect) == 1.0);
    CHECK(encode(SymptomObservation::from_modifier("s", Modifier::Present),
                 EncodingKind::ModifierDirect) == 2.0);
  }

  TEST_CASE("modifiers route through the continuous encodings at normal 0") {
    CHECK(encode(SymptomObservation::from_modifier("s", Modifier::Possible),
                 EncodingKind::ImprovedSigmoid) == improved_sigmoid(1.0, 0.0));
    CHECK(encode(SymptomObservation::from_modifier("s", Modifier::Present),
                 EncodingKind::ImprovedSigmoid) == improved_sigmoid(2.0, 0.0));
    CHECK(encode(SymptomObservation::from_modifier("s", Modifier::Absent),
                 EncodingKind::ImprovedSigmoid) == 0.0);
    CHECK(encode(SymptomObservation::from_modifier("s", Modifier::Present),
                 EncodingKind::Sigmoid) == plain_sigmoid(2.0, 0.0));
  }

  TEST_CASE("numeric observations use their own normal value") {
    const auto obs = SymptomObservation::from_value("temp", 38.6, 36.6);
    CHECK(encode(obs, EncodingKind::ImprovedSigmoid) ==
          improved_sigmoid(38.6, 36.6));
    CHECK(encode(obs, EncodingKind::Sigmoid) == plain_sigmoid(38.6, 36.6));
  }

  TEST_CASE("direct encoding rejects numeric input") {
    const auto obs = SymptomObservation::from_value("temp", 38.6, 36.6);
    try {
      encode(obs, EncodingKind::ModifierDirect);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ModifierRequired);
    }
  }

  TEST_CASE("numeric input without a normal value is refused") {
    SymptomObservation obs;
    obs.symptom = "temp";
    obs.value = 38.6;
    try {
      encode(obs, EncodingKind::ImprovedSigmoid);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::MissingNormalValue);
    }
  }

  TEST_CASE("modifier names parse both ways") {
    CHECK(parse_modifier("absent") == Modifier::Absent);
    CHECK(parse_modifier("possible") == Modifier::Possible);
    CHECK(parse_modifier("present") == Modifier::Present);
    CHECK_FALSE(parse_modifier("maybe").has_value());
    for (auto m : {Modifier::Absent, Modifier::Possible, Modifier::Present}) {
      CHECK(parse_modifier(to_string(m)) == m);
    }
  }
}
