#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "mkn/inference.hpp"
#include "mkn/synth.hpp"

using namespace mkn;
using testutil::make_record;
using testutil::network_from_text;
using testutil::network_with_quality;
using testutil::rule_line;

namespace {

ModelConfig direct_off() {
  ModelConfig config;
  config.encoding = EncodingKind::ModifierDirect;
  config.gpf_mode = GpfMode::Off;
  return config;
}

double logistic(double t) { return 1.0 / (1.0 + std::exp(-t)); }

}  // namespace

TEST_SUITE("inference/blanket") {
  TEST_CASE("the blanket collects the incident edges") {
    const GroundNetwork net = network_from_text(
        rule_line("s1", "flu", "1") + rule_line("s2", "flu", "1") +
        rule_line("s3", "flu", "1") + rule_line("s3", "other", "1"));
    const MarkovBlanket blanket = markov_blanket(net, "flu");
    CHECK(blanket.rules.size() == 3);
    CHECK(blanket.symptoms.size() == 3);
    CHECK(blanket.disease == *net.graph().find(NodeKind::Disease, "flu"));
  }

  TEST_CASE("an isolated disease has an empty blanket") {
    KnowledgeGraph graph;
    graph.add_node(NodeKind::Disease, "orphan");
    GroundNetwork net(std::move(graph), {},
                      NodeQuality{QualityMeasure::PageRank, {0.0}},
                      ModelConfig{});
    const MarkovBlanket blanket = markov_blanket(net, "orphan");
    CHECK(blanket.rules.empty());
    CHECK(blanket.symptoms.empty());
  }

  TEST_CASE("unknown disease names are refused") {
    const GroundNetwork net = network_from_text(rule_line("s", "d", "1"));
    try {
      markov_blanket(net, "nope");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnknownDisease);
    }
  }
}

TEST_SUITE("inference/risk") {
  TEST_CASE("no active evidence leaves the risk at one half") {
    const GroundNetwork net =
        network_from_text(rule_line("s", "d", "3.7"), direct_off());
    const EncodedEvidence empty = encode_evidence(net, EvidenceRecord{});
    CHECK(disease_risk(net, empty, "d") == 0.5);
  }

  TEST_CASE("a unit edge with unit evidence gives the logistic of one") {
    const GroundNetwork net =
        network_from_text(rule_line("cough", "flu", "1.0"), direct_off());
    const EncodedEvidence ev = encode_evidence(
        net, make_record("r", {{"cough", Modifier::Possible}}, {}));
    const double risk = disease_risk(net, ev, "flu");
    CHECK(std::abs(risk - logistic(1.0)) < 1e-12);
    CHECK(std::abs(risk - 0.7310585786300049) < 1e-12);
  }

  TEST_CASE("the gated potential shifts the unit-edge risk") {
    ModelConfig config = direct_off();
    config.gpf_mode = GpfMode::Gated;  // distance = sigma = 1
    const GroundNetwork net =
        network_with_quality(rule_line("cough", "flu", "1.0"), 1.0, config);
    const EncodedEvidence ev = encode_evidence(
        net, make_record("r", {{"cough", Modifier::Possible}}, {}));
    // The activated half gains the neighbor-quality term m * e^{-1}.
    CHECK(std::abs(disease_risk(net, ev, "flu") -
                   logistic(1.0 + std::exp(-1.0))) < 1e-12);
  }

  TEST_CASE("the two conditionals are exact complements") {
    const GroundNetwork net = network_from_text(
        rule_line("s1", "d1", "0.8") + rule_line("s2", "d1", "1.3") +
        rule_line("s2", "d2", "0.4"));
    const EncodedEvidence ev = encode_evidence(
        net, make_record("r",
                         {{"s1", Modifier::Present}, {"s2", Modifier::Possible}},
                         {}));
    for (std::size_t d : net.diseases()) {
      const double p1 = disease_conditional(net, ev, d, 1);
      const double p0 = disease_conditional(net, ev, d, 0);
      CHECK(std::abs(p0 + p1 - 1.0) < 1e-12);
      CHECK(std::abs(p1 - disease_risk_at(net, ev, d)) < 1e-15);
    }
  }

  TEST_CASE("log odds agree with the risk and with replacement weights") {
    const GroundNetwork net = network_from_text(
        rule_line("s1", "d1", "0.8") + rule_line("s2", "d1", "1.3"));
    const EncodedEvidence ev = encode_evidence(
        net, make_record("r", {{"s1", Modifier::Present}}, {}));
    const std::size_t d1 = *net.graph().find(NodeKind::Disease, "d1");
    const double odds = disease_log_odds(net, ev, d1);
    const double risk = disease_risk_at(net, ev, d1);
    CHECK(std::abs(odds - std::log(risk / (1.0 - risk))) < 1e-9);
    CHECK(disease_log_odds(net, net.weights(), ev, d1) == odds);
    const std::vector<double> doubled{1.6, 2.6};
    CHECK(disease_log_odds(net, doubled, ev, d1) > odds);
  }

  TEST_CASE("raising a symptom's level raises the implicated risk") {
    const GroundNetwork net =
        network_from_text(rule_line("s", "d", "0.8"), direct_off());
    const auto risk_for = [&](Modifier m) {
      return disease_risk(net, encode_evidence(net, make_record("r", {{"s", m}}, {})),
                          "d");
    };
    CHECK(risk_for(Modifier::Absent) < risk_for(Modifier::Possible));
    CHECK(risk_for(Modifier::Possible) < risk_for(Modifier::Present));
  }

  TEST_CASE("the risk does not depend on rule-file order") {
    // Same three rules for one disease, permuted; blanket sums must round
    // identically so downstream rankings cannot flip on file order.
    const std::vector<std::string> lines{rule_line("s1", "d", "0.7"),
                                         rule_line("s2", "d", "1.1"),
                                         rule_line("s3", "d", "0.4")};
    const EvidenceRecord record = make_record(
        "r", {{"s1", Modifier::Present},
              {"s2", Modifier::Possible},
              {"s3", Modifier::Present}},
        {});
    const GroundNetwork forward =
        network_from_text(lines[0] + lines[1] + lines[2], direct_off());
    const GroundNetwork shuffled =
        network_from_text(lines[2] + lines[0] + lines[1], direct_off());
    CHECK(disease_risk(forward, encode_evidence(forward, record), "d") ==
          disease_risk(shuffled, encode_evidence(shuffled, record), "d"));
  }
}

TEST_SUITE("inference/diagnose") {
  TEST_CASE("no evidence ranks every disease at one half, alphabetically") {
    const GroundNetwork net = network_from_text(
        rule_line("s", "flu", "1") + rule_line("s", "anemia", "1") +
        rule_line("s", "measles", "1"));
    const DiagnosisResult result = diagnose(net, EvidenceRecord{});
    REQUIRE(result.ranked.size() == 3);
    CHECK(result.ranked[0].disease == "anemia");
    CHECK(result.ranked[1].disease == "flu");
    CHECK(result.ranked[2].disease == "measles");
    for (const auto& entry : result.ranked) CHECK(entry.probability == 0.5);
  }

  TEST_CASE("the disease whose blanket fired ranks first") {
    const GroundNetwork net = network_from_text(
        rule_line("s1", "quiet", "1.0") + rule_line("s2", "loud", "1.0"),
        direct_off());
    const DiagnosisResult result =
        diagnose(net, make_record("r", {{"s2", Modifier::Present}}, {}));
    REQUIRE(result.ranked.size() == 2);
    CHECK(result.ranked[0].disease == "loud");
    CHECK(result.ranked[0].probability > 0.5);
    CHECK(result.ranked[1].probability == 0.5);
  }

  TEST_CASE("rankings match per-disease hand values") {
    const GroundNetwork net = network_from_text(
        rule_line("s1", "d1", "1.0") + rule_line("s2", "d2", "0.3"),
        direct_off());
    const DiagnosisResult result = diagnose(
        net, make_record("r",
                         {{"s1", Modifier::Present}, {"s2", Modifier::Present}},
                         {}));
    REQUIRE(result.ranked.size() == 2);
    CHECK(result.ranked[0].disease == "d1");
    CHECK(std::abs(result.ranked[0].probability - logistic(2.0)) < 1e-12);
    CHECK(std::abs(result.ranked[1].probability - logistic(0.6)) < 1e-12);
  }

  TEST_CASE("a query restricts the ranking") {
    const GroundNetwork net = network_from_text(
        rule_line("s1", "d1", "1.0") + rule_line("s2", "d2", "0.3"));
    const std::size_t d2 = *net.graph().find(NodeKind::Disease, "d2");
    const DiagnosisResult result = diagnose(net, EvidenceRecord{}, {d2});
    REQUIRE(result.ranked.size() == 1);
    CHECK(result.ranked[0].disease == "d2");
  }

  TEST_CASE("unknown symptoms are counted, not fatal") {
    const GroundNetwork net = network_from_text(rule_line("s", "d", "1"));
    const DiagnosisResult result = diagnose(
        net, make_record("r",
                         {{"mystery", Modifier::Present},
                          {"enigma", Modifier::Possible}},
                         {}));
    CHECK(result.skipped_symptoms == 2);
    CHECK(result.ranked[0].probability == 0.5);
  }
}

TEST_SUITE("inference/oracle") {
  TEST_CASE("single-disease networks agree with full enumeration exactly") {
    const GroundNetwork net = network_from_text(
        rule_line("s1", "d", "0.8") + rule_line("s2", "d", "1.3"));
    const EncodedEvidence ev = encode_evidence(
        net, make_record("r", {{"s1", Modifier::Present}}, {}));
    CHECK(std::abs(disease_risk(net, ev, "d") -
                   brute_force_disease_risk(net, ev, "d")) < 1e-12);
  }

  TEST_CASE("blanket inference matches the enumeration oracle") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      SynthSpec spec;
      spec.n_diseases = 4;
      spec.n_symptoms = 6;
      spec.edge_density = 0.5;
      spec.min_gold_diseases = 1;
      spec.max_gold_diseases = 2;
      spec.seed = seed;
      SynthRng rng(spec.seed);
      BuiltNetwork built = build_graph(generate_knowledge(spec, rng));
      for (auto mode : {GpfMode::Gated, GpfMode::Ungated, GpfMode::Off}) {
        ModelConfig config;
        config.gpf_mode = mode;
        const GroundNetwork net =
            GroundNetwork::build(built.graph, built.weights, config);
        const auto records = sample_records(net, spec, rng, 3);
        for (const auto& record : records) {
          const EncodedEvidence ev = encode_evidence(net, record);
          for (std::size_t d : net.diseases()) {
            const std::string& name = net.graph().node(d).name;
            CHECK(std::abs(disease_risk(net, ev, name) -
                           brute_force_disease_risk(net, ev, name)) < 1e-9);
          }
        }
      }
    }
  }
}

TEST_SUITE("inference/rules") {
  TEST_CASE("a rule is certain given itself") {
    const GroundNetwork net =
        network_from_text(rule_line("cough", "flu", "1.0"), direct_off());
    const RulePredicate r{"cough", "flu"};
    const EncodedEvidence empty = encode_evidence(net, EvidenceRecord{});
    CHECK(rule_probability(net, r, r, empty) == 1.0);
  }

  TEST_CASE("the unconditional probability matches the four-world table") {
    // Worlds (x, y) with x in {0, 2}, y in {0, 1}: scores 0, 0, 0, 2.
    const GroundNetwork net =
        network_from_text(rule_line("cough", "flu", "1.0"), direct_off());
    const EncodedEvidence empty = encode_evidence(net, EvidenceRecord{});
    const double p =
        rule_probability(net, {"cough", "flu"}, std::nullopt, empty);
    const double e2 = std::exp(2.0);
    CHECK(std::abs(p - e2 / (3.0 + e2)) < 1e-12);
  }

  TEST_CASE("conditioning on a sibling rule gives the closed form") {
    // Score over (x1, x2, y): x1*y + 0.5*x2*y with x in {0,2}. Given
    // (s2, d) active, the odds for s1 active are e^3 : e^1.
    const GroundNetwork net = network_from_text(
        rule_line("s1", "d", "1.0") + rule_line("s2", "d", "0.5"),
        direct_off());
    const EncodedEvidence empty = encode_evidence(net, EvidenceRecord{});
    const double p = rule_probability(net, {"s1", "d"},
                                      RulePredicate{"s2", "d"}, empty);
    CHECK(std::abs(p - logistic(2.0)) < 1e-12);
  }

  TEST_CASE("unknown predicate names are refused") {
    const GroundNetwork net = network_from_text(rule_line("s", "d", "1"));
    const EncodedEvidence empty = encode_evidence(net, EvidenceRecord{});
    try {
      rule_probability(net, {"nosuch", "d"}, std::nullopt, empty);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnknownSymptom);
    }
    try {
      rule_probability(net, {"s", "nosuch"}, std::nullopt, empty);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::UnknownDisease);
    }
  }

  TEST_CASE("an oversized neighborhood is refused") {
    std::string text;
    for (int i = 0; i < 21; ++i) {
      text += rule_line("s0", "d" + std::to_string(i), "0.5");
    }
    const GroundNetwork net = network_from_text(text);
    const EncodedEvidence empty = encode_evidence(net, EvidenceRecord{});
    try {
      rule_probability(net, {"s0", "d0"}, std::nullopt, empty);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::EnumerationTooLarge);
    }
  }
}
