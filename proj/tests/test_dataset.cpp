#include <doctest.h>

#include "srdcr/dataset.hpp"
#include "test_helpers.hpp"

using namespace srdcr;
using namespace srdcr::testing;

namespace {

const char* kLine1 =
    R"({"id":"w1","domain":"years","question":"census year?","answer":"2006","context":"The census was conducted in 2006."})";
const char* kLine2 =
    R"({"id":"w2","domain":"years","question":"founded when?","answer":"1901","context":"Founded in 1901."})";
const char* kPerturbedLine =
    R"({"id":"w3","domain":"years","question":"census year?","answer":"2006","context":"The census was conducted in 1966.","perturbation":{"level":"mild","offset":40,"original_value":"2006","perturbed_value":"1966"}})";

}  // namespace

TEST_CASE("dataset loading") {
    SUBCASE("well-formed three-line file") {
        const auto instances = parse_dataset(std::string(kLine1) + "\n" +
                                             kLine2 + "\n" + kPerturbedLine +
                                             "\n");
        REQUIRE(instances.size() == 3);
        CHECK(instances[0].id == "w1");
        CHECK_FALSE(instances[0].perturbed());
        REQUIRE(instances[2].perturbed());
        CHECK(instances[2].perturbation->level == PerturbationLevel::Mild);
        CHECK(instances[2].perturbation->offset == 40);
    }
    SUBCASE("duplicate id rejected") {
        CHECK_THROWS_AS(
            parse_dataset(std::string(kLine1) + "\n" + kLine1 + "\n"),
            InvariantViolation);
    }
    SUBCASE("perturbed context must contain the perturbed value") {
        const std::string bad =
            R"({"id":"w4","domain":"d","question":"q","answer":"2006","context":"no year here","perturbation":{"level":"mild","offset":40,"original_value":"2006","perturbed_value":"1966"}})";
        CHECK_THROWS_AS(parse_dataset(bad), InvariantViolation);
    }
    SUBCASE("level must match offset") {
        const std::string bad =
            R"({"id":"w5","domain":"d","question":"q","answer":"2006","context":"in 1966","perturbation":{"level":"blatant","offset":40,"original_value":"2006","perturbed_value":"1966"}})";
        CHECK_THROWS_AS(parse_dataset(bad), InvariantViolation);
    }
    SUBCASE("parse errors carry the line number") {
        try {
            parse_dataset(std::string(kLine1) + "\nbroken\n");
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        }
    }
}

TEST_CASE("round-trip preserves every field") {
    const auto instances = parse_dataset(std::string(kLine1) + "\n" +
                                         kPerturbedLine + "\n");
    std::string rewritten;
    for (const auto& inst : instances) {
        rewritten += serialize_instance(inst) + "\n";
    }
    const auto reparsed = parse_dataset(rewritten);
    REQUIRE(reparsed.size() == instances.size());
    for (std::size_t i = 0; i < instances.size(); ++i) {
        CHECK(reparsed[i].id == instances[i].id);
        CHECK(reparsed[i].question == instances[i].question);
        CHECK(reparsed[i].answer == instances[i].answer);
        CHECK(reparsed[i].context == instances[i].context);
        CHECK(reparsed[i].perturbed() == instances[i].perturbed());
        if (instances[i].perturbed()) {
            CHECK(reparsed[i].perturbation->offset ==
                  instances[i].perturbation->offset);
            CHECK(reparsed[i].perturbation->perturbed_value ==
                  instances[i].perturbation->perturbed_value);
        }
    }
}

TEST_CASE("numeric perturbation") {
    CHECK(perturb_numeric(2006, 100, Direction::Plus) == 2106);
    CHECK(perturb_numeric(2006, 40, Direction::Minus) == 1966);
    CHECK_THROWS_AS(perturb_numeric(2006, 50, Direction::Plus),
                    InvariantViolation);

    SUBCASE("plus then minus is the identity") {
        for (int offset : {20, 40, 60, 100, 200}) {
            for (int value : {0, 7, 1901, 2006}) {
                CHECK(perturb_numeric(perturb_numeric(value, offset,
                                                      Direction::Plus),
                                      offset, Direction::Minus) == value);
            }
        }
    }
}

TEST_CASE("level mapping follows the offset table") {
    CHECK(level_for_offset(20) == PerturbationLevel::Subtle);
    CHECK(level_for_offset(40) == PerturbationLevel::Mild);
    CHECK(level_for_offset(60) == PerturbationLevel::Moderate);
    CHECK(level_for_offset(100) == PerturbationLevel::Blatant);
    CHECK(level_for_offset(200) == PerturbationLevel::Blatant);
    CHECK_THROWS_AS(level_for_offset(30), InvariantViolation);
}

TEST_CASE("apply_perturbation") {
    const QAInstance base = make_instance(
        "w1", "census year?", "2006",
        "The census of 2006 reported a population of 35.");

    SUBCASE("rewrites exactly the answer-bearing span") {
        const QAInstance out = apply_perturbation(base, 100, 7);
        REQUIRE(out.perturbed());
        CHECK(out.question == base.question);
        CHECK(out.answer == base.answer);
        CHECK(out.perturbation->level == PerturbationLevel::Blatant);
        CHECK(out.perturbation->original_value == "2006");
        const int v = std::stoi(out.perturbation->perturbed_value);
        CHECK((v == 2106 || v == 1906));
        // locality: the context differs only in that one span
        CHECK(out.context ==
              "The census of " + out.perturbation->perturbed_value +
                  " reported a population of 35.");
    }
    SUBCASE("deterministic for a fixed seed") {
        const QAInstance a = apply_perturbation(base, 40, 11);
        const QAInstance b = apply_perturbation(base, 40, 11);
        CHECK(a.context == b.context);
        CHECK(a.perturbation->perturbed_value == b.perturbation->perturbed_value);
    }
    SUBCASE("answer absent from context") {
        const QAInstance miss =
            make_instance("w2", "census year?", "2006", "no year mentioned");
        CHECK_THROWS_AS(apply_perturbation(miss, 40, 0), SpanNotFound);
    }
    SUBCASE("non-integer answer") {
        const QAInstance text = make_instance("w3", "which city?", "St. Louis",
                                              "St. Louis hosted the games.");
        CHECK_THROWS_AS(apply_perturbation(text, 40, 0), NonNumericAnswer);
    }
    SUBCASE("already-perturbed instance rejected") {
        const QAInstance once = apply_perturbation(base, 20, 0);
        CHECK_THROWS_AS(apply_perturbation(once, 20, 0), PreconditionViolation);
    }
}

TEST_CASE("balanced split enforcement") {
    const QAInstance standard = make_instance("s1", "q", "2006", "in 2006");
    const QAInstance perturbed = apply_perturbation(standard, 40, 0);
    QAInstance perturbed2 = perturbed;
    perturbed2.id = "s2";

    CHECK_NOTHROW(split_dataset({standard, perturbed}, true));
    CHECK_THROWS_AS(split_dataset({standard, perturbed, perturbed2}, true),
                    InvariantViolation);
    const DatasetSplit split = split_dataset({standard, perturbed, perturbed2});
    CHECK(split.standard.size() == 1);
    CHECK(split.perturbed.size() == 2);
}
