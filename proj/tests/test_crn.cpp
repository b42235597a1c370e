#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "gsm/crn.hpp"
#include "gsm/errors.hpp"
#include "support.hpp"

using namespace gsm;
using test::ms;

namespace {

std::string parse_failure(const std::string& text) {
  try {
    parse_crn(text, "net.crn");
  } catch (const ParseError& error) {
    return error.what();
  }
  return "";
}

}  // namespace

TEST_CASE("reaction lines parse into normal form") {
  CrnModel model = parse_crn("A + B ->{0.5} C", "net.crn");
  REQUIRE(model.table.size() == 1);
  CHECK(model.table[0] == Reaction(ms({"A", "B"}), 0.5, ms({"C"})));
  CHECK(model.initial.empty());
}

TEST_CASE("products may be empty") {
  CrnModel model = parse_crn("A ->{1} ", "net.crn");
  REQUIRE(model.table.size() == 1);
  CHECK(model.table[0] == Reaction(ms({"A"}), 1.0, ms({})));
}

TEST_CASE("comments and semicolons structure the input") {
  CrnModel model = parse_crn(
      "# two-state switch\n"
      "A ->{1} B ; B ->{2} A  # round trip\n"
      "\n"
      "init A 2; init B 2\n",
      "net.crn");
  REQUIRE(model.table.size() == 2);
  CHECK(model.table[0] == Reaction(ms({"A"}), 1.0, ms({"B"})));
  CHECK(model.table[1] == Reaction(ms({"B"}), 2.0, ms({"A"})));
  CHECK(model.initial.count(SpeciesKey("A")) == 2);
  CHECK(model.initial.count(SpeciesKey("B")) == 2);
}

TEST_CASE("init lines accumulate") {
  CHECK(parse_crn("init A 100", "net.crn").initial.count(SpeciesKey("A")) ==
        100);
  CHECK(parse_crn("A ->{1} B", "net.crn").initial.empty());
  CHECK(parse_crn("init A 2; init A 3", "net.crn")
            .initial.count(SpeciesKey("A")) == 5);
}

TEST_CASE("parse errors carry position and cause") {
  CHECK(parse_failure("A ->{1} B\nA + B + C ->{1} D")
            .find("net.crn:2:1: at most two reactant occurrences") !=
        std::string::npos);
  CHECK(parse_failure("->{1} B").find("a reaction needs at least one "
                                      "reactant") != std::string::npos);
  CHECK(parse_failure("A ->{0} B").find("rate must be positive") !=
        std::string::npos);
  CHECK(parse_failure("A ->{-1} B").find("rate must be positive") !=
        std::string::npos);
  CHECK(parse_failure("A ->{x} B").find("invalid rate literal") !=
        std::string::npos);
  CHECK(parse_failure("A ->{1} B\nA ->{1} B").find("net.crn:2:1: duplicate "
                                                   "reaction") !=
        std::string::npos);
  CHECK(parse_failure("init A 0").find("expected a positive integer") !=
        std::string::npos);
  CHECK(parse_failure("A ->{1} B!").find("unexpected trailing text") !=
        std::string::npos);
  CHECK(parse_failure("A -> B").find("expected") != std::string::npos);
}

TEST_CASE("discovery emits each reaction when its last reactant appears") {
  SUBCASE("binary waits for the partner") {
    CrnCalculus calculus(
        CrnModel{{Reaction(ms({"A", "B"}), 1.0, ms({"C"}))}, {}});
    std::vector<SpeciesKey> none;
    CHECK(calculus.reactions(SpeciesKey("A"), none).empty());
    std::vector<SpeciesKey> seen{SpeciesKey("A")};
    auto found = calculus.reactions(SpeciesKey("B"), seen);
    REQUIRE(found.size() == 1);
    CHECK(found[0] == Reaction(ms({"A", "B"}), 1.0, ms({"C"})));
  }

  SUBCASE("homodimer needs no partner") {
    CrnCalculus calculus(
        CrnModel{{Reaction(ms({"A", "A"}), 1.0, ms({"D"}))}, {}});
    std::vector<SpeciesKey> none;
    auto found = calculus.reactions(SpeciesKey("A"), none);
    REQUIRE(found.size() == 1);
    CHECK(found[0] == Reaction(ms({"A", "A"}), 1.0, ms({"D"})));
  }

  SUBCASE("unary is always eligible") {
    CrnCalculus calculus(CrnModel{{Reaction(ms({"A"}), 1.0, ms({}))}, {}});
    std::vector<SpeciesKey> seen{SpeciesKey("B"), SpeciesKey("C")};
    auto found = calculus.reactions(SpeciesKey("A"), seen);
    REQUIRE(found.size() == 1);
    CHECK(found[0] == Reaction(ms({"A"}), 1.0, ms({})));
  }
}

TEST_CASE("every insertion order emits the full table exactly once") {
  CrnModel model = parse_crn(
      "A + B ->{1} C\n"
      "C + C ->{0.5} D\n"
      "D ->{2} E\n"
      "B + E ->{1} A\n"
      "A ->{3} B\n",
      "net.crn");
  CrnCalculus calculus(model);

  std::vector<std::string> expected;
  for (const Reaction& reaction : model.table) expected.push_back(reaction.str());
  std::sort(expected.begin(), expected.end());

  std::vector<SpeciesKey> order{SpeciesKey("A"), SpeciesKey("B"),
                                SpeciesKey("C"), SpeciesKey("D"),
                                SpeciesKey("E")};
  int permutations = 0;
  do {
    std::vector<SpeciesKey> existing;
    std::vector<std::string> collected;
    for (const SpeciesKey& key : order) {
      for (const Reaction& reaction : calculus.reactions(key, existing))
        collected.push_back(reaction.str());
      existing.push_back(key);
    }
    std::sort(collected.begin(), collected.end());
    CHECK(collected == expected);
    ++permutations;
  } while (std::next_permutation(order.begin(), order.end()));
  CHECK(permutations == 120);
}

TEST_CASE("print then parse is a fixed point") {
  CrnModel model = parse_crn(
      "B ->{2} A\n"
      "A + A ->{0.5} B\n"
      "Gene_1' ->{0.001} Gene_1' + P\n"
      "init B 3; init A 10\n",
      "net.crn");
  std::string printed = print_crn(model);
  CrnModel reparsed = parse_crn(printed, "printed.crn");
  CHECK(print_crn(reparsed) == printed);
  CHECK(reparsed.table == model.table);
  CHECK(reparsed.initial == model.initial);
}

TEST_CASE("species names follow the grammar") {
  CrnCalculus calculus(CrnModel{});
  CHECK(calculus.make_species("A'", {}) == SpeciesKey("A'"));
  CHECK(calculus.make_species("_x1'", {}) == SpeciesKey("_x1'"));
  CHECK_THROWS_AS(calculus.make_species("9bad", {}), ModelError);
  CHECK_THROWS_AS(calculus.make_species("", {}), ModelError);
  CHECK_THROWS_AS(calculus.make_species("a-b", {}), ModelError);
  CHECK_THROWS_AS(calculus.make_species("A", {"x"}), ModelError);
}
