#include <stdexcept>

#include "doctest.h"
#include "gsm/errors.hpp"
#include "gsm/reaction.hpp"
#include "support.hpp"

using namespace gsm;
using test::ms;

TEST_CASE("reaction construction enforces the normal form") {
  CHECK_NOTHROW(Reaction(ms({"A"}), 1.0, ms({})));
  CHECK_NOTHROW(Reaction(ms({"A", "A"}), 0.5, ms({"B"})));
  CHECK_NOTHROW(Reaction(ms({"A", "B"}), 2.0, ms({"C", "C", "D"})));

  CHECK_THROWS_AS(Reaction(ms({}), 1.0, ms({"A"})), std::invalid_argument);
  CHECK_THROWS_AS(Reaction(ms({"A", "B", "C"}), 1.0, ms({})),
                  std::invalid_argument);
  CHECK_THROWS_AS(Reaction(ms({"A"}), 0.0, ms({})), std::invalid_argument);
  CHECK_THROWS_AS(Reaction(ms({"A"}), -2.0, ms({})), std::invalid_argument);
  CHECK_THROWS_AS(Reaction(ms({"A"}), 1.0 / 0.0, ms({})),
                  std::invalid_argument);
  CHECK_THROWS_AS(Reaction(ms({"A"}), 0.0 / 0.0, ms({})),
                  std::invalid_argument);
}

TEST_CASE("reaction equality is structural") {
  Reaction ab(ms({"A", "B"}), 0.5, ms({"C"}));
  Reaction ba(ms({"B", "A"}), 0.5, ms({"C"}));
  CHECK(ab == ba);
  CHECK(ReactionHash{}(ab) == ReactionHash{}(ba));

  Reaction other_rate(ms({"A", "B"}), 0.25, ms({"C"}));
  CHECK(!(ab == other_rate));
  Reaction other_products(ms({"A", "B"}), 0.5, ms({"C", "C"}));
  CHECK(!(ab == other_products));

  CHECK(ab.has_reactant(SpeciesKey("A")));
  CHECK(!ab.has_reactant(SpeciesKey("C")));
}

TEST_CASE("reaction text expands multiplicities") {
  CHECK(Reaction(ms({"A", "A"}), 0.5, ms({"B"})).str() == "A + A ->{0.5} B");
  CHECK(Reaction(ms({"A"}), 1.0, ms({})).str() == "A ->{1}");
  CHECK(Reaction(ms({"B", "A"}), 0.25, ms({"D", "C", "C"})).str() ==
        "A + B ->{0.25} C + C + D");
}

TEST_CASE("activity variant stores per-algorithm state") {
  Activity direct = DirectActivity{3.0};
  Activity nrm = NrmActivity{2.0, 7.5};
  CHECK(propensity_of(direct) == 3.0);
  CHECK(propensity_of(nrm) == 2.0);
}

TEST_CASE("reaction table keeps insertion order and rejects duplicates") {
  ReactionMap table;
  Reaction first(ms({"A"}), 1.0, ms({"B"}));
  Reaction second(ms({"B"}), 2.0, ms({"A"}));
  CHECK(table.append(first, DirectActivity{0.0}) == 0);
  CHECK(table.append(second, DirectActivity{0.0}) == 1);
  CHECK(table.size() == 2);
  CHECK(table.reaction_at(0) == first);
  CHECK(table.reaction_at(1) == second);
  CHECK(table.index_of(second) == 1);
  CHECK(!table.index_of(Reaction(ms({"A"}), 3.0, ms({"B"}))).has_value());
  CHECK(table.contains(first));

  CHECK_THROWS_AS(table.append(first, DirectActivity{0.0}), InternalError);

  table.set_activity(0, DirectActivity{4.5});
  CHECK(propensity_of(table.activity_at(0)) == 4.5);
  CHECK_THROWS_AS(table.activity_at(2), InternalError);
  CHECK_THROWS_AS(table.reaction_at(2), InternalError);
  CHECK_THROWS_AS(table.set_activity(2, DirectActivity{0.0}), InternalError);
}
