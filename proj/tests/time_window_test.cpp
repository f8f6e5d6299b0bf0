#include <doctest.h>

#include "twsched/errors.hpp"
#include "twsched/time_window.hpp"

#include <vector>

using namespace twsched;

namespace {

TimeWindow win(long long a, long long b) {
    return {Time::seconds(a), Time::seconds(b)};
}

TimeWindow win_inf(long long a) { return {Time::seconds(a), Time::infinity()}; }

OrientedRelation rel(const TimeWindow& x, const TimeWindow& y) { return classify(x, y); }

} // namespace

TEST_CASE("window construction validates its endpoints") {
    CHECK_NOTHROW(win(0, 0));
    CHECK_NOTHROW(win_inf(2));
    CHECK_THROWS_AS(win(5, 3), ConfigError);
    CHECK_THROWS_AS(TimeWindow(Time::infinity(), Time::infinity()), ConfigError);
    CHECK(win(2, 9).length() == Time::seconds(7));
    CHECK(win(2, 9).str() == "(2,9)");
    CHECK(win_inf(2).str() == "(2,inf)");
}

TEST_CASE("each relation kind classifies forward and swapped") {
    // disjoint with a gap
    CHECK(rel(win(0, 2), win(5, 9)) == OrientedRelation{RelationKind::Before, false});
    CHECK(rel(win(5, 9), win(0, 2)) == OrientedRelation{RelationKind::Before, true});
    // adjacent: one finishes exactly when the other starts
    CHECK(rel(win(0, 5), win(5, 9)) == OrientedRelation{RelationKind::Meets, false});
    CHECK(rel(win(5, 9), win(0, 5)) == OrientedRelation{RelationKind::Meets, true});
    // strictly inside
    CHECK(rel(win(3, 5), win(1, 9)) == OrientedRelation{RelationKind::During, false});
    CHECK(rel(win(1, 9), win(3, 5)) == OrientedRelation{RelationKind::During, true});
    // same start, first one closes earlier
    CHECK(rel(win(2, 5), win(2, 9)) == OrientedRelation{RelationKind::StartsWith, false});
    CHECK(rel(win(2, 9), win(2, 5)) == OrientedRelation{RelationKind::StartsWith, true});
    // same finish, first one opens earlier
    CHECK(rel(win(1, 9), win(4, 9)) == OrientedRelation{RelationKind::FinishesWith, false});
    CHECK(rel(win(4, 9), win(1, 9)) == OrientedRelation{RelationKind::FinishesWith, true});
    // identical
    CHECK(rel(win(3, 8), win(3, 8)) == OrientedRelation{RelationKind::Equals, false});
    // proper crossing
    CHECK(rel(win(0, 6), win(4, 9)) == OrientedRelation{RelationKind::Overlaps, false});
    CHECK(rel(win(4, 9), win(0, 6)) == OrientedRelation{RelationKind::Overlaps, true});
}

TEST_CASE("open-ended windows classify like any others") {
    CHECK(rel(win_inf(0), win_inf(3)) == OrientedRelation{RelationKind::FinishesWith, false});
    CHECK(rel(win_inf(3), win_inf(0)) == OrientedRelation{RelationKind::FinishesWith, true});
    CHECK(rel(win_inf(0), win(5, 9)) == OrientedRelation{RelationKind::During, true});
    CHECK(rel(win(5, 9), win_inf(0)) == OrientedRelation{RelationKind::During, false});
    CHECK(rel(win_inf(0), win_inf(0)) == OrientedRelation{RelationKind::Equals, false});
    CHECK(rel(win(0, 2), win_inf(2)) == OrientedRelation{RelationKind::Meets, false});
}

TEST_CASE("zero-length windows resolve by the equality-first rules") {
    CHECK(rel(win(3, 3), win(3, 7)) == OrientedRelation{RelationKind::Meets, false});
    CHECK(rel(win(3, 7), win(7, 7)) == OrientedRelation{RelationKind::Meets, false});
    CHECK(rel(win(3, 3), win(3, 3)) == OrientedRelation{RelationKind::Equals, false});
    CHECK(rel(win(3, 3), win(5, 5)) == OrientedRelation{RelationKind::Before, false});
    CHECK(rel(win(0, 7), win(3, 3)) == OrientedRelation{RelationKind::During, true});
}

TEST_CASE("classification is exhaustive and flip-consistent over a dense grid") {
    std::vector<TimeWindow> windows;
    for (long long a = 0; a <= 6; ++a)
        for (long long b = a; b <= 6; ++b) windows.push_back(win(a, b));
    REQUIRE(windows.size() == 28);

    int checked = 0;
    for (const TimeWindow& x : windows)
        for (const TimeWindow& y : windows) {
            OrientedRelation forward{};
            CHECK_NOTHROW(forward = classify(x, y));
            const OrientedRelation backward = classify(y, x);
            CHECK(backward == forward.flipped());
            ++checked;
        }
    CHECK(checked == 28 * 28);
}

TEST_CASE("positive-length pairs satisfy exactly one relation predicate") {
    std::vector<TimeWindow> windows;
    for (long long a = 0; a <= 6; ++a)
        for (long long b = a + 1; b <= 6; ++b) windows.push_back(win(a, b));

    for (const TimeWindow& x : windows)
        for (const TimeWindow& y : windows) {
            const auto [a1, b1] = std::pair{x.start(), x.finish()};
            const auto [a2, b2] = std::pair{y.start(), y.finish()};
            int holds = 0;
            if (a1 == a2 && b1 == b2) ++holds;                              // equals
            else if (b1 < a2 || b2 < a1) ++holds;                           // before
            else if (b1 == a2 || b2 == a1) ++holds;                         // meets
            else if (a1 == a2) ++holds;                                     // same start
            else if (b1 == b2) ++holds;                                     // same finish
            else if ((a2 < a1 && b1 < b2) || (a1 < a2 && b2 < b1)) ++holds; // inside
            else ++holds;                                                   // crossing
            CHECK(holds == 1);
            const OrientedRelation oriented = classify(x, y);
            CHECK(oriented.kind != RelationKind::Unconstrained);
        }
}

TEST_CASE("relation names round-trip through text") {
    for (RelationKind kind :
         {RelationKind::Before, RelationKind::Meets, RelationKind::During,
          RelationKind::StartsWith, RelationKind::FinishesWith, RelationKind::Equals,
          RelationKind::Overlaps, RelationKind::Unconstrained})
        CHECK(relation_from_string(to_string(kind)) == kind);
    CHECK_THROWS_AS(relation_from_string("sideways"), ConfigError);
}

TEST_CASE("relations split into parallel and serial arrangements") {
    CHECK(arrangement_of(RelationKind::Equals) == Arrangement::Parallel);
    CHECK(arrangement_of(RelationKind::Overlaps) == Arrangement::Parallel);
    CHECK(arrangement_of(RelationKind::StartsWith) == Arrangement::Parallel);
    CHECK(arrangement_of(RelationKind::FinishesWith) == Arrangement::Parallel);
    CHECK(arrangement_of(RelationKind::During) == Arrangement::Parallel);
    CHECK(arrangement_of(RelationKind::Before) == Arrangement::Serial);
    CHECK(arrangement_of(RelationKind::Meets) == Arrangement::Serial);
    CHECK(arrangement_of(RelationKind::Unconstrained) == Arrangement::Serial);
}

TEST_CASE("containment and shifting") {
    CHECK(win(0, 10).contains(win(2, 8)));
    CHECK(win(0, 10).contains(win(0, 10)));
    CHECK_FALSE(win(0, 10).contains(win(2, 12)));
    CHECK_FALSE(win(2, 8).contains(win(0, 10)));
    CHECK(win_inf(0).contains(win(5, 900)));
    CHECK(win(3, 7).shifted(Time::seconds(2)) == win(5, 9));
    CHECK(win_inf(3).shifted(Time::seconds(2)) == win_inf(5));
}
