#include "twsched/time_window.hpp"

#include "twsched/errors.hpp"

namespace twsched {

Arrangement arrangement_of(RelationKind kind) {
    switch (kind) {
    case RelationKind::Equals:
    case RelationKind::Overlaps:
    case RelationKind::StartsWith:
    case RelationKind::FinishesWith:
    case RelationKind::During:
        return Arrangement::Parallel;
    case RelationKind::Before:
    case RelationKind::Meets:
    case RelationKind::Unconstrained:
        return Arrangement::Serial;
    }
    throw ConfigError("unknown relation kind");
}

std::string_view to_string(RelationKind kind) {
    switch (kind) {
    case RelationKind::Before: return "before";
    case RelationKind::Meets: return "meets";
    case RelationKind::During: return "during";
    case RelationKind::StartsWith: return "starts-with";
    case RelationKind::FinishesWith: return "finishes-with";
    case RelationKind::Equals: return "equals";
    case RelationKind::Overlaps: return "overlaps";
    case RelationKind::Unconstrained: return "unconstrained";
    }
    throw ConfigError("unknown relation kind");
}

RelationKind relation_from_string(std::string_view text) {
    if (text == "before") return RelationKind::Before;
    if (text == "meets") return RelationKind::Meets;
    if (text == "during") return RelationKind::During;
    if (text == "starts-with") return RelationKind::StartsWith;
    if (text == "finishes-with") return RelationKind::FinishesWith;
    if (text == "equals") return RelationKind::Equals;
    if (text == "overlaps") return RelationKind::Overlaps;
    if (text == "unconstrained") return RelationKind::Unconstrained;
    throw ConfigError("unknown relation name: " + std::string(text));
}

std::string to_string(OrientedRelation rel) {
    std::string out{to_string(rel.kind)};
    if (rel.swapped) out += " (swapped)";
    return out;
}

TimeWindow::TimeWindow(Time start, Time finish) : start_(start), finish_(finish) {
    if (start.is_infinite()) throw ConfigError("window start must be finite");
    if (finish < start) throw ConfigError("window finishes before it starts: " + str());
}

std::string TimeWindow::str() const {
    return "(" + start_.str() + "," + finish_.str() + ")";
}

OrientedRelation classify(const TimeWindow& first, const TimeWindow& second) {
    const Time a1 = first.start(), b1 = first.finish();
    const Time a2 = second.start(), b2 = second.finish();

    if (a1 == a2 && b1 == b2) return {RelationKind::Equals, false};

    if (b1 == a2) return {RelationKind::Meets, false};
    if (b2 == a1) return {RelationKind::Meets, true};

    if (a1 == a2) return {RelationKind::StartsWith, b2 < b1};
    if (b1 == b2) return {RelationKind::FinishesWith, a2 < a1};

    if (b1 < a2) return {RelationKind::Before, false};
    if (b2 < a1) return {RelationKind::Before, true};

    if (a2 < a1 && b1 < b2) return {RelationKind::During, false};
    if (a1 < a2 && b2 < b1) return {RelationKind::During, true};

    if (a1 < a2 && a2 < b1 && b1 < b2) return {RelationKind::Overlaps, false};
    if (a2 < a1 && a1 < b2 && b2 < b1) return {RelationKind::Overlaps, true};

    // Unreachable for valid windows: the cases above cover every ordering of
    // two closed intervals.  Kept as a hard failure rather than a fallback so
    // a logic regression cannot silently report "no constraint".
    throw ConsistencyError("window pair escaped classification: " + first.str() + " vs " +
                           second.str());
}

} // namespace twsched
