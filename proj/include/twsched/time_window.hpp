#pragma once

#include "twsched/time.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace twsched {

// How two execution windows relate.  Every pair of valid windows matches
// exactly one kind in exactly one orientation; Unconstrained is never
// produced from geometry and only marks pairs with no declared constraint.
enum class RelationKind : std::uint8_t {
    Before,        // first window closes no later than the second opens, with a gap
    Meets,         // first window closes exactly when the second opens
    During,        // first window strictly inside the second
    StartsWith,    // same opening, first closes earlier
    FinishesWith,  // same closing, first opens earlier
    Equals,        // identical windows
    Overlaps,      // staggered: second opens inside the first, closes after it
    Unconstrained, // no declared constraint between the tasks
};

// Tasks whose windows share interior time cannot run on one stream.
enum class Arrangement : std::uint8_t { Parallel, Serial };

[[nodiscard]] Arrangement arrangement_of(RelationKind kind);

[[nodiscard]] std::string_view to_string(RelationKind kind);
[[nodiscard]] RelationKind relation_from_string(std::string_view text);

// A relation kind plus the orientation it applies in: when `swapped` is set
// the kind holds for (second, first).  Equals and Unconstrained are their own
// mirror images and always carry swapped == false.
struct OrientedRelation {
    RelationKind kind = RelationKind::Unconstrained;
    bool swapped = false;

    [[nodiscard]] OrientedRelation flipped() const {
        if (kind == RelationKind::Equals || kind == RelationKind::Unconstrained) return *this;
        return {kind, !swapped};
    }
    friend bool operator==(OrientedRelation, OrientedRelation) = default;
};

[[nodiscard]] std::string to_string(OrientedRelation rel);

// Closed execution window [start, finish].  The start is always finite; an
// open deadline is Time::infinity().  Zero-length windows are permitted.
class TimeWindow {
public:
    TimeWindow(Time start, Time finish);

    [[nodiscard]] Time start() const { return start_; }
    [[nodiscard]] Time finish() const { return finish_; }
    [[nodiscard]] Time length() const { return finish_ - start_; }

    [[nodiscard]] bool contains(const TimeWindow& inner) const {
        return start_ <= inner.start_ && inner.finish_ <= finish_;
    }
    [[nodiscard]] TimeWindow shifted(Time delta) const {
        return {start_ + delta, finish_ + delta};
    }

    [[nodiscard]] std::string str() const; // "(a,b)" with canonical time text

    friend constexpr auto operator<=>(const TimeWindow&, const TimeWindow&) = default;

private:
    Time start_;
    Time finish_;
};

// Decide the one relation that holds between two windows.  Equality patterns
// are tested before strict ones, so pairs that satisfy several predicate
// templates at once (possible only when a zero-length window sits on a
// boundary) resolve deterministically: Equals, then Meets, then the shared
// endpoint kinds, then the strict kinds.
[[nodiscard]] OrientedRelation classify(const TimeWindow& first, const TimeWindow& second);

} // namespace twsched
