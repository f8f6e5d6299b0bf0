#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace twsched {

// Time point / duration in fixed-point milliseconds.  Window relations and
// balancing ties are decided by exact equality, so floating point is banned
// from the core; doubles only appear at the reporting boundary.
//
// Open deadlines use a saturating infinity: it compares greater than every
// finite value, equals itself, and absorbs addition.
class Time {
public:
    static constexpr std::int64_t ticks_per_second = 1000;

    constexpr Time() = default;

    static constexpr Time from_ticks(std::int64_t t) { return Time(t); }
    static constexpr Time seconds(std::int64_t s) { return Time(s * ticks_per_second); }
    static constexpr Time millis(std::int64_t ms) { return Time(ms); }
    static constexpr Time infinity() { return Time(std::numeric_limits<std::int64_t>::max()); }

    [[nodiscard]] constexpr std::int64_t ticks() const { return ticks_; }
    [[nodiscard]] constexpr bool is_infinite() const { return ticks_ == infinity().ticks_; }
    [[nodiscard]] constexpr bool is_zero() const { return ticks_ == 0; }

    // Reporting only; never feed the result back into comparisons.
    [[nodiscard]] double to_seconds() const {
        if (is_infinite()) return std::numeric_limits<double>::infinity();
        return static_cast<double>(ticks_) / static_cast<double>(ticks_per_second);
    }

    friend constexpr auto operator<=>(Time a, Time b) = default;

    friend constexpr Time operator+(Time a, Time b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return Time(a.ticks_ + b.ticks_);
    }
    friend constexpr Time operator-(Time a, Time b) {
        if (a.is_infinite()) return infinity();
        return Time(a.ticks_ - b.ticks_);
    }
    Time& operator+=(Time other) { return *this = *this + other; }

    // Canonical text form: integral seconds without a point ("40"), otherwise
    // up to three fractional digits with trailing zeros trimmed ("12.5",
    // "0.001"), and "inf" for an open deadline.  parse() accepts exactly the
    // shapes str() can produce plus surrounding-free plain decimals.
    [[nodiscard]] std::string str() const;
    static Time parse(std::string_view text);

private:
    constexpr explicit Time(std::int64_t t) : ticks_(t) {}
    std::int64_t ticks_ = 0;
};

} // namespace twsched
