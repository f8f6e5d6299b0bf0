#include "twsched/time.hpp"

#include "twsched/errors.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace twsched {

std::string Time::str() const {
    if (is_infinite()) return "inf";
    std::int64_t t = ticks_;
    const bool negative = t < 0;
    if (negative) t = -t;
    std::int64_t whole = t / ticks_per_second;
    std::int64_t frac = t % ticks_per_second;
    std::string out = negative ? "-" : "";
    out += std::to_string(whole);
    if (frac != 0) {
        char buf[8];
        std::snprintf(buf, sizeof buf, ".%03lld", static_cast<long long>(frac));
        std::string_view fv(buf);
        while (fv.ends_with('0')) fv.remove_suffix(1);
        out += fv;
    }
    return out;
}

Time Time::parse(std::string_view text) {
    if (text == "inf" || text == "+inf") return infinity();
    if (text.empty()) throw ConfigError("empty time literal");

    std::string_view body = text;
    bool negative = false;
    if (body.front() == '-') {
        negative = true;
        body.remove_prefix(1);
    } else if (body.front() == '+') {
        body.remove_prefix(1);
    }

    const auto dot = body.find('.');
    std::string_view whole_part = body.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? "" : body.substr(dot + 1);
    if (whole_part.empty() || (dot != std::string_view::npos && frac_part.empty()))
        throw ConfigError("malformed time literal: " + std::string(text));
    if (frac_part.size() > 3)
        throw ConfigError("time resolution is 1ms; too many fractional digits in: " + std::string(text));

    std::int64_t whole = 0;
    auto [wp, wec] = std::from_chars(whole_part.data(), whole_part.data() + whole_part.size(), whole);
    if (wec != std::errc{} || wp != whole_part.data() + whole_part.size())
        throw ConfigError("malformed time literal: " + std::string(text));

    std::int64_t frac = 0;
    if (!frac_part.empty()) {
        auto [fp, fec] = std::from_chars(frac_part.data(), frac_part.data() + frac_part.size(), frac);
        if (fec != std::errc{} || fp != frac_part.data() + frac_part.size())
            throw ConfigError("malformed time literal: " + std::string(text));
        for (std::size_t i = frac_part.size(); i < 3; ++i) frac *= 10;
    }

    std::int64_t t = whole * ticks_per_second + frac;
    return from_ticks(negative ? -t : t);
}

} // namespace twsched
