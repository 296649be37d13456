#pragma once

#include <optional>
#include <string>
#include <vector>

namespace metaurban {

struct DateTime {
    int year = 1970;
    int month = 1;
    int day = 1;
    int hour = 0;
    int minute = 0;
    int second = 0;
    bool operator==(const DateTime&) const = default;
};

// Seconds since the Unix epoch, proleptic Gregorian.
long long to_unix_seconds(const DateTime& dt);

// Pattern grammar: tokens YYYY, MM, DD, HH, SS joined by non-alphanumeric
// separators; MM directly after an HH token reads as minutes. The literal
// "NaN" is the not-applicable pattern.
bool pattern_well_formed(const std::string& pattern);
bool pattern_is_nan(const std::string& pattern);

// Strict token-wise parse: exact token widths, byte-exact separators,
// ranges MM 1-12, DD 1-31, HH 0-23, minutes/seconds 0-59. On failure the
// reason names the offending token ("token width", "hour out of range", ...).
std::optional<DateTime> parse_timestamp_strict(const std::string& pattern,
                                               const std::string& sample,
                                               std::string* reason = nullptr);

// Best-effort parse across the supported raw layouts ("1/1/1973 0:00",
// "1973-01-01 00:00:00", "01/01/2020", "00:00:00 01/01/1973", ...).
std::optional<DateTime> parse_timestamp_lenient(const std::string& cell);

// Renders with zero-padded token widths; pattern must be well formed.
std::string render_timestamp(const std::string& pattern, const DateTime& dt);

// Canonical declared format emitted by the aligners.
inline const char* kCanonicalTimestampFormat = "YYYY-MM-DD HH:MM:SS";

}  // namespace metaurban
