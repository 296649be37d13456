#include "metaurban/timestamp.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <regex>

namespace metaurban {

long long to_unix_seconds(const DateTime& dt) {
    // days_from_civil (Howard Hinnant's algorithm)
    long long y = dt.year;
    y -= dt.month <= 2;
    long long era = (y >= 0 ? y : y - 399) / 400;
    unsigned yoe = static_cast<unsigned>(y - era * 400);
    unsigned doy = (153u * (dt.month + (dt.month > 2 ? -3 : 9)) + 2) / 5 + dt.day - 1;
    unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    long long days = era * 146097LL + doe - 719468LL;
    return days * 86400LL + dt.hour * 3600LL + dt.minute * 60LL + dt.second;
}

namespace {

enum class Sem { Year, Month, Day, Hour, Minute, Second };

struct Token {
    bool is_field = false;
    Sem sem = Sem::Year;
    int width = 0;
    std::string literal;  // separator text when !is_field
};

std::optional<std::vector<Token>> tokenize(const std::string& pattern) {
    std::vector<Token> tokens;
    size_t i = 0;
    Sem prev = Sem::Year;
    bool have_prev = false;
    while (i < pattern.size()) {
        auto at = [&](const char* s) { return pattern.compare(i, strlen(s), s) == 0; };
        if (at("YYYY")) {
            tokens.push_back({true, Sem::Year, 4, ""});
            prev = Sem::Year;
            have_prev = true;
            i += 4;
        } else if (at("MM")) {
            Sem sem = (have_prev && prev == Sem::Hour) ? Sem::Minute : Sem::Month;
            tokens.push_back({true, sem, 2, ""});
            prev = sem;
            have_prev = true;
            i += 2;
        } else if (at("DD")) {
            tokens.push_back({true, Sem::Day, 2, ""});
            prev = Sem::Day;
            have_prev = true;
            i += 2;
        } else if (at("HH")) {
            tokens.push_back({true, Sem::Hour, 2, ""});
            prev = Sem::Hour;
            have_prev = true;
            i += 2;
        } else if (at("SS")) {
            tokens.push_back({true, Sem::Second, 2, ""});
            prev = Sem::Second;
            have_prev = true;
            i += 2;
        } else if (!std::isalnum(static_cast<unsigned char>(pattern[i]))) {
            if (!tokens.empty() && !tokens.back().is_field)
                tokens.back().literal.push_back(pattern[i]);
            else
                tokens.push_back({false, Sem::Year, 0, std::string(1, pattern[i])});
            ++i;
        } else {
            return std::nullopt;  // stray alphanumeric
        }
    }
    bool any_field = std::any_of(tokens.begin(), tokens.end(),
                                 [](const Token& t) { return t.is_field; });
    if (!any_field) return std::nullopt;
    return tokens;
}

const char* sem_name(Sem sem) {
    switch (sem) {
        case Sem::Year: return "year";
        case Sem::Month: return "month";
        case Sem::Day: return "day";
        case Sem::Hour: return "hour";
        case Sem::Minute: return "minute";
        case Sem::Second: return "second";
    }
    return "?";
}

bool range_ok(Sem sem, int v) {
    switch (sem) {
        case Sem::Year: return v >= 0;
        case Sem::Month: return v >= 1 && v <= 12;
        case Sem::Day: return v >= 1 && v <= 31;
        case Sem::Hour: return v >= 0 && v <= 23;
        case Sem::Minute:
        case Sem::Second: return v >= 0 && v <= 59;
    }
    return false;
}

void assign(DateTime& dt, Sem sem, int v) {
    switch (sem) {
        case Sem::Year: dt.year = v; break;
        case Sem::Month: dt.month = v; break;
        case Sem::Day: dt.day = v; break;
        case Sem::Hour: dt.hour = v; break;
        case Sem::Minute: dt.minute = v; break;
        case Sem::Second: dt.second = v; break;
    }
}

}  // namespace

bool pattern_is_nan(const std::string& pattern) {
    std::string t;
    for (char c : pattern)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    return t == "nan";
}

bool pattern_well_formed(const std::string& pattern) {
    if (pattern_is_nan(pattern)) return true;
    return tokenize(pattern).has_value();
}

std::optional<DateTime> parse_timestamp_strict(const std::string& pattern,
                                               const std::string& sample,
                                               std::string* reason) {
    auto fail = [&](const std::string& why) -> std::optional<DateTime> {
        if (reason) *reason = why;
        return std::nullopt;
    };
    auto tokens = tokenize(pattern);
    if (!tokens) return fail("pattern not well formed");
    DateTime dt;
    size_t pos = 0;
    for (const Token& tok : *tokens) {
        if (!tok.is_field) {
            if (sample.compare(pos, tok.literal.size(), tok.literal) != 0)
                return fail("separator mismatch");
            pos += tok.literal.size();
            continue;
        }
        int v = 0;
        int digits = 0;
        while (digits < tok.width && pos + digits < sample.size() &&
               std::isdigit(static_cast<unsigned char>(sample[pos + digits]))) {
            v = v * 10 + (sample[pos + digits] - '0');
            ++digits;
        }
        if (digits != tok.width) return fail("token width");
        pos += digits;
        if (pos < sample.size() && std::isdigit(static_cast<unsigned char>(sample[pos])))
            return fail("token width");
        if (!range_ok(tok.sem, v))
            return fail(std::string(sem_name(tok.sem)) + " out of range");
        assign(dt, tok.sem, v);
    }
    if (pos != sample.size()) return fail("trailing characters");
    return dt;
}

std::optional<DateTime> parse_timestamp_lenient(const std::string& cell) {
    std::string t = cell;
    size_t b = t.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return std::nullopt;
    size_t e = t.find_last_not_of(" \t\r\n");
    t = t.substr(b, e - b + 1);

    static const std::regex ymd_hms(
        R"((\d{4})-(\d{1,2})-(\d{1,2})(?:[ T](\d{1,2}):(\d{1,2})(?::(\d{1,2}))?)?)");
    static const std::regex mdy_hm(
        R"((\d{1,2})/(\d{1,2})/(\d{4})(?: (\d{1,2}):(\d{1,2})(?::(\d{1,2}))?)?)");
    static const std::regex hms_mdy(
        R"((\d{1,2}):(\d{1,2}):(\d{1,2}) (\d{1,2})/(\d{1,2})/(\d{4}))");
    static const std::regex ymd_slash(R"((\d{4})/(\d{1,2})/(\d{1,2}))");

    std::smatch m;
    DateTime dt;
    auto num = [&](int i) { return m[i].matched ? std::stoi(m[i].str()) : 0; };
    if (std::regex_match(t, m, ymd_hms)) {
        dt = {num(1), num(2), num(3), num(4), num(5), num(6)};
    } else if (std::regex_match(t, m, mdy_hm)) {
        dt = {num(3), num(1), num(2), num(4), num(5), num(6)};
    } else if (std::regex_match(t, m, hms_mdy)) {
        dt = {num(6), num(4), num(5), num(1), num(2), num(3)};
    } else if (std::regex_match(t, m, ymd_slash)) {
        dt = {num(1), num(2), num(3), 0, 0, 0};
    } else {
        return std::nullopt;
    }
    if (dt.month < 1 || dt.month > 12 || dt.day < 1 || dt.day > 31 || dt.hour > 23 ||
        dt.minute > 59 || dt.second > 59)
        return std::nullopt;
    return dt;
}

std::string render_timestamp(const std::string& pattern, const DateTime& dt) {
    auto tokens = tokenize(pattern);
    std::string out;
    if (!tokens) return out;
    char buf[8];
    for (const Token& tok : *tokens) {
        if (!tok.is_field) {
            out += tok.literal;
            continue;
        }
        int v = 0;
        switch (tok.sem) {
            case Sem::Year: v = dt.year; break;
            case Sem::Month: v = dt.month; break;
            case Sem::Day: v = dt.day; break;
            case Sem::Hour: v = dt.hour; break;
            case Sem::Minute: v = dt.minute; break;
            case Sem::Second: v = dt.second; break;
        }
        std::snprintf(buf, sizeof buf, "%0*d", tok.width, v);
        out += buf;
    }
    return out;
}

}  // namespace metaurban
