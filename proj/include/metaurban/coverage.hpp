#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace metaurban {

struct GeoCoordinate {
    double latitude = 0.0;   // degrees, [-90, 90]
    double longitude = 0.0;  // degrees, [-180, 180]

    bool in_range() const {
        return latitude >= -90.0 && latitude <= 90.0 && longitude >= -180.0 &&
               longitude <= 180.0;
    }
    bool operator==(const GeoCoordinate&) const = default;
};

// A linear ring, (longitude, latitude) pairs, closed (first == last), >= 4 vertices.
using Ring = std::vector<std::pair<double, double>>;

struct GeoArea {
    std::vector<Ring> rings;  // all rings of the polygon/multipolygon, flattened
    bool operator==(const GeoArea&) const = default;
};

enum class GeographyLevel { Country, State, County, Zipcode, Region, Division, Freeform };

const char* to_string(GeographyLevel level);

struct NamedGeography {
    GeographyLevel level = GeographyLevel::Freeform;
    std::vector<std::string> values;
    // Additional labeled lists found in the cell, e.g. ("Census divisions", [...]).
    std::vector<std::pair<std::string, std::vector<std::string>>> extra_lists;
    bool operator==(const NamedGeography&) const = default;
};

// "Effective coverage" cell: embedded GeoJSON geometry or a named geography.
// The raw text is always retained; serialization is the raw text, byte-exact.
struct EffectiveCoverage {
    std::string raw;
    bool is_geo_area = false;
    GeoArea area;       // valid when is_geo_area
    NamedGeography geo; // valid when !is_geo_area

    const std::string& serialize() const { return raw; }
    // Equality is raw-text based: parse never loses information.
    bool operator==(const EffectiveCoverage& o) const { return raw == o.raw; }
};

struct EmptyCoverage : std::runtime_error {
    EmptyCoverage() : std::runtime_error("coverage cell is empty") {}
};

struct MalformedGeometry : std::runtime_error {
    explicit MalformedGeometry(const std::string& what)
        : std::runtime_error("malformed geometry: " + what) {}
};

EffectiveCoverage parse_coverage(const std::string& raw);

enum class Containment { Inside, Outside, Unknown };

// Even-odd ray casting for GeoArea (boundary counts as Inside);
// NamedGeography has no gazetteer and answers Unknown.
Containment contains_point(const EffectiveCoverage& coverage, const GeoCoordinate& point);

}  // namespace metaurban
