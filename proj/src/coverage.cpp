#include "metaurban/coverage.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>

#include <json.hpp>

namespace metaurban {

const char* to_string(GeographyLevel level) {
    switch (level) {
        case GeographyLevel::Country: return "country";
        case GeographyLevel::State: return "state";
        case GeographyLevel::County: return "county";
        case GeographyLevel::Zipcode: return "zipcode";
        case GeographyLevel::Region: return "region";
        case GeographyLevel::Division: return "division";
        case GeographyLevel::Freeform: return "freeform";
    }
    return "?";
}

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

Ring ring_from_json(const json& j) {
    if (!j.is_array() || j.size() < 4) throw MalformedGeometry("ring needs >= 4 vertices");
    Ring ring;
    for (const auto& pt : j) {
        if (!pt.is_array() || pt.size() < 2 || !pt[0].is_number() || !pt[1].is_number())
            throw MalformedGeometry("vertex is not a coordinate pair");
        ring.emplace_back(pt[0].get<double>(), pt[1].get<double>());
    }
    if (ring.front() != ring.back()) throw MalformedGeometry("ring is not closed");
    return ring;
}

void rings_from_polygon(const json& coords, GeoArea& area) {
    if (!coords.is_array()) throw MalformedGeometry("polygon coordinates missing");
    for (const auto& ring : coords) area.rings.push_back(ring_from_json(ring));
}

// Returns the geometry object if the JSON looks like GeoJSON, else nullptr.
const json* geometry_of(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) return nullptr;
    std::string type = j["type"].get<std::string>();
    if (type == "Feature") {
        if (j.contains("geometry") && j["geometry"].is_object())
            return geometry_of(j["geometry"]);
        return nullptr;
    }
    if (type == "Polygon" || type == "MultiPolygon") return &j;
    return nullptr;
}

GeographyLevel level_from_label(const std::string& label) {
    std::string l = lower(label);
    if (l.find("region") != std::string::npos) return GeographyLevel::Region;
    if (l.find("division") != std::string::npos) return GeographyLevel::Division;
    if (l.find("state") != std::string::npos) return GeographyLevel::State;
    if (l.find("county") != std::string::npos) return GeographyLevel::County;
    if (l.find("zip") != std::string::npos) return GeographyLevel::Zipcode;
    if (l.find("country") != std::string::npos) return GeographyLevel::Country;
    return GeographyLevel::Freeform;
}

bool is_country_name(const std::string& s) {
    std::string l = lower(trim(s));
    l.erase(std::remove(l.begin(), l.end(), '.'), l.end());
    return l == "us" || l == "usa" || l == "united states" ||
           l == "united states of america";
}

std::vector<std::string> split_bracket_list(const std::string& body) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    char quote = 0;
    for (char c : body) {
        if (quoted) {
            if (c == quote) {
                out.push_back(cur);
                cur.clear();
                quoted = false;
            } else {
                cur.push_back(c);
            }
        } else if (c == '\'' || c == '"') {
            quoted = true;
            quote = c;
            cur.clear();
        } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!cur.empty()) out.push_back(cur), cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

}  // namespace

EffectiveCoverage parse_coverage(const std::string& raw) {
    if (trim(raw).empty()) throw EmptyCoverage();

    EffectiveCoverage cov;
    cov.raw = raw;
    std::string t = trim(raw);

    // GeoJSON branch: only text that parses as JSON and carries a geometry type.
    if (t.front() == '{') {
        json j = json::parse(t, nullptr, /*allow_exceptions=*/false);
        if (!j.is_discarded()) {
            if (const json* geom = geometry_of(j)) {
                GeoArea area;
                std::string type = (*geom)["type"].get<std::string>();
                if (!geom->contains("coordinates"))
                    throw MalformedGeometry("coordinates missing");
                if (type == "Polygon") {
                    rings_from_polygon((*geom)["coordinates"], area);
                } else {  // MultiPolygon
                    for (const auto& poly : (*geom)["coordinates"])
                        rings_from_polygon(poly, area);
                }
                if (area.rings.empty()) throw MalformedGeometry("no rings");
                cov.is_geo_area = true;
                cov.area = std::move(area);
                return cov;
            }
        }
    }

    NamedGeography geo;

    // Labeled bracket lists, e.g. "Regions: [3 4 1 2], Census divisions: [...]".
    static const std::regex labeled(R"(['"]?([A-Za-z][A-Za-z ]*?)['"]?\s*:\s*\[([^\]]*)\])");
    auto begin = std::sregex_iterator(t.begin(), t.end(), labeled);
    auto end = std::sregex_iterator();
    bool first = true;
    for (auto it = begin; it != end; ++it) {
        std::string label = trim((*it)[1].str());
        std::vector<std::string> values = split_bracket_list((*it)[2].str());
        if (first) {
            geo.level = level_from_label(label);
            geo.values = values;
            first = false;
        } else {
            geo.extra_lists.emplace_back(label, values);
        }
    }
    if (!first) {
        cov.geo = std::move(geo);
        return cov;
    }

    if (t.size() == 5 && std::all_of(t.begin(), t.end(), [](unsigned char c) {
            return std::isdigit(c);
        })) {
        geo.level = GeographyLevel::Zipcode;
        geo.values = {t};
    } else if (is_country_name(t)) {
        geo.level = GeographyLevel::Country;
        geo.values = {t};
    } else {
        geo.level = GeographyLevel::Freeform;
        geo.values = {t};
    }
    cov.geo = std::move(geo);
    return cov;
}

namespace {

// p on segment [a,b]?
bool on_segment(std::pair<double, double> a, std::pair<double, double> b, double px,
                double py) {
    double cross = (b.first - a.first) * (py - a.second) -
                   (b.second - a.second) * (px - a.first);
    if (std::fabs(cross) > 1e-12) return false;
    return px >= std::min(a.first, b.first) - 1e-12 &&
           px <= std::max(a.first, b.first) + 1e-12 &&
           py >= std::min(a.second, b.second) - 1e-12 &&
           py <= std::max(a.second, b.second) + 1e-12;
}

}  // namespace

Containment contains_point(const EffectiveCoverage& coverage, const GeoCoordinate& point) {
    if (!coverage.is_geo_area) return Containment::Unknown;

    // Ring vertices are (lon, lat) per GeoJSON.
    double px = point.longitude, py = point.latitude;
    bool inside = false;
    for (const Ring& ring : coverage.area.rings) {
        for (size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
            if (on_segment(ring[j], ring[i], px, py)) return Containment::Inside;
            double xi = ring[i].first, yi = ring[i].second;
            double xj = ring[j].first, yj = ring[j].second;
            bool crosses = (yi > py) != (yj > py) &&
                           px < (xj - xi) * (py - yi) / (yj - yi) + xi;
            if (crosses) inside = !inside;
        }
    }
    return inside ? Containment::Inside : Containment::Outside;
}

}  // namespace metaurban
