#include "torfan/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace torfan {

namespace {

using nlohmann::json;

Int coordinate_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_number_unsigned()) return Int(j.get<unsigned long long>());
    if (j.is_string()) {
        const std::string& s = j.get<std::string>();
        size_t pos = s.empty() || s[0] != '-' ? 0 : 1;
        if (pos == s.size()) throw InputError("fan file: empty coordinate string");
        for (size_t i = pos; i < s.size(); ++i)
            if (!isdigit(static_cast<unsigned char>(s[i])))
                throw InputError("fan file: coordinate string is not a decimal integer");
        return Int(s);
    }
    throw InputError("fan file: coordinate must be an integer or a decimal string");
}

json coordinate_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return json(static_cast<long long>(v));
    return json(v.str());
}

}  // namespace

Fan parse_fan_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("fan file: malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw InputError("fan file: top level must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "dim" && it.key() != "rays" && it.key() != "max_cones")
            throw InputError("fan file: unknown key \"" + it.key() + "\"");
    if (!j.contains("dim")) throw InputError("fan file: missing key \"dim\"");
    if (!j.contains("rays")) throw InputError("fan file: missing key \"rays\"");
    if (!j.contains("max_cones")) throw InputError("fan file: missing key \"max_cones\"");

    Fan fan;
    if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1)
        throw InputError("fan file: \"dim\" must be a positive integer");
    fan.dim = static_cast<int>(j["dim"].get<long long>());

    if (!j["rays"].is_array()) throw InputError("fan file: \"rays\" must be an array");
    for (const json& row : j["rays"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != fan.dim)
            throw InputError("fan file: each ray must be an array of dim coordinates");
        LatticePoint p;
        for (const json& c : row) p.push_back(coordinate_from_json(c));
        if (!is_primitive(p))
            throw InputError("fan file: non-primitive ray (auto-reduction refused)");
        fan.rays.push_back(p);
    }

    if (!j["max_cones"].is_array())
        throw InputError("fan file: \"max_cones\" must be an array");
    for (const json& row : j["max_cones"]) {
        if (!row.is_array())
            throw InputError("fan file: each cone must be an array of ray indices");
        Cone c;
        for (const json& idx : row) {
            if (!idx.is_number_integer())
                throw InputError("fan file: cone entries must be integer ray indices");
            long long v = idx.get<long long>();
            if (v < 0 || v >= static_cast<long long>(fan.rays.size()))
                throw InputError("fan file: ray index out of range");
            c.push_back(static_cast<int>(v));
        }
        fan.max_cones.push_back(c);
    }

    check_well_formed(fan);
    return fan;
}

Fan parse_fan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open fan file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_fan_text(buf.str());
}

std::string serialize_fan_text(const Fan& fan) {
    json j;
    j["dim"] = fan.dim;
    json rays = json::array();
    for (const auto& r : fan.rays) {
        json row = json::array();
        for (const Int& c : r) row.push_back(coordinate_to_json(c));
        rays.push_back(row);
    }
    j["rays"] = rays;
    json cones = json::array();
    for (const auto& c : fan.max_cones) {
        Cone sorted = c;
        std::sort(sorted.begin(), sorted.end());
        cones.push_back(sorted);
    }
    j["max_cones"] = cones;
    return j.dump(2) + "\n";
}

void serialize_fan(const Fan& fan, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write fan file: " + path);
    out << serialize_fan_text(fan);
}

}  // namespace torfan
