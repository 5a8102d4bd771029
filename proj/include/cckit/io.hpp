#pragma once
/*
io.hpp
------
JSON configuration files. Exactly one of the two top-level keys must be
present:

  {"bodies": [{"mass": 1.0, "position": [x, y, z]}, ...]}
  {"family": {"l": 1.4142, "d": 1.0, "masses": [1,1,1,1,1,1], "m7": 0.5}}

Body order is positional and 1-based (body 1 first). Doubles are written
with 17 significant digits so a written file reloads bit-exactly.
*/

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "family.hpp"
#include "format.hpp"
#include "geometry.hpp"

namespace cckit {

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Configuration configuration_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    try {
        const bool has_bodies = j.contains("bodies");
        const bool has_family = j.contains("family");
        if (has_bodies == has_family)
            throw parse_error("exactly one of \"bodies\" / \"family\" must be present");
        if (has_family) {
            const auto& f = j.at("family");
            TwistedPrismParams p;
            p.l = f.at("l").get<double>();
            p.d = f.at("d").get<double>();
            if (f.contains("masses")) {
                const auto& ms = f.at("masses");
                if (ms.size() != 6) throw parse_error("family.masses must have 6 entries");
                for (std::size_t k = 0; k < 6; ++k) p.masses[k] = ms.at(k).get<double>();
            }
            p.m7 = f.contains("m7") ? f.at("m7").get<double>() : 1.0;
            return build(p);
        }
        Configuration c;
        for (const auto& jb : j.at("bodies")) {
            Body b;
            b.mass = jb.at("mass").get<double>();
            const auto& pos = jb.at("position");
            if (pos.size() != 3) throw parse_error("position must have 3 components");
            b.position = {pos.at(0).get<double>(), pos.at(1).get<double>(), pos.at(2).get<double>()};
            c.bodies.push_back(b);
        }
        if (c.bodies.empty()) throw parse_error("\"bodies\" is empty");
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad configuration file: ") + e.what());
    }
}

inline Configuration load_configuration(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return configuration_from_json(ss.str());
}

// Hand-rolled emitter: the schema is tiny and this pins the 17-digit format.
inline std::string configuration_to_json(const Configuration& c) {
    std::string s = "{\n  \"bodies\": [\n";
    for (int i = 1; i <= c.size(); ++i) {
        const Body& b = c.body(i);
        s += "    {\"mass\": " + g17(b.mass) + ", \"position\": [" + g17(b.position.x) +
             ", " + g17(b.position.y) + ", " + g17(b.position.z) + "]}";
        s += (i < c.size()) ? ",\n" : "\n";
    }
    s += "  ]\n}\n";
    return s;
}

inline void save_configuration(const Configuration& c, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << configuration_to_json(c);
}

}  // namespace cckit
