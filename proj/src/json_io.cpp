#include "spl/json_io.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace spl {

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (key == a) known = true;
        if (!known)
            throw std::invalid_argument("unknown key \"" + key + "\" in " + where);
    }
}

double number_at(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw std::invalid_argument("missing key \"" + std::string(key) + "\" in " + where);
    if (!obj[key].is_number())
        throw std::invalid_argument("key \"" + std::string(key) + "\" in " + where +
                                    " must be a number");
    return obj[key].get<double>();
}

std::vector<double> numbers_at(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key) || !obj[key].is_array())
        throw std::invalid_argument("key \"" + std::string(key) + "\" in " + where +
                                    " must be an array");
    std::vector<double> out;
    for (const auto& v : obj[key]) {
        if (!v.is_number())
            throw std::invalid_argument("array \"" + std::string(key) + "\" in " + where +
                                        " must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

Measure measure_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("measure JSON: ") + e.what());
    }
    if (!root.is_object()) throw std::invalid_argument("measure JSON: top level must be an object");
    check_keys(root, {"components"}, "measure");
    if (!root.contains("components") || !root["components"].is_array())
        throw std::invalid_argument("measure JSON: \"components\" array required");

    std::vector<Component> comps;
    for (const auto& item : root["components"]) {
        if (!item.is_object() || !item.contains("type") || !item["type"].is_string())
            throw std::invalid_argument("measure JSON: each component needs a \"type\" string");
        const std::string type = item["type"].get<std::string>();
        if (type == "atoms") {
            check_keys(item, {"type", "points"}, "atoms component");
            if (!item.contains("points") || !item["points"].is_array())
                throw std::invalid_argument("atoms component: \"points\" array required");
            for (const auto& pt : item["points"]) {
                if (!pt.is_object())
                    throw std::invalid_argument("atoms component: points must be objects");
                check_keys(pt, {"re", "im", "mass"}, "atom point");
                comps.push_back(Atom{complex(number_at(pt, "re", "atom point"),
                                             number_at(pt, "im", "atom point")),
                                     number_at(pt, "mass", "atom point")});
            }
        } else if (type == "uniform_circle") {
            check_keys(item, {"type", "radius", "mass"}, "uniform_circle component");
            comps.push_back(UniformCircle{number_at(item, "radius", "uniform_circle"),
                                          number_at(item, "mass", "uniform_circle")});
        } else if (type == "extremal_tail") {
            check_keys(item, {"type", "alpha", "mass_scale"}, "extremal_tail component");
            ExtremalTail tail;
            tail.alpha = number_at(item, "alpha", "extremal_tail");
            tail.mass_scale = item.contains("mass_scale")
                                  ? number_at(item, "mass_scale", "extremal_tail")
                                  : 1.0;
            comps.push_back(tail);
        } else if (type == "tabulated") {
            check_keys(item, {"type", "r_grid", "theta_grid", "values"}, "tabulated component");
            TabulatedDensity tab;
            tab.radial_grid = numbers_at(item, "r_grid", "tabulated");
            tab.angular_grid = numbers_at(item, "theta_grid", "tabulated");
            if (!item.contains("values") || !item["values"].is_array())
                throw std::invalid_argument("tabulated component: \"values\" matrix required");
            for (const auto& row : item["values"]) {
                if (!row.is_array())
                    throw std::invalid_argument("tabulated component: values rows must be arrays");
                std::vector<double> r;
                for (const auto& v : row) {
                    if (!v.is_number())
                        throw std::invalid_argument("tabulated component: values must be numbers");
                    r.push_back(v.get<double>());
                }
                tab.values.push_back(std::move(r));
            }
            comps.push_back(std::move(tab));
        } else {
            throw std::invalid_argument("measure JSON: unknown component type \"" + type + "\"");
        }
    }
    return Measure(std::move(comps));
}

std::string measure_to_json(const Measure& m) {
    json components = json::array();
    json atom_points = json::array();
    for (const Component& c : m.components()) {
        if (const auto* atom = std::get_if<Atom>(&c)) {
            atom_points.push_back({{"re", atom->location.real()},
                                   {"im", atom->location.imag()},
                                   {"mass", atom->mass}});
        } else if (const auto* circle = std::get_if<UniformCircle>(&c)) {
            components.push_back(
                {{"type", "uniform_circle"}, {"radius", circle->radius}, {"mass", circle->mass}});
        } else if (const auto* tail = std::get_if<ExtremalTail>(&c)) {
            components.push_back(
                {{"type", "extremal_tail"}, {"alpha", tail->alpha}, {"mass_scale", tail->mass_scale}});
        } else {
            const auto& tab = std::get<TabulatedDensity>(c);
            json values = json::array();
            for (const auto& row : tab.values) values.push_back(row);
            components.push_back({{"type", "tabulated"},
                                  {"r_grid", tab.radial_grid},
                                  {"theta_grid", tab.angular_grid},
                                  {"values", values}});
        }
    }
    if (!atom_points.empty())
        components.insert(components.begin(), json{{"type", "atoms"}, {"points", atom_points}});
    return json{{"components", components}}.dump();
}

PositivePolynomial polynomial_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("polynomial JSON: ") + e.what());
    }
    if (!root.is_object())
        throw std::invalid_argument("polynomial JSON: top level must be an object");
    check_keys(root, {"coefficients"}, "polynomial");
    return PositivePolynomial(numbers_at(root, "coefficients", "polynomial"));
}

PositivePolynomial polynomial_from_csv(const std::string& csv) {
    std::vector<double> coeffs;
    std::stringstream stream(csv);
    std::string token;
    while (std::getline(stream, token, ',')) {
        try {
            std::size_t used = 0;
            const double value = std::stod(token, &used);
            while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used])))
                ++used;
            if (used != token.size()) throw std::invalid_argument(token);
            coeffs.push_back(value);
        } catch (const std::exception&) {
            throw std::invalid_argument("cannot parse coefficient \"" + token + "\"");
        }
    }
    return PositivePolynomial(std::move(coeffs));
}

}  // namespace spl
