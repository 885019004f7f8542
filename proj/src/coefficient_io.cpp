#include "kpp/coefficient_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "kpp/errors.hpp"

namespace kpp {

using nlohmann::json;

namespace {

double contrast_field(const json& j) {
    if (!j.contains("contrast")) return std::numeric_limits<double>::infinity();
    const auto& c = j.at("contrast");
    if (c.is_string()) {
        const std::string s = c.get<std::string>();
        if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
        throw InvalidParameter("coefficient file: contrast must be a number or \"inf\"");
    }
    return c.get<double>();
}

ContinuousPart continuous_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "samples")
        return SmoothSamples{j.at("values").get<std::vector<double>>()};
    if (type == "piecewise")
        return PiecewiseConstant{j.at("breakpoints").get<std::vector<double>>(),
                                 j.at("levels").get<std::vector<double>>()};
    throw InvalidParameter("coefficient file: unknown continuous type '" + type + "'");
}

}  // namespace

PeriodicCoefficient coefficient_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidParameter(std::string("coefficient file: ") + e.what());
    }
    const double L = j.at("period").get<double>();
    const std::string kind = j.at("kind").get<std::string>();

    PeriodicCoefficient b = [&]() {
        if (kind == "constant")
            return PeriodicCoefficient::make_constant(j.at("alpha").get<double>(), L);
        if (kind == "delta_comb")
            return PeriodicCoefficient::make_delta_comb(j.at("alpha").get<double>(), L);
        if (kind == "shigesada")
            return PeriodicCoefficient::make_shigesada(j.at("alpha").get<double>(), L,
                                                       j.at("fraction").get<double>(),
                                                       contrast_field(j));
        if (kind == "samples")
            return PeriodicCoefficient::make_samples(L, j.at("values").get<std::vector<double>>());
        if (kind == "mixture") {
            std::vector<Atom> atoms;
            if (j.contains("atoms"))
                for (const auto& a : j.at("atoms"))
                    atoms.push_back({a.at("position").get<double>(), a.at("mass").get<double>()});
            if (j.contains("continuous"))
                return PeriodicCoefficient::make_mixture(
                    L, continuous_from_json(j.at("continuous")), std::move(atoms));
            return PeriodicCoefficient::make_atoms(L, std::move(atoms));
        }
        throw InvalidParameter("coefficient file: unknown kind '" + kind + "'");
    }();

    if (j.contains("alpha") && kind != "constant" && kind != "delta_comb" &&
        kind != "shigesada") {
        const double alpha = j.at("alpha").get<double>();
        if (std::abs(alpha - b.alpha()) > 1e-9 * std::max(1.0, alpha))
            throw InvalidParameter("coefficient file: alpha does not match the cell mass");
    }
    return b;
}

PeriodicCoefficient load_coefficient(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open coefficient file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return coefficient_from_json(ss.str());
}

std::string coefficient_to_json(const PeriodicCoefficient& b) {
    json j;
    j["period"] = b.period();
    j["alpha"] = b.alpha();
    if (!b.has_continuous_part() || b.has_atoms()) {
        j["kind"] = "mixture";
        json atoms = json::array();
        for (const Atom& a : b.atoms()) atoms.push_back({{"position", a.position}, {"mass", a.mass}});
        j["atoms"] = atoms;
        if (b.has_continuous_part()) {
            if (const auto* s = std::get_if<SmoothSamples>(&*b.continuous()))
                j["continuous"] = {{"type", "samples"}, {"values", s->values}};
            else {
                const auto& p = std::get<PiecewiseConstant>(*b.continuous());
                j["continuous"] = {{"type", "piecewise"},
                                   {"breakpoints", p.breakpoints},
                                   {"levels", p.levels}};
            }
        }
    } else if (const auto* s = std::get_if<SmoothSamples>(&*b.continuous())) {
        j["kind"] = "samples";
        j["values"] = s->values;
    } else {
        const auto& p = std::get<PiecewiseConstant>(*b.continuous());
        j["kind"] = "mixture";
        j["continuous"] = {{"type", "piecewise"},
                           {"breakpoints", p.breakpoints},
                           {"levels", p.levels}};
        j["atoms"] = json::array();
    }
    return j.dump(2);
}

}  // namespace kpp
