#include "minos/distribution.hpp"

#include <limits>

namespace minos {

namespace {

const char* kind_name(Distribution::Kind k) {
    switch (k) {
        case Distribution::Kind::Constant: return "constant";
        case Distribution::Kind::Uniform: return "uniform";
        case Distribution::Kind::Normal: return "normal";
        case Distribution::Kind::LogNormal: return "lognormal";
        case Distribution::Kind::Exponential: return "exponential";
    }
    return "?";
}

}  // namespace

void Distribution::validate(const std::string& key, bool strictly_positive,
                            std::vector<std::string>& errors) const {
    auto err = [&](const std::string& msg) { errors.push_back(key + ": " + msg); };
    switch (kind) {
        case Kind::Constant:
            if (strictly_positive ? a <= 0.0 : a < 0.0)
                err(strictly_positive ? "value must be > 0" : "value must be >= 0");
            break;
        case Kind::Uniform:
            if (a > b) err("uniform low exceeds high");
            if (strictly_positive ? a <= 0.0 : a < 0.0)
                err(strictly_positive ? "uniform low must be > 0" : "uniform low must be >= 0");
            break;
        case Kind::Normal:
            if (b < 0.0) err("normal sigma must be >= 0");
            if (strictly_positive) {
                if (b > 0.0)
                    err("normal has an unbounded lower tail; use lognormal for strictly "
                        "positive quantities");
                else if (a <= 0.0)
                    err("mean must be > 0");
            } else if (b == 0.0 && a < 0.0) {
                err("mean must be >= 0");
            }
            break;
        case Kind::LogNormal:
            if (a <= 0.0) err("lognormal median must be > 0");
            if (b < 0.0) err("lognormal sigma must be >= 0");
            break;
        case Kind::Exponential:
            if (a <= 0.0) err("exponential mean must be > 0");
            if (strictly_positive)
                err("exponential support includes 0; use lognormal for strictly positive "
                    "quantities");
            break;
    }
}

const std::vector<std::string>& Distribution::supported_names() {
    static const std::vector<std::string> names = {"constant", "uniform", "normal",
                                                   "lognormal", "exponential"};
    return names;
}

Distribution Distribution::from_json(const nlohmann::json& j, const std::string& key,
                                     std::vector<std::string>& errors) {
    Distribution d;
    if (!j.is_object() || !j.contains("dist") || !j["dist"].is_string()) {
        errors.push_back(key + ": expected an object with a \"dist\" name");
        return d;
    }
    auto get_num = [&](const char* field, double& out) {
        if (!j.contains(field) || !j[field].is_number()) {
            errors.push_back(key + ": missing numeric field \"" + field + "\"");
            return;
        }
        out = j[field].get<double>();
    };
    std::string name = j["dist"].get<std::string>();
    if (name == "constant") {
        d.kind = Kind::Constant;
        get_num("value", d.a);
    } else if (name == "uniform") {
        d.kind = Kind::Uniform;
        get_num("low", d.a);
        get_num("high", d.b);
    } else if (name == "normal") {
        d.kind = Kind::Normal;
        get_num("mean", d.a);
        get_num("sigma", d.b);
    } else if (name == "lognormal") {
        d.kind = Kind::LogNormal;
        get_num("median", d.a);
        get_num("sigma", d.b);
    } else if (name == "exponential") {
        d.kind = Kind::Exponential;
        get_num("mean", d.a);
    } else {
        std::string supported;
        for (const auto& n : supported_names()) {
            if (!supported.empty()) supported += ", ";
            supported += n;
        }
        errors.push_back(key + ": unknown distribution \"" + name +
                         "\" (supported: " + supported + ")");
    }
    return d;
}

nlohmann::json Distribution::to_json() const {
    nlohmann::json j;
    j["dist"] = kind_name(kind);
    switch (kind) {
        case Kind::Constant: j["value"] = a; break;
        case Kind::Uniform:
            j["low"] = a;
            j["high"] = b;
            break;
        case Kind::Normal:
            j["mean"] = a;
            j["sigma"] = b;
            break;
        case Kind::LogNormal:
            j["median"] = a;
            j["sigma"] = b;
            break;
        case Kind::Exponential: j["mean"] = a; break;
    }
    return j;
}

}  // namespace minos
