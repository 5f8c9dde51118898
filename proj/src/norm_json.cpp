#include "normfiber/norm_json.hpp"

#include <fstream>

namespace normfiber {

using nlohmann::json;

json p_to_json(const ExtendedP& p) {
    if (p.is_infinite()) return json("inf");
    return json(p.value());
}

ExtendedP p_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return ExtendedP::infinity();
        throw ParseError("p: expected a number or the string \"inf\"");
    }
    if (!j.is_number()) throw ParseError("p: expected a number or \"inf\"");
    try {
        return ExtendedP(j.get<double>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
}

NormExprPtr norm_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ParseError("norm spec: expected an object with a \"type\" field");
    const std::string type = j["type"].get<std::string>();
    try {
        if (type == "lp") {
            if (!j.contains("p") || !j.contains("dim")) throw ParseError("lp: needs \"p\" and \"dim\"");
            if (!j["dim"].is_number_integer()) throw ParseError("lp: \"dim\" must be an integer");
            return NormExpr::lp(p_from_json(j["p"]), j["dim"].get<int>());
        }
        if (type == "ep2") {
            if (!j.contains("p")) throw ParseError("ep2: needs \"p\"");
            return NormExpr::ep2(p_from_json(j["p"]));
        }
        if (type == "cross") {
            if (!j.contains("outer") || !j.contains("factors") || !j["factors"].is_array())
                throw ParseError("cross: needs \"outer\" and a \"factors\" array");
            std::vector<NormExprPtr> factors;
            for (const auto& f : j["factors"]) factors.push_back(norm_from_json(f));
            return NormExpr::cross(norm_from_json(j["outer"]), std::move(factors));
        }
        if (type == "etransform") {
            if (!j.contains("inner")) throw ParseError("etransform: needs \"inner\"");
            return NormExpr::etransform(norm_from_json(j["inner"]));
        }
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    throw ParseError("norm spec: unknown type \"" + type + "\"");
}

NormExprPtr norm_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open norm spec: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what());
    }
    return norm_from_json(j);
}

json norm_to_json(const NormExprPtr& n) {
    json j;
    switch (n->kind()) {
        case NormExpr::Kind::Lp:
            j["type"] = "lp";
            j["p"] = p_to_json(n->p());
            j["dim"] = n->dim();
            break;
        case NormExpr::Kind::Ep2:
            j["type"] = "ep2";
            j["p"] = p_to_json(n->p());
            break;
        case NormExpr::Kind::Cross: {
            j["type"] = "cross";
            j["outer"] = norm_to_json(n->outer());
            json fs = json::array();
            for (const auto& f : n->factors()) fs.push_back(norm_to_json(f));
            j["factors"] = std::move(fs);
            break;
        }
        case NormExpr::Kind::ETransform:
            j["type"] = "etransform";
            j["inner"] = norm_to_json(n->inner());
            break;
    }
    return j;
}

}  // namespace normfiber
