#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "normfiber/norm.hpp"

namespace normfiber {

/// Raised for malformed norm specs / matrix files. The CLI maps it to exit 2.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Norm-spec schema:
///   {"type":"lp","p":<number or "inf">,"dim":<int>}
///   {"type":"ep2","p":<number or "inf">}
///   {"type":"cross","outer":<spec>,"factors":[<spec>,...]}
///   {"type":"etransform","inner":<spec>}
NormExprPtr norm_from_json(const nlohmann::json& j);
NormExprPtr norm_from_file(const std::string& path);

nlohmann::json norm_to_json(const NormExprPtr& n);

nlohmann::json p_to_json(const ExtendedP& p);
ExtendedP p_from_json(const nlohmann::json& j);

}  // namespace normfiber
