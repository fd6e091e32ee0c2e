#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bivfactor/bipoly.hpp"

namespace bivfactor {

struct FactorizationResult;

enum class InputFormat { Expression, MonomialList };

struct PolyDocument {
    u64 modulus = 2;
    BiPoly poly;
    InputFormat format = InputFormat::Expression;
};

// Either grammar; an optional "p <modulus>" header line must agree with p.
BiPoly parse_poly(const std::string& text, u64 p);
// The modulus comes from the header line, or from the argument when there is none.
PolyDocument parse_document(const std::string& text, std::optional<u64> modulus = std::nullopt);

std::string format_poly(const BiPoly& f);            // expression grammar
std::string format_monomial_list(const BiPoly& f);   // header plus "j i c" lines

nlohmann::json factors_to_json(u64 p, const std::vector<BiPoly>& factors, const FactorizationResult* res);
std::vector<BiPoly> factors_from_json(const nlohmann::json& j);

}  // namespace bivfactor
