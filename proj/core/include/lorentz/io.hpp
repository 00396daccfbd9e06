#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

#include "lorentz/decomposition.hpp"
#include "lorentz/duality.hpp"
#include "lorentz/functions.hpp"
#include "lorentz/level.hpp"
#include "lorentz/norms.hpp"

namespace lorentz {

// Malformed input; what() is a single line naming the offending field.
class InputError : public std::runtime_error {
public:
    InputError(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

using AnyFunction = std::variant<StepFunction, MonomialFunction>;

nlohmann::json to_json(const StepFunction& f);
nlohmann::json to_json(const MonomialFunction& f);
nlohmann::json to_json(const AnyFunction& f);

// Parses {"kind": "step" | "monomial", "pieces": [...]}; canonicalizes steps.
AnyFunction function_from_json(const nlohmann::json& j);
AnyFunction parse_function(const std::string& text);
AnyFunction load_function(const std::string& path);

// Step view of a loaded function; monomial inputs must have beta = 0.
StepFunction require_step(const AnyFunction& f, const std::string& context);

// Numbers, with +inf as the string "inf".
nlohmann::json number_json(double x);

nlohmann::json to_json(const NormValue& v);
nlohmann::json to_json(const LevelResult& lr);
nlohmann::json to_json(const DualResult& d);
// Parts are listed once per distinct function; "multiplicities" repeats them.
nlohmann::json to_json(const DecompositionCertificate& c, bool include_parts = true);

}  // namespace lorentz
