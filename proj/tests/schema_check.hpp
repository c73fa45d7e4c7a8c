// Minimal structural JSON-schema checker covering the subset the shipped
// schemas use: type, properties, required, items.
#pragma once

#include <string>

#include "json.hpp"

namespace psi6::testing {

inline bool type_matches(const nlohmann::json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "number") return value.is_number();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "boolean") return value.is_boolean();
    return false;
}

inline std::string schema_check(const nlohmann::json& value, const nlohmann::json& schema,
                                const std::string& path = "$") {
    if (schema.contains("type") && !type_matches(value, schema["type"].get<std::string>())) {
        return path + ": expected " + schema["type"].get<std::string>();
    }
    if (schema.contains("required")) {
        for (const auto& key : schema["required"]) {
            if (!value.contains(key.get<std::string>())) {
                return path + ": missing required key '" + key.get<std::string>() + "'";
            }
        }
    }
    if (schema.contains("properties") && value.is_object()) {
        for (const auto& [key, sub] : schema["properties"].items()) {
            if (!value.contains(key)) continue;
            const std::string err = schema_check(value.at(key), sub, path + "." + key);
            if (!err.empty()) return err;
        }
    }
    if (schema.contains("items") && value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i) {
            const std::string err =
                schema_check(value[i], schema["items"], path + "[" + std::to_string(i) + "]");
            if (!err.empty()) return err;
        }
    }
    return {};
}

}  // namespace psi6::testing
