#pragma once

// Minimal JSON-schema checker for the test suite: supports type (single name
// or list), required, properties, items and enum, which is all the shipped
// schemas use.

#include <fstream>
#include <string>

#include <json.hpp>

namespace schema_lite {

using nlohmann::json;

inline bool type_matches(const std::string& name, const json& value) {
  if (name == "object") return value.is_object();
  if (name == "array") return value.is_array();
  if (name == "string") return value.is_string();
  if (name == "boolean") return value.is_boolean();
  if (name == "integer") return value.is_number_integer() || value.is_number_unsigned();
  if (name == "number") return value.is_number();
  return false;
}

inline bool validate(const json& schema, const json& value, std::string& error,
                     const std::string& path = "$") {
  if (schema.contains("enum")) {
    for (const auto& option : schema["enum"]) {
      if (option == value) return true;
    }
    error = path + ": value not in enum";
    return false;
  }
  if (schema.contains("type")) {
    const json& type = schema["type"];
    bool ok = false;
    if (type.is_array()) {
      for (const auto& name : type) ok = ok || type_matches(name.get<std::string>(), value);
    } else {
      ok = type_matches(type.get<std::string>(), value);
    }
    if (!ok) {
      error = path + ": type mismatch";
      return false;
    }
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!value.contains(key.get<std::string>())) {
          error = path + ": missing required key " + key.get<std::string>();
          return false;
        }
      }
    }
    if (schema.contains("properties")) {
      for (const auto& [key, sub] : schema["properties"].items()) {
        if (value.contains(key) && !validate(sub, value.at(key), error, path + "." + key)) {
          return false;
        }
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (!validate(schema["items"], value[i], error, path + "[" + std::to_string(i) + "]")) {
        return false;
      }
    }
  }
  return true;
}

inline json load(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open schema " + path);
  json schema;
  is >> schema;
  return schema;
}

}  // namespace schema_lite
