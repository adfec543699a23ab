#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace csaot::harness {

using nlohmann::json;

// IoError when the file cannot be read, ParseError (with the path) when it is
// not valid JSON.
json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
// Creates parent directories; IoError on failure.
void write_text_file(const std::string& path, const std::string& text);
void ensure_directory(const std::string& path);

// Field access raising ParseError that names "where.key".
const json& need(const json& doc, const std::string& key, const std::string& where);
double need_number(const json& doc, const std::string& key, const std::string& where);
std::int64_t need_integer(const json& doc, const std::string& key, const std::string& where);
std::string need_string(const json& doc, const std::string& key, const std::string& where);

// Round-trippable shortest form used in CSV output.
std::string format_double(double v);

}  // namespace csaot::harness
