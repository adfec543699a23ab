#include "csaot/harness/json_io.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "csaot/errors.hpp"

namespace csaot::harness {

namespace fs = std::filesystem;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path + ": " + std::strerror(errno));
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return ss.str();
}

json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void ensure_directory(const std::string& path) {
  if (path.empty()) return;
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec || !fs::is_directory(path)) throw IoError("cannot create directory " + path + ": " + ec.message());
}

void write_text_file(const std::string& path, const std::string& text) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) ensure_directory(parent.string());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path + ": " + std::strerror(errno));
  out << text;
  out.flush();
  if (!out) throw IoError("error writing " + path);
}

const json& need(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.is_object()) throw ParseError(where + ": expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(where + "." + key + ": missing");
  return *it;
}

double need_number(const json& doc, const std::string& key, const std::string& where) {
  const json& v = need(doc, key, where);
  if (!v.is_number()) throw ParseError(where + "." + key + ": expected a number");
  return v.get<double>();
}

std::int64_t need_integer(const json& doc, const std::string& key, const std::string& where) {
  const json& v = need(doc, key, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<std::int64_t>();
}

std::string need_string(const json& doc, const std::string& key, const std::string& where) {
  const json& v = need(doc, key, where);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

}  // namespace csaot::harness
