#pragma once

// Small deterministic writers for the CLI: ordered JSON with 17-significant-
// digit floats, CSV, and SVG 1.1 plots. Output bytes depend only on the data.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace emit {

inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Ordered JSON builder; keys are emitted in insertion order.
class Json {
 public:
  static Json object() { return Json("{", "}"); }
  static Json array() { return Json("[", "]"); }

  Json& field(const std::string& key, const std::string& raw) {
    items_.push_back("\"" + key + "\":" + raw);
    return *this;
  }
  Json& str(const std::string& key, const std::string& value) {
    return field(key, "\"" + escape(value) + "\"");
  }
  Json& num(const std::string& key, double value) { return field(key, fmt_double(value)); }
  Json& num(const std::string& key, int value) { return field(key, std::to_string(value)); }
  Json& boolean(const std::string& key, bool value) {
    return field(key, value ? "true" : "false");
  }
  Json& child(const std::string& key, const Json& j) { return field(key, j.render()); }
  Json& push(const std::string& raw) {
    items_.push_back(raw);
    return *this;
  }
  Json& push(const Json& j) { return push(j.render()); }
  Json& push_num(double v) { return push(fmt_double(v)); }

  std::string render() const {
    std::string out = open_;
    for (std::size_t i = 0; i < items_.size(); ++i) {
      if (i) out += ",";
      out += items_[i];
    }
    out += close_;
    return out;
  }

 private:
  Json(std::string open, std::string close)
      : open_(std::move(open)), close_(std::move(close)) {}
  static std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
      if (c == '"' || c == '\\') out += '\\';
      out += c;
    }
    return out;
  }
  std::string open_, close_;
  std::vector<std::string> items_;
};

/// Writes content atomically: temp file in the same directory, then rename.
inline void write_file(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

/// lambda-vs-index plunge plot (SVG 1.1), optional log-scale value axis, with
/// a shaded index window.
std::string plunge_svg(const std::vector<double>& lambdas, double window_lo,
                       double window_hi, bool log_y);

}  // namespace emit
