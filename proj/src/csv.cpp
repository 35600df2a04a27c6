#include "d2d/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "d2d/errors.hpp"

namespace d2d::csv {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

std::string format_int(std::int64_t value) { return std::to_string(value); }

std::string format_bool(bool value) { return value ? "true" : "false"; }

Builder::Builder(const std::vector<std::string>& header) : columns_(header.size()) {
  out_ = "# d2d-offload csv schema " + std::to_string(kSchemaVersion) + "\n";
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ += ',';
    out_ += header[i];
  }
  out_ += '\n';
}

Builder& Builder::add(const std::string& cell) {
  if (in_row_) out_ += ',';
  out_ += cell;
  ++in_row_;
  return *this;
}

Builder& Builder::add(double value) { return add(format_double(value)); }
Builder& Builder::add(std::int64_t value) { return add(format_int(value)); }
Builder& Builder::add(int value) { return add(format_int(value)); }
Builder& Builder::add(bool value) { return add(format_bool(value)); }

void Builder::end_row() {
  if (in_row_ != columns_) {
    throw std::logic_error("csv row has " + std::to_string(in_row_) +
                           " cells, header has " + std::to_string(columns_));
  }
  out_ += '\n';
  in_row_ = 0;
}

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec) throw ConfigError("cannot create directory " + p.parent_path().string());
  }
  std::ofstream out(p, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file " + path);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw ConfigError("failed writing output file " + path);
}

}  // namespace d2d::csv
