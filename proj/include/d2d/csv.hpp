#pragma once

#include <cstdint>
#include <string>
#include <vector>

// CSV emission helpers. Numbers are serialized with 12 significant digits,
// rows end with LF, and every file starts with a schema comment line plus a
// header row.

namespace d2d::csv {

inline constexpr int kSchemaVersion = 1;

std::string format_double(double value);  // %.12g
std::string format_int(std::int64_t value);
std::string format_bool(bool value);  // true / false

class Builder {
 public:
  // Starts the document with "# d2d-offload csv schema <v>" and the header.
  explicit Builder(const std::vector<std::string>& header);

  Builder& add(const std::string& cell);
  Builder& add(double value);
  Builder& add(std::int64_t value);
  Builder& add(int value);
  Builder& add(bool value);
  void end_row();

  const std::string& str() const { return out_; }

 private:
  std::string out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

// Writes content to path (directories created as needed), binary mode so LF
// endings survive everywhere.
void write_file(const std::string& path, const std::string& content);

}  // namespace d2d::csv
