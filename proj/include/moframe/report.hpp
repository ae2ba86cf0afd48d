#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace moframe {

/// 17-significant-digit, locale-independent rendering of a double.
/// The same value always yields the same bytes.
std::string format_double(double v);

/// Streaming JSON writer with caller-controlled field order. Numbers go
/// through format_double, so documents are byte-reproducible. Non-finite
/// doubles are emitted as null.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(bool v);
  JsonWriter& value(long long v);
  JsonWriter& value(int v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }

  JsonWriter& field(std::string_view k, double v) { return key(k).value(v); }
  JsonWriter& field(std::string_view k, bool v) { return key(k).value(v); }
  JsonWriter& field(std::string_view k, long long v) { return key(k).value(v); }
  JsonWriter& field(std::string_view k, int v) { return key(k).value(v); }
  JsonWriter& field(std::string_view k, std::string_view v) { return key(k).value(v); }
  JsonWriter& field(std::string_view k, const char* v) { return key(k).value(std::string_view(v)); }

  /// Finished document plus trailing newline.
  std::string take();

 private:
  void separate();

  std::string out_;
  std::vector<bool> first_;  // per nesting level: nothing emitted yet
};

/// Comma-separated table with a header row, '.' decimals, '\n' line ends.
class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
  std::size_t columns_;
};

}  // namespace moframe
