#pragma once

#include <cstdint>
#include <sstream>
#include <string>

namespace deconv::cli {

//! Collects CSV text and commits it atomically (temp file + rename) when a
//! path is given, or to stdout otherwise.
class CsvSink {
public:
  explicit CsvSink(std::string path) : path_(std::move(path)) {}

  std::ostringstream& stream() { return buf_; }
  //! Writes the collected text out; throws on I/O failure.
  void commit() const;

private:
  std::string path_; // empty means stdout
  std::ostringstream buf_;
};

//! Shortest round-trip-exact decimal representation of a double.
std::string fmt_exact(double v);
//! Fixed three decimals (used for the wall-clock column only).
std::string fmt_seconds(double v);

} // namespace deconv::cli
