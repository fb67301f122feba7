// Minimal CSV output and input with shortest round-trip double formatting,
// so written traces re-read bit-identically.

#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace thinmc {

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

// Strict double parse of a full token; throws on trailing garbage.
double parse_double(const std::string& token);

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);

  // Fields containing commas, quotes, or newlines are quoted.
  void row(const std::vector<std::string>& fields);

 private:
  std::ofstream out_;
  std::string path_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::string& path);

}  // namespace thinmc
