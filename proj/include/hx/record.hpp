#pragma once

#include <string>
#include <vector>

#include "hx/numbers.hpp"

namespace hx {

inline constexpr const char* kLibraryVersion = "hx-1.0.0";

// One line-delimited structured record per run. The canonical line carries
// the config echo, verdict, witness, and verification status; timings are
// emitted separately as a comment so identical configs and seeds reproduce
// identical canonical bytes regardless of thread count.
class ResultRecord {
 public:
  explicit ResultRecord(std::string command);

  ResultRecord& add(const std::string& key, const std::string& value);
  ResultRecord& add(const std::string& key, long long value);
  ResultRecord& add(const std::string& key, std::uint64_t value);
  ResultRecord& add(const std::string& key, int value);
  ResultRecord& add(const std::string& key, bool value);
  ResultRecord& add(const std::string& key, const Rational& value);
  ResultRecord& add_ids(const std::string& key, const std::vector<int>& ids);

  std::string canonical_line() const;

 private:
  std::string command_;
  std::vector<std::pair<std::string, std::string>> fields_;
};

}  // namespace hx
