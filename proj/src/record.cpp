#include "hx/record.hpp"

#include <sstream>

namespace hx {

ResultRecord::ResultRecord(std::string command) : command_(std::move(command)) {
  fields_.emplace_back("lib", kLibraryVersion);
}

ResultRecord& ResultRecord::add(const std::string& key, const std::string& value) {
  fields_.emplace_back(key, value);
  return *this;
}
ResultRecord& ResultRecord::add(const std::string& key, long long value) {
  return add(key, std::to_string(value));
}
ResultRecord& ResultRecord::add(const std::string& key, std::uint64_t value) {
  return add(key, std::to_string(value));
}
ResultRecord& ResultRecord::add(const std::string& key, int value) {
  return add(key, std::to_string(value));
}
ResultRecord& ResultRecord::add(const std::string& key, bool value) {
  return add(key, std::string(value ? "yes" : "no"));
}
ResultRecord& ResultRecord::add(const std::string& key, const Rational& value) {
  return add(key, to_string(value));
}
ResultRecord& ResultRecord::add_ids(const std::string& key, const std::vector<int>& ids) {
  std::ostringstream os;
  for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? "," : "") << ids[i];
  return add(key, ids.empty() ? std::string("-") : os.str());
}

std::string ResultRecord::canonical_line() const {
  std::ostringstream os;
  os << command_;
  for (const auto& [k, v] : fields_) os << " " << k << "=" << v;
  return os.str();
}

}  // namespace hx
