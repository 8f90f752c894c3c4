#include "hx/cli.hpp"

namespace hx::cli {
int run(const std::vector<std::string>&) { return 2; }
}  // namespace hx::cli
