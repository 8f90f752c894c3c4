#pragma once
#include <string>
#include <vector>

namespace hx::cli {
int run(const std::vector<std::string>& args);
}
