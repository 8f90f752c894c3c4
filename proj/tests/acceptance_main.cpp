#include <cstdio>
#include "hx/acceptance.hpp"

int main() {
  auto results = hx::acceptance::run({});
  bool all = true;
  for (const auto& r : results) {
    std::printf("%s criterion %d (%s): %s [%.1fs]\n", r.pass ? "PASS" : "FAIL", r.number,
                r.slug.c_str(), r.detail.c_str(), r.elapsed_s);
    all = all && r.pass;
  }
  return all ? 0 : 1;
}
