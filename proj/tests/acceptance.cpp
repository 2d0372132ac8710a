#include <cstdio>

#include "cf/selftest.hpp"

int main(int argc, char** argv) {
  const std::string filter = argc > 1 ? argv[1] : "";
  const cf::selftest::Fixtures fx = cf::selftest::default_fixtures();
  int failed = 0;
  for (const cf::selftest::Result& r : cf::selftest::run(fx, filter)) {
    std::printf("%s %s [%s] %s (%.2f s): %s\n", r.id.c_str(), r.pass ? "PASS" : "FAIL", r.group.c_str(), r.title.c_str(),
                r.seconds, r.detail.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
