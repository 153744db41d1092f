#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "sharedzero/suite.hpp"

namespace {

void print(int id, bool passed, const std::string& title, const std::string& detail) {
  std::cout << (passed ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << title << " ("
            << detail << ")\n";
}

}  // namespace

int main() {
  using namespace sharedzero;
  bool all = true;
  const SuiteOptions opt;
  for (const auto& c : run_suite(opt, nullptr)) {
    print(c.id, c.passed, c.title, c.detail + "; " + std::to_string(c.seconds) + " s");
    all = all && c.passed;
  }

  const std::string cmd = std::string("\"") + SHAREDZERO_CLI + "\" suite > /dev/null 2>&1";
  const auto t0 = std::chrono::steady_clock::now();
  const int status = std::system(cmd.c_str());
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const int code = (status != -1 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  const bool ok = code == 0 && seconds < 300.0;
  print(8, ok, "cli suite with the default config exits 0 in under 5 minutes",
        "exit " + std::to_string(code) + ", " + std::to_string(seconds) + " s");
  all = all && ok;
  return all ? 0 : 1;
}
