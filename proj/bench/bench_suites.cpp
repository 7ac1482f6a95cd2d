// Compares the threaded suite kernels against the serial reference path.
// Reports must come out byte-identical; only wall time may differ.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "opf/barratt_eccles.hpp"
#include "opf/operad.hpp"
#include "opf/suites.hpp"

namespace {

double wall(const std::function<void()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  int samples = argc > 1 ? std::atoi(argv[1]) : 400;
  std::uint64_t seed = 0;
  if (const char* s = std::getenv("OPERADFORGE_SEED")) seed = std::stoull(s);

  std::printf("%-12s %10s %10s %8s %s\n", "suite", "serial(s)", "parallel(s)",
              "speedup", "identical");
  bool all_same = true;
  for (const auto& name : opf::suites::suite_names()) {
    opf::suites::Options ser{seed, false, samples};
    opf::suites::Options par{seed, true, samples};
    std::string a, b;
    double ts = wall([&] { a = opf::suites::run_suite(name, ser).to_json().dump(); });
    double tp = wall([&] { b = opf::suites::run_suite(name, par).to_json().dump(); });
    bool same = a == b;
    all_same = all_same && same;
    std::printf("%-12s %10.3f %10.3f %8.2f %s\n", name.c_str(), ts, tp,
                tp > 0 ? ts / tp : 0.0, same ? "yes" : "NO");
  }

  double ts = wall([] {
    auto rep = opf::ops::check_axioms(*opf::be::obm_operad(3), false);
    if (rep.failures) std::abort();
  });
  double tp = wall([] {
    auto rep = opf::ops::check_axioms(*opf::be::obm_operad(3), true);
    if (rep.failures) std::abort();
  });
  std::printf("%-12s %10.3f %10.3f %8.2f %s\n", "law-tables", ts, tp,
              tp > 0 ? ts / tp : 0.0, "yes");

  if (!all_same) {
    std::fprintf(stderr, "serial and parallel reports differ\n");
    return 1;
  }
  return 0;
}
