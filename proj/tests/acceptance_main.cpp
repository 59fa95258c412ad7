// Acceptance battery: runs every criterion at its pinned tolerance and
// prints one pass/fail line per criterion. Exit status is nonzero when any
// criterion fails.

#include <cstdio>

#include "strip_poisson/verify.hpp"

int main() {
  const auto results = strip::run_suite("all");
  bool all_pass = true;
  for (const auto& cr : results) {
    std::printf("[%s] criterion %d (%s) — %.1fs\n", cr.pass ? "PASS" : "FAIL", cr.number,
                cr.name.c_str(), cr.seconds);
    for (const auto& item : cr.items) {
      std::printf("      %-40s measured=%-14.6g threshold=%-12.6g %s\n", item.id.c_str(),
                  item.measured, item.threshold, item.pass ? "ok" : "VIOLATED");
    }
    all_pass = all_pass && cr.pass;
  }
  std::printf("acceptance: %s\n", all_pass ? "all criteria passed" : "FAILURES present");
  return all_pass ? 0 : 1;
}
