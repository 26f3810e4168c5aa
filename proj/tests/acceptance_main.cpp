// Acceptance runner: executes every bundled criterion at its pinned tolerance
// and prints one PASS/FAIL/SKIP line per criterion. Exit 0 only when all
// non-skipped criteria pass. `--fd` switches the derivative engine to the
// finite-difference mode with its relaxed tolerances.
#include <cstring>
#include <iostream>

#include "finsler/acceptance.hpp"

int main(int argc, char** argv) {
  finsler::DerivMode mode = finsler::DerivMode::exact;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--fd") == 0) mode = finsler::DerivMode::finite_difference;
  finsler::AcceptanceSummary summary = finsler::reproduce_paper(mode, &std::cout);
  return summary.all_pass() ? 0 : 1;
}
