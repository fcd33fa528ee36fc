// Acceptance gate: runs every criterion and prints one PASS/FAIL line per
// criterion on stdout. Exits non-zero when any criterion fails.
//
// Usage: test_acceptance [mc_samples]   (default 10000000)

#include <cstdlib>
#include <iostream>

#include "newtasym/selftest.hpp"

int main(int argc, char** argv) {
    long samples = 10000000;
    if (argc > 1) samples = std::atol(argv[1]);
    auto results = newtasym::run_acceptance(std::cout, samples);
    bool all = true;
    for (auto& r : results) all = all && r.pass;
    std::cout << (all ? "ALL CRITERIA PASS" : "ACCEPTANCE FAILED") << "\n";
    return all ? 0 : 1;
}
