// Acceptance gate: runs every criterion and prints one pass/fail line per
// criterion.  Exits nonzero if any criterion fails.

#include <cstdio>

#include "vbmps/vbmps.hpp"

int main() {
    bool all = true;
    for (const vbmps::AcceptanceCheck& c : vbmps::run_acceptance_suite()) {
        all = all && c.pass;
        std::printf("[%s] criterion %2d %-28s (worst deviation %.3e over %zu checks)\n",
                    c.pass ? "PASS" : "FAIL", c.number, c.name.c_str(), c.worst_measured(),
                    c.subchecks.size());
        if (!c.detail.empty()) std::printf("       note: %s\n", c.detail.c_str());
        if (!c.pass)
            for (const vbmps::CheckItem& item : c.subchecks)
                if (!item.pass)
                    std::printf("       failed: %s  measured=%.6e  tolerance=%.1e\n",
                                item.name.c_str(), item.measured, item.tolerance);
    }
    std::printf("%s\n", all ? "ACCEPTANCE: ALL CRITERIA PASSED" : "ACCEPTANCE: FAILURES PRESENT");
    return all ? 0 : 1;
}
