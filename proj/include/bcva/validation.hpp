#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bcva {

/// Deliberate defects used to confirm that the invariant suite catches them.
enum class InjectedFault {
    None,
    /// Flip the sign of dG/dx2 as seen by the finite-difference check.
    PartialSign,
    /// Flip the sign of the put leg as seen by the put-call parity check.
    PutSign,
};

struct ValidationOptions {
    InjectedFault fault = InjectedFault::None;
    std::uint64_t seed = 1234;
    unsigned threads = 1;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Runs the module invariants at desk scale (at most 10^6 paths per check).
/// The output depends only on the options' fault and seed.
std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

/// One "PASS|FAIL <name>: <detail>" line per check, then a summary line.
void write_validation_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace bcva
