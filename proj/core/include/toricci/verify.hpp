#pragma once

#include <string>
#include <vector>

namespace toricci {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

enum class VerifyLevel { Fast, Full };

struct VerifyOptions {
    VerifyLevel level = VerifyLevel::Fast;
    /// Deliberately corrupts one intra-cell sign of the Majorana model so the
    /// cross-oracle ratio identity must fail (mutation test of the suite).
    bool flip_intra_sign = false;
    int workers = 0;
};

/// Runs the cross-oracle suites: Pfaffian properties, Ising/random-bond
/// dualities, the Majorana-Ising ratio identity, single-site closed forms,
/// three-way toric agreement, Renyi-2 self-dual zeros, gauge invariance,
/// monotonicity and determinism. Fast targets < 60 s, Full adds the heavier
/// enumerations.
std::vector<Check> run_verification(const VerifyOptions& opts);

bool all_passed(const std::vector<Check>& checks);

}  // namespace toricci
