#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "toricci/lattice.hpp"
#include "toricci/majorana.hpp"

namespace toricci {

/// Monte-Carlo estimate of a disorder-averaged quantity.
struct CiEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    long n_samples = 0;
    long n_clamped = 0;  // samples where 1-2r <= 0 numerically (or a degenerate ratio)
    double p = 0.0;
    int lx = 0, ly = 0;
};

/// Thrown when a computation (as opposed to its configuration) fails:
/// degenerate Pfaffians, non-bracketing threshold search, clamp budget.
struct ComputationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Nishimori gauge sample: each bond independently -1 with probability p.
/// Pure function of (seed, index); evaluation order and worker count do not
/// enter.
GaugeConfig sample_gauge(const TorusLattice& lat, double p, std::uint64_t seed,
                         std::uint64_t index);

struct CiSample {
    double value = 0.0;
    bool clamped = false;
};

/// One disorder sample of the CI: r = Pf_PP / sum_alpha Pf_alpha in signed-log
/// arithmetic, value = 2 log2(1 - 2r). Even under a global sign flip of all
/// four Pfaffians. A numerically non-positive 1-2r is clamped to 1e-300 and
/// flagged; all four Pfaffians vanishing is a ComputationError.
CiSample ci_sample_value(const TorusLattice& lat, double p,
                         const GaugeConfig& eta);

/// Quenched Monte-Carlo average of ci_sample_value over Nishimori samples.
/// Identical (seed, n_samples, lattice, p) give bitwise-identical results for
/// any worker count (per-sample purity + fixed-order reduction).
/// workers <= 0 means: TORICCI_WORKERS env var, else hardware concurrency.
CiEstimate coherent_information(const TorusLattice& lat, double p,
                                long n_samples, std::uint64_t seed,
                                int workers = 0);

/// Exact disorder average through the Pfaffian path: all 2^(2N) gauge
/// configurations with their Nishimori weights. n_sites <= 6.
CiEstimate exhaustive_coherent_information(const TorusLattice& lat, double p);

/// Renyi-2 CI: clean model (eta = +1), t2 = (1-2p)^2, no disorder average.
/// The exact Pfaffian zero at t2 = sqrt(2)-1 is returned as exactly 0.
double renyi2_ci(const TorusLattice& lat, double p);

enum class FugacityHopping { t1, t2 };  // t1 = 1-2p (default), t2 = (1-2p)^2

/// Vortex fugacity u = << Pf_PP / (Pf_AP + Pf_PA + Pf_AA) >>. Negative in the
/// error-correctable phase, positive beyond it; near threshold
/// I_c ~ -(4/ln 2) u.
CiEstimate vortex_fugacity(const TorusLattice& lat, double p, long n_samples,
                           std::uint64_t seed, int workers = 0,
                           FugacityHopping hopping = FugacityHopping::t1);

/// Mixed-state topological order parameter
/// M = << sign(Pf_PP Pf_AA / (Pf_AP Pf_PA)) >> at t1. -2M tracks the CI in
/// the gapped phases.
CiEstimate mstop(const TorusLattice& lat, double p, long n_samples,
                 std::uint64_t seed, int workers = 0);

enum class Quantity { ci, renyi2, fugacity, mstop };
Quantity quantity_from_name(const std::string& name);
const char* quantity_name(Quantity q);

struct ThresholdProbe {
    double p = 0.0;
    double diff = 0.0;     // estimate difference (or curve value for renyi2)
    double diff_err = 0.0;
};

struct ThresholdEstimate {
    double p_c = 0.0;
    double error = 0.0;
    bool statistically_limited = false;  // stopped because noise dominates
    std::vector<ThresholdProbe> probes;
};

/// Crossing of the size-A and size-B curves of `quantity` on [p_lo, p_hi].
/// renyi2 bisects the zero of the single deterministic curve of lat_a; the
/// Monte-Carlo quantities bisect the difference of estimates with fresh seeds
/// per probe and propagate uncertainty through a local weighted linear fit.
/// Non-bracketing input or identical lattices (for the two-curve quantities)
/// raise ComputationError / std::invalid_argument.
ThresholdEstimate find_threshold(const TorusLattice& lat_a,
                                 const TorusLattice& lat_b, Quantity quantity,
                                 double p_lo, double p_hi, long n_samples,
                                 std::uint64_t seed, double tol,
                                 int workers = 0);

/// Resolved worker count (flag value, TORICCI_WORKERS, hardware).
int resolve_workers(int requested);

}  // namespace toricci
