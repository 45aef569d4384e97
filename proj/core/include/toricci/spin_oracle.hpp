#pragma once

#include <array>

#include "toricci/lattice.hpp"

namespace toricci {

/// Error rate p and Nishimori coupling K, tied by tanh K = 1-2p
/// (equivalently p = e^{-K} / (2 cosh K)).
struct NishimoriParams {
    double p = 0.0;
    double k = 0.0;
    static NishimoriParams from_p(double p);  // requires 0 <= p < 1/2
    static NishimoriParams from_k(double k);  // requires k > 0
};

struct PartitionValue {
    double log_z = 0.0;
    double z = 0.0;  // exp(log_z); may overflow to inf for large J*N
};

/// Z_alpha[J; eta] = sum_{sigma} exp(J sum_b s_alpha(b) eta_b sigma_i sigma_j)
/// by exhaustive Gray-code enumeration. n_sites <= 24.
PartitionValue ising_partition(const TorusLattice& lat, double j,
                               const GaugeConfig& eta, Sector alpha);
/// All four sectors in one spin sweep.
std::array<PartitionValue, 4> ising_partition_sectors(const TorusLattice& lat,
                                                      double j,
                                                      const GaugeConfig& eta);

/// Wu-Wang dual partition function
///   (e^J / (sqrt(2) cosh J~))^{2N} * Z_PBC[J~] with tanh J~ = e^{-2J},
/// dual spins enumerated on the dual lattice (an identical torus).
PartitionValue dual_ising_partition(const TorusLattice& lat, double j);

/// Exact Renyi-n coherent information of the decohered code from the
/// (n-1)-flavor random-bond model, disorder sum folded in:
///   I_c^(n) = -2/(n-1) log2[ sum_alpha Z^(n)_alpha / (2^{n-1} Z^(n)_PP) ],
/// the alpha sum running over the 4^{n-1} per-flavor sector combinations.
/// n in {2, 3}; feasibility caps n_sites <= 9 (n=2) / 6 (n=3).
double rbim_renyi_ci(const TorusLattice& lat, double p, int n);

/// Exact (fully enumerated) coherent information
///   I_c = 2 <<log2(2 Z_PP / sum_alpha Z_alpha)>>,  tanh K = 1-2p,
/// the disorder average taken with weights prod e^{K eta}/(2 cosh K).
/// n_sites <= 6.
double exact_full_ci(const TorusLattice& lat, double p);

/// Relative residual of the torus duality
///   2^{n-1} Z~^(n)[K] = sum_alpha Z^(n)_alpha[K]
/// with the dual model carrying per-flavor couplings plus the all-flavor
/// product coupling at K~ = -ln(tanh K)/2. n in {2, 3}.
double check_rbim_duality(const TorusLattice& lat, double k, int n);

}  // namespace toricci
