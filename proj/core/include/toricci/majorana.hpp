#pragma once

#include <array>

#include "toricci/lattice.hpp"
#include "toricci/pfaffian.hpp"

namespace toricci {

/// Four Majorana modes per site, ordered (u, d, r, l) within the site, sites
/// in canonical lattice order. Mode index = 4*site + offset.
enum MajoranaMode : int { kModeU = 0, kModeD = 1, kModeR = 2, kModeL = 3 };

/// Free Majorana model on the torus: inter-cell hopping t coupled to the Z2
/// gauge field, fixed intra-cell couplings, spatial boundary sector alpha.
/// The CI path uses t = 1-2p, the Renyi-2 path t = (1-2p)^2.
struct MajoranaModel {
    const TorusLattice* lattice = nullptr;
    double t = 0.0;
    GaugeConfig eta;
    Sector alpha = Sector::PP;
    /// Test hook: negates the on-site (u,d) coupling. Used by the verification
    /// suite to demonstrate that the cross-oracle identity detects a wrong
    /// intra-cell sign pattern.
    bool flip_intra_sign = false;
};

/// First-quantized matrix A = -iH. Each operator term c*g_a*g_b contributes
/// A[a][b] += c/2 (and the antisymmetric mirror). In the single-site limit
/// this reproduces, entry for entry, the 4x4 matrix
///   [[0, t(-1)^ay eyy + 1, -1, -1], ...] / 2
/// used as the sign-convention anchor.
SkewMatrix build_hamiltonian(const MajoranaModel& model);

/// Eigenvalues of i*A (A antisymmetric), sorted ascending. They come in
/// +/-lambda pairs by particle-hole symmetry.
std::vector<double> spectrum(const SkewMatrix& m);

/// The four Pfaffians Pf(-iH_alpha[t; eta]), all from the same (t, eta).
struct SectorPfaffians {
    std::array<SignedLog, 4> pf;  // indexed by Sector
    const SignedLog& operator[](Sector a) const {
        return pf[static_cast<int>(a)];
    }
    SignedLog total() const;  // sum over the four sectors
};

SectorPfaffians sector_pfaffians(const TorusLattice& lat, double t,
                                 const GaugeConfig& eta,
                                 bool flip_intra_sign = false);

/// Closed form for the 1x1 torus:
///   -1/4 [t(-1)^ax eta_xx + 1][t(-1)^ay eta_yy + 1] + 1/2.
/// The four sector values sum to 1 for any t.
double single_site_pfaffian(double t, int eta_xx, int eta_yy, Sector alpha);

}  // namespace toricci
