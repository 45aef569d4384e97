#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace toricci {

/// Spatial boundary sector of the torus: periodic (P) or antiperiodic (A)
/// along x and y, in that order.
enum class Sector : int { PP = 0, PA = 1, AP = 2, AA = 3 };

inline constexpr std::array<Sector, 4> kSectors{Sector::PP, Sector::PA,
                                                Sector::AP, Sector::AA};

inline constexpr bool antiperiodic_x(Sector a) {
    return a == Sector::AP || a == Sector::AA;
}
inline constexpr bool antiperiodic_y(Sector a) {
    return a == Sector::PA || a == Sector::AA;
}

const char* sector_name(Sector a);
Sector sector_from_name(const std::string& name);  // throws std::invalid_argument

/// Geometry of an lx-by-ly square-lattice torus.
///
/// Canonical indexing, shared by every module (Pfaffian signs depend on it):
///   sites   row-major, site(x, y) = y*lx + x
///   bonds   2*site + 0 for the +x bond, 2*site + 1 for the +y bond
/// lx = ly = 1 is supported; its two bonds are self-loops.
class TorusLattice {
  public:
    TorusLattice(int lx, int ly);  // throws std::invalid_argument if lx*ly < 1

    int lx() const { return lx_; }
    int ly() const { return ly_; }
    int n_sites() const { return lx_ * ly_; }
    int n_bonds() const { return 2 * lx_ * ly_; }

    int site(int x, int y) const;  // coordinates wrap
    int site_x(int s) const { return s % lx_; }
    int site_y(int s) const { return s / lx_; }

    int bond(int site, int dir) const { return 2 * site + dir; }  // dir 0=x 1=y
    int bond_site(int b) const { return b / 2; }
    int bond_dir(int b) const { return b % 2; }
    /// (from, to) with to = from + x-hat or + y-hat under the identification.
    std::pair<int, int> bond_ends(int b) const;

    /// One plaquette per site s: bond indices (bottom, right, top, left) of the
    /// square whose lower-left corner is s. Entries may repeat when lx or ly is 1.
    const std::vector<std::array<int, 4>>& plaquettes() const { return plaq_; }

    /// Bonds crossing the periodic identification in x (ly of them) / y (lx).
    const std::vector<int>& seam_x() const { return seam_x_; }
    const std::vector<int>& seam_y() const { return seam_y_; }

    /// -1 if bond b lies on a seam that sector a twists, else +1.
    int seam_sign(int b, Sector a) const;

  private:
    int lx_, ly_;
    std::vector<std::array<int, 4>> plaq_;
    std::vector<int> seam_x_, seam_y_;
    std::vector<int8_t> on_seam_x_, on_seam_y_;  // per bond
};

/// One Z2 gauge field value (+1/-1) per bond, in lattice bond order.
/// This is both the quenched disorder of the random-bond model and the
/// error-chain reference of the decohered code.
class GaugeConfig {
  public:
    GaugeConfig() = default;
    explicit GaugeConfig(std::size_t n_bonds, int8_t fill = +1);
    static GaugeConfig uniform(const TorusLattice& lat, int8_t value = +1);

    std::size_t size() const { return eta_.size(); }
    int8_t operator[](std::size_t b) const { return eta_[b]; }
    int8_t& operator[](std::size_t b) { return eta_[b]; }

    /// Sum of entries (used by the Nishimori weight e^{K sum}).
    int sum() const;

    void check_for(const TorusLattice& lat) const;  // throws on size/value mismatch

  private:
    std::vector<int8_t> eta_;
};

/// eta'_ij = tau_i eta_ij tau_j. Preserves all plaquette and loop products.
GaugeConfig gauge_transform(const TorusLattice& lat, const GaugeConfig& eta,
                            std::span<const int8_t> tau);

/// Product of eta over the bonds of plaquette p.
int plaquette_product(const TorusLattice& lat, const GaugeConfig& eta, int p);
/// Product of eta over the non-contractible loop of x-bonds in row y (dir=0)
/// or y-bonds in column x (dir=1).
int loop_product(const TorusLattice& lat, const GaugeConfig& eta, int dir,
                 int offset);

}  // namespace toricci
