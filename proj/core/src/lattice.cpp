#include "toricci/lattice.hpp"

#include <stdexcept>
#include <string>

namespace toricci {

const char* sector_name(Sector a) {
    switch (a) {
        case Sector::PP: return "PP";
        case Sector::PA: return "PA";
        case Sector::AP: return "AP";
        case Sector::AA: return "AA";
    }
    return "?";
}

Sector sector_from_name(const std::string& name) {
    for (Sector a : kSectors)
        if (name == sector_name(a)) return a;
    throw std::invalid_argument("unknown boundary sector: " + name);
}

TorusLattice::TorusLattice(int lx, int ly) : lx_(lx), ly_(ly) {
    if (lx < 1 || ly < 1)
        throw std::invalid_argument("torus dimensions must be >= 1");
    const int n = n_sites();
    plaq_.resize(n);
    for (int s = 0; s < n; ++s) {
        const int x = site_x(s), y = site_y(s);
        plaq_[s] = {bond(s, 0),                // bottom
                    bond(site(x + 1, y), 1),   // right
                    bond(site(x, y + 1), 0),   // top
                    bond(s, 1)};               // left
    }
    on_seam_x_.assign(n_bonds(), 0);
    on_seam_y_.assign(n_bonds(), 0);
    for (int y = 0; y < ly_; ++y) {
        const int b = bond(site(lx_ - 1, y), 0);
        seam_x_.push_back(b);
        on_seam_x_[b] = 1;
    }
    for (int x = 0; x < lx_; ++x) {
        const int b = bond(site(x, ly_ - 1), 1);
        seam_y_.push_back(b);
        on_seam_y_[b] = 1;
    }
}

int TorusLattice::site(int x, int y) const {
    x %= lx_;
    y %= ly_;
    if (x < 0) x += lx_;
    if (y < 0) y += ly_;
    return y * lx_ + x;
}

std::pair<int, int> TorusLattice::bond_ends(int b) const {
    const int s = bond_site(b);
    const int x = site_x(s), y = site_y(s);
    return {s, bond_dir(b) == 0 ? site(x + 1, y) : site(x, y + 1)};
}

int TorusLattice::seam_sign(int b, Sector a) const {
    int sign = 1;
    if (antiperiodic_x(a) && on_seam_x_[b]) sign = -sign;
    if (antiperiodic_y(a) && on_seam_y_[b]) sign = -sign;
    return sign;
}

GaugeConfig::GaugeConfig(std::size_t n_bonds, int8_t fill)
    : eta_(n_bonds, fill) {
    if (fill != 1 && fill != -1)
        throw std::invalid_argument("gauge entries must be +1 or -1");
}

GaugeConfig GaugeConfig::uniform(const TorusLattice& lat, int8_t value) {
    return GaugeConfig(static_cast<std::size_t>(lat.n_bonds()), value);
}

int GaugeConfig::sum() const {
    int s = 0;
    for (int8_t e : eta_) s += e;
    return s;
}

void GaugeConfig::check_for(const TorusLattice& lat) const {
    if (eta_.size() != static_cast<std::size_t>(lat.n_bonds()))
        throw std::invalid_argument("gauge config size does not match lattice");
    for (int8_t e : eta_)
        if (e != 1 && e != -1)
            throw std::invalid_argument("gauge entries must be +1 or -1");
}

GaugeConfig gauge_transform(const TorusLattice& lat, const GaugeConfig& eta,
                            std::span<const int8_t> tau) {
    eta.check_for(lat);
    if (tau.size() != static_cast<std::size_t>(lat.n_sites()))
        throw std::invalid_argument("tau size does not match site count");
    GaugeConfig out(eta.size());
    for (int b = 0; b < lat.n_bonds(); ++b) {
        auto [i, j] = lat.bond_ends(b);
        out[b] = static_cast<int8_t>(tau[i] * eta[b] * tau[j]);
    }
    return out;
}

int plaquette_product(const TorusLattice& lat, const GaugeConfig& eta, int p) {
    int prod = 1;
    for (int b : lat.plaquettes()[p]) prod *= eta[b];
    return prod;
}

int loop_product(const TorusLattice& lat, const GaugeConfig& eta, int dir,
                 int offset) {
    int prod = 1;
    if (dir == 0) {
        for (int x = 0; x < lat.lx(); ++x)
            prod *= eta[lat.bond(lat.site(x, offset), 0)];
    } else {
        for (int y = 0; y < lat.ly(); ++y)
            prod *= eta[lat.bond(lat.site(offset, y), 1)];
    }
    return prod;
}

}  // namespace toricci
