#include "toricci/majorana.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace toricci {

SkewMatrix build_hamiltonian(const MajoranaModel& model) {
    const TorusLattice& lat = *model.lattice;
    model.eta.check_for(lat);
    const int n_modes = 4 * lat.n_sites();
    SkewMatrix a(static_cast<std::size_t>(n_modes));
    auto mode = [](int site, int m) { return 4 * site + m; };

    for (int s = 0; s < lat.n_sites(); ++s) {
        const int x = lat.site_x(s), y = lat.site_y(s);
        // inter-cell: t eta_{r,r+y} g_r^u g_{r+y}^d and t eta_{r+x,r} g_{r+x}^l g_r^r,
        // with the hopping sign flipped on seam bonds in antiperiodic directions
        const int by = lat.bond(s, 1);
        a.add(mode(s, kModeU), mode(lat.site(x, y + 1), kModeD),
              0.5 * model.t * model.eta[by] * lat.seam_sign(by, model.alpha));
        const int bx = lat.bond(s, 0);
        a.add(mode(lat.site(x + 1, y), kModeL), mode(s, kModeR),
              0.5 * model.t * model.eta[bx] * lat.seam_sign(bx, model.alpha));
        // intra-cell nearest: +(l,u) +(d,l) +(r,d) -(u,r)
        a.add(mode(s, kModeL), mode(s, kModeU), 0.5);
        a.add(mode(s, kModeD), mode(s, kModeL), 0.5);
        a.add(mode(s, kModeR), mode(s, kModeD), 0.5);
        a.add(mode(s, kModeU), mode(s, kModeR), -0.5);
        // intra-cell next-nearest: +(u,d) +(l,r)
        a.add(mode(s, kModeU), mode(s, kModeD),
              model.flip_intra_sign ? -0.5 : 0.5);
        a.add(mode(s, kModeL), mode(s, kModeR), 0.5);
    }
    return a;
}

std::vector<double> spectrum(const SkewMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    Eigen::MatrixXcd h(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            h(i, j) = std::complex<double>(0.0, m(i, j));  // i * A, Hermitian
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenvalue solver failed");
    std::vector<double> out(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + n);
    return out;  // SelfAdjointEigenSolver sorts ascending
}

SignedLog SectorPfaffians::total() const {
    return signed_log_sum(pf);
}

SectorPfaffians sector_pfaffians(const TorusLattice& lat, double t,
                                 const GaugeConfig& eta, bool flip_intra_sign) {
    SectorPfaffians out;
    MajoranaModel model{&lat, t, eta, Sector::PP, flip_intra_sign};
    for (Sector alpha : kSectors) {
        model.alpha = alpha;
        out.pf[static_cast<int>(alpha)] =
            pfaffian_signed_log(build_hamiltonian(model));
    }
    return out;
}

double single_site_pfaffian(double t, int eta_xx, int eta_yy, Sector alpha) {
    const double sx = antiperiodic_x(alpha) ? -1.0 : 1.0;
    const double sy = antiperiodic_y(alpha) ? -1.0 : 1.0;
    return -0.25 * (t * sx * eta_xx + 1.0) * (t * sy * eta_yy + 1.0) + 0.5;
}

}  // namespace toricci
