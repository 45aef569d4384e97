#include "toricci/verify.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <sstream>

#include "toricci/ci_engine.hpp"
#include "toricci/lattice.hpp"
#include "toricci/majorana.hpp"
#include "toricci/pfaffian.hpp"
#include "toricci/spin_oracle.hpp"
#include "toricci/stabilizer.hpp"

namespace toricci {

namespace {

SkewMatrix random_skew(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    SkewMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) m.set(i, j, u(rng));
    return m;
}

/// log|det| and sign via LU, as the independent oracle for Pf^2 = det.
std::pair<int, double> det_signed_log(const SkewMatrix& m) {
    const auto n = static_cast<Eigen::Index>(m.dim());
    Eigen::MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = m(i, j);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    int sign = lu.permutationP().determinant() > 0 ? 1 : -1;
    double log_abs = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double d = lu.matrixLU()(i, i);
        if (d == 0.0) return {0, 0.0};
        if (d < 0) sign = -sign;
        log_abs += std::log(std::abs(d));
    }
    return {sign, log_abs};
}

/// (-Pf_PP + Pf_PA + Pf_AP + Pf_AA) / sum_alpha Pf_alpha
double majorana_ratio(const TorusLattice& lat, double t,
                      const GaugeConfig& eta, bool flip) {
    const SectorPfaffians pf = sector_pfaffians(lat, t, eta, flip);
    SignedLog neg_pp = pf[Sector::PP];
    neg_pp.sign = -neg_pp.sign;
    const std::array<SignedLog, 4> num_terms{neg_pp, pf[Sector::PA],
                                             pf[Sector::AP], pf[Sector::AA]};
    return signed_ratio(signed_log_sum(num_terms), pf.total());
}

/// 2 Z_PP / sum_alpha Z_alpha
double spin_ratio(const TorusLattice& lat, double j, const GaugeConfig& eta) {
    const auto z = ising_partition_sectors(lat, j, eta);
    double top = z[0].log_z;
    for (int a = 1; a < 4; ++a) top = std::max(top, z[a].log_z);
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) acc += std::exp(z[a].log_z - top);
    return 2.0 * std::exp(z[0].log_z - top - std::log(acc));
}

GaugeConfig gauge_from_mask(const TorusLattice& lat, unsigned mask) {
    GaugeConfig eta(static_cast<std::size_t>(lat.n_bonds()));
    for (int b = 0; b < lat.n_bonds(); ++b)
        eta[b] = (mask >> b) & 1 ? int8_t{-1} : int8_t{+1};
    return eta;
}

struct Suite {
    std::vector<Check> checks;
    bool flip = false;

    template <typename F>
    void run(const std::string& name, F&& body) {
        Check c;
        c.name = name;
        try {
            std::ostringstream detail;
            c.pass = body(detail);
            c.detail = detail.str();
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail = std::string("exception: ") + e.what();
        }
        checks.push_back(std::move(c));
    }
};

double pc_self_dual() {
    return 0.5 * (1.0 - std::sqrt(std::sqrt(2.0) - 1.0));
}

void fast_checks(Suite& s, int workers) {
    s.run("pfaffian/parlett-reid-vs-brute", [&](std::ostringstream& d) {
        std::mt19937_64 rng(11);
        double worst = 0.0;
        for (int n : {2, 4, 6, 8})
            for (int rep = 0; rep < 20; ++rep) {
                const SkewMatrix m = random_skew(n, rng);
                const double brute = pfaffian_brute(m);
                const double fast = pfaffian_signed_log(m).value();
                worst = std::max(worst, std::abs(brute - fast) /
                                            std::max(1e-30, std::abs(brute)));
            }
        d << "max rel diff " << worst;
        return worst < 1e-12;
    });
    s.run("pfaffian/pf-squared-equals-det", [&](std::ostringstream& d) {
        std::mt19937_64 rng(12);
        double worst = 0.0;
        for (int n : {8, 40, 120}) {
            const SkewMatrix m = random_skew(n, rng);
            const SignedLog pf = pfaffian_signed_log(m);
            const auto [dsign, dlog] = det_signed_log(m);
            if (dsign != 1 || pf.sign == 0) return false;
            worst = std::max(worst, std::abs(2.0 * pf.log_abs - dlog));
        }
        d << "max |log Pf^2 - log det| " << worst;
        return worst < 1e-10 * 120;  // relative 1e-10 in value space
    });
    s.run("pfaffian/congruence-and-swap", [&](std::ostringstream& d) {
        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double worst = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            const int n = 6;
            const SkewMatrix a = random_skew(n, rng);
            Eigen::MatrixXd b(n, n), am(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    b(i, j) = u(rng);
                    am(i, j) = a(i, j);
                }
            const Eigen::MatrixXd c = b * am * b.transpose();
            SkewMatrix cs(n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    cs.set(i, j, 0.5 * (c(i, j) - c(j, i)));
            const double lhs = pfaffian_brute(cs);
            const double rhs = b.determinant() * pfaffian_brute(a);
            worst = std::max(worst,
                             std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            // swapping two modes flips the sign
            SkewMatrix sw(n);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    auto mi = [&](int q) { return q == 0 ? 1 : q == 1 ? 0 : q; };
                    sw.set(i, j, a(mi(i), mi(j)));
                }
            const double pa = pfaffian_brute(a);
            worst = std::max(worst, std::abs(pfaffian_brute(sw) + pa) /
                                        std::max(1e-30, std::abs(pa)));
        }
        d << "max rel diff " << worst;
        return worst < 1e-10;
    });
    s.run("lattice/gauge-invariants-2x2", [&](std::ostringstream& d) {
        const TorusLattice lat(2, 2);
        std::mt19937_64 rng(14);
        for (int rep = 0; rep < 4; ++rep) {
            const GaugeConfig eta = gauge_from_mask(
                lat, static_cast<unsigned>(rng() & 0xFF));
            for (unsigned tmask = 0; tmask < 16; ++tmask) {
                std::vector<int8_t> tau(4);
                for (int i = 0; i < 4; ++i)
                    tau[i] = (tmask >> i) & 1 ? int8_t{-1} : int8_t{+1};
                const GaugeConfig eta2 = gauge_transform(lat, eta, tau);
                for (int p = 0; p < lat.n_sites(); ++p)
                    if (plaquette_product(lat, eta, p) !=
                        plaquette_product(lat, eta2, p))
                        return false;
                for (int o = 0; o < 2; ++o) {
                    if (loop_product(lat, eta, 0, o) !=
                        loop_product(lat, eta2, 0, o))
                        return false;
                    if (loop_product(lat, eta, 1, o) !=
                        loop_product(lat, eta2, 1, o))
                        return false;
                }
            }
        }
        d << "all tau on 2x2";
        return true;
    });
    s.run("majorana/single-site-anchor", [&](std::ostringstream& d) {
        const TorusLattice lat(1, 1);
        std::mt19937_64 rng(15);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        double worst = 0.0;
        for (int rep = 0; rep < 16; ++rep) {
            const double t = u(rng);
            GaugeConfig eta(2);
            eta[0] = rng() & 1 ? 1 : -1;
            eta[1] = rng() & 1 ? 1 : -1;
            double total = 0.0;
            for (Sector a : kSectors) {
                MajoranaModel model{&lat, t, eta, a, s.flip};
                const double generic =
                    pfaffian_signed_log(build_hamiltonian(model)).value();
                const double closed =
                    single_site_pfaffian(t, eta[0], eta[1], a);
                worst = std::max(worst, std::abs(generic - closed));
                total += generic;
            }
            worst = std::max(worst, std::abs(total - 1.0));
        }
        d << "max |generic - closed form| " << worst;
        return worst < 1e-14;
    });
    s.run("majorana/ising-ratio-identity-2x2", [&](std::ostringstream& d) {
        const TorusLattice lat(2, 2);
        const double j = 0.55;
        const double t = std::tanh(j);
        double worst = 0.0;
        for (unsigned mask = 0; mask < 256; ++mask) {
            const GaugeConfig eta = gauge_from_mask(lat, mask);
            const double lhs = majorana_ratio(lat, t, eta, s.flip);
            const double rhs = spin_ratio(lat, j, eta);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
        d << "max rel diff over 256 configs " << worst;
        return worst < 1e-9;
    });
    s.run("spin/ising-torus-duality", [&](std::ostringstream& d) {
        double worst = 0.0;
        for (auto [lx, ly] : {std::pair{2, 2}, std::pair{2, 3}}) {
            const TorusLattice lat(lx, ly);
            const GaugeConfig one = GaugeConfig::uniform(lat);
            for (double j : {0.2, std::atanh(std::sqrt(2.0) - 1.0), 1.0}) {
                const auto z = ising_partition_sectors(lat, j, one);
                double sum = 0.0;
                for (int a = 0; a < 4; ++a) sum += z[a].z;
                const double dual = dual_ising_partition(lat, j).z;
                worst = std::max(worst, std::abs(2.0 * dual - sum) / sum);
            }
            // self-duality at tanh J = sqrt(2)-1, any size
            const double jsd = std::atanh(std::sqrt(2.0) - 1.0);
            const double zpp = ising_partition(lat, jsd, one, Sector::PP).z;
            const double zd = dual_ising_partition(lat, jsd).z;
            worst = std::max(worst, std::abs(zpp - zd) / zd);
        }
        d << "max rel residual " << worst;
        return worst < 1e-12;
    });
    s.run("engine/renyi2-self-dual-zero", [&](std::ostringstream& d) {
        const double pc = pc_self_dual();
        double worst = 0.0;
        for (int l : {2, 4})
            worst = std::max(worst, std::abs(renyi2_ci(TorusLattice(l, l), pc)));
        worst = std::max(worst,
                         std::abs(rbim_renyi_ci(TorusLattice(2, 2), pc, 2)));
        d << "max |I_c^(2)(p_c)| " << worst;
        return worst < 1e-8;
    });
    s.run("engine/single-site-closed-forms", [&](std::ostringstream& d) {
        const TorusLattice one(1, 1);
        double worst = 0.0;
        for (double p : {0.05, 0.13, 0.3}) {
            const double got = exhaustive_coherent_information(one, p).mean;
            const double want =
                4.0 * (p * std::log2(p) + (1 - p) * std::log2(1 - p)) + 2.0;
            worst = std::max(worst, std::abs(got - want));
        }
        // zero errors: CI = 2 exactly, no spread
        const CiEstimate at0 = coherent_information(one, 0.0, 32, 7);
        worst = std::max(worst, std::abs(at0.mean - 2.0));
        worst = std::max(worst, at0.std_err);
        // fugacity of the single site at p = 0: (-1/2)/(3/2)
        const CiEstimate fug = vortex_fugacity(one, 0.0, 16, 7);
        worst = std::max(worst, std::abs(fug.mean + 1.0 / 3.0));
        d << "max deviation " << worst;
        return worst < 1e-12;
    });
    s.run("engine/determinism-across-workers", [&](std::ostringstream& d) {
        const TorusLattice lat(4, 4);
        const CiEstimate a = coherent_information(lat, 0.1, 96, 3, 1);
        const CiEstimate b = coherent_information(lat, 0.1, 96, 3, 4);
        d << "means " << a.mean << " / " << b.mean;
        return a.mean == b.mean && a.std_err == b.std_err &&
               a.n_clamped == b.n_clamped;
    });
    s.run("engine/exhaustive-equals-spin-2x2", [&](std::ostringstream& d) {
        const TorusLattice lat(2, 2);
        const double a = exhaustive_coherent_information(lat, 0.1).mean;
        const double b = exact_full_ci(lat, 0.1);
        d << "pfaffian " << a << " spin " << b;
        return std::abs(a - b) < 1e-10;
    });
    s.run("stabilizer/single-qubit-closed-forms", [&](std::ostringstream& d) {
        const StabilizerCode q = single_qubit_code();
        double worst = 0.0;
        for (double p : {0.0, 0.05, 0.2, 0.35, 0.5}) {
            const PauliChannel ch{ChannelKind::BitFlipPhase, p};
            const double h =
                p <= 0.0 || p >= 1.0
                    ? 0.0
                    : p * std::log2(p) + (1 - p) * std::log2(1 - p);
            worst = std::max(worst, std::abs(exact_ci(q, ch) - (2 * h + 1)));
            if (p > 0.0) {
                const double r2 = 2 * std::log2((1 - p) * (1 - p) + p * p) + 1;
                worst = std::max(worst, std::abs(renyi_ci(q, ch, 2) - r2));
            }
        }
        d << "max deviation " << worst;
        return worst < 1e-12;
    });
    s.run("stabilizer/three-way-2x2-toric", [&](std::ostringstream& d) {
        const TorusLattice lat(2, 2);
        const StabilizerCode code = toric_code(2, 2);
        const double p = 0.10;
        const double a = exact_ci(code, {ChannelKind::BitFlipPhase, p});
        const double b = exact_full_ci(lat, p);
        const double c = exhaustive_coherent_information(lat, p).mean;
        d << "stabilizer " << a << " spin " << b << " pfaffian " << c;
        return std::abs(a - b) < 1e-9 && std::abs(b - c) < 1e-9;
    });
    (void)workers;
}

void full_checks(Suite& s, int workers) {
    s.run("pfaffian/pf-squared-equals-det-600", [&](std::ostringstream& d) {
        std::mt19937_64 rng(21);
        const SkewMatrix m = random_skew(600, rng);
        const SignedLog pf = pfaffian_signed_log(m);
        const auto [dsign, dlog] = det_signed_log(m);
        if (dsign != 1 || pf.sign == 0) return false;
        const double diff = std::abs(2.0 * pf.log_abs - dlog);
        d << "|log Pf^2 - log det| " << diff;
        return diff < 1e-10 * 600;
    });
    s.run("spin/ising-torus-duality-3x3", [&](std::ostringstream& d) {
        const TorusLattice lat(3, 3);
        const GaugeConfig one = GaugeConfig::uniform(lat);
        double worst = 0.0;
        for (double j : {0.2, std::atanh(std::sqrt(2.0) - 1.0), 1.0}) {
            const auto z = ising_partition_sectors(lat, j, one);
            double sum = 0.0;
            for (int a = 0; a < 4; ++a) sum += z[a].z;
            worst = std::max(
                worst, std::abs(2.0 * dual_ising_partition(lat, j).z - sum) / sum);
        }
        d << "max rel residual " << worst;
        return worst < 1e-12;
    });
    s.run("spin/rbim-duality-n2-n3", [&](std::ostringstream& d) {
        const TorusLattice lat(2, 2);
        double worst = 0.0;
        for (int n : {2, 3})
            for (double k : {0.3, 0.7})
                worst = std::max(worst, check_rbim_duality(lat, k, n));
        d << "max rel residual " << worst;
        return worst < 1e-10;
    });
    s.run("majorana/ising-ratio-identity-3x3", [&](std::ostringstream& d) {
        const TorusLattice lat(3, 3);
        const double j = 0.62;
        const double t = std::tanh(j);
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const GaugeConfig eta = sample_gauge(lat, 0.35, 1234, i);
            const double lhs = majorana_ratio(lat, t, eta, s.flip);
            const double rhs = spin_ratio(lat, j, eta);
            worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
        }
        d << "max rel diff over 200 configs " << worst;
        return worst < 1e-9;
    });
    s.run("engine/observable-gauge-invariance-2x2", [&](std::ostringstream& d) {
        const TorusLattice lat(2, 2);
        const double p = 0.12;
        double worst = 0.0;
        std::mt19937_64 rng(22);
        for (int rep = 0; rep < 3; ++rep) {
            const GaugeConfig eta =
                gauge_from_mask(lat, static_cast<unsigned>(rng() & 0xFF));
            const double base = ci_sample_value(lat, p, eta).value;
            const double t1 = 1.0 - 2.0 * p;
            const SectorPfaffians pf0 = sector_pfaffians(lat, t1, eta);
            int sign0 = 1;
            for (Sector a : kSectors) sign0 *= pf0[a].sign;
            for (unsigned tmask = 0; tmask < 16; ++tmask) {
                std::vector<int8_t> tau(4);
                for (int i = 0; i < 4; ++i)
                    tau[i] = (tmask >> i) & 1 ? int8_t{-1} : int8_t{+1};
                const GaugeConfig eta2 = gauge_transform(lat, eta, tau);
                worst = std::max(worst,
                                 std::abs(ci_sample_value(lat, p, eta2).value -
                                          base));
                const SectorPfaffians pf = sector_pfaffians(lat, t1, eta2);
                int sign = 1;
                for (Sector a : kSectors) sign *= pf[a].sign;
                if (sign != sign0) return false;
            }
        }
        d << "max |CI sample shift| " << worst;
        return worst < 1e-9;
    });
    s.run("engine/renyi2-self-dual-zero-8x8", [&](std::ostringstream& d) {
        const double v = renyi2_ci(TorusLattice(8, 8), pc_self_dual());
        d << "I_c^(2)(p_c) = " << v;
        return std::abs(v) < 1e-8;
    });
    s.run("engine/monotonicity-in-p", [&](std::ostringstream& d) {
        const TorusLattice lat(4, 4);
        double prev_mean = 2.1;
        double prev_err = 0.0;
        for (int i = 0; i <= 10; ++i) {
            const double p = 0.02 * i;
            const CiEstimate e =
                coherent_information(lat, p, 400, 99, workers);
            if (e.mean > prev_mean + 3.0 * (prev_err + e.std_err)) {
                d << "violation at p = " << p;
                return false;
            }
            prev_mean = e.mean;
            prev_err = e.std_err;
        }
        d << "non-increasing within 3 sigma on p = 0..0.2";
        return true;
    });
    s.run("engine/clamp-free-at-moderate-p", [&](std::ostringstream& d) {
        const CiEstimate e =
            coherent_information(TorusLattice(8, 8), 0.1, 300, 5, workers);
        d << e.n_clamped << " clamped of " << e.n_samples;
        return e.n_clamped == 0;
    });
    s.run("spin/exhaustive-vs-spin-2x3", [&](std::ostringstream& d) {
        const TorusLattice lat(2, 3);
        double worst = 0.0;
        for (double p : {0.05, 0.10, 0.15})
            worst = std::max(
                worst, std::abs(exhaustive_coherent_information(lat, p).mean -
                                exact_full_ci(lat, p)));
        d << "max diff " << worst;
        return worst < 1e-10;
    });
    s.run("stabilizer/three-way-2x2-toric-grid", [&](std::ostringstream& d) {
        const TorusLattice lat(2, 2);
        const StabilizerCode code = toric_code(2, 2);
        double worst = 0.0;
        for (double p : {0.05, 0.10, 0.15}) {
            const double a = exact_ci(code, {ChannelKind::BitFlipPhase, p});
            const double b = exact_full_ci(lat, p);
            const double c = exhaustive_coherent_information(lat, p).mean;
            worst = std::max({worst, std::abs(a - b), std::abs(b - c)});
        }
        d << "max pairwise diff " << worst;
        return worst < 1e-9;
    });
    s.run("stabilizer/renyi2-equals-rbim-2x2", [&](std::ostringstream& d) {
        const StabilizerCode code = toric_code(2, 2);
        double worst = 0.0;
        for (double p : {0.06, 0.12}) {
            const double a = renyi_ci(code, {ChannelKind::BitFlipPhase, p}, 2);
            const double b = rbim_renyi_ci(TorusLattice(2, 2), p, 2);
            const double c = renyi2_ci(TorusLattice(2, 2), p);
            worst = std::max({worst, std::abs(a - b), std::abs(b - c)});
        }
        d << "max pairwise diff " << worst;
        return worst < 1e-9;
    });
}

}  // namespace

std::vector<Check> run_verification(const VerifyOptions& opts) {
    Suite s;
    s.flip = opts.flip_intra_sign;
    fast_checks(s, opts.workers);
    if (opts.level == VerifyLevel::Full) full_checks(s, opts.workers);
    return std::move(s.checks);
}

bool all_passed(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

}  // namespace toricci
