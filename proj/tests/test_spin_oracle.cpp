#include "doctest.h"

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "toricci/ci_engine.hpp"
#include "toricci/spin_oracle.hpp"

using namespace toricci;

TEST_CASE("nishimori parameters") {
    const auto n = NishimoriParams::from_p(0.1);
    CHECK(std::tanh(n.k) == doctest::Approx(0.8).epsilon(1e-14));
    const auto m = NishimoriParams::from_k(n.k);
    CHECK(m.p == doctest::Approx(0.1).epsilon(1e-13));
    CHECK_THROWS_AS(NishimoriParams::from_p(0.5), std::invalid_argument);
    CHECK_THROWS_AS(NishimoriParams::from_p(-0.1), std::invalid_argument);
}

TEST_CASE("free spins give Z = 2^N") {
    for (auto [lx, ly] : {std::pair{2, 2}, {3, 2}}) {
        const TorusLattice lat(lx, ly);
        const auto z =
            ising_partition(lat, 0.0, GaugeConfig::uniform(lat), Sector::PP);
        CHECK(z.z == doctest::Approx(std::pow(2.0, lat.n_sites())));
    }
}

TEST_CASE("enumerator matches the transfer matrix") {
    for (auto [lx, ly] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
        const TorusLattice lat(lx, ly);
        for (double j : {0.3, 1.0}) {
            const auto z =
                ising_partition(lat, j, GaugeConfig::uniform(lat), Sector::PP);
            const double tm = testing::transfer_matrix_partition(lx, ly, j);
            CHECK(z.z == doctest::Approx(tm).epsilon(1e-12));
        }
    }
}

TEST_CASE("partition function is gauge invariant") {
    const TorusLattice lat(2, 2);
    std::mt19937_64 rng(41);
    GaugeConfig eta(8);
    for (int b = 0; b < 8; ++b) eta[b] = rng() & 1 ? 1 : -1;
    const double base = ising_partition(lat, 0.8, eta, Sector::AA).log_z;
    for (unsigned mask = 0; mask < 16; ++mask) {
        std::vector<int8_t> tau(4);
        for (int i = 0; i < 4; ++i)
            tau[i] = (mask >> i) & 1 ? int8_t{-1} : int8_t{+1};
        const GaugeConfig out = gauge_transform(lat, eta, tau);
        CHECK(ising_partition(lat, 0.8, out, Sector::AA).log_z ==
              doctest::Approx(base).epsilon(1e-13));
    }
}

TEST_CASE("torus duality 2 Zdual = sum of sectors") {
    for (auto [lx, ly] : {std::pair{2, 2}, {2, 3}, {3, 3}}) {
        const TorusLattice lat(lx, ly);
        const GaugeConfig one = GaugeConfig::uniform(lat);
        for (double j : {0.2, std::atanh(std::sqrt(2.0) - 1.0), 1.0}) {
            const auto z = ising_partition_sectors(lat, j, one);
            double sum = 0.0;
            for (int a = 0; a < 4; ++a) sum += z[a].z;
            const double dual = dual_ising_partition(lat, j).z;
            CHECK(std::abs(2.0 * dual - sum) / sum < 1e-12);
        }
        // self-duality at tanh J = sqrt(2) - 1, for any size
        const double jsd = std::atanh(std::sqrt(2.0) - 1.0);
        const double zpp = ising_partition(lat, jsd, one, Sector::PP).z;
        CHECK(dual_ising_partition(lat, jsd).z ==
              doctest::Approx(zpp).epsilon(1e-12));
    }
}

TEST_CASE("dual partition is dominated by aligned spins at large J") {
    const TorusLattice lat(2, 3);
    const double j = 3.0;
    const double jt = std::atanh(std::exp(-2.0 * j));
    const double aligned = 2.0 * std::exp(jt * lat.n_bonds());
    const double spin_part =
        ising_partition(lat, jt, GaugeConfig::uniform(lat), Sector::PP).z;
    CHECK(spin_part / aligned == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("renyi CI at the single site matches two decoupled qubits") {
    const TorusLattice one(1, 1);
    for (double p : {0.04, 0.11, 0.3}) {
        for (int n : {2, 3}) {
            const double want =
                4.0 / (n - 1) *
                    std::log2(std::pow(1 - p, n) + std::pow(p, n)) +
                2.0;
            CHECK(rbim_renyi_ci(one, p, n) ==
                  doctest::Approx(want).epsilon(1e-10));
        }
    }
}

TEST_CASE("renyi CI basics") {
    CHECK(rbim_renyi_ci(TorusLattice(2, 2), 0.0, 2) == 2.0);
    CHECK(rbim_renyi_ci(TorusLattice(1, 2), 0.0, 3) == 2.0);
    CHECK_THROWS_AS(rbim_renyi_ci(TorusLattice(2, 2), 0.1, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(rbim_renyi_ci(TorusLattice(4, 3), 0.1, 2),
                    std::invalid_argument);
    CHECK_THROWS_AS(rbim_renyi_ci(TorusLattice(3, 3), 0.1, 3),
                    std::invalid_argument);
}

TEST_CASE("factorized disorder sum matches joint flavor enumeration") {
    // independent oracle for the per-eta factorization used by rbim_renyi_ci:
    // enumerate the two flavors of the n = 3 model jointly at 1x2
    const TorusLattice lat(1, 2);
    const double p = 0.12;
    const double k = NishimoriParams::from_p(p).k;
    const int ns = lat.n_sites(), nb = lat.n_bonds();
    double num = 0.0, den = 0.0;
    for (unsigned em = 0; em < (1u << nb); ++em) {
        GaugeConfig eta(static_cast<std::size_t>(nb));
        for (int b = 0; b < nb; ++b)
            eta[b] = (em >> b) & 1 ? int8_t{-1} : int8_t{+1};
        const double weight = std::exp(k * eta.sum()) /
                              std::pow(2.0 * std::cosh(k), nb);
        double total = 0.0, pp = 0.0;
        for (Sector a1 : kSectors)
            for (Sector a2 : kSectors) {
                double z = 0.0;
                for (unsigned conf = 0; conf < (1u << (2 * ns)); ++conf) {
                    double energy = 0.0;
                    for (int b = 0; b < nb; ++b) {
                        auto [i, jj] = lat.bond_ends(b);
                        const int s1i = (conf >> i) & 1 ? -1 : 1;
                        const int s1j = (conf >> jj) & 1 ? -1 : 1;
                        const int s2i = (conf >> (ns + i)) & 1 ? -1 : 1;
                        const int s2j = (conf >> (ns + jj)) & 1 ? -1 : 1;
                        energy += k * eta[b] *
                                  (lat.seam_sign(b, a1) * s1i * s1j +
                                   lat.seam_sign(b, a2) * s2i * s2j);
                    }
                    z += std::exp(energy);
                }
                total += z;
                if (a1 == Sector::PP && a2 == Sector::PP) pp = z;
            }
        num += weight * total;
        den += weight * pp;
    }
    const double joint = -1.0 * std::log2(num / (4.0 * den));
    CHECK(rbim_renyi_ci(lat, p, 3) == doctest::Approx(joint).epsilon(1e-10));
}

TEST_CASE("renyi-2 oracle is zero at the self-dual point") {
    const double pc = testing::self_dual_error_rate();
    for (auto [lx, ly] : {std::pair{2, 2}, {1, 2}, {2, 3}}) {
        CHECK(std::abs(rbim_renyi_ci(TorusLattice(lx, ly), pc, 2)) < 1e-9);
    }
}

TEST_CASE("exact full CI") {
    CHECK(exact_full_ci(TorusLattice(2, 2), 0.0) == 2.0);
    const TorusLattice one(1, 1);
    for (double p : {0.05, 0.17}) {
        const double want =
            4.0 * (p * std::log2(p) + (1 - p) * std::log2(1 - p)) + 2.0;
        CHECK(exact_full_ci(one, p) == doctest::Approx(want).epsilon(1e-12));
    }
    CHECK_THROWS_AS(exact_full_ci(TorusLattice(3, 3), 0.1),
                    std::invalid_argument);
}

TEST_CASE("exact full CI is monotone in p") {
    const TorusLattice lat(2, 2);
    double prev = 2.0 + 1e-12;
    for (int i = 0; i <= 10; ++i) {
        const double v = exact_full_ci(lat, 0.02 * i);
        CHECK(v <= prev + 1e-12);
        prev = v;
    }
}

TEST_CASE("random-bond duality") {
    const TorusLattice lat(2, 2);
    for (double k : {0.3, 0.7, 1.2}) CHECK(check_rbim_duality(lat, k, 2) < 1e-11);
    CHECK(check_rbim_duality(lat, 0.5, 3) < 1e-11);
    CHECK(check_rbim_duality(TorusLattice(1, 2), 0.6, 3) < 1e-11);
}

TEST_CASE("n = 2 duality reduces to the Ising duality") {
    // Zdual^(2)[K] = (cosh K / cosh J)^(2N) Zdual_IM[J] with tanh J = tanh^2 K
    const TorusLattice lat(2, 2);
    const double k = 0.8;
    const double j = std::atanh(std::tanh(k) * std::tanh(k));
    const double kt = -0.5 * std::log(std::tanh(k));
    const double log_pref =
        2.0 * lat.n_sites() *
            (k - std::log(std::sqrt(2.0) * std::cosh(kt))) -
        2.0 * lat.n_sites() * kt;
    // dual model at n=2: per-flavor plus product coupling collapses to 2*Kt
    const double dual_rbim =
        std::exp(log_pref) *
        ising_partition(lat, 2.0 * kt, GaugeConfig::uniform(lat), Sector::PP).z;
    const double scale =
        std::pow(std::cosh(k) / std::cosh(j), 2.0 * lat.n_sites());
    const double dual_ising = scale * dual_ising_partition(lat, j).z;
    CHECK(dual_rbim == doctest::Approx(dual_ising).epsilon(1e-11));
}
