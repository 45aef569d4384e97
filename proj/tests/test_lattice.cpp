#include "doctest.h"

#include <map>

#include "toricci/lattice.hpp"

using namespace toricci;

TEST_CASE("torus counting") {
    const TorusLattice a(2, 2);
    CHECK(a.n_sites() == 4);
    CHECK(a.n_bonds() == 8);
    CHECK(a.plaquettes().size() == 4);

    const TorusLattice b(1, 1);
    CHECK(b.n_sites() == 1);
    CHECK(b.n_bonds() == 2);
    CHECK(b.plaquettes().size() == 1);
    // both bonds are self-loops under the identification
    for (int bond = 0; bond < 2; ++bond) {
        auto [from, to] = b.bond_ends(bond);
        CHECK(from == to);
    }

    const TorusLattice c(4, 3);
    CHECK(c.n_sites() == 12);
    CHECK(c.n_bonds() == 24);

    CHECK_THROWS_AS(TorusLattice(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(TorusLattice(2, 0), std::invalid_argument);
}

TEST_CASE("every bond lies in exactly two plaquettes") {
    for (auto [lx, ly] : {std::pair{2, 2}, {4, 3}, {1, 1}, {1, 3}}) {
        const TorusLattice lat(lx, ly);
        std::map<int, int> count;
        for (const auto& plq : lat.plaquettes())
            for (int b : plq) ++count[b];
        for (int b = 0; b < lat.n_bonds(); ++b) CHECK(count[b] == 2);
    }
}

TEST_CASE("seams") {
    const TorusLattice lat(4, 3);
    CHECK(lat.seam_x().size() == 3);
    CHECK(lat.seam_y().size() == 4);
    for (int bx : lat.seam_x())
        for (int by : lat.seam_y()) CHECK(bx != by);
    // seam bonds cross the identification
    for (int b : lat.seam_x()) {
        auto [from, to] = lat.bond_ends(b);
        CHECK(lat.site_x(from) == 3);
        CHECK(lat.site_x(to) == 0);
    }
    CHECK(lat.seam_sign(lat.seam_x()[0], Sector::AP) == -1);
    CHECK(lat.seam_sign(lat.seam_x()[0], Sector::PA) == 1);
    CHECK(lat.seam_sign(lat.seam_y()[0], Sector::PA) == -1);
    CHECK(lat.seam_sign(lat.seam_x()[0], Sector::PP) == 1);
}

TEST_CASE("bond indexing round-trips") {
    const TorusLattice lat(3, 4);
    for (int b = 0; b < lat.n_bonds(); ++b)
        CHECK(lat.bond(lat.bond_site(b), lat.bond_dir(b)) == b);
}

TEST_CASE("sector names") {
    CHECK(sector_from_name("AP") == Sector::AP);
    CHECK(sector_name(Sector::PA) == std::string("PA"));
    CHECK_THROWS_AS(sector_from_name("XX"), std::invalid_argument);
    CHECK(antiperiodic_x(Sector::AP));
    CHECK(!antiperiodic_y(Sector::AP));
    CHECK(antiperiodic_y(Sector::PA));
}

TEST_CASE("gauge transform") {
    const TorusLattice lat(2, 2);
    GaugeConfig eta(8);
    eta[1] = -1;
    eta[6] = -1;

    SUBCASE("identity tau leaves eta unchanged") {
        const std::vector<int8_t> tau(4, 1);
        const GaugeConfig out = gauge_transform(lat, eta, tau);
        for (int b = 0; b < 8; ++b) CHECK(out[b] == eta[b]);
    }

    SUBCASE("flipping one site flips exactly its four bonds") {
        std::vector<int8_t> tau(4, 1);
        tau[0] = -1;
        const GaugeConfig out = gauge_transform(lat, eta, tau);
        int flipped = 0;
        for (int b = 0; b < 8; ++b)
            if (out[b] != eta[b]) ++flipped;
        CHECK(flipped == 4);
        for (int p = 0; p < 4; ++p)
            CHECK(plaquette_product(lat, out, p) ==
                  plaquette_product(lat, eta, p));
    }

    SUBCASE("loop products survive every tau") {
        for (unsigned mask = 0; mask < 16; ++mask) {
            std::vector<int8_t> tau(4);
            for (int i = 0; i < 4; ++i)
                tau[i] = (mask >> i) & 1 ? int8_t{-1} : int8_t{+1};
            const GaugeConfig out = gauge_transform(lat, eta, tau);
            for (int o = 0; o < 2; ++o) {
                CHECK(loop_product(lat, out, 0, o) ==
                      loop_product(lat, eta, 0, o));
                CHECK(loop_product(lat, out, 1, o) ==
                      loop_product(lat, eta, 1, o));
            }
        }
    }

    SUBCASE("size mismatch throws") {
        const std::vector<int8_t> tau(3, 1);
        CHECK_THROWS_AS(gauge_transform(lat, eta, tau), std::invalid_argument);
        const GaugeConfig wrong(6);
        const std::vector<int8_t> tau4(4, 1);
        CHECK_THROWS_AS(gauge_transform(lat, wrong, tau4),
                        std::invalid_argument);
    }
}
