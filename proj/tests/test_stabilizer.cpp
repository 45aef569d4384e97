#include "doctest.h"

#include <cmath>
#include <set>
#include <sstream>

#include "toricci/spin_oracle.hpp"
#include "toricci/stabilizer.hpp"

using namespace toricci;

namespace {

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

/// Exhaustive distance of a self-dual CSS code: smallest weight of an X-type
/// (equivalently Z-type) pattern commuting with all Z generators but outside
/// the X stabilizer group.
int css_x_distance(const StabilizerCode& code, int cap) {
    std::vector<std::uint32_t> zgens, xgens;
    for (const auto& g : code.stabilizers) {
        if (g.z && !g.x) zgens.push_back(g.z);
        if (g.x && !g.z) xgens.push_back(g.x);
    }
    std::set<std::uint32_t> group{0};
    for (std::uint32_t g : xgens) {
        std::set<std::uint32_t> next = group;
        for (std::uint32_t m : group) next.insert(m ^ g);
        group = std::move(next);
    }
    const int n = code.n_phys;
    for (int w = 1; w <= cap; ++w) {
        std::vector<int> idx(w);
        for (int i = 0; i < w; ++i) idx[i] = i;
        while (true) {
            std::uint32_t pat = 0;
            for (int i = 0; i < w; ++i) pat |= std::uint32_t(1) << idx[i];
            bool commuting = true;
            for (std::uint32_t z : zgens)
                if (std::popcount(pat & z) & 1) {
                    commuting = false;
                    break;
                }
            if (commuting && !group.count(pat)) return w;
            int i = w - 1;
            while (i >= 0 && idx[i] == n - w + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < w; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return cap + 1;
}

}  // namespace

TEST_CASE("toric code structure") {
    const StabilizerCode code = toric_code(2, 2);
    CHECK(code.n_phys == 8);
    CHECK(code.stabilizers.size() == 6);
    CHECK(code.logicals.size() == 2);
    CHECK_NOTHROW(code.validate());
    CHECK(!commutes(code.logicals[0][0], code.logicals[0][1]));
    CHECK(commutes(code.logicals[0][0], code.logicals[1][1]));
    CHECK(!commutes(code.logicals[1][0], code.logicals[1][1]));
    CHECK_THROWS_AS(toric_code(1, 2), std::invalid_argument);
}

TEST_CASE("single-qubit closed forms") {
    const StabilizerCode q = single_qubit_code();
    for (double p = 0.0; p <= 0.501; p += 0.05) {
        // I_c = 2[p log2 p + (1-p) log2(1-p)] + 1 under bitflip+phase
        CHECK(exact_ci(q, {ChannelKind::BitFlipPhase, p}) ==
              doctest::Approx(1.0 - 2.0 * binary_entropy(p)).epsilon(1e-12));
        CHECK(exact_ci(q, {ChannelKind::BitFlip, p}) ==
              doctest::Approx(1.0 - binary_entropy(p)).epsilon(1e-12));
    }
    // Renyi-2: I = 2 log2[(1-p)^2 + p^2] + 1; at p = 1/2 this is -1
    for (double p : {0.1, 0.3}) {
        CHECK(renyi_ci(q, {ChannelKind::BitFlipPhase, p}, 2) ==
              doctest::Approx(2 * std::log2((1 - p) * (1 - p) + p * p) + 1)
                  .epsilon(1e-12));
    }
    CHECK(renyi_ci(q, {ChannelKind::BitFlipPhase, 0.5}, 2) ==
          doctest::Approx(-1.0).epsilon(1e-12));
    // depolarizing: I = 1 - H with q = {1-p, p/3, p/3, p/3}
    const double p = 0.15;
    const double h = -((1 - p) * std::log2(1 - p) + p * std::log2(p / 3.0));
    CHECK(exact_ci(q, {ChannelKind::Depolarizing, p}) ==
          doctest::Approx(1.0 - h).epsilon(1e-12));
}

TEST_CASE("toric code CI") {
    const StabilizerCode code = toric_code(2, 2);
    CHECK(exact_ci(code, {ChannelKind::BitFlipPhase, 0.0}) ==
          doctest::Approx(2.0));
    SUBCASE("CSS decomposition under independent bitflip+phase") {
        for (double p : {0.08, 0.15}) {
            const double joint = exact_ci(code, {ChannelKind::BitFlipPhase, p});
            const double cix = exact_ci(code, {ChannelKind::BitFlip, p});
            const double ciz = exact_ci(code, {ChannelKind::Phase, p});
            CHECK(joint == doctest::Approx(cix + ciz - 2.0).epsilon(1e-10));
        }
    }
    SUBCASE("three-way agreement with the spin oracle") {
        const TorusLattice lat(2, 2);
        for (double p : {0.05, 0.10}) {
            CHECK(exact_ci(code, {ChannelKind::BitFlipPhase, p}) ==
                  doctest::Approx(exact_full_ci(lat, p)).epsilon(1e-9));
        }
    }
    SUBCASE("renyi-2 matches the random-bond oracle") {
        for (double p : {0.06, 0.13}) {
            CHECK(renyi_ci(code, {ChannelKind::BitFlipPhase, p}, 2) ==
                  doctest::Approx(rbim_renyi_ci(TorusLattice(2, 2), p, 2))
                      .epsilon(1e-9));
        }
    }
    SUBCASE("bounds and monotonicity") {
        double prev = 2.0 + 1e-12;
        for (int i = 0; i <= 8; ++i) {
            const double v =
                exact_ci(code, {ChannelKind::BitFlipPhase, 0.05 * i});
            CHECK(v <= prev + 1e-12);
            CHECK(v >= -2.0 - 1e-12);
            CHECK(v <= 2.0 + 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("knill-laflamme checker") {
    const StabilizerCode code = toric_code(2, 2);
    SUBCASE("weight-1 errors are detected by the distance-2 code") {
        std::vector<Pauli> errors{Pauli{}};  // identity included
        for (int q = 0; q < code.n_phys; ++q) {
            errors.push_back(Pauli{std::uint32_t(1) << q, 0});
            errors.push_back(Pauli{0, std::uint32_t(1) << q});
        }
        CHECK(kl_check(code, errors).ok);
    }
    SUBCASE("a logical operator violates the condition") {
        std::vector<Pauli> errors{Pauli{}, code.logicals[0][0]};
        const KlResult r = kl_check(code, errors);
        CHECK(!r.ok);
        const Pauli product = r.witness_a * r.witness_b;
        CHECK((product == code.logicals[0][0]));
    }
    SUBCASE("empty error set passes") {
        CHECK(kl_check(code, {}).ok);
    }
}

TEST_CASE("rotated surface code fixture") {
    const StabilizerCode d3 = rotated_surface_code(3);
    CHECK(d3.n_phys == 9);
    CHECK_NOTHROW(d3.validate());
    CHECK(css_x_distance(d3, 4) == 3);
    CHECK(rotated_surface_code(1).n_phys == 1);
    CHECK_THROWS_AS(rotated_surface_code(5), std::invalid_argument);
    CHECK(exact_ci(d3, {ChannelKind::Depolarizing, 0.0}) ==
          doctest::Approx(1.0));
}

TEST_CASE("square-octagon color code fixtures") {
    const StabilizerCode d3 = color_code_488(3);
    CHECK(d3.n_phys == 7);
    CHECK_NOTHROW(d3.validate());
    CHECK(css_x_distance(d3, 4) == 3);

    const StabilizerCode d5 = color_code_488(5);
    CHECK(d5.n_phys == 17);
    CHECK_NOTHROW(d5.validate());
    CHECK(css_x_distance(d5, 6) == 5);

    CHECK_THROWS_AS(color_code_488(7), std::invalid_argument);
}

TEST_CASE("feasibility caps") {
    const StabilizerCode big = toric_code(4, 4);  // 32 qubits
    CHECK_THROWS_AS(exact_ci(big, {ChannelKind::Depolarizing, 0.1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(exact_ci(big, {ChannelKind::BitFlip, 0.1}),
                    std::invalid_argument);
}

TEST_CASE("fixture file round-trip") {
    for (const StabilizerCode& code :
         {toric_code(2, 2), rotated_surface_code(3), color_code_488(5)}) {
        std::stringstream ss;
        write_code_file(ss, code);
        const StabilizerCode back = read_code_file(ss);
        CHECK(back.n_phys == code.n_phys);
        CHECK(back.k_logical == code.k_logical);
        REQUIRE(back.stabilizers.size() == code.stabilizers.size());
        for (std::size_t i = 0; i < code.stabilizers.size(); ++i)
            CHECK((back.stabilizers[i] == code.stabilizers[i]));
        REQUIRE(back.logicals.size() == code.logicals.size());
        const PauliChannel ch{ChannelKind::BitFlip, 0.1};
        CHECK(exact_ci(back, ch) == doctest::Approx(exact_ci(code, ch)));
    }
    std::stringstream bad("n 2\nk 1\nS 01|0\n");
    CHECK_THROWS_AS(read_code_file(bad), std::invalid_argument);
    std::stringstream nok("S 01|00\n");
    CHECK_THROWS_AS(read_code_file(nok), std::invalid_argument);
}

TEST_CASE("pauli helpers") {
    const Pauli xz{0b01, 0b10};
    CHECK(pauli_string(xz, 2) == "XZ");
    CHECK(weight(xz, 2) == 2);
    CHECK(weight(Pauli{1, 1}, 2) == 1);  // Y counts once
    CHECK(commutes(Pauli{1, 0}, Pauli{2, 0}));
    CHECK(!commutes(Pauli{1, 0}, Pauli{0, 1}));
}
