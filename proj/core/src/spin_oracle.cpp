#include "toricci/spin_oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace toricci {

namespace {

constexpr double kLn2 = 0.6931471805599453094;

/// Streaming log-sum-exp of positive terms given by their logarithms.
class LogAccumulator {
  public:
    void add(double log_term) {
        if (log_term == -std::numeric_limits<double>::infinity()) return;
        if (log_term > top_) {
            acc_ *= std::exp(top_ - log_term);
            comp_ *= std::exp(top_ - log_term);
            top_ = log_term;
        }
        kahan_add(std::exp(log_term - top_));
    }
    double log_sum() const {
        return top_ + std::log(acc_ + comp_);
    }

  private:
    void kahan_add(double v) {
        const double t = acc_ + v;
        if (std::abs(acc_) >= std::abs(v))
            comp_ += (acc_ - t) + v;
        else
            comp_ += (v - t) + acc_;
        acc_ = t;
    }
    double top_ = -std::numeric_limits<double>::infinity();
    double acc_ = 0.0, comp_ = 0.0;
};

double log_sum4(const std::array<PartitionValue, 4>& z) {
    double top = z[0].log_z;
    for (int a = 1; a < 4; ++a) top = std::max(top, z[a].log_z);
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) acc += std::exp(z[a].log_z - top);
    return top + std::log(acc);
}

void check_enumeration_cap(const TorusLattice& lat, int cap, const char* what) {
    if (lat.n_sites() > cap)
        throw std::invalid_argument(std::string(what) +
                                    ": lattice too large for enumeration");
}

/// Gray-code spin enumerator producing all four sector partition functions in
/// one sweep. Bond terms are integers (eta * sigma_i * sigma_j), so the three
/// class sums (bulk / x-seam / y-seam) stay exact; Boltzmann weights come from
/// a precomputed exp table.
struct GraySums {
    std::array<double, 4> acc{};
    std::array<double, 4> comp{};
    void add(int sector, double v) {
        const double t = acc[sector] + v;
        if (std::abs(acc[sector]) >= std::abs(v))
            comp[sector] += (acc[sector] - t) + v;
        else
            comp[sector] += (v - t) + acc[sector];
        acc[sector] = t;
    }
};

}  // namespace

NishimoriParams NishimoriParams::from_p(double p) {
    if (p < 0.0 || p >= 0.5)
        throw std::invalid_argument("error rate must lie in [0, 1/2)");
    return {p, std::atanh(1.0 - 2.0 * p)};
}

NishimoriParams NishimoriParams::from_k(double k) {
    if (!(k > 0.0))
        throw std::invalid_argument("Nishimori coupling must be positive");
    const double p = std::exp(-k) / (2.0 * std::cosh(k));
    return {p, k};
}

std::array<PartitionValue, 4> ising_partition_sectors(const TorusLattice& lat,
                                                      double j,
                                                      const GaugeConfig& eta) {
    check_enumeration_cap(lat, 24, "ising_partition");
    eta.check_for(lat);
    const int n = lat.n_sites();
    const int nb = lat.n_bonds();

    // class of each bond: 0 bulk, 1 x-seam, 2 y-seam
    std::vector<int> cls(nb, 0);
    for (int b : lat.seam_x()) cls[b] = 1;
    for (int b : lat.seam_y()) cls[b] = 2;

    // bonds incident to each site (self-loops appear twice; their term then
    // never changes under a flip, which is correct)
    std::vector<std::array<int, 4>> incident(n);
    for (int s = 0; s < n; ++s) {
        const int x = lat.site_x(s), y = lat.site_y(s);
        incident[s] = {lat.bond(s, 0), lat.bond(s, 1),
                       lat.bond(lat.site(x - 1, y), 0),
                       lat.bond(lat.site(x, y - 1), 1)};
    }

    // current bond terms and class sums, sigma all +1 initially
    std::vector<int> term(nb);
    int sums[3] = {0, 0, 0};
    for (int b = 0; b < nb; ++b) {
        term[b] = eta[b];
        sums[cls[b]] += term[b];
    }

    // exp table over the integer energy range [-nb, nb]
    const double shift = std::abs(j) * nb;
    std::vector<double> tab(2 * nb + 1);
    for (int v = -nb; v <= nb; ++v) tab[v + nb] = std::exp(j * v - shift);

    const int sx[4] = {1, 1, -1, -1};  // PP PA AP AA
    const int sy[4] = {1, -1, 1, -1};

    GraySums gs;
    const std::uint64_t total = std::uint64_t(1) << n;
    for (std::uint64_t g = 0;; ++g) {
        for (int a = 0; a < 4; ++a)
            gs.add(a, tab[sums[0] + sx[a] * sums[1] + sy[a] * sums[2] + nb]);
        if (g + 1 == total) break;
        const int flip = std::countr_zero(g + 1);
        for (int b : incident[flip]) {
            sums[cls[b]] -= 2 * term[b];
            term[b] = -term[b];
        }
    }

    std::array<PartitionValue, 4> out;
    for (int a = 0; a < 4; ++a) {
        out[a].log_z = shift + std::log(gs.acc[a] + gs.comp[a]);
        out[a].z = std::exp(out[a].log_z);
    }
    return out;
}

PartitionValue ising_partition(const TorusLattice& lat, double j,
                               const GaugeConfig& eta, Sector alpha) {
    return ising_partition_sectors(lat, j, eta)[static_cast<int>(alpha)];
}

PartitionValue dual_ising_partition(const TorusLattice& lat, double j) {
    check_enumeration_cap(lat, 24, "dual_ising_partition");
    const double jt = std::atanh(std::exp(-2.0 * j));
    const double log_pref =
        2.0 * lat.n_sites() *
        (j - std::log(std::sqrt(2.0) * std::cosh(jt)));
    const PartitionValue spin =
        ising_partition(lat, jt, GaugeConfig::uniform(lat), Sector::PP);
    PartitionValue out;
    out.log_z = log_pref + spin.log_z;
    out.z = std::exp(out.log_z);
    return out;
}

namespace {

/// Enumerates all gauge configurations (Gray order), handing each one's
/// Nishimori log-weight and four sector partition functions to `fn`.
template <typename F>
void for_each_gauge(const TorusLattice& lat, double k, F&& fn) {
    const int nb = lat.n_bonds();
    const double log_norm = -nb * std::log(2.0 * std::cosh(k));
    GaugeConfig eta = GaugeConfig::uniform(lat);
    const std::uint64_t total = std::uint64_t(1) << nb;
    for (std::uint64_t g = 0;; ++g) {
        const double log_weight = k * eta.sum() + log_norm;
        fn(eta, log_weight);
        if (g + 1 == total) break;
        const int flip = std::countr_zero(g + 1);
        eta[flip] = static_cast<int8_t>(-eta[flip]);
    }
}

void check_renyi_caps(const TorusLattice& lat, int n) {
    if (n != 2 && n != 3)
        throw std::invalid_argument("Renyi index must be 2 or 3");
    check_enumeration_cap(lat, n == 2 ? 9 : 6, "rbim enumeration");
}

/// log of the (n-1)-flavor dual partition function Z~^(n)[K] (PP sector),
/// couplings K~ on per-flavor terms and on the all-flavor product term.
double log_dual_rbim(const TorusLattice& lat, double k, int n) {
    const int nf = n - 1;
    const int ns = lat.n_sites();
    const int nb = lat.n_bonds();
    const double kt = -0.5 * std::log(std::tanh(k));
    const double log_pref =
        2.0 * ns * nf * (k - std::log(std::sqrt(2.0) * std::cosh(kt))) -
        2.0 * ns * kt;
    LogAccumulator acc;
    const std::uint64_t total = std::uint64_t(1) << (nf * ns);
    for (std::uint64_t conf = 0; conf < total; ++conf) {
        int energy = 0;  // integer multiple of K~
        for (int b = 0; b < nb; ++b) {
            auto [i, jj] = lat.bond_ends(b);
            int prod = 1;
            for (int f = 0; f < nf; ++f) {
                const int si = (conf >> (f * ns + i)) & 1 ? -1 : 1;
                const int sj = (conf >> (f * ns + jj)) & 1 ? -1 : 1;
                energy += si * sj;
                prod *= si * sj;
            }
            energy += prod;
        }
        acc.add(kt * energy);
    }
    return log_pref + acc.log_sum();
}

}  // namespace

double rbim_renyi_ci(const TorusLattice& lat, double p, int n) {
    check_renyi_caps(lat, n);
    if (p == 0.0) return 2.0;
    const double k = NishimoriParams::from_p(p).k;
    LogAccumulator num, den;  // sum_alpha Z^(n)_alpha and Z^(n)_PP
    for_each_gauge(lat, k, [&](const GaugeConfig& eta, double log_w) {
        const auto z = ising_partition_sectors(lat, k, eta);
        num.add(log_w + (n - 1) * log_sum4(z));
        den.add(log_w + (n - 1) * z[0].log_z);
    });
    const double log_ratio = num.log_sum() - (n - 1) * kLn2 - den.log_sum();
    return -2.0 / (n - 1) * (log_ratio / kLn2);
}

double exact_full_ci(const TorusLattice& lat, double p) {
    check_enumeration_cap(lat, 6, "exact_full_ci");
    if (p == 0.0) return 2.0;
    const double k = NishimoriParams::from_p(p).k;
    double mean = 0.0;
    for_each_gauge(lat, k, [&](const GaugeConfig& eta, double log_w) {
        const auto z = ising_partition_sectors(lat, k, eta);
        const double log_ratio = kLn2 + z[0].log_z - log_sum4(z);
        mean += std::exp(log_w) * 2.0 * (log_ratio / kLn2);
    });
    return mean;
}

double check_rbim_duality(const TorusLattice& lat, double k, int n) {
    check_renyi_caps(lat, n);
    if (!(k > 0.0))
        throw std::invalid_argument("duality check requires k > 0");
    LogAccumulator rhs;  // sum over the 4^{n-1} per-flavor sectors
    for_each_gauge(lat, k, [&](const GaugeConfig& eta, double log_w) {
        const auto z = ising_partition_sectors(lat, k, eta);
        rhs.add(log_w + (n - 1) * log_sum4(z));
    });
    const double log_lhs = (n - 1) * kLn2 + log_dual_rbim(lat, k, n);
    return std::abs(std::expm1(log_lhs - rhs.log_sum()));
}

}  // namespace toricci
