#include "toricci/ci_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "toricci/spin_oracle.hpp"

namespace toricci {

namespace {

constexpr double kLog2e = 1.4426950408889634074;  // 1/ln 2

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// splitmix64; the per-sample stream is keyed by (seed, index) only.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        return mix64(state);
    }
    double uniform01() { return (next() >> 11) * 0x1.0p-53; }
};

SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64{mix64(mix64(seed) + index * 0x9E3779B97F4A7C15ULL)};
}

/// Runs fn(0..n-1) on `workers` threads. Results must be written to
/// per-index slots; the caller reduces them in index order afterwards.
template <typename F>
void parallel_for(long n, int workers, F&& fn) {
    workers = static_cast<int>(std::min<long>(workers, n));
    if (workers <= 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            try {
                for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                    fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

/// Mean and standard error in fixed index order (two-pass).
CiEstimate reduce_samples(const std::vector<double>& values,
                          const std::vector<std::uint8_t>& flagged,
                          const TorusLattice& lat, double p) {
    CiEstimate est;
    est.p = p;
    est.lx = lat.lx();
    est.ly = lat.ly();
    est.n_samples = static_cast<long>(values.size());
    long kept = 0;
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        est.n_clamped += flagged[i] ? 1 : 0;
        if (flagged[i] > 1) continue;  // 2 = excluded, 1 = clamped but counted
        sum += values[i];
        ++kept;
    }
    if (kept == 0) {
        throw ComputationError("no usable samples (all flagged)");
    }
    est.mean = sum / kept;
    if (kept > 1) {
        double ss = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (flagged[i] > 1) continue;
            const double d = values[i] - est.mean;
            ss += d * d;
        }
        est.std_err = std::sqrt(ss / (double(kept) * double(kept - 1)));
    }
    return est;
}

template <typename SampleFn>
CiEstimate monte_carlo(const TorusLattice& lat, double p, long n_samples,
                       std::uint64_t seed, int workers, SampleFn&& one) {
    if (n_samples < 1)
        throw std::invalid_argument("n_samples must be >= 1");
    std::vector<double> values(n_samples, 0.0);
    std::vector<std::uint8_t> flagged(n_samples, 0);
    parallel_for(n_samples, resolve_workers(workers), [&](long i) {
        const GaugeConfig eta =
            sample_gauge(lat, p, seed, static_cast<std::uint64_t>(i));
        one(eta, values[i], flagged[i]);
    });
    return reduce_samples(values, flagged, lat, p);
}

}  // namespace

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("TORICCI_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

GaugeConfig sample_gauge(const TorusLattice& lat, double p, std::uint64_t seed,
                         std::uint64_t index) {
    if (p < 0.0 || p >= 0.5)
        throw std::invalid_argument("error rate must lie in [0, 1/2)");
    SplitMix64 rng = sample_stream(seed, index);
    GaugeConfig eta(static_cast<std::size_t>(lat.n_bonds()));
    for (int b = 0; b < lat.n_bonds(); ++b)
        eta[b] = rng.uniform01() < p ? int8_t{-1} : int8_t{+1};
    return eta;
}

CiSample ci_sample_value(const TorusLattice& lat, double p,
                         const GaugeConfig& eta) {
    const double t1 = 1.0 - 2.0 * p;
    const SectorPfaffians pf = sector_pfaffians(lat, t1, eta);
    const SignedLog total = pf.total();
    if (total.sign == 0)
        throw ComputationError("sum of sector Pfaffians is degenerate");
    const double r = pf[Sector::PP].sign == 0
                         ? 0.0
                         : signed_ratio(pf[Sector::PP], total);
    double v = 1.0 - 2.0 * r;
    CiSample out;
    if (v <= 0.0) {  // impossible in exact arithmetic; clamp loudly
        v = 1e-300;
        out.clamped = true;
    }
    out.value = 2.0 * std::log2(v);
    return out;
}

CiEstimate coherent_information(const TorusLattice& lat, double p,
                                long n_samples, std::uint64_t seed,
                                int workers) {
    return monte_carlo(lat, p, n_samples, seed, workers,
                       [&](const GaugeConfig& eta, double& value,
                           std::uint8_t& flag) {
                           const CiSample s = ci_sample_value(lat, p, eta);
                           value = s.value;
                           flag = s.clamped ? 1 : 0;
                       });
}

CiEstimate exhaustive_coherent_information(const TorusLattice& lat, double p) {
    if (lat.n_sites() > 6)
        throw std::invalid_argument(
            "exhaustive mode enumerates 2^(2N) configs; n_sites <= 6");
    CiEstimate est;
    est.p = p;
    est.lx = lat.lx();
    est.ly = lat.ly();
    if (p == 0.0) {  // the Nishimori measure is a point mass on eta = +1
        const CiSample s =
            ci_sample_value(lat, 0.0, GaugeConfig::uniform(lat));
        est.mean = s.value;
        est.n_samples = 1;
        est.n_clamped = s.clamped ? 1 : 0;
        return est;
    }
    const double k = NishimoriParams::from_p(p).k;
    const int nb = lat.n_bonds();
    const double log_norm = -nb * std::log(2.0 * std::cosh(k));
    double mean = 0.0;
    const std::uint64_t total = std::uint64_t(1) << nb;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        GaugeConfig eta(static_cast<std::size_t>(nb));
        int sum = 0;
        for (int b = 0; b < nb; ++b) {
            eta[b] = (mask >> b) & 1 ? int8_t{-1} : int8_t{+1};
            sum += eta[b];
        }
        const double weight = std::exp(k * sum + log_norm);
        const CiSample s = ci_sample_value(lat, p, eta);
        if (s.clamped) ++est.n_clamped;
        mean += weight * s.value;
    }
    est.mean = mean;
    est.n_samples = static_cast<long>(total);
    return est;
}

double renyi2_ci(const TorusLattice& lat, double p) {
    const double t2 = (1.0 - 2.0 * p) * (1.0 - 2.0 * p);
    const SectorPfaffians pf =
        sector_pfaffians(lat, t2, GaugeConfig::uniform(lat));
    if (pf[Sector::PP].sign == 0) return 0.0;  // exact zero mode in PP
    const SignedLog total = pf.total();
    if (total.sign == 0)
        throw ComputationError("sum of sector Pfaffians is degenerate");
    const double v = 1.0 - 2.0 * signed_ratio(pf[Sector::PP], total);
    if (v <= 0.0)
        throw ComputationError("Renyi-2 ratio left (0, 2]");
    return 2.0 * std::log2(v);
}

CiEstimate vortex_fugacity(const TorusLattice& lat, double p, long n_samples,
                           std::uint64_t seed, int workers,
                           FugacityHopping hopping) {
    const double t1 = 1.0 - 2.0 * p;
    const double t = hopping == FugacityHopping::t1 ? t1 : t1 * t1;
    return monte_carlo(
        lat, p, n_samples, seed, workers,
        [&, t](const GaugeConfig& eta, double& value, std::uint8_t& flag) {
            const SectorPfaffians pf = sector_pfaffians(lat, t, eta);
            const std::array<SignedLog, 3> twisted{
                pf[Sector::PA], pf[Sector::AP], pf[Sector::AA]};
            const SignedLog denom = signed_log_sum(twisted);
            if (denom.sign == 0) {
                flag = 2;  // degenerate denominator: flagged and excluded
                return;
            }
            value = pf[Sector::PP].sign == 0
                        ? 0.0
                        : signed_ratio(pf[Sector::PP], denom);
        });
}

CiEstimate mstop(const TorusLattice& lat, double p, long n_samples,
                 std::uint64_t seed, int workers) {
    const double t1 = 1.0 - 2.0 * p;
    return monte_carlo(
        lat, p, n_samples, seed, workers,
        [&, t1](const GaugeConfig& eta, double& value, std::uint8_t& flag) {
            const SectorPfaffians pf = sector_pfaffians(lat, t1, eta);
            int s = 1;
            for (Sector a : kSectors) {
                if (pf[a].sign == 0) {
                    flag = 2;  // sign undefined: flagged and excluded
                    return;
                }
                s *= pf[a].sign;
            }
            value = s;
        });
}

Quantity quantity_from_name(const std::string& name) {
    if (name == "ci") return Quantity::ci;
    if (name == "renyi2") return Quantity::renyi2;
    if (name == "fugacity") return Quantity::fugacity;
    if (name == "mstop") return Quantity::mstop;
    throw std::invalid_argument("unknown quantity: " + name);
}

const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::ci: return "ci";
        case Quantity::renyi2: return "renyi2";
        case Quantity::fugacity: return "fugacity";
        case Quantity::mstop: return "mstop";
    }
    return "?";
}

namespace {

/// Weighted least squares of diff = c0 + c1*p over the probes; returns the
/// zero crossing and its propagated standard error, or false when the fit is
/// unusable (fewer than two informative probes, or zero slope).
bool fit_crossing(const std::vector<ThresholdProbe>& probes, double& p_c,
                  double& err) {
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    int used = 0;
    for (const auto& pr : probes) {
        const double sigma = pr.diff_err > 0 ? pr.diff_err : 1e-12;
        const double w = 1.0 / (sigma * sigma);
        sw += w;
        swx += w * pr.p;
        swy += w * pr.diff;
        swxx += w * pr.p * pr.p;
        swxy += w * pr.p * pr.diff;
        ++used;
    }
    if (used < 2) return false;
    const double det = sw * swxx - swx * swx;
    if (det <= 0) return false;
    const double c0 = (swxx * swy - swx * swxy) / det;
    const double c1 = (sw * swxy - swx * swy) / det;
    if (c1 == 0.0) return false;
    // covariance of (c0, c1)
    const double v00 = swxx / det, v11 = sw / det, v01 = -swx / det;
    p_c = -c0 / c1;
    const double d0 = -1.0 / c1, d1 = c0 / (c1 * c1);
    const double var = d0 * d0 * v00 + 2 * d0 * d1 * v01 + d1 * d1 * v11;
    err = var > 0 ? std::sqrt(var) : 0.0;
    return true;
}

}  // namespace

ThresholdEstimate find_threshold(const TorusLattice& lat_a,
                                 const TorusLattice& lat_b, Quantity quantity,
                                 double p_lo, double p_hi, long n_samples,
                                 std::uint64_t seed, double tol,
                                 int workers) {
    if (!(p_lo < p_hi))
        throw std::invalid_argument("threshold search needs p_lo < p_hi");
    if (!(tol > 0)) throw std::invalid_argument("tol must be positive");

    ThresholdEstimate out;

    if (quantity == Quantity::renyi2) {
        // deterministic single-curve bisection
        auto f = [&](double p) { return renyi2_ci(lat_a, p); };
        double lo = p_lo, hi = p_hi;
        double flo = f(lo), fhi = f(hi);
        out.probes.push_back({lo, flo, 0.0});
        out.probes.push_back({hi, fhi, 0.0});
        if (flo == 0.0) { out.p_c = lo; return out; }
        if (fhi == 0.0) { out.p_c = hi; return out; }
        if ((flo > 0) == (fhi > 0))
            throw ComputationError("renyi2 curve does not change sign on range");
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            out.probes.push_back({mid, fm, 0.0});
            if (fm == 0.0) { out.p_c = mid; out.error = 0.0; return out; }
            if ((fm > 0) == (flo > 0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        out.p_c = 0.5 * (lo + hi);
        out.error = 0.5 * (hi - lo);
        return out;
    }

    if (lat_a.lx() == lat_b.lx() && lat_a.ly() == lat_b.ly())
        throw std::invalid_argument(
            "threshold crossing needs two distinct lattice sizes");

    auto estimate = [&](const TorusLattice& lat, double p,
                        std::uint64_t probe_seed) -> CiEstimate {
        switch (quantity) {
            case Quantity::ci:
                return coherent_information(lat, p, n_samples, probe_seed,
                                            workers);
            case Quantity::fugacity:
                return vortex_fugacity(lat, p, n_samples, probe_seed, workers);
            case Quantity::mstop:
                return mstop(lat, p, n_samples, probe_seed, workers);
            default:
                throw std::invalid_argument("unsupported quantity");
        }
    };

    int probe_count = 0;
    auto diff_at = [&](double p) -> ThresholdProbe {
        // fresh, deterministic seeds per probe point
        const std::uint64_t sa = mix64(seed + 2 * probe_count + 1);
        const std::uint64_t sb = mix64(seed + 2 * probe_count + 2);
        ++probe_count;
        const CiEstimate ea = estimate(lat_a, p, sa);
        const CiEstimate eb = estimate(lat_b, p, sb);
        const double err =
            std::sqrt(ea.std_err * ea.std_err + eb.std_err * eb.std_err);
        return {p, ea.mean - eb.mean, err};
    };

    ThresholdProbe lo = diff_at(p_lo), hi = diff_at(p_hi);
    out.probes.push_back(lo);
    out.probes.push_back(hi);
    if ((lo.diff > 0) == (hi.diff > 0)) {
        const bool resolvable = std::abs(lo.diff) > 2 * lo.diff_err &&
                                std::abs(hi.diff) > 2 * hi.diff_err;
        if (resolvable)
            throw ComputationError(
                "difference curve does not change sign on [p_lo, p_hi]");
        out.statistically_limited = true;  // endpoints consistent with zero
    }

    while (!out.statistically_limited && hi.p - lo.p > tol) {
        ThresholdProbe mid = diff_at(0.5 * (lo.p + hi.p));
        out.probes.push_back(mid);
        if (std::abs(mid.diff) < 2 * mid.diff_err) {
            out.statistically_limited = true;  // noise dominates; stop refining
            break;
        }
        if ((mid.diff > 0) == (lo.diff > 0))
            lo = mid;
        else
            hi = mid;
    }

    double fit_p = 0, fit_err = 0;
    const bool fitted = fit_crossing(out.probes, fit_p, fit_err);
    const double mid = 0.5 * (lo.p + hi.p);
    const double half = 0.5 * (hi.p - lo.p);
    if (fitted && fit_p > p_lo - half && fit_p < p_hi + half) {
        out.p_c = fit_p;
        out.error = std::max(fit_err, out.statistically_limited ? half : 0.0);
    } else {
        out.p_c = mid;
        out.error = std::max(half, fit_err);
    }
    return out;
}

}  // namespace toricci
