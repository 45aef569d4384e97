#include "toricci/pfaffian.hpp"

#include <algorithm>
#include <stdexcept>

namespace toricci {

SkewMatrix::SkewMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

void SkewMatrix::add(std::size_t i, std::size_t j, double v) {
    if (i == j) {
        if (v != 0.0)
            throw std::invalid_argument("diagonal of a skew matrix is zero");
        return;
    }
    a_[i * n_ + j] += v;
    a_[j * n_ + i] -= v;
}

void SkewMatrix::set(std::size_t i, std::size_t j, double v) {
    if (i == j) {
        if (v != 0.0)
            throw std::invalid_argument("diagonal of a skew matrix is zero");
        return;
    }
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = -v;
}

SignedLog SignedLog::from_value(double v) {
    SignedLog s;
    if (v > 0.0) {
        s.sign = 1;
        s.log_abs = std::log(v);
    } else if (v < 0.0) {
        s.sign = -1;
        s.log_abs = std::log(-v);
    }
    return s;
}

SignedLog operator*(SignedLog a, SignedLog b) {
    SignedLog out;
    if (a.sign == 0 || b.sign == 0) return out;
    out.sign = a.sign * b.sign;
    out.log_abs = a.log_abs + b.log_abs;
    return out;
}

SignedLog signed_log_sum(std::span<const SignedLog> terms) {
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& t : terms)
        if (t.sign != 0) top = std::max(top, t.log_abs);
    SignedLog out;
    if (!std::isfinite(top)) return out;  // all zero
    double acc = 0.0;
    for (const auto& t : terms)
        if (t.sign != 0) acc += t.sign * std::exp(t.log_abs - top);
    if (std::abs(acc) < 1e-14) return out;  // cancellation below resolution
    out.sign = acc > 0 ? 1 : -1;
    out.log_abs = top + std::log(std::abs(acc));
    return out;
}

double signed_ratio(SignedLog num, SignedLog den) {
    if (den.sign == 0)
        throw std::domain_error("signed_ratio: zero denominator");
    if (num.sign == 0) return 0.0;
    return num.sign * den.sign * std::exp(num.log_abs - den.log_abs);
}

SignedLog pfaffian_signed_log(const SkewMatrix& m) {
    const std::size_t n = m.dim();
    if (n % 2 != 0)
        throw std::invalid_argument("pfaffian requires even dimension");
    SignedLog out;
    if (n == 0) {
        out.sign = 1;
        out.log_abs = 0.0;
        return out;
    }
    std::vector<double> a = m.copy_data();
    auto at = [&](std::size_t i, std::size_t j) -> double& {
        return a[i * n + j];
    };

    double scale = 0.0;  // largest magnitude seen, for the zero threshold
    for (double v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return out;  // zero matrix (n >= 2)

    int sign = 1;
    double log_abs = 0.0;
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        // partial pivot: largest |A(i,k)| over i > k
        std::size_t kp = k + 1;
        double best = std::abs(at(k + 1, k));
        for (std::size_t i = k + 2; i < n; ++i) {
            const double v = std::abs(at(i, k));
            if (v > best) {
                best = v;
                kp = i;
            }
        }
        if (best <= 1e-12 * scale) return out;  // column ~0 => Pf ~ 0, sign 0
        if (kp != k + 1) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(at(k + 1, j), at(kp, j));
            for (std::size_t i = 0; i < n; ++i)
                std::swap(at(i, k + 1), at(i, kp));
            sign = -sign;
        }
        const double pivot = at(k, k + 1);
        sign *= pivot > 0 ? 1 : -1;
        log_abs += std::log(std::abs(pivot));
        if (k + 2 < n) {
            // congruence update eliminating row/col k beyond k+1:
            // A[i][j] += A(k+1,i)*tau_j - tau_i*A(k+1,j), tau = A(k, .)/pivot
            const std::size_t r = n - (k + 2);
            const double* rk = &at(k, k + 2);
            const double* rk1 = &at(k + 1, k + 2);
            std::vector<double> tau(r);
            for (std::size_t t = 0; t < r; ++t) tau[t] = rk[t] / pivot;
            for (std::size_t i = 0; i < r; ++i) {
                double* row = &at(k + 2 + i, k + 2);
                const double ci = rk1[i];
                const double ti = tau[i];
                for (std::size_t j = 0; j < r; ++j)
                    row[j] += ci * tau[j] - ti * rk1[j];
                scale = std::max(scale, std::abs(ci));
            }
        }
    }
    out.sign = sign;
    out.log_abs = log_abs;
    return out;
}

namespace {

double pf_expand(const SkewMatrix& m, std::vector<std::size_t>& idx) {
    if (idx.empty()) return 1.0;
    const std::size_t i = idx[0];
    double total = 0.0;
    int sgn = 1;
    for (std::size_t pos = 1; pos < idx.size(); ++pos) {
        const std::size_t j = idx[pos];
        std::vector<std::size_t> rest;
        rest.reserve(idx.size() - 2);
        for (std::size_t q = 1; q < idx.size(); ++q)
            if (q != pos) rest.push_back(idx[q]);
        total += sgn * m(i, j) * pf_expand(m, rest);
        sgn = -sgn;
    }
    return total;
}

}  // namespace

double pfaffian_brute(const SkewMatrix& m) {
    const std::size_t n = m.dim();
    if (n > 8) throw std::invalid_argument("pfaffian_brute supports n <= 8");
    if (n % 2 != 0)
        throw std::invalid_argument("pfaffian requires even dimension");
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return pf_expand(m, idx);
}

}  // namespace toricci
