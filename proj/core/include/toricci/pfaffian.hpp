#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace toricci {

/// Dense real antisymmetric matrix. Antisymmetry is maintained exactly: all
/// writes go through add()/set(), which mirror the (j,i) entry with opposite
/// sign, and the diagonal is pinned to zero.
class SkewMatrix {
  public:
    explicit SkewMatrix(std::size_t n);

    std::size_t dim() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const {
        return a_[i * n_ + j];
    }
    void add(std::size_t i, std::size_t j, double v);  // A_ij += v, A_ji -= v
    void set(std::size_t i, std::size_t j, double v);

    std::span<const double> data() const { return a_; }   // row-major
    std::vector<double> copy_data() const { return a_; }

  private:
    std::size_t n_;
    std::vector<double> a_;
};

/// A signed number stored as (sign, ln|x|). sign 0 means "numerically zero";
/// log_abs is meaningless in that case.
struct SignedLog {
    int sign = 0;
    double log_abs = -std::numeric_limits<double>::infinity();

    static SignedLog from_value(double v);
    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

SignedLog operator*(SignedLog a, SignedLog b);

/// sum_i sign_i * exp(log_abs_i), evaluated stably (max-shifted). Returns
/// sign 0 when the terms cancel below 1e-14 of the largest magnitude.
SignedLog signed_log_sum(std::span<const SignedLog> terms);

/// num/den as a plain double (safe when the true ratio is O(1)).
double signed_ratio(SignedLog num, SignedLog den);  // throws if den.sign == 0

/// Pfaffian of a real antisymmetric matrix via Parlett-Reid skew
/// tridiagonalization with partial pivoting. Sign and log-magnitude are
/// accumulated separately; a pivot column whose largest entry falls below
/// 1e-12 of the largest magnitude seen so far yields sign 0.
SignedLog pfaffian_signed_log(const SkewMatrix& m);  // throws on odd dim

/// Exact sum over perfect matchings with parity signs. n <= 8 only.
double pfaffian_brute(const SkewMatrix& m);

}  // namespace toricci
