#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace toricci {

struct SweepRow {
    std::string quantity;
    int lx = 0, ly = 0;
    double p = 0.0;
    double mean = 0.0;
    double std_err = 0.0;
    long n_samples = 0;
    long n_clamped = 0;
    std::uint64_t seed = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    void sort_rows();  // by (lx, ly, p)
};

/// Columns exactly: quantity,lx,ly,p,mean,std_err,n_samples,n_clamped,seed.
/// Doubles printed with %.17g; identical data yields byte-identical output.
void write_csv(std::ostream& out, const SweepResult& result);

/// Rows as in the CSV plus a metadata header (version, config echo, wall
/// time). The rows are deterministic; wall_time_s is not.
void write_json(std::ostream& out, const SweepResult& result,
                const std::string& config_echo, double wall_time_s);

/// "min:max:steps" (inclusive endpoints, steps = point count) or a
/// comma-separated explicit list. Throws std::invalid_argument on bad syntax.
std::vector<double> parse_grid(const std::string& spec);

/// "4,8" -> {4, 8}; values must be positive integers.
std::vector<int> parse_int_list(const std::string& spec);

}  // namespace toricci
