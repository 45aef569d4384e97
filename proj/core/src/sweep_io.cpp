#include "toricci/sweep_io.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "toricci/version.hpp"

namespace toricci {

namespace {

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void SweepResult::sort_rows() {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SweepRow& a, const SweepRow& b) {
                         if (a.lx != b.lx) return a.lx < b.lx;
                         if (a.ly != b.ly) return a.ly < b.ly;
                         return a.p < b.p;
                     });
}

void write_csv(std::ostream& out, const SweepResult& result) {
    out << "quantity,lx,ly,p,mean,std_err,n_samples,n_clamped,seed\n";
    for (const auto& r : result.rows) {
        out << r.quantity << ',' << r.lx << ',' << r.ly << ','
            << fmt_double(r.p) << ',' << fmt_double(r.mean) << ','
            << fmt_double(r.std_err) << ',' << r.n_samples << ','
            << r.n_clamped << ',' << r.seed << '\n';
    }
}

void write_json(std::ostream& out, const SweepResult& result,
                const std::string& config_echo, double wall_time_s) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["schema_version"] = kOutputSchemaVersion;
    j["config"] = config_echo;
    j["wall_time_s"] = wall_time_s;
    auto rows = nlohmann::json::array();
    for (const auto& r : result.rows) {
        rows.push_back({{"quantity", r.quantity},
                        {"lx", r.lx},
                        {"ly", r.ly},
                        {"p", r.p},
                        {"mean", r.mean},
                        {"std_err", r.std_err},
                        {"n_samples", r.n_samples},
                        {"n_clamped", r.n_clamped},
                        {"seed", r.seed}});
    }
    j["rows"] = std::move(rows);
    out << j.dump(2) << '\n';
}

std::vector<double> parse_grid(const std::string& spec) {
    if (spec.empty()) throw std::invalid_argument("empty grid spec");
    std::vector<double> out;
    if (spec.find(':') != std::string::npos) {
        double lo = 0, hi = 0;
        long steps = 0;
        char extra = 0;
        if (std::sscanf(spec.c_str(), "%lf:%lf:%ld%c", &lo, &hi, &steps,
                        &extra) != 3 ||
            steps < 1)
            throw std::invalid_argument("grid must be min:max:steps, steps >= 1");
        if (steps == 1) {
            out.push_back(lo);
            return out;
        }
        if (!(lo <= hi))
            throw std::invalid_argument("grid needs min <= max");
        for (long i = 0; i < steps; ++i)  // endpoints inclusive
            out.push_back(lo + (hi - lo) * double(i) / double(steps - 1));
        return out;
    }
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t next = spec.find(',', pos);
        if (next == std::string::npos) next = spec.size();
        const std::string item = spec.substr(pos, next - pos);
        char extra = 0;
        double v = 0;
        if (std::sscanf(item.c_str(), "%lf%c", &v, &extra) != 1)
            throw std::invalid_argument("bad grid value: " + item);
        out.push_back(v);
        pos = next + 1;
    }
    if (out.empty()) throw std::invalid_argument("empty grid spec");
    return out;
}

std::vector<int> parse_int_list(const std::string& spec) {
    std::vector<int> out;
    for (double v : parse_grid(spec)) {
        const int i = static_cast<int>(v);
        if (i < 1 || double(i) != v)
            throw std::invalid_argument("expected positive integers: " + spec);
        out.push_back(i);
    }
    return out;
}

}  // namespace toricci
