#include "toricci/stabilizer.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "toricci/lattice.hpp"

namespace toricci {

namespace {

inline int parity(std::uint32_t v) { return std::popcount(v) & 1; }

std::uint64_t symplectic_row(const Pauli& p, int n) {
    return std::uint64_t(p.x) | (std::uint64_t(p.z) << n);
}

int gf2_rank(std::vector<std::uint64_t> rows) {
    int rank = 0;
    for (int bit = 0; bit < 64; ++bit) {
        std::size_t piv = rows.size();
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (rows[r] >> bit & 1) {
                piv = r;
                break;
            }
        if (piv == rows.size()) continue;
        const std::uint64_t p = rows[piv];
        rows.erase(rows.begin() + piv);
        for (auto& r : rows)
            if (r >> bit & 1) r ^= p;
        ++rank;
    }
    return rank;
}

Pauli from_support(std::span<const int> qubits, bool x_type) {
    Pauli p;
    for (int q : qubits) {
        if (x_type)
            p.x |= std::uint32_t(1) << q;
        else
            p.z |= std::uint32_t(1) << q;
    }
    return p;
}

}  // namespace

bool commutes(const Pauli& a, const Pauli& b) {
    return ((parity(a.x & b.z) + parity(a.z & b.x)) & 1) == 0;
}

Pauli operator*(const Pauli& a, const Pauli& b) {
    return Pauli{a.x ^ b.x, a.z ^ b.z};
}

int weight(const Pauli& p, int n_qubits) {
    const std::uint32_t mask =
        n_qubits >= 32 ? ~std::uint32_t(0)
                       : ((std::uint32_t(1) << n_qubits) - 1);
    return std::popcount((p.x | p.z) & mask);
}

std::string pauli_string(const Pauli& p, int n_qubits) {
    std::string s(n_qubits, 'I');
    for (int q = 0; q < n_qubits; ++q) {
        const bool x = p.x >> q & 1, z = p.z >> q & 1;
        s[q] = x && z ? 'Y' : x ? 'X' : z ? 'Z' : 'I';
    }
    return s;
}

void StabilizerCode::validate() const {
    if (n_phys < 1 || n_phys > 32)
        throw std::invalid_argument("physical qubit count must be in [1, 32]");
    if (static_cast<int>(stabilizers.size()) != n_phys - k_logical)
        throw std::invalid_argument(
            "generator count must equal n_phys - k_logical");
    if (static_cast<int>(logicals.size()) != k_logical)
        throw std::invalid_argument("logical pair count must equal k_logical");
    for (std::size_t i = 0; i < stabilizers.size(); ++i)
        for (std::size_t j = i + 1; j < stabilizers.size(); ++j)
            if (!commutes(stabilizers[i], stabilizers[j]))
                throw std::invalid_argument("stabilizer generators must commute");
    for (const auto& pair : logicals)
        for (const auto& g : stabilizers)
            if (!commutes(pair[0], g) || !commutes(pair[1], g))
                throw std::invalid_argument(
                    "logical operators must commute with the stabilizers");
    for (std::size_t i = 0; i < logicals.size(); ++i)
        for (std::size_t j = 0; j < logicals.size(); ++j) {
            const bool anti = !commutes(logicals[i][0], logicals[j][1]);
            if (anti != (i == j))
                throw std::invalid_argument(
                    "logical X_i must anticommute exactly with Z_i");
            if (i < j && (!commutes(logicals[i][0], logicals[j][0]) ||
                          !commutes(logicals[i][1], logicals[j][1])))
                throw std::invalid_argument("logical operators must commute");
        }
    std::vector<std::uint64_t> rows;
    rows.reserve(stabilizers.size());
    for (const auto& g : stabilizers) rows.push_back(symplectic_row(g, n_phys));
    if (gf2_rank(std::move(rows)) != n_phys - k_logical)
        throw std::invalid_argument("stabilizer generators must be independent");
}

StabilizerCode toric_code(int lx, int ly) {
    if (lx < 2 || ly < 2)
        throw std::invalid_argument(
            "toric code needs lx, ly >= 2 (1xL constructions degenerate)");
    const TorusLattice lat(lx, ly);
    if (lat.n_bonds() > 32)
        throw std::invalid_argument("toric code limited to 32 qubits here");
    StabilizerCode code;
    code.n_phys = lat.n_bonds();  // one qubit per bond
    code.k_logical = 2;
    // Z stars and X plaquettes; one of each is dependent and dropped.
    for (int s = 1; s < lat.n_sites(); ++s) {
        const int x = lat.site_x(s), y = lat.site_y(s);
        Pauli star;
        star.z |= std::uint32_t(1) << lat.bond(s, 0);
        star.z |= std::uint32_t(1) << lat.bond(s, 1);
        star.z |= std::uint32_t(1) << lat.bond(lat.site(x - 1, y), 0);
        star.z |= std::uint32_t(1) << lat.bond(lat.site(x, y - 1), 1);
        code.stabilizers.push_back(star);
    }
    for (int p = 1; p < lat.n_sites(); ++p) {
        Pauli plaq;
        for (int b : lat.plaquettes()[p]) plaq.x |= std::uint32_t(1) << b;
        code.stabilizers.push_back(plaq);
    }
    Pauli x1, z1, x2, z2;
    for (int x = 0; x < lx; ++x) {
        x1.x |= std::uint32_t(1) << lat.bond(lat.site(x, 0), 0);
        z2.z |= std::uint32_t(1) << lat.bond(lat.site(x, 0), 1);
    }
    for (int y = 0; y < ly; ++y) {
        z1.z |= std::uint32_t(1) << lat.bond(lat.site(0, y), 0);
        x2.x |= std::uint32_t(1) << lat.bond(lat.site(0, y), 1);
    }
    code.logicals.push_back({x1, z1});
    code.logicals.push_back({x2, z2});
    code.validate();
    return code;
}

StabilizerCode single_qubit_code() {
    StabilizerCode code;
    code.n_phys = 1;
    code.k_logical = 1;
    code.logicals.push_back({Pauli{1, 0}, Pauli{0, 1}});
    code.validate();
    return code;
}

StabilizerCode rotated_surface_code(int d) {
    if (d == 1) return single_qubit_code();
    if (d != 3)
        throw std::invalid_argument(
            "rotated surface code fixtures cover d in {1, 3}");
    // 3x3 data grid, qubits row-major:  0 1 2 / 3 4 5 / 6 7 8
    StabilizerCode code;
    code.n_phys = 9;
    code.k_logical = 1;
    const std::vector<std::vector<int>> z_faces{
        {0, 1}, {1, 2, 4, 5}, {3, 4, 6, 7}, {7, 8}};
    const std::vector<std::vector<int>> x_faces{
        {0, 1, 3, 4}, {2, 5}, {3, 6}, {4, 5, 7, 8}};
    for (const auto& f : z_faces)
        code.stabilizers.push_back(from_support(f, false));
    for (const auto& f : x_faces)
        code.stabilizers.push_back(from_support(f, true));
    const std::vector<int> xl{0, 1, 2}, zl{0, 3, 6};
    code.logicals.push_back({from_support(xl, true), from_support(zl, false)});
    code.validate();
    return code;
}

StabilizerCode color_code_488(int d) {
    if (d == 1) return single_qubit_code();
    if (d != 3 && d != 5)
        throw std::invalid_argument(
            "square-octagon color code fixtures cover d in {1, 3, 5}");
    StabilizerCode code;
    code.k_logical = 1;
    std::vector<std::vector<int>> faces;
    std::vector<int> logical;
    if (d == 3) {
        code.n_phys = 7;
        faces = {{0, 1, 2, 3}, {1, 3, 4, 5}, {2, 3, 5, 6}};
        logical = {0, 1, 4};
    } else {
        // 17 qubits; seven weight-4 faces and one weight-8 octagon, all
        // remnants of squares/octagons of the truncated-square lattice.
        code.n_phys = 17;
        faces = {{0, 1, 4, 5},   {2, 3, 4, 5},        {0, 3, 4, 8},
                 {9, 10, 11, 12}, {6, 7, 14, 15},      {9, 10, 13, 16},
                 {13, 14, 15, 16}, {2, 3, 6, 8, 10, 11, 15, 16}};
        logical = {0, 1, 6, 7, 8};
    }
    for (const auto& f : faces) {  // self-dual CSS: each face as X and as Z
        code.stabilizers.push_back(from_support(f, true));
        code.stabilizers.push_back(from_support(f, false));
    }
    code.logicals.push_back(
        {from_support(logical, true), from_support(logical, false)});
    code.validate();
    return code;
}

ChannelKind channel_from_name(const std::string& name) {
    if (name == "bitflip") return ChannelKind::BitFlip;
    if (name == "phase") return ChannelKind::Phase;
    if (name == "bitflip_phase") return ChannelKind::BitFlipPhase;
    if (name == "depolarizing") return ChannelKind::Depolarizing;
    throw std::invalid_argument("unknown channel: " + name);
}

const char* channel_name(ChannelKind k) {
    switch (k) {
        case ChannelKind::BitFlip: return "bitflip";
        case ChannelKind::Phase: return "phase";
        case ChannelKind::BitFlipPhase: return "bitflip_phase";
        case ChannelKind::Depolarizing: return "depolarizing";
    }
    return "?";
}

namespace {

/// Per-qubit Kraus alternatives of the channel, as Paulis with probabilities.
struct ChannelTable {
    std::vector<Pauli> ops;
    std::vector<double> probs;
};

ChannelTable channel_table(const PauliChannel& ch) {
    const double p = ch.p;
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("channel rate must lie in [0, 1]");
    ChannelTable t;
    switch (ch.kind) {
        case ChannelKind::BitFlip:
            t.ops = {Pauli{0, 0}, Pauli{1, 0}};
            t.probs = {1 - p, p};
            break;
        case ChannelKind::Phase:
            t.ops = {Pauli{0, 0}, Pauli{0, 1}};
            t.probs = {1 - p, p};
            break;
        case ChannelKind::BitFlipPhase:
            // independent X and Z at the same rate; Y = XZ up to phase
            t.ops = {Pauli{0, 0}, Pauli{1, 0}, Pauli{0, 1}, Pauli{1, 1}};
            t.probs = {(1 - p) * (1 - p), p * (1 - p), (1 - p) * p, p * p};
            break;
        case ChannelKind::Depolarizing:
            t.ops = {Pauli{0, 0}, Pauli{1, 0}, Pauli{0, 1}, Pauli{1, 1}};
            t.probs = {1 - p, p / 3, p / 3, p / 3};
            break;
    }
    return t;
}

void check_channel_cap(const StabilizerCode& code, const PauliChannel& ch) {
    const bool joint = ch.kind == ChannelKind::BitFlipPhase ||
                       ch.kind == ChannelKind::Depolarizing;
    if (joint && code.n_phys > 12)
        throw std::invalid_argument(
            "joint-channel enumeration limited to 12 qubits");
    if (!joint && code.n_phys > 24)
        throw std::invalid_argument(
            "single-channel enumeration limited to 24 qubits");
}

/// Joint distribution over (syndrome, logical class), the class given by the
/// anticommutation bits with all 2k logical operators.
class ClassDistribution {
  public:
    ClassDistribution(const StabilizerCode& code, const PauliChannel& ch)
        : code_(code) {
        check_channel_cap(code, ch);
        ops_.reserve(code.stabilizers.size() + 2 * code.logicals.size());
        for (const auto& g : code.stabilizers) ops_.push_back(g);
        for (const auto& pair : code.logicals) {
            ops_.push_back(pair[0]);
            ops_.push_back(pair[1]);
        }
        bits_ = static_cast<int>(ops_.size());
        class_bits_ = 2 * code.k_logical;
        dist_.assign(std::size_t(1) << bits_, 0.0);
        // per-qubit, per-Kraus anticommutation signatures
        const ChannelTable table = channel_table(ch);
        n_alt_ = static_cast<int>(table.ops.size());
        sig_.assign(std::size_t(code.n_phys) * n_alt_, 0);
        prob_ = table.probs;
        for (int q = 0; q < code.n_phys; ++q)
            for (int a = 0; a < n_alt_; ++a) {
                const Pauli e{table.ops[a].x << q, table.ops[a].z << q};
                std::uint32_t sig = 0;
                for (int b = 0; b < bits_; ++b)
                    if (!commutes(e, ops_[b])) sig |= std::uint32_t(1) << b;
                sig_[std::size_t(q) * n_alt_ + a] = sig;
            }
        enumerate(0, 0, 1.0);
    }

    double exact_ci() const {
        const auto syndromes = syndrome_marginal();
        double h_cond = 0.0;
        for (std::size_t key = 0; key < dist_.size(); ++key) {
            const double q = dist_[key];
            if (q <= 0.0) continue;
            h_cond -= q * std::log2(q / syndromes[key >> class_bits_]);
        }
        return code_.k_logical - h_cond;
    }

    double renyi_ci(int n) const {
        const auto syndromes = syndrome_marginal();
        double joint = 0.0, marg = 0.0;
        for (double q : dist_) joint += std::pow(q, n);
        for (double q : syndromes) marg += std::pow(q, n);
        return code_.k_logical +
               (std::log2(joint) - std::log2(marg)) / (n - 1);
    }

  private:
    std::vector<double> syndrome_marginal() const {
        std::vector<double> out(std::size_t(1) << (bits_ - class_bits_), 0.0);
        for (std::size_t key = 0; key < dist_.size(); ++key)
            out[key >> class_bits_] += dist_[key];
        return out;
    }

    void enumerate(int q, std::uint32_t sig, double w) {
        if (q == code_.n_phys) {
            // ops_ = [generators..., logicals...]: low bits of sig are the
            // syndrome, high bits the class; store as (syndrome << k2) | class
            const int n_gen = bits_ - class_bits_;
            const std::uint32_t syndrome = sig & ((std::uint32_t(1) << n_gen) - 1);
            const std::uint32_t cls = sig >> n_gen;
            dist_[(std::size_t(syndrome) << class_bits_) | cls] += w;
            return;
        }
        for (int a = 0; a < n_alt_; ++a)
            enumerate(q + 1, sig ^ sig_[std::size_t(q) * n_alt_ + a],
                      w * prob_[a]);
    }

    const StabilizerCode& code_;
    std::vector<Pauli> ops_;
    std::vector<std::uint32_t> sig_;
    std::vector<double> prob_;
    std::vector<double> dist_;
    int bits_ = 0, class_bits_ = 0, n_alt_ = 0;
};

}  // namespace

double exact_ci(const StabilizerCode& code, const PauliChannel& channel) {
    code.validate();
    return ClassDistribution(code, channel).exact_ci();
}

double renyi_ci(const StabilizerCode& code, const PauliChannel& channel,
                int n) {
    if (n != 2 && n != 3)
        throw std::invalid_argument("Renyi index must be 2 or 3");
    code.validate();
    return ClassDistribution(code, channel).renyi_ci(n);
}

KlResult kl_check(const StabilizerCode& code, std::span<const Pauli> errors) {
    for (std::size_t i = 0; i < errors.size(); ++i)
        for (std::size_t j = 0; j < errors.size(); ++j) {
            const Pauli e = errors[i] * errors[j];
            bool detected = false;
            for (const auto& g : code.stabilizers)
                if (!commutes(e, g)) {
                    detected = true;
                    break;
                }
            if (detected) continue;
            bool logical_action = false;
            for (const auto& pair : code.logicals)
                if (!commutes(e, pair[0]) || !commutes(e, pair[1])) {
                    logical_action = true;
                    break;
                }
            if (logical_action) return {false, errors[i], errors[j]};
        }
    return {};
}

namespace {

Pauli parse_halves(const std::string& token, int n) {
    const auto bar = token.find('|');
    if (bar == std::string::npos ||
        token.size() != static_cast<std::size_t>(2 * n + 1))
        throw std::invalid_argument("malformed generator line: " + token);
    Pauli p;
    for (int q = 0; q < n; ++q) {
        const char cx = token[q], cz = token[bar + 1 + q];
        if ((cx != '0' && cx != '1') || (cz != '0' && cz != '1'))
            throw std::invalid_argument("generator bits must be 0/1");
        if (cx == '1') p.x |= std::uint32_t(1) << q;
        if (cz == '1') p.z |= std::uint32_t(1) << q;
    }
    return p;
}

std::string format_halves(const Pauli& p, int n) {
    std::string s;
    for (int q = 0; q < n; ++q) s += (p.x >> q & 1) ? '1' : '0';
    s += '|';
    for (int q = 0; q < n; ++q) s += (p.z >> q & 1) ? '1' : '0';
    return s;
}

}  // namespace

StabilizerCode read_code_file(std::istream& in) {
    StabilizerCode code;
    std::string line;
    std::vector<Pauli> lxs, lzs;
    bool have_n = false, have_k = false;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag)) continue;
        if (tag == "n") {
            ss >> code.n_phys;
            have_n = true;
        } else if (tag == "k") {
            ss >> code.k_logical;
            have_k = true;
        } else if (tag == "S" || tag == "LX" || tag == "LZ") {
            if (!have_n)
                throw std::invalid_argument("code file must declare n first");
            std::string bits;
            if (!(ss >> bits))
                throw std::invalid_argument("missing bits after " + tag);
            const Pauli p = parse_halves(bits, code.n_phys);
            if (tag == "S")
                code.stabilizers.push_back(p);
            else if (tag == "LX")
                lxs.push_back(p);
            else
                lzs.push_back(p);
        } else {
            throw std::invalid_argument("unknown tag in code file: " + tag);
        }
    }
    if (!have_n || !have_k)
        throw std::invalid_argument("code file must declare n and k");
    if (lxs.size() != lzs.size())
        throw std::invalid_argument("LX/LZ lines must come in pairs");
    for (std::size_t i = 0; i < lxs.size(); ++i)
        code.logicals.push_back({lxs[i], lzs[i]});
    code.validate();
    return code;
}

void write_code_file(std::ostream& out, const StabilizerCode& code) {
    out << "# stabilizer code fixture: symplectic rows, X-half | Z-half\n";
    out << "n " << code.n_phys << "\n";
    out << "k " << code.k_logical << "\n";
    for (const auto& g : code.stabilizers)
        out << "S " << format_halves(g, code.n_phys) << "\n";
    for (const auto& pair : code.logicals) {
        out << "LX " << format_halves(pair[0], code.n_phys) << "\n";
        out << "LZ " << format_halves(pair[1], code.n_phys) << "\n";
    }
}

StabilizerCode load_code_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open code file: " + path);
    return read_code_file(in);
}

}  // namespace toricci
