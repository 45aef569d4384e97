#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace toricci {

/// Pauli operator in binary symplectic form (phases dropped; they cancel in
/// every probability computed here). Bit q of x/z set = X/Z acting on qubit q.
struct Pauli {
    std::uint32_t x = 0;
    std::uint32_t z = 0;

    friend bool operator==(const Pauli&, const Pauli&) = default;
};

bool commutes(const Pauli& a, const Pauli& b);
Pauli operator*(const Pauli& a, const Pauli& b);  // product up to phase
int weight(const Pauli& p, int n_qubits);
std::string pauli_string(const Pauli& p, int n_qubits);

struct StabilizerCode {
    int n_phys = 0;
    int k_logical = 0;
    std::vector<Pauli> stabilizers;               // independent generators
    std::vector<std::array<Pauli, 2>> logicals;   // (X_i, Z_i) pairs

    /// Checks mutual commutation, logical (anti)commutation pattern, and
    /// rank consistency n_phys - #generators = k_logical. Throws on failure.
    void validate() const;
};

/// Toric code on an lx-by-ly torus: one qubit per lattice bond, Z stars and
/// X plaquettes with one dependent generator of each type removed, two
/// logical qubits. Requires lx, ly >= 2.
StabilizerCode toric_code(int lx, int ly);

/// Trivial [[1,1,1]] code (distance-1 member of both code families below).
StabilizerCode single_qubit_code();

/// Rotated surface code, d in {1, 3} (explicit fixture, not a general builder).
StabilizerCode rotated_surface_code(int d);

/// Triangular color code on the square-octagon lattice, d in {1, 3, 5}
/// (explicit fixture lists, verified distance).
StabilizerCode color_code_488(int d);

enum class ChannelKind { BitFlip, Phase, BitFlipPhase, Depolarizing };

struct PauliChannel {
    ChannelKind kind = ChannelKind::BitFlip;
    double p = 0.0;  // per-qubit rate
};

ChannelKind channel_from_name(const std::string& name);
const char* channel_name(ChannelKind k);

/// Exact coherent information I_c = k - H(logical class | syndrome) in bits,
/// by enumeration of all error patterns with their channel weights.
/// Feasibility: bitflip/phase <= 24 qubits, joint/depolarizing <= 12.
double exact_ci(const StabilizerCode& code, const PauliChannel& channel);

/// Renyi-n version from the same (syndrome, class) distribution:
///   I_c^(n) = k + 1/(n-1) log2[ sum q(s,l)^n / sum q(s)^n ],  n in {2, 3}.
double renyi_ci(const StabilizerCode& code, const PauliChannel& channel, int n);

struct KlResult {
    bool ok = true;
    Pauli witness_a, witness_b;  // violating pair when !ok
};

/// Knill-Laflamme check: every product E = K1 K2 of listed errors must either
/// anticommute with some stabilizer or act as a scalar on the code space.
KlResult kl_check(const StabilizerCode& code, std::span<const Pauli> errors);

/// Plain-text fixture format: "n <int>", "k <int>", then one line per
/// generator "S <xbits>|<zbits>" and per logical "LX ..." / "LZ ..." (pairs in
/// order), bits given qubit 0 first. '#' starts a comment.
StabilizerCode read_code_file(std::istream& in);
void write_code_file(std::ostream& out, const StabilizerCode& code);
StabilizerCode load_code_file(const std::string& path);

}  // namespace toricci
