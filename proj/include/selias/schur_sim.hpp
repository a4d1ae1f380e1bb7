#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "selias/bits.hpp"
#include "selias/young.hpp"

namespace selias::sim {

using Amplitude = std::complex<double>;

/// One party's registers.
///
/// t: irrep label (second-row boxes). u: index into the SU(2) irrep, the
/// magnetic number being m = (n - 2t)/2 - u. l: bits emitted. out: output
/// tape. purity: clean zeros on the purity tape. rest: residual work qubits
/// for circuits that keep raw inputs around (the von Neumann lift); zero
/// elsewhere.
struct RegisterLabel {
  int t = 0;
  int u = 0;
  int l = 0;
  TapeBits out;
  int purity = 0;
  std::uint64_t rest = 0;

  friend auto operator<=>(const RegisterLabel&, const RegisterLabel&) = default;
};

struct JointLabel {
  RegisterLabel alice;
  RegisterLabel bob;

  friend auto operator<=>(const JointLabel&, const JointLabel&) = default;
};

/// Sparse pure state over (Alice, Bob) register labels, in label order.
struct JointState {
  std::map<JointLabel, Amplitude> amplitudes;

  void add(const JointLabel& label, Amplitude a) { amplitudes[label] += a; }
  [[nodiscard]] double norm_squared() const;
};

/// Input-basis index -> real superposition over register labels.
struct PartyIsometry {
  int n = 0;
  std::vector<std::vector<std::pair<RegisterLabel, double>>> columns;

  /// max |<c_i, c_j> - delta_ij| over all column pairs.
  [[nodiscard]] double max_orthonormality_deviation() const;
};

// ---------------------------------------------------------------------------
// Schur transform

struct CgBranch {
  int t = 0;
  int u = 0;
  Bit pbit = 0;  // 0: spin j + 1/2 (row one grows); 1: spin j - 1/2 (row two grows)
  double amplitude = 0.0;
};

/// Couples the spin (n - 2t)/2 irrep, state index u, with one more qubit
/// (|0> = spin up). Real Condon-Shortley coefficients; zero branches omitted.
/// DomainError for an invalid (n, t, u).
std::vector<CgBranch> cg_step(int n, int t, int u, Bit qubit);

struct SchurLabel {
  int t = 0;
  int u = 0;
  TapeBits path;  // pbit history, one per coupled qubit

  friend auto operator<=>(const SchurLabel&, const SchurLabel&) = default;
};

/// Sequential Clebsch-Gordan couplings of n qubits. Input basis index s has
/// qubit i (fed i-th) at bit i.
struct SchurIsometry {
  int n = 0;
  std::vector<std::vector<std::pair<SchurLabel, double>>> columns;
};

constexpr int kSchurCap = 10;

/// ResourceLimitError if n > cap.
SchurIsometry schur_transform(int n, int cap = kSchurCap);

/// The per-party streaming concentrator: each qubit is Clebsch-Gordan coupled,
/// then its pbit goes through the Young-lattice extractor step. Register
/// labels are (t, u, l, out, purity).
PartyIsometry streaming_concentrator(int n, int cap = kSchurCap);

// ---------------------------------------------------------------------------
// Joint simulations

constexpr int kKnownBasisCap = 16;
constexpr int kUniversalCap = 6;

/// sum_s sqrt(Pr(s)) |f(s)>|f(s)> where f is the classical streaming
/// extractor's transcript (t, l, out, purity); p0 = Pr(bit 0).
JointState simulate_known_basis(double p0, int n, int cap = kKnownBasisCap);

/// Two-qubit pure state, coefficient index 2a + b for |a>_A |b>_B.
struct TwoQubitState {
  std::array<Amplitude, 4> c{};

  /// sqrt(p0)|e0 e0> + sqrt(1 - p0)|e1 e1> with
  /// e0 = cos(theta/2)|0> + sin(theta/2)|1>, e1 = -sin(theta/2)|0> + cos(theta/2)|1>.
  static TwoQubitState schmidt(double p0, double theta);
};

using Qubit2x2 = std::array<std::array<Amplitude, 2>, 2>;

/// (W (x) W)|psi>: the same single-qubit unitary on Alice's and Bob's qubit.
TwoQubitState rotate_both(const TwoQubitState& psi, const Qubit2x2& w);

/// Both parties run streaming_concentrator on n copies of psi.
/// DomainError if psi is not normalized; ResourceLimitError above cap.
JointState simulate_universal(const TwoQubitState& psi, int n, int cap = kUniversalCap);

/// Coherent on-demand von Neumann extraction over `pairs` input pairs per
/// party. A halted branch has l = 1 and its EPR half on the output tape;
/// `rest` holds the 2 * pairs work qubits.
JointState simulate_von_neumann(double p0, int pairs);

/// Norm of the branch that has not yet halted.
double nonhalting_amplitude(const JointState& state);

// ---------------------------------------------------------------------------
// Analysis

using Matrix4 = std::array<std::array<Amplitude, 4>, 4>;

/// Reduced state of the k-th (0-based) output pair, conditioned on both tapes
/// holding at least k + 1 bits. Basis |a_A b_B>, index 2a + b.
struct PairAnalysis {
  double support = 0.0;  // probability that both tapes reach pair k
  Matrix4 rho{};
  double fidelity = 0.0;  // <Phi+|rho|Phi+>
  double alice_marginal_deviation = 0.0;  // max |rho_A - I/2| entrywise
  double bob_marginal_deviation = 0.0;
  /// Trace distance between rho(pair, memory) and rho(pair) (x) rho(memory),
  /// memory being both parties' (t, l). Negative when not computed.
  double memory_trace_distance = -1.0;
};

/// DomainError ("undefined pair") when the support is zero.
PairAnalysis analyze_pair(const JointState& state, int k, bool with_memory = true);

double pair_fidelity(const JointState& state, int k);

/// Longest output tape carried by any branch.
int max_tape_length(const JointState& state);

/// Alice's register distributions: irrep label t and emitted count l.
std::map<int, double> alice_t_distribution(const JointState& state);
std::map<int, double> alice_l_distribution(const JointState& state);

double shannon_entropy(const std::map<int, double>& dist);

// ---------------------------------------------------------------------------
// Variable-length code negative control

struct HuffmanResult {
  JointState state;
  Matrix4 rho{};
  double fidelity = 0.0;
};

/// Source (1/sqrt2, 1/sqrt4, 1/sqrt8, 1/sqrt8) on |aa>,|bb>,|cc>,|dd>, each
/// party mapping a->0, b->10, c->110, d->111 into a zero-padded 3-bit register.
/// Reports the first output pair.
HuffmanResult huffman_counterexample();

}  // namespace selias::sim
