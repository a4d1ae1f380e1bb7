#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include <Eigen/Dense>

#include "selias/errors.hpp"
#include "selias/schur_sim.hpp"

namespace selias::sim {

namespace {

// Everything a party holds except pair bit k and (optionally) its memory.
struct PartyEnv {
  int t = 0;
  int l = 0;
  int u = 0;
  TapeBits out;
  int purity = 0;
  std::uint64_t rest = 0;

  friend auto operator<=>(const PartyEnv&, const PartyEnv&) = default;
};

PartyEnv env_of(const RegisterLabel& r, int k, bool keep_memory) {
  PartyEnv e{keep_memory ? r.t : -1, keep_memory ? r.l : -1, r.u, r.out.without(k), r.purity, r.rest};
  return e;
}

bool reaches(const RegisterLabel& r, int k) { return r.out.len > k; }

}  // namespace

PairAnalysis analyze_pair(const JointState& state, int k, bool with_memory) {
  if (k < 0) throw DomainError("pair index must be nonnegative");
  PairAnalysis res;

  // Pair-only reduced state: group by everything else.
  std::map<std::pair<PartyEnv, PartyEnv>, std::array<Amplitude, 4>> groups;
  for (const auto& [label, a] : state.amplitudes) {
    if (!reaches(label.alice, k) || !reaches(label.bob, k)) continue;
    res.support += std::norm(a);
    const int idx = 2 * label.alice.out.at(k) + label.bob.out.at(k);
    groups[{env_of(label.alice, k, true), env_of(label.bob, k, true)}][idx] += a;
  }
  if (!(res.support > 0.0)) throw DomainError("undefined pair: no branch reaches pair " + std::to_string(k));

  for (const auto& [env, v] : groups) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) res.rho[i][j] += v[i] * std::conj(v[j]) / res.support;
    }
  }
  res.fidelity = 0.5 * (res.rho[0][0].real() + res.rho[3][3].real() + 2.0 * res.rho[0][3].real());

  // Local marginals.
  Amplitude ra[2][2]{};
  Amplitude rb[2][2]{};
  for (int a = 0; a < 2; ++a) {
    for (int a2 = 0; a2 < 2; ++a2) {
      for (int b = 0; b < 2; ++b) {
        ra[a][a2] += res.rho[2 * a + b][2 * a2 + b];
        rb[a][a2] += res.rho[2 * b + a][2 * b + a2];
      }
    }
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double target = i == j ? 0.5 : 0.0;
      res.alice_marginal_deviation = std::max(res.alice_marginal_deviation, std::abs(ra[i][j] - target));
      res.bob_marginal_deviation = std::max(res.bob_marginal_deviation, std::abs(rb[i][j] - target));
    }
  }

  if (!with_memory) return res;

  // Pair (x) memory, memory = (t_A, l_A, t_B, l_B).
  using Memory = std::tuple<int, int, int, int>;
  std::map<Memory, int> mem_index;
  for (const auto& [label, a] : state.amplitudes) {
    if (!reaches(label.alice, k) || !reaches(label.bob, k)) continue;
    mem_index.emplace(Memory{label.alice.t, label.alice.l, label.bob.t, label.bob.l}, 0);
  }
  int m = 0;
  for (auto& [mem, i] : mem_index) i = m++;
  const Eigen::Index dim = 4 * m;

  std::map<std::pair<PartyEnv, PartyEnv>, std::vector<std::pair<Eigen::Index, Amplitude>>> envs;
  for (const auto& [label, a] : state.amplitudes) {
    if (!reaches(label.alice, k) || !reaches(label.bob, k)) continue;
    const int pair = 2 * label.alice.out.at(k) + label.bob.out.at(k);
    const int mem = mem_index.at(Memory{label.alice.t, label.alice.l, label.bob.t, label.bob.l});
    envs[{env_of(label.alice, k, false), env_of(label.bob, k, false)}].emplace_back(
        static_cast<Eigen::Index>(pair) * m + mem, a);
  }
  Eigen::MatrixXcd joint = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [env, entries] : envs) {
    for (const auto& [i, ai] : entries) {
      for (const auto& [j, aj] : entries) joint(i, j) += ai * std::conj(aj);
    }
  }
  joint /= res.support;

  Eigen::MatrixXcd rho_pair = Eigen::MatrixXcd::Zero(4, 4);
  Eigen::MatrixXcd rho_mem = Eigen::MatrixXcd::Zero(m, m);
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) {
      for (int x = 0; x < m; ++x) rho_pair(p, q) += joint(p * m + x, q * m + x);
    }
  }
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      for (int p = 0; p < 4; ++p) rho_mem(x, y) += joint(p * m + x, p * m + y);
    }
  }
  Eigen::MatrixXcd diff = joint;
  for (int p = 0; p < 4; ++p) {
    for (int q = 0; q < 4; ++q) diff.block(p * m, q * m, m, m) -= rho_pair(p, q) * rho_mem;
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(diff, Eigen::EigenvaluesOnly);
  res.memory_trace_distance = 0.5 * eig.eigenvalues().cwiseAbs().sum();
  return res;
}

double pair_fidelity(const JointState& state, int k) { return analyze_pair(state, k, false).fidelity; }

int max_tape_length(const JointState& state) {
  int best = 0;
  for (const auto& [label, a] : state.amplitudes) {
    if (std::norm(a) > 0.0) best = std::max({best, static_cast<int>(label.alice.out.len),
                                            static_cast<int>(label.bob.out.len)});
  }
  return best;
}

std::map<int, double> alice_t_distribution(const JointState& state) {
  std::map<int, double> d;
  for (const auto& [label, a] : state.amplitudes) d[label.alice.t] += std::norm(a);
  return d;
}

std::map<int, double> alice_l_distribution(const JointState& state) {
  std::map<int, double> d;
  for (const auto& [label, a] : state.amplitudes) d[label.alice.l] += std::norm(a);
  return d;
}

double shannon_entropy(const std::map<int, double>& dist) {
  double h = 0.0;
  for (const auto& [v, p] : dist) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

}  // namespace selias::sim
