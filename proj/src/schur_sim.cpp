#include "selias/schur_sim.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "selias/errors.hpp"
#include "selias/streaming.hpp"

namespace selias::sim {

namespace {

void check_cap(int n, int cap, const char* what) {
  if (n < 0) throw DomainError(std::string(what) + ": n must be nonnegative");
  if (n > cap) {
    throw ResourceLimitError(std::string(what) + ": n = " + std::to_string(n) +
                             " exceeds simulator cap " + std::to_string(cap));
  }
}

void check_probability(double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw DomainError("p0 must lie in [0,1]");
}

// Purity-tape bookkeeping shared by every extractor transcript.
void record_emissions(RegisterLabel& r, const BitVec& emitted) {
  if (emitted.empty()) {
    ++r.purity;
    return;
  }
  r.purity -= static_cast<int>(emitted.size()) - 1;
  if (r.purity < 0) throw std::logic_error("purity tape underflow");
  for (Bit b : emitted) r.out.push(b);
}

}  // namespace

double JointState::norm_squared() const {
  double s = 0.0;
  for (const auto& [label, a] : amplitudes) s += std::norm(a);
  return s;
}

double PartyIsometry::max_orthonormality_deviation() const {
  std::map<RegisterLabel, int> index;
  for (const auto& col : columns) {
    for (const auto& [label, a] : col) index.emplace(label, 0);
  }
  int next = 0;
  for (auto& [label, i] : index) i = next++;
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(next, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& [label, a] : columns[c]) v(index.at(label), static_cast<Eigen::Index>(c)) += a;
  }
  const Eigen::MatrixXd gram = v.transpose() * v;
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

std::vector<CgBranch> cg_step(int n, int t, int u, Bit qubit) {
  const int d = n - 2 * t;  // 2j
  if (t < 0 || d < 0 || u < 0 || u > d) {
    throw DomainError("invalid irrep state (n=" + std::to_string(n) + ", t=" + std::to_string(t) +
                      ", u=" + std::to_string(u) + ")");
  }
  const double norm = d + 1.0;
  std::vector<CgBranch> out;
  auto push = [&](int t2, int u2, Bit p, double weight, double sign) {
    if (weight > 0.0) out.push_back(CgBranch{t2, u2, p, sign * std::sqrt(weight / norm)});
  };
  if (qubit == 0) {
    push(t, u, 0, d - u + 1.0, 1.0);
    push(t + 1, u - 1, 1, u, -1.0);
  } else {
    push(t, u + 1, 0, u + 1.0, 1.0);
    push(t + 1, u, 1, d - u, 1.0);
  }
  return out;
}

SchurIsometry schur_transform(int n, int cap) {
  check_cap(n, cap, "schur_transform");
  SchurIsometry iso;
  iso.n = n;
  iso.columns.resize(std::size_t{1} << n);
  for (std::size_t s = 0; s < iso.columns.size(); ++s) {
    std::map<SchurLabel, double> state{{SchurLabel{}, 1.0}};
    for (int q = 0; q < n; ++q) {
      const Bit bit = static_cast<Bit>((s >> q) & 1U);
      std::map<SchurLabel, double> next;
      for (const auto& [label, a] : state) {
        for (const CgBranch& br : cg_step(q, label.t, label.u, bit)) {
          SchurLabel out{br.t, br.u, label.path};
          out.path.push(br.pbit);
          next[out] += a * br.amplitude;
        }
      }
      state = std::move(next);
    }
    iso.columns[s].assign(state.begin(), state.end());
  }
  return iso;
}

PartyIsometry streaming_concentrator(int n, int cap) {
  check_cap(n, cap, "streaming_concentrator");
  const YoungTable table = YoungTable::build(n);
  PartyIsometry iso;
  iso.n = n;
  iso.columns.resize(std::size_t{1} << n);
  for (std::size_t s = 0; s < iso.columns.size(); ++s) {
    std::map<RegisterLabel, double> state{{RegisterLabel{}, 1.0}};
    for (int q = 0; q < n; ++q) {
      const Bit bit = static_cast<Bit>((s >> q) & 1U);
      std::map<RegisterLabel, double> next;
      for (const auto& [label, a] : state) {
        for (const CgBranch& br : cg_step(q, label.t, label.u, bit)) {
          const QStepResult moved = qstep(table, QExtractorState{q, label.t, label.l}, br.pbit);
          RegisterLabel out = label;
          out.t = moved.state.t;
          out.u = br.u;
          out.l = moved.state.l;
          record_emissions(out, moved.emitted);
          next[out] += a * br.amplitude;
        }
      }
      state = std::move(next);
    }
    iso.columns[s].assign(state.begin(), state.end());
  }
  return iso;
}

JointState simulate_known_basis(double p0, int n, int cap) {
  check_cap(n, cap, "simulate_known_basis");
  check_probability(p0);
  const BinomialTable table = BinomialTable::build(n);
  JointState js;
  BitVec bits(static_cast<std::size_t>(n));
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    int ones = 0;
    for (int i = 0; i < n; ++i) {
      bits[i] = static_cast<Bit>((s >> i) & 1U);
      ones += bits[i];
    }
    const double prob = std::pow(p0, n - ones) * std::pow(1.0 - p0, ones);
    if (prob == 0.0) continue;
    RegisterLabel r;
    ExtractorState st = initial_state();
    for (Bit b : bits) {
      const StepResult stepped = step(table, st, b);
      st = stepped.state;
      record_emissions(r, stepped.emitted);
    }
    r.t = st.t;
    r.l = st.l;
    js.add(JointLabel{r, r}, std::sqrt(prob));
  }
  return js;
}

TwoQubitState TwoQubitState::schmidt(double p0, double theta) {
  check_probability(p0);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const std::array<double, 2> e0{c, s};
  const std::array<double, 2> e1{-s, c};
  const double a0 = std::sqrt(p0);
  const double a1 = std::sqrt(1.0 - p0);
  TwoQubitState psi;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) psi.c[2 * a + b] = a0 * e0[a] * e0[b] + a1 * e1[a] * e1[b];
  }
  return psi;
}

TwoQubitState rotate_both(const TwoQubitState& psi, const Qubit2x2& w) {
  TwoQubitState out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Amplitude acc = 0.0;
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) acc += w[a][x] * w[b][y] * psi.c[2 * x + y];
      }
      out.c[2 * a + b] = acc;
    }
  }
  return out;
}

JointState simulate_universal(const TwoQubitState& psi, int n, int cap) {
  check_cap(n, cap, "simulate_universal");
  double norm = 0.0;
  for (const Amplitude& a : psi.c) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-12) throw DomainError("two-qubit state is not normalized");

  const PartyIsometry iso = streaming_concentrator(n, std::max(cap, n));
  std::map<RegisterLabel, int> index;
  for (const auto& col : iso.columns) {
    for (const auto& [label, a] : col) index.emplace(label, 0);
  }
  std::vector<const RegisterLabel*> labels;
  labels.reserve(index.size());
  for (auto& [label, i] : index) {
    i = static_cast<int>(labels.size());
    labels.push_back(&label);
  }

  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()), dim);
  for (Eigen::Index s = 0; s < dim; ++s) {
    for (const auto& [label, a] : iso.columns[s]) v(index.at(label), s) += a;
  }

  // Input amplitudes psi^{(x) n}: Alice's string indexes rows, Bob's columns.
  Eigen::MatrixXcd in(dim, dim);
  for (Eigen::Index sa = 0; sa < dim; ++sa) {
    for (Eigen::Index sb = 0; sb < dim; ++sb) {
      Amplitude a = 1.0;
      for (int q = 0; q < n; ++q) a *= psi.c[2 * ((sa >> q) & 1) + ((sb >> q) & 1)];
      in(sa, sb) = a;
    }
  }
  const Eigen::MatrixXcd out = v.cast<Amplitude>() * in * v.transpose().cast<Amplitude>();

  JointState js;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      const Amplitude a = out(i, j);
      if (std::norm(a) > 1e-30) js.amplitudes.emplace(JointLabel{*labels[i], *labels[j]}, a);
    }
  }
  return js;
}

JointState simulate_von_neumann(double p0, int pairs) {
  check_probability(p0);
  check_cap(pairs, 16, "simulate_von_neumann");
  const int width = 2 * pairs;
  JointState js;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << width); ++s) {
    int ones = 0;
    for (int i = 0; i < width; ++i) ones += static_cast<int>((s >> i) & 1U);
    const double prob = std::pow(p0, width - ones) * std::pow(1.0 - p0, ones);
    if (prob == 0.0) continue;
    RegisterLabel r;
    r.rest = s;
    for (int k = 0; k < pairs; ++k) {
      const std::uint64_t q1 = (s >> (2 * k)) & 1U;
      const std::uint64_t q2 = (s >> (2 * k + 1)) & 1U;
      const std::uint64_t parity = q1 ^ q2;
      // CNOT q2 -> q1 leaves the parity in q1.
      r.rest = (r.rest & ~(std::uint64_t{1} << (2 * k))) | (parity << (2 * k));
      if (parity == 1) {
        // Swap q2 with the (clean) output register and halt.
        r.rest &= ~(std::uint64_t{1} << (2 * k + 1));
        r.out.push(static_cast<Bit>(q2));
        r.l = 1;
        break;
      }
    }
    js.add(JointLabel{r, r}, std::sqrt(prob));
  }
  return js;
}

double nonhalting_amplitude(const JointState& state) {
  double s = 0.0;
  for (const auto& [label, a] : state.amplitudes) {
    if (label.alice.l == 0) s += std::norm(a);
  }
  return std::sqrt(s);
}

HuffmanResult huffman_counterexample() {
  const std::array<double, 4> amps{1.0 / std::sqrt(2.0), 1.0 / std::sqrt(4.0), 1.0 / std::sqrt(8.0),
                                   1.0 / std::sqrt(8.0)};
  const std::array<const char*, 4> codewords{"0", "10", "110", "111"};
  constexpr int kWidth = 3;
  HuffmanResult res;
  for (int x = 0; x < 4; ++x) {
    RegisterLabel r;
    const BitVec word = bits_from_string(codewords[x]);
    for (int i = 0; i < kWidth; ++i) r.out.push(i < static_cast<int>(word.size()) ? word[i] : Bit{0});
    res.state.add(JointLabel{r, r}, amps[x]);
  }
  const PairAnalysis first = analyze_pair(res.state, 0, false);
  res.rho = first.rho;
  res.fidelity = first.fidelity;
  return res;
}

}  // namespace selias::sim
