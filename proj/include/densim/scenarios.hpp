#pragma once

// Executable experiments, each returning exact probabilities and, when
// samples > 0, seeded empirical frequencies drawn from the same distribution.
//
// Conventions fixed here so outputs are bit-stable:
//  - beamsplitter matrix (1/sqrt2) [[1, i], [i, 1]]; output ports are named
//    "cross" (exit on the side opposite the input) and "bar" (same side);
//  - phase shifter diag(e^{i phi}, 1) acting on arm 0;
//  - spin-style observables A(theta) = cos(theta) Z + sin(theta) X;
//  - composite indices in row-major pair order.

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "densim/composition.hpp"
#include "densim/dynamics.hpp"
#include "densim/measurement.hpp"

namespace densim {

enum class ScenarioKind { MachZehnder, BombTest, DoubleSlit, Cat, Chsh };

inline const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::MachZehnder: return "mach_zehnder";
    case ScenarioKind::BombTest: return "bomb_test";
    case ScenarioKind::DoubleSlit: return "double_slit";
    case ScenarioKind::Cat: return "cat";
    case ScenarioKind::Chsh: return "chsh";
  }
  return "unknown";
}

inline const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "mach_zehnder", "bomb_test", "double_slit", "cat", "chsh"};
  return names;
}

struct Sampling {
  long samples = 0;
  RngSeed seed{0};
};

using NamedValues = std::vector<std::pair<std::string, double>>;

struct ScenarioResult {
  std::string kind;
  NamedValues analytic;
  NamedValues empirical;                          // empty unless samples > 0
  std::vector<std::pair<double, double>> profile; // (theta, intensity), double slit
  std::vector<double> empirical_profile;          // per-bin frequencies
  std::vector<std::pair<std::string, std::string>> metadata;  // effective params
};

namespace detail {

inline std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

// Draws `samples` outcomes from `dist` (a subset of analytic rows forming a
// distribution) and appends empirical_<name> frequency rows.
inline void sample_distribution(ScenarioResult& result, const NamedValues& dist,
                                const Sampling& sampling, std::uint64_t stream) {
  if (sampling.samples <= 0) return;
  std::vector<double> probs;
  probs.reserve(dist.size());
  for (const auto& [name, p] : dist) probs.push_back(p);
  Rng rng = Rng(sampling.seed).child(stream);
  const std::vector<long> counts = sample_counts(probs, sampling.samples, rng);
  for (std::size_t k = 0; k < dist.size(); ++k)
    result.empirical.emplace_back("empirical_" + dist[k].first,
                                  static_cast<double>(counts[k]) /
                                      static_cast<double>(sampling.samples));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Mach-Zehnder interferometer
// ---------------------------------------------------------------------------

struct MachZehnderParams {
  double phase = 0.0;
  int blocked_arm = -1;  // -1 none, else 0 or 1
};

inline void validate(const MachZehnderParams& p) {
  if (!std::isfinite(p.phase))
    throw InvalidConfig("mach_zehnder: phase must be finite");
  if (p.blocked_arm < -1 || p.blocked_arm > 1)
    throw InvalidConfig("mach_zehnder: blocked_arm must be -1 (none), 0 or 1");
}

inline ComplexMatrix beamsplitter() {
  const double s = 1.0 / std::sqrt(2.0);
  const ComplexScalar i(0.0, 1.0);
  ComplexMatrix b(2, 2);
  b << s, s * i, s * i, s;
  return b;
}

inline ComplexMatrix phase_shifter(double phi) {
  const ComplexScalar i(0.0, 1.0);
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = std::exp(i * phi);
  m(1, 1) = 1.0;
  return m;
}

inline ScenarioResult run_mach_zehnder(const MachZehnderParams& params,
                                       const Sampling& sampling = {}) {
  validate(params);
  const ComplexMatrix b = beamsplitter();
  Eigen::Vector2cd in;
  in << 1.0, 0.0;
  // Inside the interferometer: first splitter, then the arm-0 phase plate.
  const Eigen::Vector2cd mid = phase_shifter(params.phase) * (b * in);

  ScenarioResult result;
  result.kind = to_string(ScenarioKind::MachZehnder);
  NamedValues dist;
  if (params.blocked_arm < 0) {
    const Eigen::Vector2cd out = b * mid;
    const DensityMatrix rho = make_density(out * out.adjoint());
    const std::vector<double> probs =
        born_probabilities(rho, ProjectorSet::computational(2));
    dist = {{"p_cross", probs[1]}, {"p_bar", probs[0]}};
  } else {
    // The blocked arm becomes an absorbing third outcome; the surviving
    // amplitude continues through the second splitter.
    const double p_absorbed = std::norm(mid(params.blocked_arm));
    Eigen::Vector2cd survivor = mid;
    survivor(params.blocked_arm) = 0.0;
    const Eigen::Vector2cd out = b * survivor;
    ComplexMatrix rho3 = ComplexMatrix::Zero(3, 3);
    rho3.topLeftCorner(2, 2) = out * out.adjoint();
    rho3(2, 2) = p_absorbed;
    const DensityMatrix rho = make_density(rho3);
    const std::vector<double> probs =
        born_probabilities(rho, ProjectorSet::computational(3));
    dist = {{"p_absorbed", probs[2]}, {"p_cross", probs[1]}, {"p_bar", probs[0]}};
  }
  result.analytic = dist;
  detail::sample_distribution(result, dist, sampling, 0);
  result.metadata = {
      {"scenario", result.kind},
      {"phase", detail::format_real(params.phase)},
      {"blocked_arm", params.blocked_arm < 0 ? std::string("none")
                                             : std::to_string(params.blocked_arm)},
      {"seed", std::to_string(sampling.seed.value)},
      {"samples", std::to_string(sampling.samples)},
  };
  return result;
}

// ---------------------------------------------------------------------------
// Elitzur-Vaidman bomb test
// ---------------------------------------------------------------------------

struct BombTestParams {
  double phase = 0.0;
  bool bomb = true;        // no bomb reduces to the plain interferometer
  bool block_both = false; // degenerate setup, both arms absorbing
};

inline void validate(const BombTestParams& p) {
  if (!std::isfinite(p.phase)) throw InvalidConfig("bomb_test: phase must be finite");
  if (p.block_both && !p.bomb)
    throw InvalidConfig("bomb_test: block_both requires a bomb");
}

inline ScenarioResult run_bomb_test(const BombTestParams& params,
                                    const Sampling& sampling = {}) {
  validate(params);
  if (!params.bomb) {
    // Same amplitudes, same sampling stream: output matches run_mach_zehnder.
    ScenarioResult result =
        run_mach_zehnder(MachZehnderParams{params.phase, -1}, sampling);
    result.kind = to_string(ScenarioKind::BombTest);
    result.metadata = {
        {"scenario", result.kind},
        {"phase", detail::format_real(params.phase)},
        {"bomb", "false"},
        {"block_both", "false"},
        {"seed", std::to_string(sampling.seed.value)},
        {"samples", std::to_string(sampling.samples)},
    };
    return result;
  }

  ScenarioResult result;
  result.kind = to_string(ScenarioKind::BombTest);
  NamedValues dist;
  double signature = 0.0;
  if (params.block_both) {
    dist = {{"p_absorbed", 1.0}, {"p_cross", 0.0}, {"p_bar", 0.0}};
  } else {
    const ScenarioResult blocked =
        run_mach_zehnder(MachZehnderParams{params.phase, 1}, Sampling{});
    dist = blocked.analytic;
    // A click at the bar port with phase 0 is impossible without the bomb;
    // its probability is the interaction-free detection signature.
    const ScenarioResult reference =
        run_mach_zehnder(MachZehnderParams{0.0, 1}, Sampling{});
    for (const auto& [name, value] : reference.analytic)
      if (name == "p_bar") signature = value;
  }
  result.analytic = dist;
  result.analytic.emplace_back("p_interaction_free", params.block_both ? 0.0 : signature);
  detail::sample_distribution(result, dist, sampling, 0);
  result.metadata = {
      {"scenario", result.kind},
      {"phase", detail::format_real(params.phase)},
      {"bomb", "true"},
      {"block_both", params.block_both ? "true" : "false"},
      {"seed", std::to_string(sampling.seed.value)},
      {"samples", std::to_string(sampling.samples)},
  };
  return result;
}

// ---------------------------------------------------------------------------
// Double slit (Fraunhofer far field)
// ---------------------------------------------------------------------------

enum class OpenSlits { Left, Right, Both };

inline const char* to_string(OpenSlits s) {
  switch (s) {
    case OpenSlits::Left: return "left";
    case OpenSlits::Right: return "right";
    case OpenSlits::Both: return "both";
  }
  return "unknown";
}

struct DoubleSlitParams {
  int n_screen = 181;
  double d_over_lambda = 2.0;
  OpenSlits open_slits = OpenSlits::Both;
  bool which_path_marking = false;
};

inline void validate(const DoubleSlitParams& p) {
  if (p.n_screen < 16) throw InvalidConfig("double_slit: n_screen must be >= 16");
  if (!(p.d_over_lambda > 0.0) || !std::isfinite(p.d_over_lambda))
    throw InvalidConfig("double_slit: d_over_lambda must be positive");
  if (p.which_path_marking && p.open_slits != OpenSlits::Both)
    throw InvalidConfig("double_slit: which-path marking requires both slits open");
}

inline ScenarioResult run_double_slit(const DoubleSlitParams& params,
                                      const Sampling& sampling = {}) {
  validate(params);
  const ComplexScalar i(0.0, 1.0);
  const double pi = std::numbers::pi;

  // Path state on span{|left>, |right>}. Each path carries a marker qubit:
  // identical markers for no marking, orthogonal markers when the path is
  // tagged. Tracing the marker out leaves the path coherence ρ_LR equal to
  // the marker overlap (1 or 0) over 2.
  Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();  // |path> ⊗ |marker>
  const double s = 1.0 / std::sqrt(2.0);
  switch (params.open_slits) {
    case OpenSlits::Left: psi(0) = 1.0; break;              // |L,0>
    case OpenSlits::Right: psi(2) = 1.0; break;             // |R,0>
    case OpenSlits::Both:
      psi(0) = s;                                           // |L,0>
      psi(params.which_path_marking ? 3 : 2) = s;           // |R,1> or |R,0>
      break;
  }
  const DensityMatrix joint = make_density(psi * psi.adjoint());
  const DensityMatrix path = partial_trace(joint, 2, 2, Keep::First);
  const ComplexMatrix& r = path.matrix();

  ScenarioResult result;
  result.kind = to_string(ScenarioKind::DoubleSlit);
  result.profile.reserve(static_cast<std::size_t>(params.n_screen));
  double total = 0.0;
  std::vector<double> intensity(static_cast<std::size_t>(params.n_screen));
  for (int k = 0; k < params.n_screen; ++k) {
    const double theta = -0.5 * pi + pi * k / (params.n_screen - 1);
    const double arg = pi * params.d_over_lambda * std::sin(theta);
    Eigen::Vector2cd v;
    v << std::exp(i * arg), std::exp(-i * arg);
    double val = (v.adjoint() * r * v)(0).real();
    if (val < 0.0) val = 0.0;
    intensity[static_cast<std::size_t>(k)] = val;
    total += val;
  }
  for (int k = 0; k < params.n_screen; ++k) {
    const double theta = -0.5 * pi + pi * k / (params.n_screen - 1);
    result.profile.emplace_back(theta, intensity[static_cast<std::size_t>(k)] / total);
  }

  // Fringe visibility from the extremal intensities of the two-path model
  // over a full fringe phase, I = rho_LL + rho_RR ± 2 |rho_LR|. Grid
  // independent: 1 for coherent paths, 0 for a single slit or orthogonal
  // markers.
  const double diag_sum = r(0, 0).real() + r(1, 1).real();
  const double cross = 2.0 * std::abs(r(0, 1));
  const double i_max = diag_sum + cross;
  const double i_min = diag_sum - cross;
  const double visibility = (i_max - i_min) / (i_max + i_min);
  result.analytic = {{"visibility", visibility}};

  if (sampling.samples > 0) {
    std::vector<double> probs;
    probs.reserve(result.profile.size());
    for (const auto& [theta, p] : result.profile) probs.push_back(p);
    Rng rng = Rng(sampling.seed).child(0);
    const std::vector<long> counts = sample_counts(probs, sampling.samples, rng);
    result.empirical_profile.resize(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k)
      result.empirical_profile[k] =
          static_cast<double>(counts[k]) / static_cast<double>(sampling.samples);
  }
  result.metadata = {
      {"scenario", result.kind},
      {"n_screen", std::to_string(params.n_screen)},
      {"d_over_lambda", detail::format_real(params.d_over_lambda)},
      {"open_slits", to_string(params.open_slits)},
      {"which_path_marking", params.which_path_marking ? "true" : "false"},
      {"seed", std::to_string(sampling.seed.value)},
      {"samples", std::to_string(sampling.samples)},
  };
  return result;
}

// ---------------------------------------------------------------------------
// Schroedinger's cat as a classical decay chain
// ---------------------------------------------------------------------------

struct CatParams {
  double decay_per_step = 0.1;
  long steps = 10;
};

inline void validate(const CatParams& p) {
  if (!(p.decay_per_step >= 0.0) || !(p.decay_per_step <= 1.0))
    throw InvalidConfig("cat: decay_per_step must be in [0, 1]");
  if (p.steps < 0) throw InvalidConfig("cat: steps must be >= 0");
}

inline ScenarioResult run_cat(const CatParams& params, const Sampling& sampling = {}) {
  validate(params);
  // Column-stochastic step [[1-l, 0], [l, 1]] on (alive, dead). Dead is
  // absorbing, so "dead at T" and "some decay happened by T" are the same
  // event and the conditional probability of death given decay is one.
  double p_alive = 1.0, p_dead = 0.0;
  for (long t = 0; t < params.steps; ++t) {
    const double dead_next = params.decay_per_step * p_alive + p_dead;
    p_alive *= (1.0 - params.decay_per_step);
    p_dead = dead_next;
  }
  const double p_decay = p_dead;
  const double p_dead_given_decay = p_decay > 0.0 ? p_dead / p_decay : 1.0;

  // Integrity check: the final distribution is a valid diagonal classical state.
  (void)classify_state(classical_mixture({p_alive, p_dead}));

  ScenarioResult result;
  result.kind = to_string(ScenarioKind::Cat);
  const NamedValues dist = {{"p_alive", p_alive}, {"p_dead", p_dead}};
  result.analytic = dist;
  result.analytic.emplace_back("p_dead_given_decay", p_dead_given_decay);
  detail::sample_distribution(result, dist, sampling, 0);
  result.metadata = {
      {"scenario", result.kind},
      {"decay_per_step", detail::format_real(params.decay_per_step)},
      {"steps", std::to_string(params.steps)},
      {"seed", std::to_string(sampling.seed.value)},
      {"samples", std::to_string(sampling.samples)},
  };
  return result;
}

// ---------------------------------------------------------------------------
// CHSH correlations
// ---------------------------------------------------------------------------

enum class ChshState { Singlet, Product, DiagonalClassical };

inline const char* to_string(ChshState s) {
  switch (s) {
    case ChshState::Singlet: return "singlet";
    case ChshState::Product: return "product";
    case ChshState::DiagonalClassical: return "diagonal_classical";
  }
  return "unknown";
}

struct ChshParams {
  // Defaults maximize S = |E(a,b) - E(a,b') + E(a',b) + E(a',b')| for the
  // singlet, where E(x,y) = -cos(x - y).
  double a = 0.5 * std::numbers::pi;
  double a_prime = 0.0;
  double b = 0.25 * std::numbers::pi;
  double b_prime = -0.25 * std::numbers::pi;
  ChshState state = ChshState::Singlet;
  double theta1 = 0.0;  // product state polar angles, Z-X plane
  double theta2 = 0.0;
  std::array<double, 4> diag_probs = {0.5, 0.0, 0.0, 0.5};
};

inline void validate(const ChshParams& p) {
  for (double ang : {p.a, p.a_prime, p.b, p.b_prime, p.theta1, p.theta2})
    if (!std::isfinite(ang)) throw InvalidConfig("chsh: angles must be finite");
  if (p.state == ChshState::DiagonalClassical) {
    double sum = 0.0;
    for (double q : p.diag_probs) {
      if (!(q >= 0.0)) throw InvalidConfig("chsh: diagonal probabilities must be >= 0");
      sum += q;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw InvalidConfig("chsh: diagonal probabilities must sum to 1");
  }
}

// A(theta) = cos(theta) Z + sin(theta) X; eigenvalues are +1 and -1.
inline Observable spin_observable(double theta) {
  return Observable(std::cos(theta) * pauli_z() + std::sin(theta) * pauli_x(),
                    "A(" + detail::format_real(theta) + ")");
}

inline DensityMatrix chsh_state(const ChshParams& params) {
  switch (params.state) {
    case ChshState::Singlet: {
      Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
      const double s = 1.0 / std::sqrt(2.0);
      psi(1) = s;   // |01>
      psi(2) = -s;  // |10>
      return make_density(psi * psi.adjoint());
    }
    case ChshState::Product: {
      auto pure = [](double theta) {
        Eigen::Vector2cd v;
        v << std::cos(0.5 * theta), std::sin(0.5 * theta);
        return make_density(v * v.adjoint());
      };
      return tensor_state(pure(params.theta1), pure(params.theta2));
    }
    case ChshState::DiagonalClassical:
      return classical_mixture(std::vector<double>(params.diag_probs.begin(),
                                                   params.diag_probs.end()));
  }
  throw InvalidConfig("chsh: unknown state kind");
}

inline ScenarioResult run_chsh(const ChshParams& params, const Sampling& sampling = {}) {
  validate(params);
  const DensityMatrix rho = chsh_state(params);

  auto correlator = [&rho](double x, double y) {
    return expectation(rho, tensor_observable(spin_observable(x), spin_observable(y)));
  };
  const double e_ab = correlator(params.a, params.b);
  const double e_abp = correlator(params.a, params.b_prime);
  const double e_apb = correlator(params.a_prime, params.b);
  const double e_apbp = correlator(params.a_prime, params.b_prime);
  const double s_value = std::abs(e_ab - e_abp + e_apb + e_apbp);

  ScenarioResult result;
  result.kind = to_string(ScenarioKind::Chsh);
  result.analytic = {{"e_ab", e_ab},
                     {"e_ab_prime", e_abp},
                     {"e_a_prime_b", e_apb},
                     {"e_a_prime_b_prime", e_apbp},
                     {"s_value", s_value}};

  if (params.state == ChshState::DiagonalClassical) {
    // Deterministic local assignments: outcomes +-1 fixed per setting.
    double best = 0.0;
    for (int mask = 0; mask < 16; ++mask) {
      const double oa = (mask & 1) ? 1.0 : -1.0;
      const double oap = (mask & 2) ? 1.0 : -1.0;
      const double ob = (mask & 4) ? 1.0 : -1.0;
      const double obp = (mask & 8) ? 1.0 : -1.0;
      best = std::max(best, std::abs(oa * ob - oa * obp + oap * ob + oap * obp));
    }
    result.analytic.emplace_back("s_classical_max", best);
  }

  if (sampling.samples > 0) {
    // Sample each correlator from the Born distribution of the joint +-1
    // outcomes; projectors are (I ± A)/2 per site.
    auto sampled_correlator = [&](double x, double y, std::uint64_t stream) {
      const ComplexMatrix ax = spin_observable(x).matrix();
      const ComplexMatrix by = spin_observable(y).matrix();
      const ComplexMatrix id = identity_matrix(2);
      std::vector<ComplexMatrix> joint;
      for (double sx : {1.0, -1.0})
        for (double sy : {1.0, -1.0})
          joint.push_back(kron(0.5 * (id + sx * ax), 0.5 * (id + sy * by)));
      const ProjectorSet ps(std::move(joint));
      const std::vector<double> probs = born_probabilities(rho, ps);
      Rng rng = Rng(sampling.seed).child(stream);
      const std::vector<long> counts = sample_counts(probs, sampling.samples, rng);
      const std::array<double, 4> signs = {1.0, -1.0, -1.0, 1.0};
      double mean = 0.0;
      for (std::size_t k = 0; k < 4; ++k)
        mean += signs[k] * static_cast<double>(counts[k]);
      return mean / static_cast<double>(sampling.samples);
    };
    const double se_ab = sampled_correlator(params.a, params.b, 0);
    const double se_abp = sampled_correlator(params.a, params.b_prime, 1);
    const double se_apb = sampled_correlator(params.a_prime, params.b, 2);
    const double se_apbp = sampled_correlator(params.a_prime, params.b_prime, 3);
    result.empirical = {{"empirical_e_ab", se_ab},
                        {"empirical_e_ab_prime", se_abp},
                        {"empirical_e_a_prime_b", se_apb},
                        {"empirical_e_a_prime_b_prime", se_apbp},
                        {"empirical_s_value",
                         std::abs(se_ab - se_abp + se_apb + se_apbp)}};
  }

  result.metadata = {
      {"scenario", result.kind},
      {"a", detail::format_real(params.a)},
      {"a_prime", detail::format_real(params.a_prime)},
      {"b", detail::format_real(params.b)},
      {"b_prime", detail::format_real(params.b_prime)},
      {"state", to_string(params.state)},
      {"seed", std::to_string(sampling.seed.value)},
      {"samples", std::to_string(sampling.samples)},
  };
  if (params.state == ChshState::Product) {
    result.metadata.emplace_back("theta1", detail::format_real(params.theta1));
    result.metadata.emplace_back("theta2", detail::format_real(params.theta2));
  }
  if (params.state == ChshState::DiagonalClassical)
    for (std::size_t k = 0; k < 4; ++k)
      result.metadata.emplace_back("diag_p" + std::to_string(k / 2) +
                                       std::to_string(k % 2),
                                   detail::format_real(params.diag_probs[k]));
  return result;
}

// ---------------------------------------------------------------------------
// Declarative configuration and dispatch
// ---------------------------------------------------------------------------

using ScenarioParams = std::variant<MachZehnderParams, BombTestParams,
                                    DoubleSlitParams, CatParams, ChshParams>;

struct ScenarioConfig {
  ScenarioParams params;
  RngSeed seed{0};
  long samples = 0;

  ScenarioKind kind() const {
    return static_cast<ScenarioKind>(params.index());
  }
};

inline ScenarioResult run_for(const MachZehnderParams& p, const Sampling& s) {
  return run_mach_zehnder(p, s);
}
inline ScenarioResult run_for(const BombTestParams& p, const Sampling& s) {
  return run_bomb_test(p, s);
}
inline ScenarioResult run_for(const DoubleSlitParams& p, const Sampling& s) {
  return run_double_slit(p, s);
}
inline ScenarioResult run_for(const CatParams& p, const Sampling& s) {
  return run_cat(p, s);
}
inline ScenarioResult run_for(const ChshParams& p, const Sampling& s) {
  return run_chsh(p, s);
}

inline ScenarioResult run_scenario(const ScenarioConfig& config) {
  const Sampling sampling{config.samples, config.seed};
  return std::visit(
      [&sampling](const auto& p) { return run_for(p, sampling); }, config.params);
}

}  // namespace densim
