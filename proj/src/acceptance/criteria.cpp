/*
   Copyright 2026 The shk Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "shk/acceptance/criteria.hpp"

#include "shk/cli/emit.hpp"
#include "shk/cli/experiments.hpp"
#include "shk/coarse/kl_decompose.hpp"
#include "shk/lorentz/tensors.hpp"
#include "shk/models/bessel.hpp"
#include "shk/models/karney.hpp"
#include "shk/models/pulse.hpp"
#include "shk/phase/poisson.hpp"
#include "shk/quad/gauss_legendre.hpp"
#include "shk/random/philox.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

namespace shk::acceptance {

namespace {

using cli::Check;

// Pinned tolerances.
constexpr double kBracketTol = 1e-12;
constexpr double kJacobiTol = 1e-8;
constexpr double kSigmas = 3.0;
constexpr double kBesselTol = 1e-10;
constexpr double kInTol = 1e-6;
constexpr double kRatioLimit = 0.05;
constexpr double kNullTol = 1e-14;
constexpr double kEnergyRateTol = 0.05;
constexpr double kTimescaleFactor = 2.0;
constexpr double kWitnessTol = 1e-4;
constexpr double kProjectorTol = 1e-6;
constexpr double kDiagonalTol = 0.01;

constexpr double kPi = std::numbers::pi;

// Dense cubic polynomial in the six phase-space coordinates.
class Cubic {
 public:
  Cubic(random::Sampler& draw) {
    for (int a = 0; a <= 6; ++a) {
      for (int b = a; b <= 6; ++b) {
        for (int c = b; c <= 6; ++c) terms_.push_back({{a, b, c}, draw.normal()});
      }
    }
  }

  // Index 6 stands for the constant factor 1.
  double value(const StateVector& z) const {
    double sum = 0.0;
    for (const auto& t : terms_) sum += t.coefficient * factor(z, t.index[0]) * factor(z, t.index[1]) * factor(z, t.index[2]);
    return sum;
  }

  StateVector gradient(const StateVector& z) const {
    StateVector g = StateVector::Zero(6);
    for (const auto& t : terms_) {
      for (int k = 0; k < 3; ++k) {
        const int i = t.index[k];
        if (i == 6) continue;
        g[i] += t.coefficient * factor(z, t.index[(k + 1) % 3]) * factor(z, t.index[(k + 2) % 3]);
      }
    }
    return g;
  }

  ScalarField field(std::string name) const {
    const Cubic copy = *this;
    return ScalarField(
        std::move(name), 3, [copy](const PhasePoint& z) { return copy.value(z.state()); },
        [copy](const PhasePoint& z) { return copy.gradient(z.state()); });
  }

 private:
  static double factor(const StateVector& z, int i) { return i == 6 ? 1.0 : z[i]; }

  struct Term {
    std::array<int, 3> index;
    double coefficient;
  };
  std::vector<Term> terms_;
};

std::vector<Check> bracket_axioms(const SuiteOptions& o) {
  random::Sampler draw(o.seed, 1);
  double anti = 0.0, leibniz = 0.0, jacobi = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const ScalarField f = Cubic(draw).field("f"), g = Cubic(draw).field("g"),
                      h = Cubic(draw).field("h");
    StateVector s(6);
    for (int i = 0; i < 6; ++i) s[i] = draw.uniform(-1.0, 1.0);
    const PhasePoint z = PhasePoint::from_state(s);

    const double fg = poisson_bracket(f, g, z), gf = poisson_bracket(g, f, z);
    anti = std::max(anti, std::abs(fg + gf) / std::max(1.0, std::abs(fg)));

    const double lhs = poisson_bracket(f, g * h, z);
    const double a = poisson_bracket(f, g, z) * h(z), b = g(z) * poisson_bracket(f, h, z);
    leibniz = std::max(leibniz, std::abs(lhs - a - b) / std::max({1.0, std::abs(a), std::abs(b)}));

    const double j1 = poisson_bracket(f, poisson_bracket_field(g, h), z);
    const double j2 = poisson_bracket(g, poisson_bracket_field(h, f), z);
    const double j3 = poisson_bracket(h, poisson_bracket_field(f, g), z);
    jacobi = std::max(jacobi, std::abs(j1 + j2 + j3) /
                                  std::max({1.0, std::abs(j1), std::abs(j2), std::abs(j3)}));
  }
  return {cli::below("antisymmetry residual", anti, kBracketTol),
          cli::below("Leibniz residual", leibniz, kBracketTol),
          cli::below("Jacobi residual", jacobi, kJacobiTol)};
}

cli::RunReport run_config(const std::string& text, const SuiteOptions& o) {
  cli::ExperimentConfig c = cli::parse_config(text);
  c.seed = o.seed;
  c.workers = o.workers;
  c.sigmas = kSigmas;
  return cli::run(c);
}

std::vector<Check> prefixed(const cli::RunReport& r, const std::string& prefix) {
  std::vector<Check> out = r.checks;
  for (auto& c : out) c.name = prefix + c.name;
  return out;
}

void append(std::vector<Check>& to, const std::vector<Check>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

std::vector<Check> pulse_end_to_end(const SuiteOptions& o) {
  return run_config(R"(
[experiment]
kind = pulse
particles = 100000
duration = 20
dt = 1
records = 5
[pulse]
tau = 1
phi0 = 1
micro_intervals = 100000
)", o).checks;
}

std::vector<Check> two_particle(const SuiteOptions& o) {
  return run_config(R"(
[experiment]
kind = two-particle
particles = 10000
duration = 20
dt = 0.02
records = 11
[pulse]
tau = 1
phi0 = 1
)", o).checks;
}

using Float = boost::multiprecision::cpp_bin_float_100;

// Power series of J_n in 100-digit arithmetic.
double bessel_series(int n, double x) {
  const Float half = Float(x) / 2;
  const Float q = -half * half;
  Float term = 1;
  for (int k = 1; k <= n; ++k) term *= half / k;
  Float sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= q / (Float(k) * Float(k + n));
    sum += term;
    if (k > 10 && abs(term) < Float("1e-40")) break;
  }
  return sum.convert_to<double>();
}

std::vector<Check> karney(const SuiteOptions& o) {
  std::vector<Check> out;
  for (const char* nu : {"2.0", "2.2"}) {
    const auto r = run_config(std::string(R"(
[experiment]
kind = karney
particles = 100000
duration = 1
dt = 0.05
records = 5
[karney]
epsilon = 0.1
action = 2
nu = )") + nu + "\n", o);
    append(out, prefixed(r, std::string("nu=") + nu + ": "));
  }
  double worst = 0.0;
  for (int n = 0; n <= 30; ++n) {
    for (int i = 0; i <= 200; ++i) {
      const double x = 0.25 * i;
      worst = std::max(worst, std::abs(models::bessel_j(n, x) - bessel_series(n, x)));
    }
  }
  out.push_back(cli::below("max |J_n - series|, n <= 30, x <= 50", worst, kBesselTol));
  return out;
}

std::vector<Check> lorentz_chain(const SuiteOptions& o) {
  std::vector<Check> out;
  const lorentz::IsotropicCovariance cov(20.0, 0.1);
  const Vec3 e = Vec3(0.3, -0.5, 0.8).normalized();
  for (int n = 0; n <= 2; ++n) {
    const Mat3 closed = lorentz::closed_form_In(n, e, cov);
    const Mat3 direct = lorentz::direct_In(n, e, cov, cov.support_radius());
    out.push_back(cli::below("I_" + std::to_string(n) + " closed vs direct, relative",
                             (closed - direct).norm() / closed.norm(), kInTol));
  }
  const auto r = run_config(R"(
[experiment]
kind = lorentz-micro
[lorentz-micro]
plasma_parameter = 20
tau = 10
speed = 2
intervals = 10000
)", o);
  for (const auto& c : r.checks) {
    if (c.name.rfind("diffusion v", 0) == 0) out.push_back(c);
  }
  return out;
}

std::vector<Check> asymptotic(const SuiteOptions& o) {
  char text[256];
  std::snprintf(text, sizeof text, R"(
[experiment]
kind = lorentz-scan
[lorentz-scan]
lambdas = 100, 1000, 10000, 100000
speed = 1
ratio_limit = %g
)", kRatioLimit);
  return run_config(text, o).checks;
}

std::vector<Check> energy(const SuiteOptions& o) {
  std::vector<Check> out;
  lorentz::LorentzParams p;
  p.plasma_parameter = 20.0;
  p.tau = 10.0;

  random::Sampler draw(o.seed, 7);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    Vec3 v(draw.normal(), draw.normal(), draw.normal());
    const Mat6 d = lorentz::lorentz_tensor(v, p);
    Vec6 dh = Vec6::Zero();
    dh.tail(3) = v;
    worst = std::max(worst, (d * dh).cwiseAbs().maxCoeff());
  }
  out.push_back(cli::below("7a max |D_L dH0|", worst, kNullTol));

  const lorentz::IsotropicCovariance cov(p.plasma_parameter, p.delta_reg);
  // |v| tau = 4 Debye lengths.
  const Vec3 v = Vec3(1.0, 2.0, 2.0).normalized() * (4.0 / p.tau);
  out.push_back(cli::within_relative("7b div(D_HL dH0) vs (q/m)^2 C(0)/(|v|^2 tau)",
                                     lorentz::energy_rate_numeric(v, p, cov),
                                     lorentz::energy_rate_asymptotic(v, p, cov), kEnergyRateTol));

  // Mean energy over its mean growth rate for a unit Maxwellian.
  auto weighted_rate = [&](double s) {
    const double density = 4.0 * kPi * s * s * std::exp(-0.5 * s * s) / std::pow(2.0 * kPi, 1.5);
    return density * lorentz::energy_rate_exact(Vec3(0.0, 0.0, s), p, cov);
  };
  std::vector<double> cuts;
  for (double k : cov.breakpoints()) cuts.push_back(k / p.tau);
  const double rate = quad::integrate_adaptive(weighted_rate, 1e-6, 12.0, cuts);
  const double timescale = 1.5 / rate;
  const double expected = p.tau * p.plasma_parameter;
  const double ratio = timescale / expected;
  out.push_back({"7c energy-growth time tau_e / (tau Lambda), Maxwellian", timescale, expected, 0.0,
                 kTimescaleFactor, "1/tolerance <= measured/expected <= tolerance",
                 ratio >= 1.0 / kTimescaleFactor && ratio <= kTimescaleFactor});
  return out;
}

std::vector<Check> witness(const SuiteOptions& o) {
  char text[256];
  std::snprintf(text, sizeof text, R"(
[experiment]
kind = witness
[witness]
plasma_parameter = 20
tau = 10
samples = 20
tolerance = %g
)", kWitnessTol);
  return run_config(text, o).checks;
}

// Largest singular value of the difference of the orthogonal projectors
// onto the column spans of a and b.
double projector_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  auto basis = [](const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    Eigen::Index r = 0;
    while (r < s.size() && s[r] > 1e-10 * s[0]) ++r;
    return Eigen::MatrixXd(svd.matrixU().leftCols(r));
  };
  const Eigen::MatrixXd ua = basis(a), ub = basis(b);
  const Eigen::MatrixXd diff = ua * ua.transpose() - ub * ub.transpose();
  return Eigen::JacobiSVD<Eigen::MatrixXd>(diff).singularValues()[0];
}

double worst_diagonal_error(const coarse::NoiseBasis& basis, const coarse::CovarianceKernel& k,
                            const std::vector<PhasePoint>& points) {
  double worst = 0.0;
  for (const auto& z : points) {
    const StateMatrix exact = k(z, z);
    const double err = (basis.reconstructed_diagonal(z) - exact).norm() / exact.trace();
    worst = std::max(worst, err);
  }
  return worst;
}

std::vector<Check> kl(const SuiteOptions& o) {
  std::vector<Check> out;
  {
    const models::PulseParams p;
    const auto kernel = models::pulse_kernel(p);
    const StateVector lo = StateVector::Constant(6, -1.0), hi = StateVector::Constant(6, 1.0);
    const auto grid = coarse::latin_hypercube(lo, hi, 24, o.seed);
    const auto basis = coarse::kl_decompose(kernel, grid);
    out.push_back({"pulse kernel mode count", double(basis.rank()), 3.0, 0.0, 0.0,
                   "measured == expected", basis.rank() == 3});
    const auto probes = coarse::latin_hypercube(lo, hi, 8, o.seed + 1);
    const auto reference = models::pulse_noise_hamiltonians(p);
    Eigen::MatrixXd found(6 * probes.size(), basis.rank()), known(6 * probes.size(), 3);
    for (std::size_t i = 0; i < probes.size(); ++i) {
      found.middleRows(6 * i, 6) = basis.differentials(probes[i]);
      for (int k = 0; k < 3; ++k) known.block(6 * i, k, 6, 1) = reference[k].gradient(probes[i]);
    }
    out.push_back(cli::below("pulse basis projector distance", projector_distance(found, known),
                             kProjectorTol));
    out.push_back(cli::below("pulse diagonal reconstruction error / trace",
                             worst_diagonal_error(basis, kernel, probes), kDiagonalTol));
  }
  {
    const models::KarneyParams p;
    const auto kernel = models::karney_kernel(p);
    StateVector lo(2), hi(2);
    lo << 0.0, 1.0;
    hi << 2.0 * kPi, 4.0;
    const auto grid = coarse::latin_hypercube(lo, hi, 40, o.seed);
    const auto basis = coarse::kl_decompose(kernel, grid);
    out.push_back({"Karney kernel mode count", double(basis.rank()), 2.0, 0.0, 0.0,
                   "measured == expected", basis.rank() == 2});
    const auto probes = coarse::latin_hypercube(lo, hi, 8, o.seed + 1);
    out.push_back(cli::below("Karney diagonal reconstruction error / trace",
                             worst_diagonal_error(basis, kernel, probes), kDiagonalTol));
  }
  return out;
}

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<Check> reproducibility(const SuiteOptions& o) {
  namespace fs = std::filesystem;
  const std::vector<std::string> configs{
      "[experiment]\nkind = pulse\nparticles = 2000\nrecords = 6\n[pulse]\nmicro_intervals = 1000\n",
      "[experiment]\nkind = karney\nparticles = 2000\n",
      "[experiment]\nkind = two-particle\nparticles = 500\nduration = 5\n",
      "[experiment]\nkind = lorentz-scan\n[lorentz-scan]\nlambdas = 100, 1000\n",
      "[experiment]\nkind = lorentz-micro\n[lorentz-micro]\nintervals = 100\n",
      "[experiment]\nkind = witness\n[witness]\nsamples = 4\n",
  };
  const fs::path root = fs::temp_directory_path() /
                        ("shk-repro-" + std::to_string(std::chrono::steady_clock::now()
                                                           .time_since_epoch()
                                                           .count()));
  std::vector<Check> out;
  SuiteOptions single = o;
  single.workers = 1;
  for (const auto& text : configs) {
    std::vector<fs::path> dirs;
    std::string kind;
    for (int pass = 0; pass < 2; ++pass) {
      const auto report = run_config(text, single);
      kind = report.kind;
      dirs.push_back(root / (kind + "-" + std::to_string(pass)));
      cli::emit(report, dirs.back().string());
    }
    bool same = true;
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      const fs::path other = dirs[1] / entry.path().filename();
      same = same && fs::exists(other) && read_bytes(entry.path()) == read_bytes(other);
      ++files;
    }
    for (const auto& entry : fs::directory_iterator(dirs[1])) {
      same = same && fs::exists(dirs[0] / entry.path().filename());
    }
    out.push_back(cli::holds(kind + ": " + std::to_string(files) + " files byte-identical", same));
  }
  std::error_code ec;
  fs::remove_all(root, ec);
  return out;
}

}  // namespace

bool CriterionResult::passed() const {
  if (!error.empty() || checks.empty()) return false;
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string criterion_title(int id) {
  switch (id) {
    case 1: return "bracket axioms";
    case 2: return "pulse model end to end";
    case 3: return "two-particle distinction";
    case 4: return "Karney diffusion and Bessel accuracy";
    case 5: return "Lorentz oracle chain";
    case 6: return "asymptotic equivalence";
    case 7: return "energy dichotomy";
    case 8: return "non-Hamiltonian witness";
    case 9: return "KL decomposition";
    case 10: return "reproducibility";
    default: throw DomainError("no acceptance criterion " + std::to_string(id));
  }
}

CriterionResult run_criterion(int id, const SuiteOptions& options) {
  CriterionResult r;
  r.id = id;
  r.title = criterion_title(id);
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: r.checks = bracket_axioms(options); break;
      case 2: r.checks = pulse_end_to_end(options); break;
      case 3: r.checks = two_particle(options); break;
      case 4: r.checks = karney(options); break;
      case 5: r.checks = lorentz_chain(options); break;
      case 6: r.checks = asymptotic(options); break;
      case 7: r.checks = energy(options); break;
      case 8: r.checks = witness(options); break;
      case 9: r.checks = kl(options); break;
      case 10: r.checks = reproducibility(options); break;
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<int> suite(const std::string& name) {
  if (name == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  if (name == "quick") return {1, 6, 7, 8, 9};
  int id = 0;
  try {
    std::size_t used = 0;
    id = std::stoi(name, &used);
    if (used != name.size()) id = 0;
  } catch (const std::exception&) {
    id = 0;
  }
  if (id < 1 || id > kCriteria) {
    throw DomainError("unknown suite '" + name + "' (all, quick, or 1.." +
                      std::to_string(kCriteria) + ")");
  }
  return {id};
}

std::string format_result(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "[%s] criterion %d: %s (%.1f s)\n", r.passed() ? "PASS" : "FAIL",
                r.id, r.title.c_str(), r.seconds);
  std::string out = head;
  if (!r.error.empty()) out += "    error: " + r.error + "\n";
  for (const auto& c : r.checks) {
    char line[400];
    std::snprintf(line, sizeof line,
                  "    %-4s %s: measured %.6g expected %.6g stderr %.3g tolerance %.3g (%s)\n",
                  c.pass ? "ok" : "FAIL", c.name.c_str(), c.measured, c.expected,
                  c.standard_error, c.tolerance, c.rule.c_str());
    out += line;
  }
  return out;
}

}  // namespace shk::acceptance
