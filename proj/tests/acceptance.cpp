// Acceptance suite: one criterion per function, one PASS/FAIL line each,
// nonzero exit if anything fails. Tolerances and runtime budgets are fixed
// here, not configurable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cauchylab/config.hpp"
#include "cauchylab/corpus.hpp"
#include "cauchylab/disk2d.hpp"
#include "cauchylab/elliptic1d.hpp"
#include "cauchylab/experiments.hpp"
#include "cauchylab/parallel.hpp"
#include "cauchylab/random.hpp"
#include "cauchylab/report.hpp"
#include "cauchylab/scale.hpp"
#include "cauchylab/subspace.hpp"
#include "support/oracles.hpp"

using namespace cauchylab;
using cauchylab::testsupport::first_bessel_j0_zero;
using cauchylab::testsupport::flat_disk_dtn_oracle;
using cauchylab::testsupport::sampled_inf_ratio;
using cauchylab::testsupport::sampled_sup_distance;

namespace {

constexpr std::uint64_t kSeed = 20250808ULL;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

// 1. The orthogonalization formula: identities to 1e-9 and agreement with
// the orthogonal-projector-onto-image oracle to 1e-8, dims 2-20, both
// inner products, 1000 idempotents.
Outcome criterion_cort() {
  Outcome out;
  const int trials = 1000;
  std::vector<double> identity(trials), oracle(trials);
  parallel_for(trials, [&](std::size_t i) {
    RandomSource rng = RandomSource::for_item(kSeed, 100 + i);
    int dim = 2 + static_cast<int>(i % 19);
    InnerSpace space = corpus_space(rng, dim, i % 2 == 1);
    Projector c = corpus_projector(rng, space,
                                   static_cast<int>(rng.uniform_int(0, dim)));
    Projector o = orthogonalize_projector(c);
    double idem = space.operator_norm(o.table() * o.table() - o.table());
    double co = space.operator_norm(c.table() * o.table() - o.table());
    double oc = space.operator_norm(o.table() * c.table() - c.table());
    CMat wo = space.weight() * o.table() * space.weight_inverse();
    double herm = (wo - wo.adjoint()).cwiseAbs().maxCoeff();
    identity[i] = std::max({idem, co, oc, herm});
    Subspace image = c.image();
    CMat reference = image.basis() * image.basis().adjoint() * space.gram();
    oracle[i] = space.operator_norm(o.table() - reference);
  });
  double worst_identity = 0.0, worst_oracle = 0.0;
  for (int i = 0; i < trials; ++i) {
    worst_identity = std::max(worst_identity, identity[i]);
    worst_oracle = std::max(worst_oracle, oracle[i]);
  }
  out.require(worst_identity <= 1e-9,
              "identity residual " + std::to_string(worst_identity));
  out.require(worst_oracle <= 1e-8, "oracle distance " + std::to_string(worst_oracle));
  if (out.pass) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "identities %.2e, oracle %.2e over 1000 draws",
                  worst_identity, worst_oracle);
    out.detail = buf;
  }
  return out;
}

// 2. Lines at angles pi/12, pi/6, pi/4: gap and angular distance equal
// sin(theta) to 1e-10, cross-checked against the sampling oracles.
Outcome criterion_closed_forms() {
  Outcome out;
  InnerSpace plane = InnerSpace::standard(2);
  CMat e1(2, 1);
  e1 << Complex(1, 0), Complex(0, 0);
  Subspace m(plane, e1);
  double worst = 0.0;
  for (double theta :
       {std::numbers::pi / 12, std::numbers::pi / 6, std::numbers::pi / 4}) {
    CMat dir(2, 1);
    dir << Complex(std::cos(theta), 0), Complex(std::sin(theta), 0);
    Subspace n(plane, dir);
    RandomSource rng(kSeed ^ 7);
    double ghat = gap_hat(m, n);
    double gamma = angular_distance(m, n);
    double oracle_sup = sampled_sup_distance(m, n, rng);
    double oracle_inf = sampled_inf_ratio(m, n, rng);
    worst = std::max({worst, std::abs(ghat - std::sin(theta)),
                      std::abs(gamma - std::sin(theta)),
                      std::abs(ghat - oracle_sup), std::abs(gamma - oracle_inf)});
  }
  out.require(worst <= 1e-10, "deviation " + std::to_string(worst));
  if (out.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max deviation %.2e", worst);
    out.detail = buf;
  }
  return out;
}

// 3. The projector-difference estimate on 1000 random pairs, dims 2-12,
// both inner products, zero violations.
Outcome criterion_estimate() {
  Outcome out;
  const int trials = 1000;
  std::vector<double> violation(trials);
  parallel_for(trials, [&](std::size_t i) {
    RandomSource rng = RandomSource::for_item(kSeed, 2100 + i);
    int dim = 2 + static_cast<int>(i % 11);
    InnerSpace space = corpus_space(rng, dim, i % 2 == 0);
    Projector p = corpus_projector(rng, space,
                                   1 + static_cast<int>(rng.uniform_int(0, dim - 1)));
    Projector q = corpus_projector(rng, space,
                                   1 + static_cast<int>(rng.uniform_int(0, dim - 1)));
    double lhs = space.operator_norm(p.table() - q.table());
    double rhs = projector_norm_estimate(p, q);
    violation[i] = lhs - rhs * (1.0 + 1e-12) - 1e-12;
  });
  double worst = -1e300;
  for (double v : violation) worst = std::max(worst, v);
  out.require(worst <= 0.0, "bound violated by " + std::to_string(worst));
  if (out.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "0 violations, worst margin %.2e", -worst);
    out.detail = buf;
  }
  return out;
}

std::vector<OperatorSpec1D> acceptance_specs() {
  std::vector<OperatorSpec1D> specs(200, OperatorSpec1D{});
  parallel_for(specs.size(), [&](std::size_t i) {
    RandomSource rng = RandomSource::for_item(kSeed, 3100 + i);
    specs[i] = corpus_elliptic_spec(rng, 1 + static_cast<int>(i % 3),
                                    1 + static_cast<int>(i % 2));
  });
  return specs;
}

// 4. Green's form: skew-diagonal formula to 1e-10 and identity residual
// to 1e-9 on 200 random elliptic specs.
Outcome criterion_greens() {
  Outcome out;
  auto specs = acceptance_specs();
  std::vector<double> skew(specs.size()), residual(specs.size());
  parallel_for(specs.size(), [&](std::size_t i) {
    const OperatorSpec1D& a = specs[i];
    RandomSource rng = RandomSource::for_item(kSeed, 3400 + i);
    GreensMatrix j = greens_matrix(a);
    double worst_skew = 0.0;
    for (int k = 0; k < a.order; ++k) {
      Complex phase = std::pow(Complex(0, 1), a.order) *
                      ((a.order - 1 - k) % 2 == 0 ? 1.0 : -1.0);
      worst_skew = std::max(
          worst_skew, (j.block(0, k, a.order - 1 - k) -
                       phase * principal_symbol(a, 0.0, 1.0))
                          .cwiseAbs()
                          .maxCoeff());
      worst_skew = std::max(
          worst_skew, (j.block(1, k, a.order - 1 - k) -
                       phase * principal_symbol(a, 1.0, -1.0))
                          .cwiseAbs()
                          .maxCoeff());
    }
    skew[i] = worst_skew;
    double worst_res = 0.0;
    for (int rep = 0; rep < 3; ++rep) {
      MatPoly u = corpus_section(rng, a.fiber, 4);
      MatPoly v = corpus_section(rng, a.fiber, 4);
      worst_res = std::max(worst_res, greens_identity_residual(a, u, v));
    }
    residual[i] = worst_res;
  });
  double worst_skew = 0.0, worst_res = 0.0;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    worst_skew = std::max(worst_skew, skew[i]);
    worst_res = std::max(worst_res, residual[i]);
  }
  out.require(worst_skew <= 1e-10, "skew diagonal " + std::to_string(worst_skew));
  out.require(worst_res <= 1e-9, "identity residual " + std::to_string(worst_res));
  if (out.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "skew %.2e, residual %.2e", worst_skew, worst_res);
    out.detail = buf;
  }
  return out;
}

// 5. Orthogonal decomposition on the same corpus: orthogonality to 1e-9,
// dimensions dm + dm = 2dm, kernel gap to 1e-8.
Outcome criterion_decomposition() {
  Outcome out;
  auto specs = acceptance_specs();
  std::vector<double> pairing(specs.size()), gap(specs.size());
  std::vector<int> dims_ok(specs.size(), 0);
  parallel_for(specs.size(), [&](std::size_t i) {
    DecompositionReport rep = orthogonal_decomposition_check(specs[i]);
    pairing[i] = rep.max_pairing_residual;
    gap[i] = rep.kernel_image_gap;
    int dm = specs[i].order * specs[i].fiber;
    dims_ok[i] = (rep.dim_lambda == dm && rep.dim_j_lambda_adjoint == dm &&
                  rep.direct_sum_dim == 2 * dm)
                     ? 1
                     : 0;
  });
  double worst_pairing = 0.0, worst_gap = 0.0;
  bool all_dims = true;
  for (std::size_t i = 0; i < specs.size(); ++i) {
    worst_pairing = std::max(worst_pairing, pairing[i]);
    worst_gap = std::max(worst_gap, gap[i]);
    all_dims = all_dims && dims_ok[i] == 1;
  }
  out.require(all_dims, "decomposition dimensions are off");
  out.require(worst_pairing <= 1e-9, "pairing residual " + std::to_string(worst_pairing));
  out.require(worst_gap <= 1e-8, "kernel gap " + std::to_string(worst_gap));
  if (out.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "pairing %.2e, kernel gap %.2e", worst_pairing,
                  worst_gap);
    out.detail = buf;
  }
  return out;
}

// 6. Continuity of the 1D family A_b = -d2 + b q(x), q of degree 3, at
// b0 = 0.5: factor >= 5 decrease per grid refinement, below 1e-2 at 1e-3.
Outcome criterion_sweep() {
  Outcome out;
  auto family = [](double b) {
    // q(x) = 1 + x - 2x^2 + x^3
    std::vector<MatPoly> coeffs = {
        MatPoly::scalar({Complex(b, 0), Complex(b, 0), Complex(-2 * b, 0), Complex(b, 0)}),
        MatPoly::scalar({Complex(0, 0)}), MatPoly::scalar({Complex(-1, 0)})};
    return make_operator(2, 1, std::move(coeffs));
  };
  const double b0 = 0.5;
  std::vector<double> steps = {1e-1, 1e-2, 1e-3};
  std::vector<double> grid;
  for (double h : steps) {
    grid.push_back(b0 - h);
    grid.push_back(b0 + h);
  }
  auto rows = family_sweep_1d(family, b0, grid);
  std::vector<double> value(steps.size());
  for (std::size_t si = 0; si < steps.size(); ++si)
    value[si] = std::max(rows[2 * si].projector_distance,
                         rows[2 * si + 1].projector_distance);
  out.require(value[0] >= 5.0 * value[1], "refinement 1e-1 to 1e-2 below factor 5");
  out.require(value[1] >= 5.0 * value[2], "refinement 1e-2 to 1e-3 below factor 5");
  out.require(value[2] < 1e-2, "distance at step 1e-3 is " + std::to_string(value[2]));
  if (out.pass) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "distances %.3e / %.3e / %.3e", value[0], value[1],
                  value[2]);
    out.detail = buf;
  }
  return out;
}

// 7. Disk DtN values: |k| for the flat disk to 1e-9 up to |k| = 50, and
// the b = 4 value against the Bessel oracle to 1e-8.
Outcome criterion_disk_dtn() {
  Outcome out;
  RadialOperatorSpec flat;
  flat.potential = {0.0};
  flat.shift = 0.0;
  flat.modes = 50;
  std::vector<ModeModel> models = dtn_map(flat);
  double worst = 0.0;
  for (const auto& m : models)
    worst = std::max(worst, std::abs(m.dtn - std::abs(m.mode)));
  out.require(worst <= 1e-9, "flat DtN deviation " + std::to_string(worst));

  RadialBoundaryData data = radial_solution(0, {0.0}, 4.0);
  double dtn = data.dvalue / data.value;
  double oracle = flat_disk_dtn_oracle(4.0);
  out.require(std::abs(dtn - oracle) <= 1e-8,
              "b=4 DtN off oracle by " + std::to_string(std::abs(dtn - oracle)));
  if (out.pass) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "flat max %.2e; lambda0(4) = %.6f vs %.6f", worst,
                  dtn, oracle);
    out.detail = buf;
  }
  return out;
}

// 8. Continuity through the Dirichlet eigenvalue b0 = j01^2: projector
// norm distance <= 10|b-b0| for |b-b0| <= 0.1 at s in {-1,0,1}, DtN
// magnitude above 1e3 within 1e-3, s-spread below 1e-12.
Outcome criterion_crossing() {
  Outcome out;
  std::vector<double> offsets = {-0.1, -0.03, -0.01, -0.003, -0.001, -0.0001,
                                 0.0001, 0.001,  0.003, 0.01,  0.03,  0.1};
  CrossingReport report = eigenvalue_crossing_experiment(
      {0.0}, 5.2, 6.2, offsets, 32, {-1.0, 0.0, 1.0});

  double j01 = first_bessel_j0_zero();
  out.require(std::abs(report.located_pole - j01 * j01) <= 1e-8,
              "pole located at " + std::to_string(report.located_pole));

  double worst_lipschitz = -1e300;
  for (const auto& row : report.rows) {
    double dist = std::abs(row.b - report.located_pole);
    if (dist > 0.0 && dist <= 0.1 + 1e-12)
      worst_lipschitz = std::max(worst_lipschitz, row.norm_distance - 10.0 * dist);
  }
  out.require(worst_lipschitz <= 0.0, "Lipschitz bound violated");

  double min_blowup = 1e300;
  for (const auto& s : report.samples)
    if (s.abs_offset > 0.0 && s.abs_offset <= 1e-3 + 1e-15)
      min_blowup = std::min(min_blowup, s.pole_dtn_abs);
  out.require(min_blowup > 1e3, "DtN magnitude only " + std::to_string(min_blowup));

  out.require(report.max_s_spread < 1e-12,
              "s-spread " + std::to_string(report.max_s_spread));
  if (out.pass) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "pole %.9f, min |dtn| %.3e inside 1e-3, s-spread %.1e",
                  report.located_pole, min_blowup, report.max_s_spread);
    out.detail = buf;
  }
  return out;
}

// 9. Duality and interpolation on 1000 random level-0 self-adjoint
// operators with K <= 16, five triples each, zero violations.
Outcome criterion_scale() {
  Outcome out;
  const int trials = 1000;
  std::vector<double> duality(trials), interp(trials);
  const double levels[3] = {0.5, 1.0, 2.7};
  parallel_for(trials, [&](std::size_t i) {
    RandomSource rng = RandomSource::for_item(kSeed, 9100 + i);
    ScaleOperator t = corpus_hermitian_operator(rng, 16, 2);
    auto [minus, plus] = duality_check(t, levels[i % 3]);
    duality[i] = std::abs(minus - plus) / std::max(1.0, plus);
    double worst = -1e300;
    for (int j = 0; j < 5; ++j) {
      double a = rng.uniform(-3.0, 3.0);
      double b = rng.uniform(-3.0, 3.0);
      double c = rng.uniform(-3.0, 3.0);
      double s0 = std::min({a, b, c}), s1 = std::max({a, b, c});
      double s = a + b + c - s0 - s1;
      if (s1 - s0 < 1e-3 || s - s0 < 1e-4 || s1 - s < 1e-4) {
        s0 = -1.0;
        s = 0.0;
        s1 = 1.0;
      }
      auto [lhs, rhs] = interpolation_check(t, s0, s, s1);
      worst = std::max(worst, lhs - rhs * (1.0 + 1e-10) - 1e-14);
    }
    interp[i] = worst;
  });
  double worst_duality = 0.0, worst_interp = -1e300;
  for (int i = 0; i < trials; ++i) {
    worst_duality = std::max(worst_duality, duality[i]);
    worst_interp = std::max(worst_interp, interp[i]);
  }
  out.require(worst_duality <= 1e-10, "duality defect " + std::to_string(worst_duality));
  out.require(worst_interp <= 0.0, "interpolation violated");
  if (out.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "duality %.2e, 0 interpolation violations",
                  worst_duality);
    out.detail = buf;
  }
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 10. The full verify suite: all assertions green, byte-identical on a
// rerun with the same seed, under the two-minute budget.
Outcome criterion_verify() {
  Outcome out;
  Config config = Config::parse_string(default_config_text("verify-all"), "<verify>");

  auto t0 = std::chrono::steady_clock::now();
  Report first = run_experiment(config);
  auto t1 = std::chrono::steady_clock::now();
  double seconds = std::chrono::duration<double>(t1 - t0).count();

  out.require(first.pass(), "verify suite has failing assertions");
  out.require(seconds < 120.0, "verify took " + std::to_string(seconds) + " s");

  Report second = run_experiment(config);
  auto dir1 = std::filesystem::temp_directory_path() / "cauchylab-acc-v1";
  auto dir2 = std::filesystem::temp_directory_path() / "cauchylab-acc-v2";
  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
  write_report(first, dir1);
  write_report(second, dir2);
  for (const auto& entry : std::filesystem::directory_iterator(dir1)) {
    auto other = dir2 / entry.path().filename();
    bool same = std::filesystem::exists(other) &&
                slurp(entry.path()) == slurp(other);
    out.require(same, "rerun differs in " + entry.path().filename().string());
  }
  if (out.pass) {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "%zu assertions green, %.1f s, rerun byte-identical",
                  first.assertions.size(), seconds);
    out.detail = buf;
  }
  return out;
}

} // namespace

int main() {
  struct Entry {
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> criteria = {
      {"C1 orthogonalized projector formula", 5.0, criterion_cort},
      {"C2 gap and angular distance closed forms", 1.0, criterion_closed_forms},
      {"C3 projector difference estimate", 5.0, criterion_estimate},
      {"C4 Green's form", 30.0, criterion_greens},
      {"C5 orthogonal decomposition", 30.0, criterion_decomposition},
      {"C6 1D family continuity", 20.0, criterion_sweep},
      {"C7 disk DtN values", 10.0, criterion_disk_dtn},
      {"C8 continuity through a DtN pole", 20.0, criterion_crossing},
      {"C9 duality and interpolation", 10.0, criterion_scale},
      {"C10 verify suite deterministic and fast", 240.0, criterion_verify},
  };

  int failures = 0;
  for (const auto& entry : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = entry.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    auto stop = std::chrono::steady_clock::now();
    double seconds = std::chrono::duration<double>(stop - start).count();
    if (seconds > entry.budget_seconds) {
      outcome.pass = false;
      outcome.detail += " [over budget " + std::to_string(entry.budget_seconds) + " s]";
    }
    std::printf("%s  %-45s (%6.2f s)  %s\n", outcome.pass ? "PASS" : "FAIL",
                entry.name, seconds, outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
