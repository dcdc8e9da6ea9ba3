#include "cauchylab/disk2d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cauchylab/ode.hpp"
#include "cauchylab/parallel.hpp"

namespace cauchylab {

namespace {

double eval_potential(const std::vector<double>& coeffs, double r) {
  double acc = 0.0;
  for (std::size_t p = coeffs.size(); p-- > 0;) acc = acc * r + coeffs[p];
  return acc;
}

double spectral_norm_2x2_sym(const Eigen::Matrix2d& s) {
  double mean = 0.5 * (s(0, 0) + s(1, 1));
  double radius = std::hypot(0.5 * (s(0, 0) - s(1, 1)), 0.5 * (s(0, 1) + s(1, 0)));
  return std::max(std::abs(mean + radius), std::abs(mean - radius));
}

Eigen::Vector2d homogenized_line_from(int k, double value, double dvalue) {
  double w = std::pow(1.0 + static_cast<double>(k) * k, 0.25);
  Eigen::Vector2d line(w * value, -dvalue / w);
  double n = line.norm();
  if (n == 0.0)
    throw std::runtime_error("disk2d: vanishing Cauchy data at the boundary");
  line /= n;
  // Deterministic representative of the projective line.
  int lead = std::abs(line(0)) >= std::abs(line(1)) ? 0 : 1;
  if (line(lead) < 0.0) line = -line;
  return line;
}

} // namespace

RadialBoundaryData radial_solution(int k, const std::vector<double>& potential,
                                   double shift, double tol) {
  int nu = std::abs(k);
  // Substituting u = r^ν w removes both the r^ν scale and the indicial
  // singularity: w'' + (2ν+1) w'/r = (V − b) w, with w(0) = 1 and the
  // two-term Frobenius start w ≈ 1 + c r², c = (V(0) − b)/(4(ν+1)).
  const double start = 1e-6;
  double c = (eval_potential(potential, 0.0) - shift) / (4.0 * (nu + 1.0));
  RVec y(2);
  y(0) = 1.0 + c * start * start;
  y(1) = 2.0 * c * start;

  auto rhs = [nu, &potential, shift](double r, const RVec& w) {
    RVec dw(2);
    dw(0) = w(1);
    dw(1) = -(2.0 * nu + 1.0) * w(1) / r +
            (eval_potential(potential, r) - shift) * w(0);
    return dw;
  };

  OdeOptions opt;
  opt.abs_tol = tol;
  opt.rel_tol = tol;
  opt.initial_step = start / 16.0;
  RVec end = integrate_rk45<RVec>(rhs, start, 1.0, y, opt);

  RadialBoundaryData out;
  out.value = end(0);                 // u(1) = w(1)
  out.dvalue = nu * end(0) + end(1);  // u'(1) = ν w(1) + w'(1)
  if (std::abs(out.value) < 1e-13 && std::abs(out.dvalue) < 1e-13)
    throw std::runtime_error("radial_solution: boundary value and derivative both vanish");
  return out;
}

ModeModel mode_model(int k, const RadialOperatorSpec& spec) {
  RadialBoundaryData data = radial_solution(k, spec.potential, spec.shift);
  ModeModel model;
  model.mode = k;
  double scale = std::max(std::abs(data.value), std::abs(data.dvalue));
  model.pole = std::abs(data.value) <= 1e-13 * scale;
  model.dtn = model.pole ? std::numeric_limits<double>::infinity()
                         : data.dvalue / data.value;
  model.homogenized_line = model.pole ? Eigen::Vector2d(0.0, 1.0)
                                      : homogenized_line_from(k, data.value, data.dvalue);
  return model;
}

std::vector<ModeModel> dtn_map(const RadialOperatorSpec& spec) {
  int K = spec.modes;
  std::vector<ModeModel> models(2 * K + 1);
  // λ_{−k} = λ_k for radial potentials; solve k ≥ 0 and mirror.
  parallel_for(K + 1, [&](std::size_t idx) {
    int k = static_cast<int>(idx);
    ModeModel m = mode_model(k, spec);
    models[k + K] = m;
    if (k > 0) {
      ModeModel mneg = m;
      mneg.mode = -k;
      models[-k + K] = mneg;
    }
  });
  return models;
}

CalderonBlocks calderon_blocks(const RadialOperatorSpec& spec, int tail_probes) {
  std::vector<ModeModel> models = dtn_map(spec);
  CalderonBlocks out;
  out.modes = spec.modes;
  out.blocks.resize(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    const Eigen::Vector2d& v = models[i].homogenized_line;
    out.blocks[i] = v * v.transpose();
  }

  // Tail: homogenized lines approach span{(1,−1)} as |k| grows since
  // λ_k = |k| + O(1); measure the c/|k| constant on probe modes.
  Eigen::Vector2d limit(1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0));
  Eigen::Matrix2d limit_block = limit * limit.transpose();
  double c = 0.0;
  for (int probe = 1; probe <= tail_probes; ++probe) {
    int k = spec.modes + probe;
    ModeModel m = mode_model(k, spec);
    Eigen::Matrix2d diff =
        m.homogenized_line * m.homogenized_line.transpose() - limit_block;
    c = std::max(c, spectral_norm_2x2_sym(diff) * k);
  }
  out.truncation_tail_bound = c / (spec.modes + 1.0);
  return out;
}

double block_norm_distance(const CalderonBlocks& a, const CalderonBlocks& b,
                           double s) {
  if (a.modes != b.modes)
    throw std::invalid_argument("block_norm_distance: mode cutoffs differ");
  double sup = 0.0;
  for (int k = -a.modes; k <= a.modes; ++k) {
    // Mode-k conjugation by the H^s isometry is the scalar
    // (1+k²)^{s/2}·(1+k²)^{−s/2}; applied literally so s enters the
    // computation, mathematically it is 1.
    double w = std::pow(1.0 + static_cast<double>(k) * k, s / 2.0);
    double winv = std::pow(1.0 + static_cast<double>(k) * k, -s / 2.0);
    Eigen::Matrix2d diff = (w * winv) * (a.block(k) - b.block(k));
    sup = std::max(sup, spectral_norm_2x2_sym(diff));
  }
  return sup;
}

double cauchy_gap_s(const std::vector<ModeModel>& a,
                    const std::vector<ModeModel>& b, double s) {
  if (a.size() != b.size())
    throw std::invalid_argument("cauchy_gap_s: mode cutoffs differ");
  double sup = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    int k = a[i].mode;
    double w = std::pow(1.0 + static_cast<double>(k) * k, s / 2.0);
    double winv = std::pow(1.0 + static_cast<double>(k) * k, -s / 2.0);
    double cosine = (w * winv) * a[i].homogenized_line.dot(b[i].homogenized_line);
    double sine2 = std::max(0.0, 1.0 - cosine * cosine);
    sup = std::max(sup, std::sqrt(sine2));
  }
  return sup;
}

double dirichlet_eigenvalue_near(const std::vector<double>& potential, int k,
                                 double lo, double hi, double tol) {
  auto value_at = [&](double b) {
    return radial_solution(k, potential, b).value;
  };
  const int scan = 64;
  double a = lo, fa = value_at(a);
  double bracket_lo = 0.0, bracket_hi = 0.0;
  bool found = false;
  for (int i = 1; i <= scan; ++i) {
    double b = lo + (hi - lo) * i / scan;
    double fb = value_at(b);
    if (fa == 0.0) return a;
    if (fa * fb < 0.0) {
      bracket_lo = a;
      bracket_hi = b;
      found = true;
      break;
    }
    a = b;
    fa = fb;
  }
  if (!found)
    throw std::runtime_error("dirichlet_eigenvalue_near: no sign change in the given interval");
  double fa2 = value_at(bracket_lo);
  while (bracket_hi - bracket_lo > tol) {
    double mid = 0.5 * (bracket_lo + bracket_hi);
    double fm = value_at(mid);
    if (fm == 0.0) return mid;
    if (fa2 * fm < 0.0) {
      bracket_hi = mid;
    } else {
      bracket_lo = mid;
      fa2 = fm;
    }
  }
  return 0.5 * (bracket_lo + bracket_hi);
}

CrossingReport eigenvalue_crossing_experiment(
    const std::vector<double>& potential, double pole_lo, double pole_hi,
    const std::vector<double>& offsets, int modes,
    const std::vector<double>& s_list, int pole_mode) {
  CrossingReport report;
  report.pole_mode = pole_mode;
  report.located_pole =
      dirichlet_eigenvalue_near(potential, pole_mode, pole_lo, pole_hi);

  RadialOperatorSpec base;
  base.potential = potential;
  base.shift = report.located_pole;
  base.modes = modes;
  std::vector<ModeModel> base_models = dtn_map(base);
  CalderonBlocks base_blocks = calderon_blocks(base);
  report.pole_block_at_b0 = base_blocks.block(pole_mode);

  const int tail_probes = 8;
  std::vector<ModeModel> base_tail(tail_probes);
  for (int p = 0; p < tail_probes; ++p)
    base_tail[p] = mode_model(modes + 1 + p, base);

  struct Slot {
    std::vector<CrossingRow> rows;
    CrossingSample sample;
  };
  std::vector<Slot> slots(offsets.size());

  parallel_for(offsets.size(), [&](std::size_t i) {
    double b = report.located_pole + offsets[i];
    RadialOperatorSpec spec = base;
    spec.shift = b;
    std::vector<ModeModel> models = dtn_map(spec);
    CalderonBlocks blocks = calderon_blocks(spec);

    Slot& slot = slots[i];
    slot.sample.b = b;
    slot.sample.abs_offset = std::abs(offsets[i]);
    bool any_pole = false;
    for (const auto& m : models)
      if (m.pole || std::abs(m.dtn) > 1e8) any_pole = true;
    const ModeModel& pm = models[pole_mode + modes];
    slot.sample.pole_dtn_abs = pm.pole ? std::numeric_limits<double>::infinity()
                                       : std::abs(pm.dtn);

    double lo_norm = std::numeric_limits<double>::infinity();
    double hi_norm = 0.0;
    for (double s : s_list) {
      CrossingRow row;
      row.b = b;
      row.s = s;
      row.norm_distance = block_norm_distance(blocks, base_blocks, s);
      row.gap = cauchy_gap_s(models, base_models, s);
      row.pole_mode_flag = any_pole;
      slot.rows.push_back(row);
      lo_norm = std::min(lo_norm, row.norm_distance);
      hi_norm = std::max(hi_norm, row.norm_distance);
    }
    slot.sample.s_spread = hi_norm - lo_norm;

    double tail_c = 0.0;
    for (int p = 0; p < tail_probes; ++p) {
      int k = modes + 1 + p;
      ModeModel m = mode_model(k, spec);
      Eigen::Matrix2d diff =
          m.homogenized_line * m.homogenized_line.transpose() -
          base_tail[p].homogenized_line * base_tail[p].homogenized_line.transpose();
      double c = spectral_norm_2x2_sym(diff) * k / std::max(1e-300, slot.sample.abs_offset);
      tail_c = std::max(tail_c, c);
    }
    slot.sample.tail_constant = tail_c;
    slot.sample.tail_bound = tail_c * slot.sample.abs_offset / (modes + 1.0);
  });

  for (const auto& slot : slots) {
    for (const auto& row : slot.rows) report.rows.push_back(row);
    report.samples.push_back(slot.sample);
    report.max_s_spread = std::max(report.max_s_spread, slot.sample.s_spread);
    report.tail_constant = std::max(report.tail_constant, slot.sample.tail_constant);
    report.max_tail_bound = std::max(report.max_tail_bound, slot.sample.tail_bound);
  }
  return report;
}

} // namespace cauchylab
