// SPDX-License-Identifier: Apache-2.0
#include "torusflux/cli/run.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "torusflux/algebra/pairings.hpp"
#include "torusflux/common.hpp"
#include "torusflux/flows/isotopy.hpp"
#include "torusflux/groupoid/flux.hpp"
#include "torusflux/groupoid/holonomy.hpp"
#include "torusflux/groupoid/integral_maps.hpp"
#include "torusflux/groupoid/model.hpp"
#include "torusflux/spectral/expr.hpp"

namespace torusflux::cli {
namespace {

using algebra::CohomologyClass;
using groupoid::Bisection;
using groupoid::FluxOptions;
using groupoid::GroupoidModel;
using spectral::OneForm;
using spectral::PoissonTensor;
using spectral::TrigPoly;

struct Effective {
  int steps = 0;
  int grid = 0;
  double tolerance = 0.0;
};

Effective effective(const Scenario& s, const TaskDesc& t, const RunOptions& o,
                    double default_tol) {
  Effective e;
  e.steps = o.steps > 0 ? o.steps : (t.steps > 0 ? t.steps : kDefaultTimeSteps);
  e.grid = o.grid > 0 ? o.grid : s.grid;
  e.tolerance = o.tolerance > 0.0
                    ? o.tolerance
                    : (t.tolerance > 0.0 ? t.tolerance : default_tol);
  return e;
}

GroupoidModel build_model(const Scenario& s) {
  if (s.has_symplectic) return GroupoidModel::symplectic_torus(s.omega);
  return GroupoidModel::zero_poisson(s.dim);
}

PoissonTensor build_pi(const Scenario& s) {
  if (s.has_symplectic) return build_model(s).pi();
  if (s.poisson_zero) return PoissonTensor::zero(s.dim);
  std::vector<TrigPoly> upper;
  upper.reserve(s.poisson_upper.size());
  for (const auto& e : s.poisson_upper)
    upper.push_back(spectral::parse_expression(e, s.dim));
  return PoissonTensor::from_upper(s.dim, std::move(upper));
}

// The advection lattice resolves the flow map, not the report grid; it
// tracks the resolution override within guard rails.
int advect_lattice(int grid) { return std::clamp(grid / 4, 32, 128); }

std::unique_ptr<flows::Isotopy> build_isotopy(const GroupoidModel& model,
                                              const IsotopyDesc& d, int steps,
                                              int grid) {
  const int n = model.dim();
  if (d.kind == "translation")
    return std::make_unique<flows::TranslationIsotopy>(d.numbers);
  if (d.kind == "shear") {
    const int axis = static_cast<int>(std::llround(d.numbers.at(0)));
    return std::make_unique<flows::ShearIsotopy>(
        axis, spectral::parse_expression(d.exprs.at(0), n));
  }
  if (d.kind == "hamiltonian") {
    const TrigPoly f = spectral::parse_expression(d.exprs.at(0), n);
    return std::make_unique<flows::FlowIsotopy>(
        spectral::sharp(model.pi(), spectral::d(f)), steps,
        advect_lattice(grid));
  }
  OneForm theta;
  theta.reserve(d.exprs.size());
  for (const auto& e : d.exprs)
    theta.push_back(spectral::parse_expression(e, n));
  return groupoid::exp_bisection_path(theta, model, steps);
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

// What the declared family pins down without running anything: the flux
// of a family with mean velocity c is the class of c contracted into
// omega; hamiltonian families have none; an exp path realizes its class.
std::vector<double> closed_form_flux(const GroupoidModel& model,
                                     const IsotopyDesc& d) {
  const int n = model.dim();
  Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
  if (d.kind == "translation") {
    Eigen::VectorXd c =
        Eigen::Map<const Eigen::VectorXd>(d.numbers.data(), n);
    f = -model.omega() * c;
  } else if (d.kind == "shear") {
    const int axis = static_cast<int>(std::llround(d.numbers.at(0)));
    const double mean =
        spectral::parse_expression(d.exprs.at(0), n).mean();
    f = -model.omega() * (mean * Eigen::VectorXd::Unit(n, axis));
  } else if (d.kind == "closed_form") {
    for (int i = 0; i < n; ++i)
      f(i) = spectral::parse_expression(d.exprs.at(static_cast<std::size_t>(i)), n).mean();
  }  // hamiltonian: zero
  return to_std(f);
}

Agreement agree(std::string name, double deviation, double tolerance) {
  return Agreement{std::move(name), deviation, tolerance,
                   deviation < tolerance};
}

double inf_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::string winding_tag(const std::vector<int>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += '_';
    s += std::to_string(w[i]);
  }
  return s;
}

TaskResult flux_task(const Scenario& s, const TaskDesc& t,
                     const RunOptions& o) {
  TaskResult res;
  res.index = t.index;
  res.type = t.type;
  const Effective e = effective(s, t, o, 1e-6);
  const GroupoidModel model = build_model(s);
  const IsotopyDesc& desc = *t.isotopy;
  auto iso = build_isotopy(model, desc, e.steps, e.grid);

  FluxOptions fopts;
  fopts.steps = e.steps;

  // (a) quadrature over lifts materialized on the time grid, velocities
  // recovered by differencing: no closed-form knowledge enters.
  const flows::SampledIsotopy sampled = flows::sample_isotopy(*iso, e.steps);
  const groupoid::FluxResult fa = groupoid::flux(model, sampled, fopts);

  // (b) endpoint only, through the pairing: mu^{-1} lambda(L_1).
  const Bisection endpoint =
      Bisection::from_lift(model, iso->lift_at(1.0), 1e-6);
  const CohomologyClass fb = groupoid::flux_via_lambda(model, endpoint);

  // (c) what the family declaration already determines.
  const std::vector<double> fc = closed_form_flux(model, desc);
  const std::vector<double> fav = to_std(fa.value.coeffs);
  const std::vector<double> fbv = to_std(fb.coeffs);

  res.pipelines.push_back({"sampled_time_integral", fav});
  res.pipelines.push_back({"endpoint_mu_inverse_lambda", fbv});
  res.pipelines.push_back({"family_closed_form", fc});

  res.agreements.push_back(
      agree("sampled_vs_endpoint", inf_diff(fav, fbv), e.tolerance));
  res.agreements.push_back(
      agree("sampled_vs_closed_form", inf_diff(fav, fc), e.tolerance));
  res.agreements.push_back(
      agree("endpoint_vs_closed_form", inf_diff(fbv, fc), e.tolerance));

  res.scalars.push_back({"max_closedness", fa.max_closedness});
  res.scalars.push_back({"max_aliasing", fa.max_aliasing});
  res.scalars.push_back({"quad_check", fa.quad_check});
  res.scalars.push_back({"endpoint_gate_residual", endpoint.gate_residual()});

  // Every node for families with cheap lifts; a coarse sweep when each
  // lift costs an advection sweep.
  const bool flow_backed =
      dynamic_cast<const flows::FlowIsotopy*>(iso.get()) != nullptr ||
      desc.kind == "hamiltonian";
  const int stride = flow_backed ? std::max(1, e.steps / 20) : 1;
  double worst_sympl = 0.0;
  for (int j = 0; j < sampled.nslices(); j += stride)
    worst_sympl = std::max(
        worst_sympl, flows::symplecto_residual(model.omega(), sampled.slice(j)));
  worst_sympl = std::max(
      worst_sympl, flows::symplecto_residual(model.omega(),
                                             sampled.slice(sampled.nslices() - 1)));
  res.scalars.push_back({"max_symplecto_residual", worst_sympl});

  if (t.prefixes > 0) {
    const groupoid::ExactnessReport verdict = groupoid::exactness_verdict(
        model, *iso, e.tolerance, t.prefixes, fopts);
    res.pipelines.push_back({"prefix_norms", verdict.prefix_norms});
    res.pipelines.push_back({"endpoint_holonomy", verdict.endpoint_holonomy});
    if (desc.kind == "hamiltonian") {
      double worst = 0.0;
      for (double p : verdict.prefix_norms) worst = std::max(worst, p);
      res.agreements.push_back(
          agree("prefix_fluxes_vanish", worst, e.tolerance));
      double worst_h = 0.0;
      for (double h : verdict.endpoint_holonomy)
        worst_h = std::max(worst_h, groupoid::circle_dist(h, 0.0));
      res.agreements.push_back(agree("endpoint_holonomy_trivial", worst_h,
                                     std::max(e.tolerance, 1e-6)));
    }
    if (desc.kind == "closed_form") {
      double dev = 0.0;
      for (std::size_t j = 0; j < verdict.times.size(); ++j) {
        const Eigen::VectorXd& pf = verdict.prefix_fluxes[j].coeffs;
        for (int i = 0; i < pf.size(); ++i)
          dev = std::max(dev, std::abs(pf(i) - verdict.times[j] *
                                                   fc[static_cast<std::size_t>(i)]));
      }
      res.agreements.push_back(
          agree("prefix_flux_linearity", dev, e.tolerance));
    }
    res.notes.push_back(
        verdict.hamiltonian_path
            ? "every prefix flux vanishes: the family is a hamiltonian path"
            : "nonvanishing prefix flux: the family is not a hamiltonian path");
  }
  res.notes.push_back("family kind: " + desc.kind);
  return res;
}

TaskResult holonomy_task(const Scenario& s, const TaskDesc& t,
                         const RunOptions& o) {
  TaskResult res;
  res.index = t.index;
  res.type = t.type;
  const Effective e = effective(s, t, o, 1e-6);
  const GroupoidModel model = build_model(s);
  auto iso = build_isotopy(model, *t.isotopy, e.steps, e.grid);

  FluxOptions fopts;
  fopts.steps = e.steps;
  const groupoid::FluxResult fr = groupoid::flux(model, *iso, fopts);
  const Bisection endpoint =
      Bisection::from_lift(model, iso->lift_at(1.0), 1e-6);
  const int quad = std::max(512, e.grid);

  std::vector<double> rhos;
  std::vector<double> phis;
  for (const auto& w : t.loops) {
    const double r = groupoid::rho(fr.value, w);
    const double p = groupoid::holonomy_phi(model, endpoint, w, {}, quad);
    rhos.push_back(r);
    phis.push_back(p);
    res.agreements.push_back(agree("rho_vs_phi_loop_" + winding_tag(w),
                                   groupoid::circle_dist(r, p), e.tolerance));
  }
  res.pipelines.push_back({"rho_flux", rhos});
  res.pipelines.push_back({"holonomy_phi", phis});
  res.scalars.push_back({"quad_check", fr.quad_check});
  res.scalars.push_back({"endpoint_gate_residual", endpoint.gate_residual()});
  res.notes.push_back("family kind: " + t.isotopy->kind);
  return res;
}

TaskResult pair_task(const Scenario& s, const TaskDesc& t,
                     const RunOptions& o) {
  TaskResult res;
  res.index = t.index;
  res.type = t.type;
  const Effective e = effective(s, t, o, 1e-10);
  const PoissonTensor pi = build_pi(s);
  pi.require_poisson();
  res.scalars.push_back({"jacobi_residual", pi.jacobi_residual()});

  const Eigen::MatrixXd m = algebra::mu_matrix(pi);
  res.matrices.push_back({"mu", m});
  const double skew = (m + m.transpose()).cwiseAbs().maxCoeff();
  res.agreements.push_back(agree("mu_antisymmetric", skew, e.tolerance));

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const double smin = svd.singularValues().minCoeff();
  res.scalars.push_back({"mu_det", m.determinant()});
  res.scalars.push_back({"mu_min_singular_value", smin});
  // Deviation from invertibility: the norm of the inverse must be bounded.
  res.agreements.push_back(
      agree("mu_inverse_bounded", 1.0 / std::max(smin, 1e-300), 1e12));
  res.notes.push_back(smin > 1e-12 ? "mu invertible: yes"
                                   : "mu invertible: no");

  if (s.has_symplectic) {
    const Eigen::MatrixXd sg = algebra::sigma_matrix(s.omega);
    res.matrices.push_back({"sigma", sg});
    res.agreements.push_back(
        agree("sigma_antisymmetric",
              (sg + sg.transpose()).cwiseAbs().maxCoeff(), e.tolerance));
    double lo = 0.0, hi = 0.0, sum = 0.0, off = 0.0;
    int count = 0;
    for (int i = 0; i < m.rows(); ++i)
      for (int j = i + 1; j < m.cols(); ++j) {
        if (std::abs(m(i, j)) > 1e-12) {
          const double r = sg(i, j) / m(i, j);
          if (count == 0) lo = hi = r;
          lo = std::min(lo, r);
          hi = std::max(hi, r);
          sum += r;
          ++count;
        } else {
          off = std::max(off, std::abs(sg(i, j)));
        }
      }
    res.agreements.push_back(
        agree("sigma_mu_ratio_spread", count ? hi - lo : 0.0, e.tolerance));
    res.agreements.push_back(agree("sigma_vanishes_with_mu", off, e.tolerance));
    res.scalars.push_back(
        {"sigma_mu_ratio", count ? sum / count : 0.0});
  }
  return res;
}

std::vector<std::pair<std::string, std::string>> provenance_entries(
    const Scenario* s) {
  std::vector<std::pair<std::string, std::string>> p;
  p.emplace_back("version", "0.1.0");
  p.emplace_back("pi_convention", "pi = -omega^{-1} on the symplectic torus");
  p.emplace_back("flux_normalization",
                 "the exp path of a closed one-form has prefix flux T [theta]");
  p.emplace_back("holonomy_primitive",
                 "theta_conn = (omega p) . dx on the identity chart");
  p.emplace_back("lambda_chart_sign",
                 "lambda(L) = +mean displacement; epsilon = -lambda");
  p.emplace_back("mu_slot_order", "<mu(c), [xi]> = integral of pi(c, xi)");
  p.emplace_back("quadrature", "composite simpson, step-halving checked");
  p.emplace_back("bandwidth_cap", std::to_string(kBandwidthCap));
  p.emplace_back("default_grid", std::to_string(kDefaultGrid));
  p.emplace_back("default_steps", std::to_string(kDefaultTimeSteps));
  p.emplace_back("seed", "12345");
  if (s) {
    p.emplace_back("scenario_dim", std::to_string(s->dim));
    p.emplace_back("scenario_grid", std::to_string(s->grid));
  }
  return p;
}

}  // namespace

Report run_scenario(const Scenario& s, const RunOptions& opts) {
  Report rep;
  for (const TaskDesc& t : s.tasks) {
    try {
      if (t.type == "flux") {
        rep.tasks.push_back(flux_task(s, t, opts));
      } else if (t.type == "pair") {
        rep.tasks.push_back(pair_task(s, t, opts));
      } else if (t.type == "holonomy") {
        rep.tasks.push_back(holonomy_task(s, t, opts));
      } else {  // verify
        TaskResult r;
        r.index = t.index;
        r.type = t.type;
        if (!rep.suite) {
          rep.suite = verify_suite(&s);
          r.notes.push_back("invariant suite executed; see the suite section");
        } else {
          r.notes.push_back("invariant suite already executed by an earlier task");
        }
        rep.tasks.push_back(std::move(r));
      }
    } catch (const NumericalError&) {
      throw;
    } catch (const std::exception& ex) {
      throw NumericalError("task " + std::to_string(t.index) + " (" + t.type +
                           "): " + ex.what());
    }
  }
  rep.provenance = provenance_entries(&s);
  return rep;
}

Report verify_report(const Scenario* s, const SuiteHooks& hooks) {
  Report rep;
  rep.suite = verify_suite(s, hooks);
  rep.provenance = provenance_entries(s);
  return rep;
}

std::string explain_text() {
  return R"(torusflux: flux of symplectomorphism families over the flat torus

model
  Base: the torus T^n = R^n/Z^n with a constant symplectic form omega
  (n even). The arrow space is the pair chart (x, p): an arrow covers
  source x - p/2 and target x + p/2. A lagrangian bisection is the graph
  x -> (x + u(x)/2, -u(x)) of a symplectomorphism psi = id + u with u
  periodic. Poisson tensor on the base: pi = -omega^{-1}; hamiltonian
  fields X_f = pi#(df). The zero-Poisson model ships as the degenerate
  contrast case (cotangent fibers, no invertible pairing).

flux
  A family of bisections L_t from the identity has base velocity
  Z_t = (d/dt psi_t) o psi_t^{-1} and velocity one-form
  theta_t = Z_t -| omega, which is closed at every t (asserted, never
  assumed). The flux is F = integral over [0,1] of [theta_t] dt, valued
  in H^1(T^n; R) ~ R^n. It adds under concatenation of families and
  vanishes exactly on hamiltonian families.

  Three pipelines are computed and cross-checked, never averaged:
    sampled_time_integral     lifts on the time grid, velocities by
                              finite differencing, simpson quadrature
                              with a step-halving consistency gate
    endpoint_mu_inverse_lambda  endpoint bisection only: solve
                              mu F = lambda(L_1)
    family_closed_form        what the declared family already pins
                              down (mean velocity contracted into omega;
                              zero for hamiltonian("f"); the declared
                              class for closed_form(...))

pairings
  mu([c], [xi]) = integral of pi(c, xi) over the torus;
  sigma([c], [xi]) pairs the classes through the hamiltonian fields of
  representatives. sigma is proportional to mu entrywise; mu is
  invertible exactly when the structure is symplectic.

integral maps
  lambda(L) = mean displacement of the lift (+mean(u));
  epsilon(L) = -lambda(L). Both add under bisection products. The
  endpoint flux mu^{-1} lambda(L_1) agrees with the time integral: the
  flux of a family is visible from its endpoint alone.

holonomy
  Phi_L(gamma) = integral of (omega p) . dx along the lifted loop
  L o gamma, mod 1 in [-1/2, 1/2). The identity bisection has none;
  the value is homotopy invariant; Phi_{KL}(gamma) = Phi_L(gamma) +
  Phi_K(psi_L o gamma). rho pairs a flux class with a winding vector
  mod 1, and rho(F) = Phi(endpoint) on every shipped family.

scenario files
  [space]      dim, bandwidth, grid
  [structure]  symplectic = rows(...), or poisson = zero, or
               poisson = upper("expr", ...)   (strict upper triangle)
  [task.N]     type = flux | pair | holonomy | verify, with
               isotopy = translation(...) | shear(axis, "g") |
                         hamiltonian("f") | closed_form("t1", ..., "tn"),
               loops = rows(...), steps, prefixes, tolerance
  Canonical files round-trip byte-identically through parse + serialize.

exit codes
  0 success; 2 scenario parse error; 3 numerical gate or agreement
  failure; 4 invariant suite failure.
)";
}

}  // namespace torusflux::cli
