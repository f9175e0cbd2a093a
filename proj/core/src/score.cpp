// Copyright 2026 The MIRAGE Transpiler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mirage/score.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "mirage/ansatz.hpp"
#include "mirage/errors.hpp"
#include "mirage/optimizer.hpp"
#include "mirage/parallel.hpp"

namespace mirage {

namespace {

constexpr std::uint64_t kSampleStream = 4;
// Screen slack: the sampled hull sits slightly inside the true region, so
// candidates that miss the threshold by less than this still get optimised.
constexpr double kScreenMargin = 2e-3;

double average_fidelity(double overlap) {
  return std::min(1.0, (16.0 * overlap * overlap + 4.0) / 20.0);
}

std::string mode_name(bool approx, bool mirror) {
  std::string m = approx ? "approx" : "exact";
  if (mirror) m += "+mirror";
  return m;
}

struct Summary {
  double mean = 0.0;
  double std_error = 0.0;
};

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) return s;
  const double n = static_cast<double>(xs.size());
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() > 1) {
    double var = 0.0;
    for (double x : xs) var += (x - s.mean) * (x - s.mean);
    var /= n - 1.0;
    s.std_error = std::sqrt(var / n);
  }
  return s;
}

}  // namespace

double FidelityModel::circuit_fidelity(double cost) const {
  if (cost < 0.0 || std::isnan(cost))
    throw Error(ErrorCode::NegativeCost, "cost must be non-negative");
  return std::exp(-lambda * cost);
}

double circuit_fidelity(double cost) { return FidelityModel{}.circuit_fidelity(cost); }

HaarScoreReport haar_score_exact(const CoverageSet& cs, std::uint64_t samples,
                                 std::uint64_t seed, int jobs) {
  std::vector<double> costs(samples), fids(samples);
  parallel_for(samples, jobs, [&](std::size_t i) {
    Rng rng = make_rng(seed, kSampleStream, i);
    const WeylPoint p = canonical_coordinates(haar_random_2q(rng));
    costs[i] = min_cost(cs, p).cost;
    fids[i] = circuit_fidelity(costs[i]);
  });
  HaarScoreReport r;
  r.basis = cs.basis.name;
  r.mode = mode_name(false, cs.mirror_extended);
  r.samples = samples;
  const Summary s = summarize(costs);
  r.score = s.mean;
  r.std_error = s.std_error;
  r.avg_fidelity = summarize(fids).mean;
  return r;
}

double best_template_fidelity(const BasisGateSpec& basis, int k,
                              const Unitary2Q& target,
                              const OptimizerSettings& settings,
                              double stop_at) {
  const Ansatz ansatz(basis, k);
  const WeylPoint p = canonical_coordinates(target);
  const int dim = ansatz.num_interior_params();
  auto overlap = [&](std::span<const double> x) {
    const Mat4 m = ansatz.interior(x);
    return max_class_overlap(p, canonical_coordinates(Unitary2Q::trusted(m)).as_array());
  };
  if (dim == 0) return average_fidelity(overlap({}));

  Rng rng = make_rng(settings.seed, static_cast<std::uint64_t>(k));
  double best = 0.0;
  std::vector<double> start(static_cast<std::size_t>(dim));
  NelderMeadOptions opts;
  opts.max_evals = settings.evals_per_restart;
  opts.ftol = settings.ftol;
  opts.target = -1.0 + 1e-15;
  for (int r = 0; r < settings.restarts; ++r) {
    for (double& x : start) x = (2.0 * uniform01(rng) - 1.0) * kPi;
    const OptimizeResult res = nelder_mead(
        [&](std::span<const double> x) { return -overlap(x); }, start, opts);
    best = std::max(best, average_fidelity(-res.value));
    if (best >= stop_at) break;
  }
  if (best <= 0.25)
    throw Error(ErrorCode::OptimizerDiverged,
                "no restart exceeded the 0.25 fidelity baseline");
  return best;
}

std::optional<RegionFit> optimize_in_region(const BasisGateSpec& basis, int k,
                                            const Unitary2Q& target,
                                            double fid_threshold,
                                            const OptimizerSettings& settings) {
  const double cost = k * basis.unit_cost();
  const double circuit = circuit_fidelity(cost);
  double decomp = 0.0;
  try {
    decomp = best_template_fidelity(basis, k, target, settings,
                                    fid_threshold / circuit);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::OptimizerDiverged) return std::nullopt;
    throw;
  }
  if (decomp * circuit < fid_threshold) return std::nullopt;
  return RegionFit{cost, decomp * circuit, decomp};
}

double max_overlap_in_region(const ConvexRegion& region, const WeylPoint& p) {
  if (region.vertices.empty()) return 0.0;
  double best = 0.0;
  std::size_t best_vertex = 0;
  Point3 centroid{0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < region.vertices.size(); ++i) {
    const Point3& v = region.vertices[i];
    const double f = max_class_overlap(p, v);
    if (f > best) {
      best = f;
      best_vertex = i;
    }
    for (int j = 0; j < 3; ++j) centroid[j] += v[j] / region.vertices.size();
  }
  if (region.vertices.size() < 4) return best;
  constexpr double kInside = 1e-9;
  auto objective = [&](std::span<const double> x) {
    const Point3 q{x[0], x[1], x[2]};
    double worst = 0.0;
    for (const Halfspace& h : region.halfspaces) worst = std::max(worst, h.violation(q));
    if (worst > kInside) return 1.0 + worst;
    return -max_class_overlap(p, q);
  };
  const Point3& v = region.vertices[best_vertex];
  std::vector<double> x0(3);
  for (int j = 0; j < 3; ++j) x0[j] = v[j] + 1e-6 * (centroid[j] - v[j]);
  NelderMeadOptions opts;
  opts.max_evals = 300;
  opts.ftol = 1e-12;
  opts.initial_step = 0.02;
  const OptimizeResult res = nelder_mead(objective, x0, opts);
  return std::max(best, -res.value);
}

HaarScoreReport haar_score_approx(const CoverageSet& cs, std::uint64_t samples,
                                  std::uint64_t seed, int jobs,
                                  const OptimizerSettings& settings) {
  std::vector<double> costs(samples), fids(samples);
  parallel_for(samples, jobs, [&](std::size_t i) {
    Rng rng = make_rng(seed, kSampleStream, i);
    const Unitary2Q u = haar_random_2q(rng);
    const WeylPoint p = canonical_coordinates(u);
    const CostEntry exact = min_cost(cs, p);
    const double threshold = circuit_fidelity(exact.cost);
    double best_cost = exact.cost;
    double best_fid = threshold;

    struct Candidate {
      WeylPoint point;
      Unitary2Q gate;
    };
    std::vector<Candidate> candidates{{p, u}};
    if (cs.mirror_extended) {
      candidates.push_back({mirror_coordinates(p), mirror_unitary(u)});
    }
    for (int k = 0; k < exact.k; ++k) {
      const CircuitPolytope& entry = cs.entries[static_cast<std::size_t>(k)];
      const double circuit = circuit_fidelity(entry.cost);
      bool done = false;
      for (const Candidate& c : candidates) {
        double bound = 0.0;
        for (const ConvexRegion& r : entry.regions) {
          if (r.mirrored) continue;
          bound = std::max(bound, max_overlap_in_region(r, c.point));
        }
        if (average_fidelity(bound) * circuit < threshold - kScreenMargin) continue;
        const auto fit = optimize_in_region(cs.basis, k, c.gate, threshold, settings);
        if (fit) {
          best_cost = fit->cost;
          best_fid = fit->total_fidelity;
          done = true;
          break;
        }
      }
      if (done) break;
    }
    costs[i] = best_cost;
    fids[i] = best_fid;
  });
  HaarScoreReport r;
  r.basis = cs.basis.name;
  r.mode = mode_name(true, cs.mirror_extended);
  r.samples = samples;
  const Summary s = summarize(costs);
  r.score = s.mean;
  r.std_error = s.std_error;
  r.avg_fidelity = summarize(fids).mean;
  return r;
}

MagicKak magic_kak(const Mat4& u) {
  const Mat4& b = magic_basis();
  const Mat4 us = u * std::pow(u.determinant(), -0.25);
  const Mat4 up = b.adjoint() * us * b;
  const Mat4 m2 = up.transpose() * up;
  const Eigen::Matrix4d re = m2.real();
  const Eigen::Matrix4d im = m2.imag();

  // Re and Im commute; a generic mix splits every eigenspace that can be split.
  Eigen::Matrix4d o;
  double best_err = 1e300;
  for (double mix : {0.6180339887, 1.4142135623, -0.7320508075, 2.2360679774}) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(re + mix * im);
    const Eigen::Matrix4d cand = eig.eigenvectors();
    const Mat4 d = cand.transpose().cast<Complex>() * m2 * cand.cast<Complex>();
    const double err = (d - Mat4(d.diagonal().asDiagonal())).norm();
    if (err < best_err) {
      best_err = err;
      o = cand;
    }
    if (err < 1e-12) break;
  }
  if (o.determinant() < 0.0) o.col(0) *= -1.0;
  const Mat4 oc = o.cast<Complex>();
  const Eigen::Vector4cd lambda = (oc.transpose() * m2 * oc).diagonal();
  Eigen::Vector4cd d;
  for (int i = 0; i < 4; ++i) d[i] = std::sqrt(lambda[i]);
  Mat4 left = up * oc;
  for (int i = 0; i < 4; ++i) left.col(i) /= d[i];
  Eigen::Matrix4d lr = left.real();
  if (lr.determinant() < 0.0) {
    lr.col(0) *= -1.0;
    d[0] = -d[0];
  }
  return {lr.cast<Complex>(), d, oc.transpose()};
}

namespace {

// Real orthogonal X1, X2 (magic basis) with t ~ phase * X1 m X2.
std::pair<Mat4, Mat4> align_outer(const Mat4& t, const Mat4& m) {
  const MagicKak kt = magic_kak(t);
  const MagicKak km = magic_kak(m);
  std::array<int, 4> perm{0, 1, 2, 3};
  std::array<int, 4> best_perm = perm;
  std::array<double, 4> best_sign{1, 1, 1, 1};
  double best_err = 1e300;
  const std::array<Complex, 4> phases{Complex(1, 0), Complex(0, 1), Complex(-1, 0),
                                      Complex(0, -1)};
  do {
    for (const Complex& ph : phases) {
      double err = 0.0;
      std::array<double, 4> sign{};
      for (int j = 0; j < 4; ++j) {
        const Complex target = kt.diag[j];
        const Complex cand = ph * km.diag[perm[j]];
        const double ep = std::abs(target - cand);
        const double em = std::abs(target + cand);
        sign[j] = ep <= em ? 1.0 : -1.0;
        err += std::min(ep, em);
      }
      double det = sign[0] * sign[1] * sign[2] * sign[3];
      if (det < 0.0) continue;
      if (err < best_err) {
        best_err = err;
        best_perm = perm;
        best_sign = sign;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // diag(d_t) = phase * S P diag(d_m) P^T with P(j, perm[j]) = 1.
  Eigen::Matrix4d p = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
  for (int j = 0; j < 4; ++j) {
    p(j, best_perm[j]) = 1.0;
    s(j, j) = best_sign[j];
  }
  Eigen::Matrix4d e = Eigen::Matrix4d::Identity();
  if (p.determinant() < 0.0) e(0, 0) = -1.0;
  const Eigen::Matrix4d ql = kt.left.real(), qr = kt.right.real();
  const Eigen::Matrix4d rl = km.left.real(), rr = km.right.real();
  // e commutes with the diagonal core, so it may be split across both sides.
  const Eigen::Matrix4d x1 = ql * e * s * p * rl.transpose();
  const Eigen::Matrix4d x2 = rr.transpose() * p.transpose() * e * qr;
  return {x1.cast<Complex>(), x2.cast<Complex>()};
}

}  // namespace

SynthesisResult synthesize(const Unitary2Q& target, const BasisGateSpec& basis,
                           int k, const OptimizerSettings& settings) {
  const Ansatz ansatz(basis, k);
  const WeylPoint p = canonical_coordinates(target);
  const int dim = ansatz.num_interior_params();

  std::vector<double> interior(static_cast<std::size_t>(dim));
  if (dim > 0) {
    Rng rng = make_rng(settings.seed, 100 + static_cast<std::uint64_t>(k));
    auto objective = [&](std::span<const double> x) {
      const Mat4 m = ansatz.interior(x);
      return 1.0 - max_class_overlap(
                       p, canonical_coordinates(Unitary2Q::trusted(m)).as_array());
    };
    NelderMeadOptions opts;
    opts.max_evals = settings.evals_per_restart;
    opts.ftol = 0.0;
    opts.target = 1e-16;
    double best = 1e300;
    std::vector<double> start(static_cast<std::size_t>(dim));
    for (int r = 0; r < settings.restarts; ++r) {
      for (double& x : start) x = (2.0 * uniform01(rng) - 1.0) * kPi;
      OptimizeResult res = nelder_mead(objective, start, opts);
      // Polish from the endpoint with a fresh, smaller simplex.
      for (int polish = 0; polish < 4 && res.value > opts.target; ++polish) {
        NelderMeadOptions fine = opts;
        fine.initial_step = 1e-3 * std::pow(1e-2, polish);
        OptimizeResult next = nelder_mead(objective, res.x, fine);
        if (next.value >= res.value) break;
        res = std::move(next);
      }
      if (res.value < best) {
        best = res.value;
        interior = res.x;
      }
      if (best <= opts.target) break;
    }
  }
  const Mat4 m = ansatz.interior(interior);
  const auto [x1m, x2m] = align_outer(target.matrix(), m);
  const Mat4& b = magic_basis();
  const Mat4 x1 = b * x1m * b.adjoint();
  const Mat4 x2 = b * x2m * b.adjoint();

  std::vector<double> params;
  params.reserve(static_cast<std::size_t>(ansatz.num_params()));
  auto push_local = [&](const Mat4& local) {
    const auto [q0, q1] = split_local(local);
    for (const Mat2& g : {q0, q1}) {
      const auto a = u3_angles(g);
      params.insert(params.end(), a.begin(), a.end());
    }
  };
  if (k == 0) {
    push_local(x1 * x2);
  } else {
    push_local(x2);
    params.insert(params.end(), interior.begin(), interior.end());
    push_local(x1);
  }
  SynthesisResult out;
  for (std::size_t i = 0; i < params.size(); i += 3)
    out.angles.push_back({params[i], params[i + 1], params[i + 2]});
  out.fidelity = gate_fidelity(target.matrix(), ansatz.evaluate(params));
  if (out.fidelity <= 0.25)
    throw Error(ErrorCode::OptimizerDiverged, "synthesis fell below the 0.25 baseline");
  return out;
}

}  // namespace mirage
