#include "mindisp/adjoint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mindisp/parallel.hpp"

namespace mindisp {

namespace {

constexpr double kBoundaryTol = 1e-9;

StreamId inner_id(const StreamId& ns, std::int64_t j) {
  StreamId id = ns;
  id.sub = (ns.sub << 32) | static_cast<std::uint64_t>(j);
  return id;
}

double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double std_error_of(const std::vector<double>& v, double mean) {
  const auto n = v.size();
  if (n < 2) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(n - 1) /
                   static_cast<double>(n));
}

}  // namespace

AdjointEstimate estimate_p(const ModelDefinition& model, const TimeGrid& grid,
                           const EnsembleControl& ref_control, double t,
                           const Vec& x, int N, const CostFunction& cost,
                           std::uint64_t seed, const StreamId& ns) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  AdjointEstimate est;
  est.n_paths = N;
  if (t >= grid.horizon() - kBoundaryTol) {
    // Zero-length paths: the terminal condition p_T = l holds exactly.
    est.value = cost.eval(x);
    est.std_error = 0.0;
    return est;
  }
  std::vector<double> vals(N);
  par::parallel_for(N, [&](std::int64_t j) {
    vals[j] = cost.eval(
        simulate_terminal(model, grid, ref_control, t, x, seed, inner_id(ns, j)));
  });
  est.value = mean_of(vals);
  est.std_error = std_error_of(vals, est.value);
  return est;
}

AdjointEstimate estimate_grad_p(const ModelDefinition& model,
                                const TimeGrid& grid,
                                const EnsembleControl& ref_control, double t,
                                const Vec& x, int N, const CostFunction& cost,
                                std::uint64_t seed, const StreamId& ns,
                                double h_scale) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (!(h_scale > 0.0)) throw std::invalid_argument("h_scale must be > 0");
  const int n = model.state_dim;

  Vec h(n);
  for (int i = 0; i < n; ++i) h[i] = h_scale * std::max(1.0, std::abs(x[i]));

  // Row q in [0, 2n): perturbation +h e_i (q = 2i) or -h e_i (q = 2i + 1);
  // row 2n is the unperturbed center. Path j replays one noise stream across
  // all rows (common random numbers).
  Mat vals(2 * n + 1, N);
  const bool terminal = t >= grid.horizon() - kBoundaryTol;
  par::parallel_for(N, [&](std::int64_t j) {
    const StreamId id = inner_id(ns, j);
    Vec start = x;
    for (int q = 0; q <= 2 * n; ++q) {
      if (q < 2 * n) {
        const int i = q / 2;
        start[i] = x[i] + ((q % 2 == 0) ? h[i] : -h[i]);
      }
      vals(q, j) =
          terminal ? cost.eval(start)
                   : cost.eval(simulate_terminal(model, grid, ref_control, t,
                                                 start, seed, id));
      if (q < 2 * n) start[q / 2] = x[q / 2];
    }
  });

  AdjointEstimate est;
  est.n_paths = N;
  est.value = vals.row(2 * n).mean();
  {
    std::vector<double> center(vals.row(2 * n).begin(), vals.row(2 * n).end());
    est.std_error = std_error_of(center, est.value);
  }
  est.gradient.resize(n);
  est.gradient_std_error.resize(n);
  std::vector<double> diffs(N);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < N; ++j) {
      diffs[j] = (vals(2 * i, j) - vals(2 * i + 1, j)) / (2.0 * h[i]);
    }
    est.gradient[i] = mean_of(diffs);
    est.gradient_std_error[i] = std_error_of(diffs, est.gradient[i]);
  }
  return est;
}

std::vector<DualityDefect> duality_defect(const ModelDefinition& model,
                                          const TimeGrid& grid,
                                          const EnsembleControl& control,
                                          const CostFunction& cost,
                                          const std::vector<double>& times,
                                          int N, int M, std::uint64_t seed) {
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  const int T = static_cast<int>(sorted.size());

  // p-values per particle: column 0 is the t = 0 term, column 1 + i the
  // requested time sorted[i]. Particle paths and inner adjoint paths use
  // disjoint stream purposes.
  Mat pvals(M, T + 1);
  par::parallel_for(M, [&](std::int64_t l) {
    GaussianStream init(seed, {StreamPurpose::Diagnostic, 0,
                               static_cast<std::uint64_t>(l), 0});
    GaussianStream path(seed, {StreamPurpose::Diagnostic, 1,
                               static_cast<std::uint64_t>(l), 0});
    Vec x = model.initial_law(init);
    stats::add_path_segments(1);
    pvals(l, 0) = estimate_p(model, grid, control, 0.0, x, N, cost, seed,
                             {StreamPurpose::Adjoint, 0xD000u,
                              static_cast<std::uint64_t>(l), 0})
                      .value;
    double t_prev = 0.0;
    for (int i = 0; i < T; ++i) {
      x = advance(model, grid, control, t_prev, sorted[i], std::move(x), path);
      t_prev = sorted[i];
      pvals(l, 1 + i) =
          estimate_p(model, grid, control, sorted[i], x, N, cost, seed,
                     {StreamPurpose::Adjoint, 0xD001u + static_cast<std::uint32_t>(i),
                      static_cast<std::uint64_t>(l), 0})
              .value;
    }
  });

  std::vector<DualityDefect> out(T);
  for (int i = 0; i < T; ++i) {
    std::vector<double> paired(M);
    for (int l = 0; l < M; ++l) paired[l] = pvals(l, 1 + i) - pvals(l, 0);
    DualityDefect d;
    d.time = sorted[i];
    d.defect = mean_of(paired);
    d.std_error = std_error_of(paired, d.defect);
    out[i] = d;
  }
  return out;
}

}  // namespace mindisp
