#include "mindisp/sde.hpp"

#include <atomic>
#include <cmath>
#include <sstream>

#include "mindisp/parallel.hpp"

namespace mindisp {

namespace {

std::string blowup_message(double t, const Vec& state) {
  std::ostringstream os;
  os << "integration blowup at t=" << t << ", state=[" << state.transpose()
     << "]";
  return os.str();
}

constexpr double kBoundaryTol = 1e-9;

// Locates (interval k, substep j) such that t = t_k + j*step(k).
void locate_substep(const TimeGrid& grid, double t, int& k, int& j) {
  const auto K = grid.intervals();
  for (k = 0; k < K; ++k) {
    if (t < grid.knots[k + 1] - kBoundaryTol) break;
  }
  if (k == K) {  // t == T
    k = K - 1;
    j = grid.substeps_per_knot;
    return;
  }
  const double offset = t - grid.knots[k];
  const double dt = grid.step(k);
  j = static_cast<int>(std::lround(offset / dt));
  if (std::abs(offset - j * dt) > 1e-7 * std::max(1.0, std::abs(t))) {
    throw std::invalid_argument("time does not lie on a substep boundary");
  }
}

}  // namespace

IntegrationBlowup::IntegrationBlowup(double t_, Vec state_)
    : std::runtime_error(blowup_message(t_, state_)),
      t(t_),
      state(std::move(state_)) {}

TimeGrid TimeGrid::regular(double horizon, int knots_per_unit_time,
                           int substeps) {
  TimeGrid grid;
  grid.substeps_per_knot = substeps;
  if (knots_per_unit_time < 1)
    throw std::invalid_argument("knots_per_unit_time must be >= 1");
  const int K = std::max(1, static_cast<int>(std::lround(horizon * knots_per_unit_time)));
  grid.knots.resize(K + 1);
  for (int k = 0; k <= K; ++k) grid.knots[k] = horizon * k / K;
  grid.knots[0] = 0.0;
  grid.knots[K] = horizon;
  grid.validate();
  return grid;
}

void TimeGrid::validate() const {
  if (knots.size() < 2) throw std::invalid_argument("grid needs >= 2 knots");
  if (knots.front() != 0.0) throw std::invalid_argument("grid must start at 0");
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    if (!(knots[k] < knots[k + 1]))
      throw std::invalid_argument("grid knots must be strictly increasing");
  }
  if (substeps_per_knot < 1)
    throw std::invalid_argument("substeps_per_knot must be >= 1");
}

EnsembleControl EnsembleControl::zeros(const TimeGrid& grid, int control_dim) {
  EnsembleControl u;
  u.coeffs = Mat::Zero(grid.intervals(), control_dim);
  return u;
}

Vec ModelDefinition::markov_value(const Vec& x, const Vec& u) const {
  Vec w = Vec::Zero(value_dim);
  for (int j = 0; j < control_dim; ++j) {
    if (u[j] != 0.0) w += feedback_basis[j](x) * u[j];
  }
  return w;
}

namespace stats {

namespace {
std::atomic<std::uint64_t> g_em_steps{0};
std::atomic<std::uint64_t> g_path_segments{0};
}  // namespace

void reset() {
  g_em_steps.store(0);
  g_path_segments.store(0);
}
std::uint64_t em_steps() { return g_em_steps.load(); }
std::uint64_t path_segments() { return g_path_segments.load(); }
void add_em_steps(std::uint64_t n) {
  g_em_steps.fetch_add(n, std::memory_order_relaxed);
}
void add_path_segments(std::uint64_t n) {
  g_path_segments.fetch_add(n, std::memory_order_relaxed);
}

}  // namespace stats

Vec em_step(const ModelDefinition& model, double t, const Vec& x, const Vec& w,
            double dt, const Vec& dW) {
  Vec next = x + model.drift(t, x, w) * dt + model.diffusion(t, x) * dW;
  stats::add_em_steps(1);
  if (!next.allFinite()) throw IntegrationBlowup(t, x);
  return next;
}

Vec advance(const ModelDefinition& model, const TimeGrid& grid,
            const EnsembleControl& control, double t_a, double t_b, Vec x,
            GaussianStream& noise) {
  if (t_b <= t_a + kBoundaryTol) return x;
  int k, j;
  locate_substep(grid, t_a, k, j);
  Vec dW(model.noise_dim);
  double t = t_a;
  int row_k = -1;
  Vec u = Vec::Zero(model.control_dim);
  while (t < t_b - kBoundaryTol) {
    if (j == grid.substeps_per_knot) {
      ++k;
      j = 0;
    }
    const double dt = grid.step(k);
    if (k != row_k) {
      u = (control.coeffs.rows() > k && control.coeffs.cols() > 0)
              ? Vec(control.coeffs.row(k))
              : Vec(Vec::Zero(model.control_dim));
      row_k = k;
    }
    const Vec w = model.markov_value(x, u);
    const double sqrt_dt = std::sqrt(dt);
    for (int i = 0; i < model.noise_dim; ++i) dW[i] = sqrt_dt * noise.normal();
    x = em_step(model, t, x, w, dt, dW);
    ++j;
    t = grid.knots[k] + j * grid.step(k);
  }
  return x;
}

std::vector<PathPoint> simulate_path(const ModelDefinition& model,
                                     const TimeGrid& grid,
                                     const EnsembleControl& control,
                                     double t_start, const Vec& x,
                                     std::uint64_t seed, const StreamId& id) {
  GaussianStream noise(seed, id);
  stats::add_path_segments(1);
  std::vector<PathPoint> path;
  int k, j;
  locate_substep(grid, t_start, k, j);
  path.emplace_back(t_start, x);
  Vec state = x;
  double t = t_start;
  while (t < grid.horizon() - kBoundaryTol) {
    if (j == grid.substeps_per_knot) {
      ++k;
      j = 0;
    }
    const double next_t = grid.knots[k] + (j + 1) * grid.step(k);
    state = advance(model, grid, control, t, next_t, std::move(state), noise);
    ++j;
    t = next_t;
    path.emplace_back(t, state);
  }
  return path;
}

Vec simulate_terminal(const ModelDefinition& model, const TimeGrid& grid,
                      const EnsembleControl& control, double t_start,
                      const Vec& x, std::uint64_t seed, const StreamId& id) {
  GaussianStream noise(seed, id);
  stats::add_path_segments(1);
  return advance(model, grid, control, t_start, grid.horizon(), x, noise);
}

std::vector<ParticleEnsemble> sample_ensemble(const ModelDefinition& model,
                                              const TimeGrid& grid,
                                              const EnsembleControl& control,
                                              int M, std::uint64_t seed,
                                              std::uint32_t iteration) {
  if (M < 1) throw std::invalid_argument("M must be >= 1");
  const int K = grid.intervals();
  std::vector<ParticleEnsemble> out(K + 1);
  for (auto& e : out) e.states.resize(M, model.state_dim);

  par::parallel_for(M, [&](std::int64_t l) {
    GaussianStream init(seed, {StreamPurpose::InitialDraw, iteration,
                               static_cast<std::uint64_t>(l), 0});
    GaussianStream path(seed, {StreamPurpose::PathNoise, iteration,
                               static_cast<std::uint64_t>(l), 0});
    Vec x = model.initial_law(init);
    out[0].states.row(l) = x;
    stats::add_path_segments(1);
    for (int k = 0; k < K; ++k) {
      x = advance(model, grid, control, grid.knots[k], grid.knots[k + 1],
                  std::move(x), path);
      out[k + 1].states.row(l) = x;
    }
  });
  return out;
}

}  // namespace mindisp
