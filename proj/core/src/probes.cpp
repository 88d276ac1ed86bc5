#include "deadcore/probes.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <stdexcept>

#include "deadcore/errors.hpp"

namespace deadcore {

void ProbeSeries::append(const ProbeRecord& record) {
  if (!records_.empty() && !(record.t > records_.back().t)) {
    throw std::invalid_argument("probe times must be strictly increasing");
  }
  records_.push_back(record);
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string ProbeSeries::to_csv() const {
  std::string out = "t,min_u,max_u,sup_v,sup_grad_v,sup_lap_v,mass_u,mass_v,deadcore_cells\n";
  for (const auto& r : records_) {
    for (double x : {r.t, r.min_u, r.max_u, r.sup_v, r.sup_grad_v, r.sup_lap_v, r.mass_u, r.mass_v}) {
      out += format_double(x);
      out += ',';
    }
    out += std::to_string(r.deadcore_cells);
    out += '\n';
  }
  return out;
}

double sup_grad(const Field& v) {
  const GridSpec& g = v.grid();
  const auto gx = grad_component(v, 0);
  if (g.dim == 1) {
    double m = 0.0;
    for (double x : gx) m = std::max(m, std::abs(x));
    return m;
  }
  // 2-D: average face components to cell centres, then take the Euclidean norm.
  const auto gy = grad_component(v, 1);
  const int nx = g.nx();
  double m = 0.0;
  v.for_each_cell([&](int i, int j) {
    const double cx = 0.5 * (gx[static_cast<std::size_t>(j * (nx + 1) + i)] +
                             gx[static_cast<std::size_t>(j * (nx + 1) + i + 1)]);
    const double cy = 0.5 * (gy[static_cast<std::size_t>(j * nx + i)] + gy[static_cast<std::size_t>((j + 1) * nx + i)]);
    m = std::max(m, std::hypot(cx, cy));
  });
  return m;
}

double sup_laplacian(const Field& v) {
  const Field lap = laplacian(v);
  double m = 0.0;
  lap.for_each_cell([&](int i, int j) { m = std::max(m, std::abs(lap(i, j))); });
  return m;
}

std::vector<std::size_t> detect_dead_core(const Field& u, double epsilon) {
  std::vector<std::size_t> cells;
  const int nx = u.grid().nx();
  u.for_each_cell([&](int i, int j) {
    if (u(i, j) <= epsilon) cells.push_back(static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) + i);
  });
  return cells;
}

ProbeRecord measure(double t, const Field& u, const Field& v, double deadcore_epsilon) {
  ProbeRecord r;
  r.t = t;
  r.min_u = u.min();
  r.max_u = u.max();
  r.sup_v = v.max();
  r.sup_grad_v = sup_grad(v);
  r.sup_lap_v = sup_laplacian(v);
  r.mass_u = integrate(u);
  r.mass_v = integrate(v);
  r.deadcore_cells = static_cast<long>(detect_dead_core(u, deadcore_epsilon).size());
  return r;
}

double measure_K2(const ProbeSeries& series, double T, std::size_t min_records) {
  double k2 = 0.0;
  std::size_t count = 0;
  for (const auto& r : series.records()) {
    if (r.t > 0.5 * T && r.t <= T) {
      k2 = std::max(k2, r.sup_lap_v);
      ++count;
    }
  }
  if (count < min_records) {
    throw CoverageError("K2 needs at least " + std::to_string(min_records) + " records in (T/2, T], found " +
                        std::to_string(count));
  }
  return k2;
}

HolderEstimate holder_seminorm(std::span<const TimedField> snapshots, double theta, std::size_t random_pairs,
                               std::uint64_t seed) {
  if (!(theta > 0.0 && theta < 1.0)) throw std::invalid_argument("theta must lie in (0, 1)");
  if (snapshots.size() < 3) throw CoverageError("Hölder estimate needs at least 3 snapshots");
  const GridSpec& g = snapshots.front().u.grid();
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    if (!(snapshots[k].u.grid() == g)) throw CoverageError("snapshots live on different grids");
    if (k > 0 && !(snapshots[k].t > snapshots[k - 1].t)) throw CoverageError("snapshot times must increase");
  }

  HolderEstimate est;
  est.theta = theta;
  auto consider = [&](std::size_t a, int ia, int ja, std::size_t b, int ib, int jb) {
    const double dx = (ia - ib) * g.spacing(0);
    const double dy = g.dim == 2 ? (ja - jb) * g.spacing(1) : 0.0;
    const double dt = snapshots[a].t - snapshots[b].t;
    const double dist2 = dx * dx + dy * dy + std::abs(dt);
    ++est.pair_count;
    if (dist2 <= 0.0) return;
    const double diff = std::abs(snapshots[a].u(ia, ja) - snapshots[b].u(ib, jb));
    est.seminorm = std::max(est.seminorm, diff / std::pow(dist2, 0.5 * theta));
  };

  const int nx = g.nx();
  const int ny = g.ny();
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        if (i + 1 < nx) consider(k, i, j, k, i + 1, j);
        if (g.dim == 2 && j + 1 < ny) consider(k, i, j, k, i, j + 1);
        if (k + 1 < snapshots.size()) consider(k, i, j, k + 1, i, j);
      }
    }
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_snapshot(0, snapshots.size() - 1);
  std::uniform_int_distribution<int> pick_i(0, nx - 1);
  std::uniform_int_distribution<int> pick_j(0, ny - 1);
  for (std::size_t n = 0; n < random_pairs; ++n) {
    const std::size_t a = pick_snapshot(rng);
    const int ia = pick_i(rng);
    const int ja = pick_j(rng);
    const std::size_t b = pick_snapshot(rng);
    const int ib = pick_i(rng);
    const int jb = pick_j(rng);
    consider(a, ia, ja, b, ib, jb);
  }
  return est;
}

}  // namespace deadcore
