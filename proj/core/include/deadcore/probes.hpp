#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "deadcore/grid.hpp"

namespace deadcore {

/// One row of the probe time series.
struct ProbeRecord {
  double t = 0.0;
  double min_u = 0.0;
  double max_u = 0.0;
  double sup_v = 0.0;
  double sup_grad_v = 0.0;
  double sup_lap_v = 0.0;
  double mass_u = 0.0;
  double mass_v = 0.0;
  long deadcore_cells = 0;

  bool operator==(const ProbeRecord&) const = default;
};

/// Time series of probe records, strictly increasing in t.
class ProbeSeries {
 public:
  /// Throws std::invalid_argument if `record.t` does not exceed the last time.
  void append(const ProbeRecord& record);

  const std::vector<ProbeRecord>& records() const { return records_; }
  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }
  const ProbeRecord& back() const { return records_.back(); }

  /// Header plus one line per record, column order
  /// t,min_u,max_u,sup_v,sup_grad_v,sup_lap_v,mass_u,mass_v,deadcore_cells.
  std::string to_csv() const;

 private:
  std::vector<ProbeRecord> records_;
};

/// u at a single time, used for trajectory post-processing.
struct TimedField {
  double t = 0.0;
  Field u;
};

struct HolderEstimate {
  double theta = 0.0;
  double seminorm = 0.0;
  long pair_count = 0;
};

double sup_grad(const Field& v);
double sup_laplacian(const Field& v);

/// Interior cell indices (row-major, j * nx + i) with u <= epsilon.
std::vector<std::size_t> detect_dead_core(const Field& u, double epsilon);

ProbeRecord measure(double t, const Field& u, const Field& v, double deadcore_epsilon);

/// Largest sup_lap_v over records with T/2 < t <= T. Throws CoverageError
/// when fewer than `min_records` records fall in that window.
double measure_K2(const ProbeSeries& series, double T, std::size_t min_records = 10);

/// Lower estimate of the parabolic C^{θ,θ/2} seminorm
///   max |u(x,t) - u(y,s)| / (|x-y|^2 + |t-s|)^{θ/2}
/// over all spatially and temporally adjacent pairs plus `random_pairs`
/// pairs drawn with a fixed-seed generator.
HolderEstimate holder_seminorm(std::span<const TimedField> snapshots, double theta,
                               std::size_t random_pairs = 100000, std::uint64_t seed = 20240611);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double x);

}  // namespace deadcore
