#pragma once

#include <cstdint>

#include "waybell/lhv.hpp"

namespace waybell::sampler {

struct SamplerConfig {
  std::uint64_t seed = 0;
  std::uint64_t n_samples = 1'000'000;
  std::uint64_t chunk_size = 65536;

  void validate() const;
};

struct CorrelationEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n_accepted = 0;
  std::uint64_t n_rejected = 0;
  std::uint64_t seed = 0;
};

enum class Model { base, way_singlet, way_triplet };

/// Counter-based deterministic stream: the k-th draw is a pure function of
/// (seed, k). Chunked and threaded evaluation therefore see exactly the same
/// values regardless of chunk size or worker count.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t start_index = 0);

  double next_unit();    // uniform on [0, 1)
  double next_lambda();  // uniform on [0, pi)

  std::uint64_t index() const { return index_; }

 private:
  std::uint64_t base_;
  std::uint64_t index_;
};

/// Uniform hidden-variable angle on [0, pi); advances the stream.
double sample_lambda(RngStream& stream);

/// Joint outcome product S1 S2 for the anticorrelated lambda model: -1 below
/// the flip boundary pi - theta, +1 above, +1 on the boundary itself.
int joint_product(double theta, double lambda);

/// True iff lambda falls inside the exclusion band of half-width b around
/// the flip boundary pi - theta.
bool excluded(double lambda, double theta, double halfwidth);

/// Monte-Carlo estimate of the response at theta. Rejected draws are counted,
/// not redrawn; the mean runs over accepted draws only. Deterministic for a
/// given (seed, n_samples, chunk_size) and independent of worker count.
CorrelationEstimate estimate_correlation(Model model, double theta,
                                         const lhv::WayParams& params,
                                         const SamplerConfig& config);

/// Hardware concurrency capped by the WAYBELL_THREADS environment variable.
int worker_count();

}  // namespace waybell::sampler
