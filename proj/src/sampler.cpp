#include "waybell/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace waybell::sampler {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct ChunkPartial {
  std::int64_t product_sum = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
};

}  // namespace

void SamplerConfig::validate() const {
  if (n_samples == 0) {
    throw std::invalid_argument("SamplerConfig: n_samples must be positive");
  }
  if (chunk_size == 0) {
    throw std::invalid_argument("SamplerConfig: chunk_size must be positive");
  }
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t start_index)
    : base_(mix64(seed + kGolden)), index_(start_index) {}

double RngStream::next_unit() {
  const std::uint64_t bits = mix64(base_ + (++index_) * kGolden);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double RngStream::next_lambda() {
  const double lambda = next_unit() * kPi;
  // next_unit() < 1, but the product can still round up to pi itself.
  return lambda < kPi ? lambda : std::nextafter(kPi, 0.0);
}

double sample_lambda(RngStream& stream) { return stream.next_lambda(); }

int joint_product(double theta, double lambda) {
  const double flip = kPi - theta;
  return lambda < flip ? -1 : 1;
}

bool excluded(double lambda, double theta, double halfwidth) {
  return std::abs(lambda - (kPi - theta)) < halfwidth;
}

int worker_count() {
  int count = static_cast<int>(std::thread::hardware_concurrency());
  if (count < 1) {
    count = 1;
  }
  if (const char* cap_text = std::getenv("WAYBELL_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(cap_text, &end, 10);
    if (end != cap_text && cap > 0) {
      count = std::min<long>(count, cap);
    }
  }
  return count;
}

CorrelationEstimate estimate_correlation(Model model, double theta,
                                         const lhv::WayParams& params,
                                         const SamplerConfig& config) {
  config.validate();
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw std::domain_error("estimate_correlation: theta must lie in [0, pi]");
  }

  double halfwidth = 0.0;
  int sign = 1;
  switch (model) {
    case Model::base:
      break;
    case Model::way_singlet:
      if (params.kind != quantum::StateKind::singlet) {
        throw std::invalid_argument("estimate_correlation: way_singlet needs a singlet kind");
      }
      halfwidth = lhv::exclusion_halfwidth(theta, params);
      break;
    case Model::way_triplet:
      if (params.kind != quantum::StateKind::triplet_psi_plus &&
          params.kind != quantum::StateKind::triplet_phi_minus) {
        throw std::invalid_argument("estimate_correlation: way_triplet needs a triplet kind");
      }
      halfwidth = lhv::exclusion_halfwidth(theta, params);
      sign = params.kind == quantum::StateKind::triplet_phi_minus ? -1 : 1;
      break;
  }

  const std::uint64_t n_chunks = (config.n_samples + config.chunk_size - 1) / config.chunk_size;
  std::vector<ChunkPartial> partials(n_chunks);

  const auto run_chunks = [&](std::uint64_t first, std::uint64_t last) {
    for (std::uint64_t c = first; c < last; ++c) {
      const std::uint64_t begin = c * config.chunk_size;
      const std::uint64_t end = std::min(begin + config.chunk_size, config.n_samples);
      RngStream stream(config.seed, begin);
      ChunkPartial& partial = partials[c];
      for (std::uint64_t k = begin; k < end; ++k) {
        const double lambda = stream.next_lambda();
        if (halfwidth > 0.0 && excluded(lambda, theta, halfwidth)) {
          ++partial.rejected;
        } else {
          partial.product_sum += sign * joint_product(theta, lambda);
          ++partial.accepted;
        }
      }
    }
  };

  const std::uint64_t n_workers =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(worker_count()), n_chunks);
  if (n_workers <= 1) {
    run_chunks(0, n_chunks);
  } else {
    std::vector<std::thread> workers;
    workers.reserve(n_workers);
    const std::uint64_t per_worker = (n_chunks + n_workers - 1) / n_workers;
    for (std::uint64_t w = 0; w < n_workers; ++w) {
      const std::uint64_t first = w * per_worker;
      const std::uint64_t last = std::min(first + per_worker, n_chunks);
      workers.emplace_back(run_chunks, first, last);
    }
    for (std::thread& worker : workers) {
      worker.join();
    }
  }

  // Per-chunk sums are integers, so the fixed-order reduction is exact.
  std::int64_t product_sum = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  for (const ChunkPartial& partial : partials) {
    product_sum += partial.product_sum;
    accepted += partial.accepted;
    rejected += partial.rejected;
  }

  if (accepted == 0) {
    throw std::runtime_error("estimate_correlation: every sample was rejected");
  }

  CorrelationEstimate estimate;
  estimate.seed = config.seed;
  estimate.n_accepted = accepted;
  estimate.n_rejected = rejected;
  estimate.mean = static_cast<double>(product_sum) / static_cast<double>(accepted);
  if (accepted > 1) {
    const double spread = std::max(1.0 - estimate.mean * estimate.mean, 0.0);
    estimate.std_error = std::sqrt(spread / static_cast<double>(accepted - 1));
  }
  return estimate;
}

}  // namespace waybell::sampler
