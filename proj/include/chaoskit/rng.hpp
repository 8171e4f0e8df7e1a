#ifndef CHAOSKIT_RNG_HPP
#define CHAOSKIT_RNG_HPP

#include <cstdint>

namespace chaoskit {

// Quantile of the standard normal: Acklam's rational approximation polished
// by one Halley step against erfc, good to ~1e-15 over (0,1).
double inverse_normal_cdf(double p);

// Counter-based random stream: output depends only on (seed, stream id,
// draw index), never on call order or worker count.  Draw index i maps to
// the SplitMix64 output at state key + (i+1)*gamma.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    // Deterministic child stream; distinct ids give statistically
    // independent streams.
    RandomStream substream(std::uint64_t id) const;

    std::uint64_t bits(std::uint64_t index) const;
    double uniform(std::uint64_t index) const;  // strictly inside (0,1)
    double normal(std::uint64_t index) const;

  private:
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
    std::uint64_t key_ = 0;
};

}  // namespace chaoskit

#endif
