#ifndef SCALEKIT_RNG_HPP_
#define SCALEKIT_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace scalekit {

// splitmix64; fixed algorithm so seeded streams are identical on every
// platform and standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in (0, 1]
    double next_unit() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    // Box-Muller; one spare kept between calls.
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u = next_unit();
        const double v = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u));
        const double theta = 2.0 * M_PI * v;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // N(0, sigma^2) truncated to [-2 sigma, 2 sigma] by re-draw.
    double next_truncated_gaussian(double sigma) {
        for (;;) {
            const double g = next_gaussian();
            if (g >= -2.0 && g <= 2.0) return g * sigma;
        }
    }

  private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace scalekit

#endif
