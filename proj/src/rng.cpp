#include "suc/rng.hpp"

#include <cmath>
#include <initializer_list>

namespace suc {

double Rng::next_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * 3.14159265358979323846 * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                       std::uint64_t c, std::uint64_t d) {
  Rng h(seed ^ 0xA24BAED4963EE407ull);
  for (std::uint64_t v : {a, b, c, d}) {
    h.state ^= v + 0x9E3779B97F4A7C15ull + (h.state << 6) + (h.state >> 2);
    h.next_u64();
  }
  return h.next_u64();
}

}  // namespace suc
