#include "spdi/rng.hpp"

#include "spdi/error.hpp"

namespace spdi {

std::uint64_t SeededRng::below(std::uint64_t n) {
  if (n == 0) throw Error("SeededRng::below(0)");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  for (;;) {
    std::uint64_t x = engine_();
    if (x < limit) return x % n;
  }
}

}  // namespace spdi
