#include "packsurgeon/random.hpp"

namespace packsurgeon {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ULL))),
      counter_(0) {}

CounterRng::CounterRng(std::uint64_t key, std::uint64_t counter, int)
    : key_(key), counter_(counter) {}

CounterRng::result_type CounterRng::operator()() {
  return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
}

CounterRng CounterRng::split(std::uint64_t key) const {
  return CounterRng(splitmix64(key_ ^ splitmix64(key + 0xd1b54a32d192ed03ULL)),
                    0, 0);
}

double CounterRng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

bool CounterRng::bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform() < p;
}

std::uint64_t CounterRng::below(std::uint64_t n) {
  // Lemire-style rejection keeps the result unbiased.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = (*this)();
    if (r >= threshold) return r % n;
  }
}

}  // namespace packsurgeon
