#include "stagger/generators.hpp"

#include <numeric>

#include "stagger/errors.hpp"

namespace stagger {

Instance gen_random(RngStream& rng, std::size_t n, std::int64_t t_max,
                    std::int64_t h_max, Mode mode) {
  if (n < 1 || t_max < 1 || h_max < 1) throw InputError("gen_random: bad parameters");
  std::vector<Item> items;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t t = 1 + static_cast<std::int64_t>(rng.below(t_max));
    std::int64_t h = 1 + static_cast<std::int64_t>(rng.below(h_max));
    items.push_back(Item{t, h});
  }
  return Instance(std::move(items), mode);
}

Instance gen_random_capped(RngStream& rng, std::size_t n, std::int64_t t_max,
                           std::int64_t h_max, Mode mode, std::int64_t lambda_cap) {
  for (;;) {
    Instance inst = gen_random(rng, n, t_max, h_max, mode);
    if (inst.cycle_length() <= lambda_cap) return inst;
  }
}

Instance gen_nested(RngStream& rng, std::size_t n,
                    const std::vector<std::int64_t>& chain, std::int64_t h_max) {
  if (n < 1 || chain.empty() || h_max < 1) throw InputError("gen_nested: bad parameters");
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (chain[i] % chain[i - 1] != 0) throw InputError("gen_nested: chain is not nested");
  std::vector<Item> items;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t t = chain[rng.below(chain.size())];
    std::int64_t h = 1 + static_cast<std::int64_t>(rng.below(h_max));
    items.push_back(Item{t, h});
  }
  return Instance(std::move(items), Mode::Discrete);
}

Instance gen_coprime(RngStream& rng, std::size_t n, std::int64_t t_max,
                     std::int64_t h_max) {
  if (n < 1 || t_max < 2 || h_max < 1) throw InputError("gen_coprime: bad parameters");
  std::vector<std::int64_t> chosen;
  long attempts = 0;
  while (chosen.size() < n) {
    std::int64_t t = 2 + static_cast<std::int64_t>(rng.below(t_max - 1));
    bool ok = true;
    for (std::int64_t c : chosen)
      if (std::gcd(c, t) != 1) ok = false;
    if (ok) chosen.push_back(t);
    if (++attempts > 100000)
      throw InputError("gen_coprime: cannot find enough pairwise coprime intervals");
  }
  std::vector<Item> items;
  for (std::int64_t t : chosen)
    items.push_back(Item{t, 1 + static_cast<std::int64_t>(rng.below(h_max))});
  return Instance(std::move(items), Mode::Continuous);
}

}  // namespace stagger
