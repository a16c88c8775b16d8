#include "toriclg/exterior.hpp"

#include "toriclg/errors.hpp"

#include <bit>

namespace toriclg {

ExteriorAlgebra::ExteriorAlgebra(std::size_t n) : n_(n), bases_(n + 1) {
  if (n > kMaxExteriorRank) throw ValidationError("rank exceeds the supported exterior rank 20");
  index_.assign(std::size_t{1} << n, 0);
  // Lexicographic order on sorted subsets of a fixed size, built by recursion
  // on the smallest element.
  auto fill = [&](auto&& self, std::size_t k, std::size_t start, ExteriorMask acc) -> void {
    if (k == 0) {
      const auto size = static_cast<std::size_t>(std::popcount(acc));
      index_[acc] = bases_[size].size();
      bases_[size].push_back(acc);
      return;
    }
    for (std::size_t i = start; i + k <= n; ++i) self(self, k - 1, i + 1, acc | (ExteriorMask{1} << i));
  };
  for (std::size_t k = 0; k <= n; ++k) fill(fill, k, 0, 0);
}

std::optional<std::pair<int, ExteriorMask>> contract(ExteriorMask s, std::size_t i) {
  const ExteriorMask bit = ExteriorMask{1} << i;
  if (!(s & bit)) return std::nullopt;
  const int below = std::popcount(s & (bit - 1));
  return std::pair{below % 2 ? -1 : 1, s & ~bit};
}

std::optional<std::pair<int, ExteriorMask>> wedge(ExteriorMask s, ExteriorMask t) {
  if (s & t) return std::nullopt;
  // Each t-element must move past the s-elements above it.
  int swaps = 0;
  for (ExteriorMask rest = t; rest != 0; rest &= rest - 1) {
    const ExteriorMask bit = rest & (~rest + 1);
    swaps += std::popcount(s & ~(bit | (bit - 1)));
  }
  return std::pair{swaps % 2 ? -1 : 1, s | t};
}

std::string exterior_to_string(ExteriorMask s) {
  if (s == 0) return "1";
  std::string out;
  for (std::size_t i = 0; s >> i; ++i) {
    if (!((s >> i) & 1U)) continue;
    if (!out.empty()) out += '^';
    out += "xi" + std::to_string(i + 1);
  }
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace toriclg
