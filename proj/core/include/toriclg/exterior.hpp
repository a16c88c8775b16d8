#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace toriclg {

/// Bit i set <=> xi_{i+1} is a factor. xi_S = xi_{s_1} ^ ... ^ xi_{s_k}, s_1 < ... < s_k.
using ExteriorMask = std::uint32_t;

inline constexpr std::size_t kMaxExteriorRank = 20;

/// Basis bookkeeping for the exterior algebra on n generators.
class ExteriorAlgebra {
 public:
  explicit ExteriorAlgebra(std::size_t n);

  std::size_t rank() const { return n_; }
  /// Degree-k basis elements ordered lexicographically on sorted subsets.
  const std::vector<ExteriorMask>& basis(std::size_t k) const { return bases_.at(k); }
  std::size_t dimension(std::size_t k) const { return k <= n_ ? bases_[k].size() : 0; }
  std::size_t index_of(ExteriorMask s) const { return index_[s]; }

 private:
  std::size_t n_;
  std::vector<std::vector<ExteriorMask>> bases_;
  std::vector<std::size_t> index_;
};

/// d/dxi_i applied to xi_S: nullopt when i is not in S, otherwise the sign
/// (-1)^{#{s in S : s < i}} and S \ {i}.
std::optional<std::pair<int, ExteriorMask>> contract(ExteriorMask s, std::size_t i);

/// xi_S ^ xi_T: nullopt when S and T meet, otherwise the sign and S u T.
std::optional<std::pair<int, ExteriorMask>> wedge(ExteriorMask s, ExteriorMask t);

/// "1", "xi1", "xi1^xi3".
std::string exterior_to_string(ExteriorMask s);

std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace toriclg
