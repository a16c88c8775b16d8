#include "support.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace toriclg::testing {

std::string data_path(const std::string& name) {
  return std::string(TORICLG_DATA_DIR) + "/fans/" + name + ".json";
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string fan_text(const std::string& name) { return read_text(data_path(name)); }

Fan load_fan(const std::string& name) { return parse_fan(fan_text(name)); }

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"p1", "p2", "p1xp1", "f1", "bl0c2", "cxp1", "zero2"};
  return names;
}

const std::vector<std::string>& semiprojective_names() {
  static const std::vector<std::string> names{"p1", "p2", "p1xp1", "f1", "bl0c2", "cxp1"};
  return names;
}

Fan affine_space(std::size_t n) {
  std::vector<LatticeVector> rays(n, LatticeVector(n, 0));
  std::vector<std::size_t> all;
  for (std::size_t i = 0; i < n; ++i) {
    rays[i][i] = 1;
    all.push_back(i);
  }
  return Fan(n, rays, {Cone(all)});
}

Rational random_rational(Rng& rng, int range) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, 3);
  return Rational(num(rng), den(rng));
}

SparseVector random_vector(Rng& rng, std::size_t dimension, double density) {
  std::bernoulli_distribution keep(density);
  SparseVector v;
  for (std::size_t i = 0; i < dimension; ++i)
    if (keep(rng)) v.set(i, random_rational(rng));
  return v;
}

RationalMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double density) {
  RationalMatrix a(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) a.set_row(r, random_vector(rng, cols, density));
  return a;
}

std::vector<LatticeVector> random_unimodular(Rng& rng, std::size_t n, int moves) {
  std::vector<LatticeVector> m(n, LatticeVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  if (n < 2) {
    if (n == 1 && std::bernoulli_distribution(0.5)(rng)) m[0][0] = -1;
    return m;
  }
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> factor(-2, 2);
  for (int step = 0; step < moves; ++step) {
    const std::size_t a = pick(rng), b = pick(rng);
    if (a == b) {
      for (auto& x : m[a]) x = -x;
      continue;
    }
    const int c = factor(rng);
    for (std::size_t col = 0; col < n; ++col) m[a][col] += c * m[b][col];
  }
  return m;
}

SRPolynomial random_polynomial(Rng& rng, const FaceRing& ring, std::size_t j) {
  SRPolynomial p;
  std::bernoulli_distribution keep(0.7);
  for (const Monomial& m : ring.basis(j))
    if (keep(rng)) p.add(m, random_rational(rng));
  return p;
}

std::size_t dense_rank(std::vector<std::vector<Rational>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c] == 0) continue;
      const Rational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<Rational>> dense(const RationalMatrix& a) {
  std::vector<std::vector<Rational>> out(a.rows(), std::vector<Rational>(a.cols()));
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (const auto& [c, x] : a.row(r).entries()) out[r][c] = x;
  return out;
}

int sort_sign(std::vector<std::size_t> values) {
  int sign = 1;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j)
      if (values[i] > values[j]) sign = -sign;
  return sign;
}

}  // namespace toriclg::testing
