#pragma once

#include "toriclg/fan.hpp"
#include "toriclg/sparse_matrix.hpp"
#include "toriclg/stanley_reisner.hpp"

#include <cstddef>
#include <random>
#include <string>
#include <vector>

namespace toriclg::testing {

using Rng = std::mt19937_64;

std::string data_path(const std::string& name);
std::string read_text(const std::string& path);
std::string fan_text(const std::string& name);
Fan load_fan(const std::string& name);

/// Fans used by the cross-pipeline checks.
const std::vector<std::string>& suite_names();
/// Suite fans whose support is the whole space or a convex cone with all max cones of full dimension.
const std::vector<std::string>& semiprojective_names();

/// C^n: rays e_1..e_n in one cone.
Fan affine_space(std::size_t n);

Rational random_rational(Rng& rng, int range = 4);
SparseVector random_vector(Rng& rng, std::size_t dimension, double density = 0.6);
RationalMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double density = 0.4);
/// Integer matrix with determinant +-1, as a product of elementary moves.
std::vector<LatticeVector> random_unimodular(Rng& rng, std::size_t n, int moves = 6);
SRPolynomial random_polynomial(Rng& rng, const FaceRing& ring, std::size_t j);

/// Oracle: textbook Gauss elimination on a dense copy.
std::size_t dense_rank(std::vector<std::vector<Rational>> rows);
std::vector<std::vector<Rational>> dense(const RationalMatrix& a);

/// Oracle: sign of the permutation sorting a sequence of distinct integers.
int sort_sign(std::vector<std::size_t> values);

}  // namespace toriclg::testing
