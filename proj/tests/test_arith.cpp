#include <catch_amalgamated.hpp>

#include <random>

#include "bicoh/arith.hpp"

using namespace bicoh;

namespace {

DenseMatrix random_matrix(const PrimeField& f, std::mt19937& rng, std::size_t r, std::size_t c, int zero_bias) {
  DenseMatrix m(f, r, c);
  std::uniform_int_distribution<int> pick(0, 9);
  std::uniform_int_distribution<Coeff> val(1, f.modulus() - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (pick(rng) >= zero_bias) m(i, j) = val(rng);
  return m;
}

}  // namespace

TEST_CASE("prime field arithmetic", "[arith]") {
  PrimeField f;
  CHECK(f.modulus() == 32003);
  CHECK(f.mul(f.inv(12345), 12345) == 1);
  CHECK(f.from_int(-1) == 32002);
  CHECK(f.to_signed(32002) == -1);
  CHECK_THROWS_AS(PrimeField(32004), Error);
  FieldElement a(f, 5), b(f, -5);
  CHECK((a + b).value() == 0);
  CHECK((a / a).value() == 1);
}

TEST_CASE("rank examples", "[arith]") {
  PrimeField f;
  CHECK(rank(DenseMatrix::identity(f, 3)) == 3);
  CHECK(rank(DenseMatrix(f, 4, 2)) == 0);
  CHECK(rank(DenseMatrix::from_rows(f, {{1, 2}, {2, 4}})) == 1);
}

TEST_CASE("kernel examples", "[arith]") {
  PrimeField f;
  CHECK(kernel_basis(DenseMatrix::identity(f, 3)).cols() == 0);
  CHECK(kernel_basis(DenseMatrix(f, 2, 3)).cols() == 3);
  auto k = kernel_basis(DenseMatrix::from_rows(f, {{1, 1}}));
  REQUIRE(k.cols() == 1);
  CHECK(f.add(k(0, 0), k(1, 0)) == 0);
  CHECK(k(0, 0) != 0);
}

TEST_CASE("homology examples", "[arith]") {
  PrimeField f;
  CHECK(homology_dim(DenseMatrix(f, 3, 3), DenseMatrix(f, 3, 3)) == 3);
  CHECK(homology_dim(DenseMatrix::identity(f, 3), DenseMatrix(f, 3, 3)) == 0);
  CHECK(homology_dim(DenseMatrix(f, 1, 1), DenseMatrix::identity(f, 1)) == 0);
  try {
    homology_dim(DenseMatrix::identity(f, 2), DenseMatrix::identity(f, 2));
    FAIL("expected COMPOSE_NONZERO");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ComposeNonzero);
  }
}

TEST_CASE("rank-nullity on random matrices", "[arith][property]") {
  PrimeField f(101);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
    auto m = random_matrix(f, rng, r, c, static_cast<int>(rng() % 9));
    auto k = kernel_basis(m);
    CHECK(rank(m) + k.cols() == c);
    CHECK((m * k).is_zero());
    CHECK(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("split complexes are exact", "[arith][property]") {
  // 0 -> K^a -> K^(a+b) -> K^b -> 0 via inclusion and projection, conjugated by a random invertible g.
  PrimeField f;
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t a = 1 + rng() % 5, b = 1 + rng() % 5, n = a + b;
    DenseMatrix inc(f, n, a), proj(f, b, n);
    for (std::size_t i = 0; i < a; ++i) inc(i, i) = 1;
    for (std::size_t i = 0; i < b; ++i) proj(i, a + i) = 1;
    DenseMatrix g = DenseMatrix::identity(f, n), ginv = DenseMatrix::identity(f, n);
    for (int step = 0; step < 30; ++step) {
      std::size_t i = rng() % n, j = rng() % n;
      if (i == j) continue;
      Coeff c = 1 + rng() % 1000;
      for (std::size_t k = 0; k < n; ++k) g(i, k) = f.add(g(i, k), f.mul(c, g(j, k)));
      for (std::size_t k = 0; k < n; ++k) ginv(k, j) = f.sub(ginv(k, j), f.mul(c, ginv(k, i)));
    }
    REQUIRE((g * ginv) == DenseMatrix::identity(f, n));
    CHECK(homology_dim(g * inc, proj * ginv) == 0);
    CHECK(homology_dim(DenseMatrix(f, a, 0), g * inc) == 0);
    CHECK(homology_dim(proj * ginv, DenseMatrix(f, 0, b)) == 0);
  }
}

TEST_CASE("subspace quotient coordinates", "[arith]") {
  PrimeField f;
  Subspace u(DenseMatrix::from_rows(f, {{1, 1, 0}, {0, 0, 1}}));
  CHECK(u.dim() == 2);
  CHECK(u.codim() == 1);
  auto q = u.quotient_coords({1, 0, 5});
  REQUIRE(q.size() == 1);
  auto q2 = u.quotient_coords({0, f.neg(1), 0});
  CHECK(q == q2);
  CHECK(u.quotient_coords({1, 1, 7}) == std::vector<Coeff>{0});
}

TEST_CASE("elimination is deterministic", "[arith][property]") {
  PrimeField f;
  std::mt19937 rng(3);
  auto m = random_matrix(f, rng, 6, 8, 4);
  CHECK(kernel_basis(m) == kernel_basis(m));
}
