#include <catch2/catch.hpp>

#include <random>
#include <vector>

#include "mdflow/solver.hpp"
#include "mdflow/sparse.hpp"

using namespace mdflow;

namespace {

// Dense Gaussian elimination with partial pivoting; the reference the sparse
// solver is checked against.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a[i][k]) > std::abs(a[piv][k])) piv = i;
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    REQUIRE(std::abs(a[k][k]) > 0.0);
    for (int i = k + 1; i < n; ++i) {
      const double m = a[i][k] / a[k][k];
      for (int j = k; j < n; ++j) a[i][j] -= m * a[k][j];
      b[i] -= m * b[k];
    }
  }
  std::vector<double> x(n);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

TEST_CASE("identity system returns the right-hand side") {
  std::vector<Triplet> t;
  for (int i = 0; i < 5; ++i) t.push_back({i, i, 1.0});
  SparseMatrix a = from_triplets(5, 5, t);
  std::vector<double> b = {1, -2, 3, -4, 5};
  std::vector<double> x = solve_direct(a, b);
  for (int i = 0; i < 5; ++i) CHECK(x[i] == Approx(b[i]));
}

TEST_CASE("off-diagonal permutation requires pivoting") {
  SparseMatrix a = from_triplets(2, 2, {{0, 1, 1.0}, {1, 0, 1.0}});
  std::vector<double> x = solve_direct(a, {1.0, 2.0});
  CHECK(x[0] == Approx(2.0));
  CHECK(x[1] == Approx(1.0));
}

TEST_CASE("random SPD system matches the dense elimination oracle") {
  const int n = 50;
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (auto& row : m)
    for (double& v : row) v = dist(rng);
  // A = M^T M + n I is SPD
  std::vector<std::vector<double>> dense(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) dense[i][j] += m[k][i] * m[k][j];
      if (i == j) dense[i][j] += n;
    }
  std::vector<double> b(n);
  for (double& v : b) v = dist(rng);

  std::vector<Triplet> trip;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) trip.push_back({i, j, dense[i][j]});
  SparseMatrix a = from_triplets(n, n, trip);

  std::vector<double> x = solve_direct(a, b);
  std::vector<double> ref = dense_solve(dense, b);
  for (int i = 0; i < n; ++i) CHECK(x[i] == Approx(ref[i]).margin(1e-10));
  CHECK(relative_residual(a, x, b) <= 1e-10);
}

TEST_CASE("singular matrix is reported") {
  SparseMatrix a = from_triplets(2, 2, {{0, 0, 1.0}, {1, 0, 1.0}});  // empty column 1
  CHECK_THROWS_AS(solve_direct(a, {1.0, 1.0}), SingularSystem);
}

TEST_CASE("factorization is reusable across right-hand sides") {
  SparseMatrix a = from_triplets(3, 3,
                                 {{0, 0, 4.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 3.0},
                                  {1, 2, 1.0}, {2, 1, 1.0}, {2, 2, 2.0}});
  SparseLU lu;
  lu.factor(a);
  for (double s : {1.0, -2.0, 10.0}) {
    std::vector<double> b = {s, 2 * s, -s};
    std::vector<double> x = lu.solve(b);
    CHECK(relative_residual(a, x, b) <= 1e-12);
  }
}
