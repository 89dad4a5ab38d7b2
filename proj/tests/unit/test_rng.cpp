#include "doctest.h"

#include <cmath>
#include <set>

#include "afdm/rng.hpp"

using namespace afdm;

TEST_CASE("same seed gives the same stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.normal() == b.normal());
  CHECK(Rng(1).next_u64() != Rng(2).next_u64());
}

TEST_CASE("mix_seed separates streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 1000; ++s) seen.insert(mix_seed(7, s));
  CHECK(seen.size() == 1000);
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
}

TEST_CASE("distribution moments") {
  Rng rng(5);
  const int n = 200000;
  double sum = 0, sq = 0, cn = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    sum += x;
    sq += x * x;
    cn += std::norm(rng.complex_normal(2.0));
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.02);
  CHECK(std::abs(cn / n - 2.0) < 0.04);

  double u = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform(-1.0, 3.0);
    REQUIRE(x >= -1.0);
    REQUIRE(x < 3.0);
    u += x;
  }
  CHECK(std::abs(u / n - 1.0) < 0.02);
}

TEST_CASE("uniform_int covers its inclusive range") {
  Rng rng(9);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    const auto v = rng.uniform_int(-2, 3);
    REQUIRE(v >= -2);
    REQUIRE(v <= 3);
    seen.insert(v);
  }
  CHECK(seen.size() == 6);
  CHECK(rng.uniform_int(4, 4) == 4);
}
