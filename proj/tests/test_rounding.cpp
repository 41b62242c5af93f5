#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "c2mabv/rounding.hpp"
#include "c2mabv/rng.hpp"

using namespace c2mabv;

namespace {

FractionalSelection random_polytope_point(rng::Stream& s, int K, int N) {
  // rejection keeps it simple: scale a random vector into the cap
  std::vector<double> v(static_cast<std::size_t>(K));
  double total = 0.0;
  for (double& x : v) {
    x = s.uniform01();
    total += x;
  }
  const double cap = s.uniform_real(0.3, 1.0) * N;
  if (total > cap) {
    for (double& x : v) x *= cap / total;
  }
  return FractionalSelection(std::move(v));
}

}  // namespace

TEST_CASE("decompose: integral input is a single term") {
  const auto d = rounding::decompose(FractionalSelection({1.0, 0.0, 1.0}), 2);
  REQUIRE(d.sets.size() == 1);
  CHECK(d.weights[0] == doctest::Approx(1.0));
  CHECK(d.sets[0] == ActionSet{0, 2});
}

TEST_CASE("decompose: symmetric half split") {
  const auto d = rounding::decompose(FractionalSelection({0.5, 0.5}), 1);
  REQUIRE(d.sets.size() == 2);
  CHECK(d.weights[0] == doctest::Approx(0.5));
  CHECK(d.weights[1] == doctest::Approx(0.5));
  const bool forward = d.sets[0] == ActionSet{0};
  CHECK((forward ? d.sets[1] == ActionSet{1} : d.sets[0] == ActionSet{1}));
}

TEST_CASE("decompose reconstructs the input and respects N on random points") {
  auto s = rng::make_stream(41, 0, rng::StreamKind::Rounding);
  for (int trial = 0; trial < 200; ++trial) {
    const int K = 8, N = 3;
    const auto z = random_polytope_point(s, K, N);
    const auto d = rounding::decompose(z, N);
    CHECK(d.sets.size() <= static_cast<std::size_t>(K));
    double weight_sum = 0.0;
    std::vector<double> recon(static_cast<std::size_t>(K), 0.0);
    for (std::size_t l = 0; l < d.sets.size(); ++l) {
      CHECK(d.sets[l].size() <= N);
      CHECK(d.weights[l] > 0.0);
      weight_sum += d.weights[l];
      for (int k : d.sets[l].members) recon[static_cast<std::size_t>(k)] += d.weights[l];
    }
    CHECK(weight_sum == doctest::Approx(1.0).epsilon(1e-9));
    for (int k = 0; k < K; ++k)
      CHECK(std::abs(recon[static_cast<std::size_t>(k)] - z.values[static_cast<std::size_t>(k)]) <=
            1e-9);
  }
}

TEST_CASE("decompose rejects points outside the polytope") {
  CHECK_THROWS_AS(rounding::decompose(FractionalSelection({1.2, 0.0}), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(rounding::decompose(FractionalSelection({0.9, 0.9}), 1),
                  std::invalid_argument);
}

TEST_CASE("swap_round: integral passthrough and cardinality feasibility") {
  auto s = rng::make_stream(42, 0, rng::StreamKind::Rounding);
  CHECK(rounding::swap_round(FractionalSelection({1.0, 0.0, 1.0}), 2, s) == ActionSet{0, 2});
  for (int trial = 0; trial < 500; ++trial) {
    const auto z = random_polytope_point(s, 7, 3);
    CHECK(rounding::swap_round(z, 3, s).size() <= 3);
  }
}

TEST_CASE("swap_round: two-arm marginal matches the half split") {
  auto s = rng::make_stream(43, 0, rng::StreamKind::Rounding);
  int first = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    const auto set = rounding::swap_round(FractionalSelection({0.5, 0.5}), 1, s);
    REQUIRE(set.size() == 1);
    if (set.members[0] == 0) ++first;
  }
  CHECK(std::abs(first / static_cast<double>(trials) - 0.5) <= 0.01);
}

TEST_CASE("swap_round preserves marginals on random points") {
  auto s = rng::make_stream(44, 0, rng::StreamKind::Rounding);
  const int K = 6, N = 3, trials = 20000;
  const auto z = random_polytope_point(s, K, N);
  std::vector<int> hits(static_cast<std::size_t>(K), 0);
  for (int i = 0; i < trials; ++i) {
    for (int k : rounding::swap_round(z, N, s).members) hits[static_cast<std::size_t>(k)] += 1;
  }
  for (int k = 0; k < K; ++k) {
    const double p = z.values[static_cast<std::size_t>(k)];
    const double freq = hits[static_cast<std::size_t>(k)] / static_cast<double>(trials);
    const double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-12) / trials);
    CHECK(std::abs(freq - p) <= 4.0 * sigma + 1e-3);
  }
}

TEST_CASE("dependent_round: integral input returns the same support") {
  auto s = rng::make_stream(45, 0, rng::StreamKind::Rounding);
  const auto before = s.next_u64();
  auto s2 = rng::make_stream(45, 0, rng::StreamKind::Rounding);
  CHECK(rounding::dependent_round(FractionalSelection({1.0, 0.0, 1.0, 0.0}), s2) ==
        ActionSet{0, 2});
  CHECK(s2.next_u64() == before);  // no randomness consumed
}

TEST_CASE("dependent_round: integer mass keeps the cardinality exactly") {
  auto s = rng::make_stream(46, 0, rng::StreamKind::Rounding);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v{0.2, 0.8, 0.5, 0.5, 0.7, 0.3};  // sums to 3
    CHECK(rounding::dependent_round(FractionalSelection(std::move(v)), s).size() == 3);
  }
}

TEST_CASE("dependent_round: two-coordinate marginals") {
  auto s = rng::make_stream(47, 0, rng::StreamKind::Rounding);
  int second = 0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    const auto set = rounding::dependent_round(FractionalSelection({0.3, 0.7}), s);
    REQUIRE(set.size() == 1);
    if (set.members[0] == 1) ++second;
  }
  CHECK(std::abs(second / static_cast<double>(trials) - 0.7) <= 0.01);
}

TEST_CASE("rounders are deterministic under a fixed stream") {
  const FractionalSelection z({0.4, 0.6, 0.3, 0.7});
  auto a = rng::make_stream(48, 0, rng::StreamKind::Rounding);
  auto b = rng::make_stream(48, 0, rng::StreamKind::Rounding);
  CHECK(rounding::swap_round(z, 2, a) == rounding::swap_round(z, 2, b));
  auto c = rng::make_stream(49, 0, rng::StreamKind::Rounding);
  auto d = rng::make_stream(49, 0, rng::StreamKind::Rounding);
  CHECK(rounding::dependent_round(z, c) == rounding::dependent_round(z, d));
}
