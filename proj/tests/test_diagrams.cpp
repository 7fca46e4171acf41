#include <doctest.h>

#include <random>

#include "casimir/diagrams.hpp"

using namespace casimir;

TEST_CASE("two-object series: S = 1/n and direction symmetry") {
  auto ds = enumerate(2, 6);
  REQUIRE(ds.size() == 3);
  CHECK(ds[0].str() == "[21]");
  CHECK(ds[1].str() == "[2121]");
  CHECK(ds[2].str() == "[212121]");
  CHECK(ds[1].symmetry_factor == Rational{1, 2});
  CHECK(ds[2].symmetry_factor.str() == "1/3");
  for (const auto& d : ds) CHECK(d.direction_symmetric);
}

TEST_CASE("three objects up to fourth order") {
  auto ds = enumerate(3, 4);
  std::vector<std::string> names;
  for (const auto& d : ds) names.push_back(d.str());
  const std::vector<std::string> expected = {"[21]",   "[31]",   "[32]",   "[231]",  "[321]", "[2121]",
                                             "[2131]", "[2321]", "[3131]", "[3231]", "[3232]"};
  CHECK(names == expected);
  auto d = parse_diagram("[321]");
  CHECK_FALSE(d.direction_symmetric);
  CHECK(mirror(d).str() == "[231]");
  CHECK(parse_diagram("[2131]").direction_symmetric);
  CHECK(parse_diagram("[3131]").symmetry_factor == Rational{1, 2});
}

TEST_CASE("canonical form is rotation invariant") {
  CHECK(canonicalize({1, 2, 1, 3}).str() == "[2131]");
  CHECK(canonicalize({3, 1, 2, 1}).str() == "[2131]");
  CHECK(canonicalize({1, 3, 2}).str() == "[321]");
  CHECK(parse_diagram("[213]").str() == "[321]");
  CHECK_THROWS_AS(canonicalize({1, 1}), DiagramError);
  CHECK_THROWS_AS(canonicalize({1, 2, 1}), DiagramError);
  CHECK_THROWS_AS(canonicalize({1}), DiagramError);
  CHECK(symmetry_factor({1, 2, 1, 2, 1, 2}) == Rational{1, 3});
  CHECK(symmetry_factor({1, 2, 1, 3}) == Rational{1, 1});
}

TEST_CASE("necklace counts") {
  // Cyclic words without equal neighbours on M letters, counted up to rotation.
  CHECK(enumerate(4, 3).size() == 6 + 8);
  CHECK(enumerate(3, 6).size() == 3 + 2 + 6 + 6 + 14);
}

TEST_CASE("diagram trace equals the explicit block chain") {
  std::mt19937_64 rng(3);
  auto sys = random_block_system(3, 2, 0.5, rng);
  auto d = parse_diagram("[321]");
  // traversal 1 -> 2 -> 3 -> 1
  CMatrix K1 = sys.t_blocks[0] * sys.u_blocks[0][2];
  CMatrix K2 = sys.t_blocks[1] * sys.u_blocks[1][0];
  CMatrix K3 = sys.t_blocks[2] * sys.u_blocks[2][1];
  cd chain = (K3 * K2 * K1).trace();
  CHECK(std::abs(diagram_trace(sys, d) - chain) < 1e-12 * std::abs(chain));
}

TEST_CASE("diagram sum equals the log-determinant expansion") {
  std::mt19937_64 rng(11);
  for (int M : {2, 3, 4}) {
    auto sys = random_block_system(M, 2, 0.5, rng);
    auto r = lndet_oracle(sys, 8);
    CHECK(r.spectral_radius == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(std::abs(r.series - r.truncated_exact) < 1e-10 * std::abs(r.truncated_exact));
    CHECK(std::abs(r.series - r.exact) <= r.tail_bound);
  }
}
