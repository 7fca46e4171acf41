#pragma once

#include <random>
#include <string>
#include <vector>

#include "casimir/quadrature.hpp"

namespace casimir {

struct Rational {
  long num = 1;
  long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;
  bool operator==(const Rational&) const = default;
};

// Word is stored as displayed, [i_N ... i_1]; the loop visits i_1, i_2, ..., i_N.
struct Diagram {
  std::vector<int> word;
  Rational symmetry_factor;
  bool direction_symmetric = false;

  int order() const { return static_cast<int>(word.size()); }
  std::vector<int> traversal() const;
  std::string str() const;
  bool operator==(const Diagram& o) const { return word == o.word; }
  bool operator<(const Diagram& o) const;
};

struct DiagramError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

bool satisfies_rule1(const std::vector<int>& word);
Rational symmetry_factor(const std::vector<int>& word);
Diagram canonicalize(const std::vector<int>& word);
Diagram parse_diagram(const std::string& text);
Diagram mirror(const Diagram& d);
std::vector<Diagram> enumerate(int M, int n_max);

struct BlockSystem {
  int M = 0;
  std::vector<CMatrix> t_blocks;
  std::vector<std::vector<CMatrix>> u_blocks;  // u_blocks[a][b] maps b into a

  int dim() const;
  CMatrix coupling() const;  // K with blocks T_a U_ab
};

cd diagram_trace(const BlockSystem& sys, const Diagram& d);

// Random complex blocks (zero diagonal U), rescaled to spectral radius rho.
BlockSystem random_block_system(int M, int block_dim, double rho, std::mt19937_64& rng);

struct LnDetResult {
  cd series;           // ∑ S tr(chain) over enumerated diagrams
  cd exact;            // −tr ln(I − K)
  cd truncated_exact;  // ∑_{n ≤ N_max} tr(K^n)/n
  double tail_bound;   // dim · ∑_{n > N_max} ρ^n / n
  double spectral_radius;
};

LnDetResult lndet_oracle(const BlockSystem& sys, int n_max);

}  // namespace casimir
