#include "casimir/diagrams.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>

namespace casimir {

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

std::vector<int> Diagram::traversal() const { return {word.rbegin(), word.rend()}; }

std::string Diagram::str() const {
  std::string s = "[";
  for (int i : word) s += std::to_string(i);
  return s + "]";
}

bool Diagram::operator<(const Diagram& o) const {
  if (word.size() != o.word.size()) return word.size() < o.word.size();
  return word < o.word;
}

bool satisfies_rule1(const std::vector<int>& w) {
  const size_t n = w.size();
  if (n < 2) return false;
  for (size_t i = 0; i < n; ++i)
    if (w[i] == w[(i + 1) % n]) return false;
  return true;
}

static std::vector<int> rotate_left(const std::vector<int>& w, size_t k) {
  std::vector<int> r(w.size());
  for (size_t i = 0; i < w.size(); ++i) r[i] = w[(i + k) % w.size()];
  return r;
}

Rational symmetry_factor(const std::vector<int>& w) {
  long n = 0;
  for (size_t k = 0; k < w.size(); ++k)
    if (rotate_left(w, k) == w) ++n;
  return {1, n};
}

// Representative: among rotations ending with the smallest index, the lexicographically smallest.
static std::vector<int> canonical_rotation(const std::vector<int>& w) {
  const int lo = *std::min_element(w.begin(), w.end());
  std::vector<int> best;
  for (size_t k = 0; k < w.size(); ++k) {
    auto r = rotate_left(w, k);
    if (r.back() != lo) continue;
    if (best.empty() || r < best) best = r;
  }
  return best;
}

Diagram canonicalize(const std::vector<int>& word) {
  if (word.size() < 2) throw DiagramError("diagram needs at least two insertions");
  if (!satisfies_rule1(word)) throw DiagramError("diagram violates rule 1: equal neighbouring indices");
  Diagram d;
  d.word = canonical_rotation(word);
  d.symmetry_factor = symmetry_factor(d.word);
  std::vector<int> rev(word.rbegin(), word.rend());
  d.direction_symmetric = canonical_rotation(rev) == d.word;
  return d;
}

Diagram parse_diagram(const std::string& text) {
  std::vector<int> w;
  for (char c : text) {
    if (c >= '1' && c <= '9') w.push_back(c - '0');
    else if (c != '[' && c != ']' && c != ' ') throw DiagramError("bad diagram text: " + text);
  }
  return canonicalize(w);
}

Diagram mirror(const Diagram& d) {
  std::vector<int> rev(d.word.rbegin(), d.word.rend());
  return canonicalize(rev);
}

std::vector<Diagram> enumerate(int M, int n_max) {
  if (M < 2 || n_max < 2) throw DiagramError("enumerate: need M >= 2 and N_max >= 2");
  std::set<std::vector<int>> seen;
  std::vector<Diagram> out;
  for (int n = 2; n <= n_max; ++n) {
    std::vector<int> w(n, 1);
    std::vector<Diagram> level;
    while (true) {
      if (satisfies_rule1(w)) {
        auto c = canonical_rotation(w);
        if (seen.insert(c).second) level.push_back(canonicalize(c));
      }
      int i = n - 1;
      while (i >= 0 && w[i] == M) w[i--] = 1;
      if (i < 0) break;
      ++w[i];
    }
    std::sort(level.begin(), level.end());
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

int BlockSystem::dim() const {
  int d = 0;
  for (const auto& t : t_blocks) d += static_cast<int>(t.rows());
  return d;
}

CMatrix BlockSystem::coupling() const {
  std::vector<int> off(M + 1, 0);
  for (int a = 0; a < M; ++a) off[a + 1] = off[a] + static_cast<int>(t_blocks[a].rows());
  CMatrix K = CMatrix::Zero(off[M], off[M]);
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b)
      if (a != b && u_blocks[a][b].size())
        K.block(off[a], off[b], off[a + 1] - off[a], off[b + 1] - off[b]) = t_blocks[a] * u_blocks[a][b];
  return K;
}

static CMatrix u_or_zero(const BlockSystem& s, int a, int b) {
  const auto& u = s.u_blocks[a][b];
  if (u.size()) return u;
  return CMatrix::Zero(s.t_blocks[a].rows(), s.t_blocks[b].rows());
}

cd diagram_trace(const BlockSystem& sys, const Diagram& d) {
  auto t = d.traversal();
  for (int i : t)
    if (i < 1 || i > sys.M) throw DiagramError("diagram index outside block system");
  const size_t n = t.size();
  CMatrix m = sys.t_blocks[t[0] - 1];
  for (size_t k = 1; k < n; ++k) {
    int a = t[k] - 1, b = t[k - 1] - 1;
    m = sys.t_blocks[a] * (u_or_zero(sys, a, b) * m);
  }
  m = u_or_zero(sys, t[0] - 1, t[n - 1] - 1) * m;
  return m.trace();
}

LnDetResult lndet_oracle(const BlockSystem& sys, int n_max) {
  CMatrix K = sys.coupling();
  Eigen::ComplexEigenSolver<CMatrix> es(K);
  double rho = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) rho = std::max(rho, std::abs(es.eigenvalues()(i)));
  if (rho >= 1.0) throw DiagramError("lndet_oracle: spectral radius >= 1, series divergent");

  LnDetResult r;
  r.spectral_radius = rho;
  r.exact = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) r.exact -= std::log(1.0 - es.eigenvalues()(i));

  r.truncated_exact = 0;
  CMatrix P = CMatrix::Identity(K.rows(), K.cols());
  for (int n = 1; n <= n_max; ++n) {
    P = P * K;
    if (n >= 2) r.truncated_exact += P.trace() / static_cast<double>(n);
  }

  r.series = 0;
  for (const auto& d : enumerate(sys.M, n_max)) r.series += d.symmetry_factor.value() * diagram_trace(sys, d);

  // K has zero diagonal blocks, so the n = 1 term tr K vanishes on both sides.
  double tail = 0, rn = std::pow(rho, n_max + 1);
  for (int n = n_max + 1; n < n_max + 2000 && rn > 1e-300; ++n, rn *= rho) tail += rn / n;
  r.tail_bound = sys.dim() * tail;
  return r;
}

}  // namespace casimir

namespace casimir {

BlockSystem random_block_system(int M, int block_dim, double rho, std::mt19937_64& rng) {
  if (M < 2 || block_dim < 1 || !(rho > 0)) throw std::invalid_argument("random_block_system: bad arguments");
  std::normal_distribution<double> nd(0.0, 1.0);
  auto rnd = [&] {
    CMatrix m(block_dim, block_dim);
    for (int i = 0; i < block_dim; ++i)
      for (int j = 0; j < block_dim; ++j) m(i, j) = cd(nd(rng), nd(rng));
    return m;
  };
  BlockSystem s;
  s.M = M;
  for (int a = 0; a < M; ++a) s.t_blocks.push_back(rnd());
  s.u_blocks.assign(M, std::vector<CMatrix>(M));
  for (int a = 0; a < M; ++a)
    for (int b = 0; b < M; ++b) s.u_blocks[a][b] = a == b ? CMatrix::Zero(block_dim, block_dim) : rnd();
  const double r = Eigen::ComplexEigenSolver<CMatrix>(s.coupling(), false).eigenvalues().cwiseAbs().maxCoeff();
  const double k = std::sqrt(rho / r);
  for (auto& t : s.t_blocks) t *= k;
  for (auto& row : s.u_blocks)
    for (auto& u : row) u *= k;
  return s;
}

}  // namespace casimir
