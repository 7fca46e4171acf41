#include "casimir/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

namespace casimir {

namespace {

constexpr double pi = std::numbers::pi;

double rem2pi(double x) { return std::remainder(x, 2 * pi); }

template <class F>
void parallel_for(int n, int threads, F&& fn) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads) fn(i);
    });
  for (auto& th : pool) th.join();
}

bool is_half_plate(const SceneObject& o) { return std::holds_alternative<HalfPlate>(o.desc); }
bool is_infinite(const SceneObject& o) {
  return std::holds_alternative<InfinitePlate>(o.desc) || std::holds_alternative<PerfectPlate>(o.desc);
}

Vec2 unit(double a) { return {std::cos(a), std::sin(a)}; }

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

void Scene::validate() const {
  if (objects.size() < 2) throw GeometryError("scene needs at least two objects");
  for (size_t i = 0; i < objects.size(); ++i)
    for (size_t j = i + 1; j < objects.size(); ++j)
      if ((objects[i].pose.origin - objects[j].pose.origin).norm() < 1e-12)
        throw GeometryError("scene objects " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide");
}

AxisCone leg_cone(const Scene& s, int src, int dst, double margin) {
  const auto& A = s.objects.at(src - 1);
  const auto& B = s.objects.at(dst - 1);
  const Vec2 delta = B.pose.origin - A.pose.origin;
  if (delta.norm() == 0) throw GeometryError("leg between coincident objects");
  const double th = std::atan2(delta.y(), delta.x());
  double lo = -pi / 2, hi = pi / 2;
  bool lo_open = true, hi_open = true;
  auto half = [&](double centre) {
    double r = rem2pi(centre - th);
    if (r - pi / 2 > lo || (r - pi / 2 == lo)) { lo = r - pi / 2; lo_open = false; }
    if (r + pi / 2 < hi || (r + pi / 2 == hi)) { hi = r + pi / 2; hi_open = false; }
  };
  auto line = [&](double dir) {
    double r = rem2pi(dir + pi / 2 - th);
    if (std::abs(r) > pi / 2) r = rem2pi(r + pi);
    if (std::abs(std::abs(r) - pi / 2) < 1e-12) throw GeometryError("leg runs along an infinite plate");
    if (r < lo - 1e-12 || r > hi + 1e-12) throw GeometryError("objects are not separable along any axis");
    lo = hi = r;
    lo_open = hi_open = false;
  };
  if (is_half_plate(A)) half(A.pose.tilt + pi);
  if (is_half_plate(B)) half(B.pose.tilt);
  if (is_infinite(A)) line(A.pose.tilt);
  if (is_infinite(B)) line(B.pose.tilt);
  if (lo > hi + 1e-12 || (lo >= hi && (lo_open || hi_open)))
    throw GeometryError("objects " + std::to_string(src) + " and " + std::to_string(dst) + " overlap: no separating axis");
  const double m = std::min(margin, std::max(0.0, hi - lo) / 4);
  const double rel = hi - lo <= 0 ? lo : std::clamp(0.0, lo + m, hi - m);
  return {th + lo, th + hi, th + rel};
}

std::vector<double> diagram_axes(const Scene& s, const Diagram& d) {
  auto t = d.traversal();
  const int N = static_cast<int>(t.size());
  std::vector<double> ax(N);
  for (int k = 0; k < N; ++k) ax[k] = leg_cone(s, t[k], t[(k + 1) % N]).axis;
  return ax;
}

std::string vertex_channels(const Scene& s, const Diagram& d) {
  auto t = d.traversal();
  const int N = static_cast<int>(t.size());
  std::string out;
  for (int k = 0; k < N; ++k) {
    const int v = t[(k + 1) % N], from = t[k], to = t[(k + 2) % N];
    const auto& o = s.objects.at(v - 1);
    if (!is_half_plate(o) && !is_infinite(o)) continue;
    const Vec2 u = unit(o.pose.tilt);
    const double sa = cross(u, s.objects.at(from - 1).pose.origin - o.pose.origin);
    const double sb = cross(u, s.objects.at(to - 1).pose.origin - o.pose.origin);
    if (!out.empty()) out += ' ';
    out += std::to_string(v) + ":" + ((sa * sb > 0) ? "LL" : "RL");
  }
  return out;
}

namespace {

struct Vertex {
  CMatrix T;          // p-independent part
  bool needle = false;  // scales as p²
};

Vertex build_vertex(const Scene& s, int obj, double th_out, double th_in, double bs, const QuadratureGrid& g) {
  const auto& o = s.objects.at(obj - 1);
  const int n = g.n_alpha();
  Vertex v;
  if (auto* hp = std::get_if<HalfPlate>(&o.desc)) {
    (void)hp;
    v.T = halfplate_global(o.pose.tilt, bs, th_out, th_in, g);
  } else if (auto* nd = std::get_if<Needle>(&o.desc)) {
    v.T = needle_global(*nd, o.pose.tilt, 1.0, th_out, th_in, g);
    v.needle = true;
  } else if (std::holds_alternative<InfinitePlate>(o.desc)) {
    v.T = CMatrix::Zero(n, n);
    if (std::abs(rem2pi(th_out - th_in)) < 1e-12) {
      for (int i = 0; i < n; ++i) v.T(i, i) = -1.0 / g.alpha_weights[i];
    } else if (std::abs(rem2pi(th_out - th_in - pi)) < 1e-12) {
      for (int i = 0; i < n; ++i) v.T(i, n - 1 - i) = -bs / g.alpha_weights[i];
    } else {
      throw GeometryError("infinite plate legs must run along its normal");
    }
  } else {
    throw GeometryError("perfect plates are handled by parallel_plate_quadrature");
  }
  return v;
}

}  // namespace

DiagramValue diagram_value(const Scene& s, const Diagram& d, const QuadratureGrid& g, double bs,
                           const std::vector<Perturbation>& perturb, const std::vector<double>* axes_in) {
  auto t = d.traversal();
  const int N = static_cast<int>(t.size());
  for (int i : t)
    if (i < 1 || i > s.size()) throw DiagramError("diagram index outside scene: " + d.str());
  const std::vector<double> axes = axes_in ? *axes_in : diagram_axes(s, d);
  const int P = static_cast<int>(perturb.size());
  if (P > 2) throw std::invalid_argument("at most two perturbations");
  const int J = 1 << P;

  std::vector<Vertex> V(N);
  std::vector<Vec2> delta(N);
  std::vector<std::array<Vec2, 2>> dmove(N);
  for (int k = 0; k < N; ++k) {
    const int src = t[k], dst = t[(k + 1) % N];
    V[k] = build_vertex(s, dst, axes[(k + 1) % N], axes[k], bs, g);
    delta[k] = s.objects[dst - 1].pose.origin - s.objects[src - 1].pose.origin;
    const Vec2 n = unit(axes[k]);
    if (n.dot(delta[k]) <= 0) throw GeometryError("leg axis does not separate objects in " + d.str());
    for (int j = 0; j < P; ++j) {
      double c = (perturb[j].object == dst ? 1.0 : 0.0) - (perturb[j].object == src ? 1.0 : 0.0);
      dmove[k][j] = c * perturb[j].direction;
    }
  }

  const int np = g.n_p();
  const int n = g.n_alpha();
  std::vector<std::array<cd, 4>> tr(np);
  Eigen::ArrayXd w(n);
  for (int i = 0; i < n; ++i) w(i) = g.alpha_weights[i];

  parallel_for(np, s.threads, [&](int ip) {
    const double p = g.p_nodes[ip];
    std::vector<std::array<CMatrix, 4>> S(N);
    for (int k = 0; k < N; ++k) {
      CVector dw = translation_values(axes[k], delta[k], p, g);
      dw.array() *= w;
      CMatrix base = V[k].T;
      if (V[k].needle) base *= p * p;
      std::array<CVector, 2> gk;
      for (int j = 0; j < P; ++j) gk[j] = translation_log_derivative(axes[k], dmove[k][j], p, g);
      for (int b = 0; b < J; ++b) {
        CVector f = dw;
        for (int j = 0; j < P; ++j)
          if (b & (1 << j)) f.array() *= gk[j].array();
        S[k][b] = base * f.asDiagonal();
      }
    }
    std::array<CMatrix, 4> M;
    for (int b = 0; b < J; ++b) M[b] = S[0][b];
    for (int k = 1; k < N - 1; ++k) {
      std::array<CMatrix, 4> R;
      for (int c = 0; c < J; ++c) {
        R[c] = CMatrix::Zero(n, n);
        for (int a = 0; a < J; ++a) {
          if ((a & c) != a) continue;
          R[c].noalias() += S[k][a] * M[c & ~a];
        }
      }
      M = std::move(R);
    }
    std::array<cd, 4> out{};
    for (int c = 0; c < J; ++c)
      for (int a = 0; a < J; ++a) {
        if ((a & c) != a) continue;
        out[c] += (S[N - 1][a].array() * M[c & ~a].transpose().array()).sum();
      }
    tr[ip] = out;
  });

  const double S = d.symmetry_factor.value();
  const double pref = s.dim == Dimension::TwoAndHalfD ? -S / (4 * pi) : -S / (2 * pi);
  std::array<cd, 4> acc{};
  for (int ip = 0; ip < np; ++ip) {
    const double wp = s.dim == Dimension::TwoAndHalfD ? g.p_weights[ip] : g.p_weights[ip] / g.p_nodes[ip];
    for (int c = 0; c < J; ++c) acc[c] += wp * tr[ip][c];
  }
  DiagramValue r;
  r.energy = pref * acc[0].real();
  r.imag = pref * acc[0].imag();
  if (P >= 1) r.d1 = pref * acc[1].real();
  if (P >= 2) {
    r.d2 = pref * acc[2].real();
    r.d12 = pref * acc[3].real();
  }
  return r;
}

namespace {

std::vector<double> bc_signs(const Scene& s) {
  if (s.bc == BoundaryCondition::Dirichlet) return {1.0};
  if (s.bc == BoundaryCondition::Neumann) return {-1.0};
  if (s.dim == Dimension::TwoD) return {-1.0};
  return {1.0, -1.0};
}

DiagramValue value_all_bc(const Scene& s, const Diagram& d, const QuadratureGrid& g,
                          const std::vector<Perturbation>& perturb, const std::vector<double>* axes) {
  DiagramValue tot;
  for (double bs : bc_signs(s)) {
    auto v = diagram_value(s, d, g, bs, perturb, axes);
    tot.energy += v.energy;
    tot.imag += v.imag;
    tot.d1 += v.d1;
    tot.d2 += v.d2;
    tot.d12 += v.d12;
  }
  return tot;
}

}  // namespace

double diagram_energy(const Scene& s, const Diagram& d, const QuadratureGrid& g) {
  return value_all_bc(s, d, g, {}, nullptr).energy;
}

EnergyBreakdown evaluate_diagrams(const Scene& s, const std::vector<Diagram>& ds, const QuadratureGrid& g) {
  s.validate();
  EnergyBreakdown b;
  b.n_alpha = g.n_alpha();
  b.n_p = g.n_p();
  b.map_scale = g.map_scale;
  b.p_scale = g.p_scale;
  std::map<std::string, double> imag;
  for (const auto& d : ds) {
    auto v = value_all_bc(s, d, g, {}, nullptr);
    b.per_diagram[d.str()] = v.energy;
    imag[d.str()] = v.imag;
    b.channels[d.str()] = vertex_channels(s, d);
    b.by_order[d.order()] += v.energy;
  }
  for (const auto& d : ds) {
    const auto m = mirror(d).str();
    double im = imag[d.str()] + (imag.count(m) && m != d.str() ? imag[m] : 0.0);
    double re = std::abs(b.per_diagram[d.str()]) + (b.per_diagram.count(m) && m != d.str() ? std::abs(b.per_diagram[m]) : 0.0);
    if (re > 0) b.max_imag_ratio = std::max(b.max_imag_ratio, std::abs(im) / re);
  }
  for (const auto& d : ds) b.total += b.per_diagram[d.str()];
  if (!b.by_order.empty()) b.truncation_estimate = std::abs(b.by_order.rbegin()->second);
  return b;
}

EnergyBreakdown reflection_series(const Scene& s, int n_max, const QuadratureGrid& g) {
  return evaluate_diagrams(s, enumerate(s.size(), n_max), g);
}

namespace {

double shortest_leg(const Scene& s, const std::vector<Diagram>& ds) {
  double m = 1e300;
  for (const auto& d : ds) {
    auto t = d.traversal();
    for (size_t k = 0; k < t.size(); ++k)
      m = std::min(m, (s.objects[t[(k + 1) % t.size()] - 1].pose.origin - s.objects[t[k] - 1].pose.origin).norm());
  }
  return m;
}

double energy_fixed_axes(const Scene& s, const std::vector<Diagram>& ds, const std::vector<std::vector<double>>& axes,
                         const QuadratureGrid& g) {
  double e = 0;
  for (size_t i = 0; i < ds.size(); ++i) e += value_all_bc(s, ds[i], g, {}, &axes[i]).energy;
  return e;
}

}  // namespace

ForceResult force(const Scene& s, const std::vector<Diagram>& ds, int moving_object, const Vec2& direction,
                  const QuadratureGrid& g, ForceMethod method, bool cross_check) {
  std::vector<std::vector<double>> axes;
  for (const auto& d : ds) axes.push_back(diagram_axes(s, d));
  Perturbation pt{moving_object, direction};
  double analytic = 0;
  for (size_t i = 0; i < ds.size(); ++i) analytic -= value_all_bc(s, ds[i], g, {pt}, &axes[i]).d1;

  if (!cross_check && method == ForceMethod::AnalyticDerivative) {
    ForceResult r;
    r.value = r.other_value = analytic;
    return r;
  }
  const double h = 1e-3 * shortest_leg(s, ds);
  if (!(h > 1e-12)) throw GeometryError("force: finite-difference step underflow");
  Scene sp = s, sm = s;
  sp.objects.at(moving_object - 1).pose.origin += h * direction;
  sm.objects.at(moving_object - 1).pose.origin -= h * direction;
  const double fd = -(energy_fixed_axes(sp, ds, axes, g) - energy_fixed_axes(sm, ds, axes, g)) / (2 * h);

  ForceResult r;
  r.method = method;
  r.value = method == ForceMethod::AnalyticDerivative ? analytic : fd;
  r.other_value = method == ForceMethod::AnalyticDerivative ? fd : analytic;
  const double scale = std::max(std::abs(analytic), std::abs(fd));
  r.cross_check_delta = scale > 0 ? std::abs(analytic - fd) / scale : 0.0;
  return r;
}

double mixed_derivative(const Scene& s, const std::vector<Diagram>& ds, const Perturbation& a, const Perturbation& b,
                        const QuadratureGrid& g) {
  double m = 0;
  for (const auto& d : ds) m -= value_all_bc(s, d, g, {a, b}, nullptr).d12;
  return m;
}

double interaction_I12(const Scene& s, const std::vector<Diagram>& ds, const Vec2& dir1, const Vec2& dir2,
                       const QuadratureGrid& g) {
  return mixed_derivative(s, ds, {1, dir1}, {2, dir2}, g);
}

namespace {

// Diagonal round trip between plates, r(α) at frequency p, built from kernels.
Eigen::ArrayXd plate_round_trip(double d, double lambda, double p, const QuadratureGrid& g) {
  CVector u = translation_values(0.0, Vec2(d, 0.0), p, g);
  Eigen::ArrayXd r(g.n_alpha());
  for (int i = 0; i < g.n_alpha(); ++i) r(i) = (lambda * lambda * u(i) * u(i)).real();
  return r;
}

double plate_integral(int D_dim, double d, BoundaryCondition bc, const QuadratureGrid& g,
                      const std::function<double(double)>& f) {
  if (D_dim != 2 && D_dim != 3) throw std::invalid_argument("parallel plates: unsupported dimension");
  if (!(d > 0)) throw GeometryError("parallel plates: separation must be positive");
  const double lambda = perfect_plate_eigenvalue(bc == BoundaryCondition::EM2D ? BoundaryCondition::Neumann : bc);
  double acc = 0;
  for (int ip = 0; ip < g.n_p(); ++ip) {
    const double p = g.p_nodes[ip];
    auto r = plate_round_trip(d, lambda, p, g);
    double inner = 0;
    for (int i = 0; i < g.n_alpha(); ++i)
      inner += g.alpha_weights[i] * p * std::cosh(g.alpha_nodes[i]) * f(r(i));
    acc += (D_dim == 2 ? g.p_weights[ip] / p : g.p_weights[ip]) * inner;
  }
  return (D_dim == 2 ? -1.0 / (2 * pi) : -1.0 / (4 * pi)) * acc;
}

}  // namespace

double parallel_plate_quadrature(int D_dim, double d, BoundaryCondition bc, const QuadratureGrid& g, int n_max) {
  if (n_max <= 0) return plate_integral(D_dim, d, bc, g, [](double x) { return -std::log1p(-x); });
  return plate_integral(D_dim, d, bc, g, [n_max](double x) {
    double s = 0, xn = 1;
    for (int n = 1; n <= n_max; ++n) {
      xn *= x;
      s += xn / n;
    }
    return s;
  });
}

double parallel_plate_order_quadrature(int D_dim, double d, BoundaryCondition bc, const QuadratureGrid& g, int n) {
  return plate_integral(D_dim, d, bc, g, [n](double x) { return std::pow(x, n) / n; });
}

}  // namespace casimir
