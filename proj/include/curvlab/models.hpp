#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "curvlab/core.hpp"
#include "curvlab/expr.hpp"
#include "curvlab/jet.hpp"

#include "json.hpp"

// Model = chart description of an almost Hermitian 4-manifold: smooth fields
// g_ij(x) and J^i_j(x) over a coordinate box, with sampling/integration
// metadata. Built-in models evaluate analytically through jet arithmetic;
// user models evaluate parsed expressions. Either way the engine sees exact
// first and second derivatives at a point.

namespace curvlab {

struct ModelInfo {
  std::string name;
  std::array<double, 4> lo{0, 0, 0, 0};
  std::array<double, 4> hi{1, 1, 1, 1};
  bool closed = false;       // compact, chart covers it up to measure zero
  bool homogeneous = false;  // curvature data constant: integrate density*volume
  double volume = 0;         // known total Riemannian volume (homogeneous case)
  bool has_topology = false;
  double chi = 0;    // expected Euler characteristic (closed models)
  double sigma = 0;  // expected signature
  double structural_tol = 1e-10;
  double param = 0;  // curvature parameter for the parametric families
};

struct Model {
  ModelInfo info;
  std::function<void(const Vec4d&, Mat<Jet2, 4>&, Mat<Jet2, 4>&)> fields;

  void eval(const Vec4d& x, Mat<Jet2, 4>& g, Mat<Jet2, 4>& J) const {
    fields(x, g, J);
  }
};

namespace detail {

inline std::array<Jet2, 4> coordinate_jets(const Vec4d& x) {
  std::array<Jet2, 4> xj;
  for (int i = 0; i < 4; ++i) xj[i] = Jet2::variable(i, x[i]);
  return xj;
}

// Standard constant complex structure: J d1 = d2, J d3 = d4.
inline Mat<Jet2, 4> standard_j() {
  Mat<Jet2, 4> j{};
  j(1, 0) = 1;
  j(0, 1) = -1;
  j(3, 2) = 1;
  j(2, 3) = -1;
  return j;
}

// J applied to the coordinate vector: (Jx)^i = J^i_j x^j for the standard J.
inline std::array<Jet2, 4> standard_jx(const std::array<Jet2, 4>& x) {
  return {-x[1], x[0], -x[3], x[2]};
}

}  // namespace detail

// Flat torus R^4/Z^4 with the standard structure. Everything vanishes.
inline Model make_torus() {
  Model m;
  m.info.name = "torus";
  m.info.closed = true;
  m.info.has_topology = true;
  m.info.chi = 0;
  m.info.sigma = 0;
  m.fields = [](const Vec4d&, Mat<Jet2, 4>& g, Mat<Jet2, 4>& J) {
    g = Mat<Jet2, 4>::identity();
    J = detail::standard_j();
  };
  return m;
}

// Complex projective plane in an affine chart, scaled so the holomorphic
// sectional curvature is identically k > 0. Kaehler potential (2/k) log(1+|w|^2),
// chart misses a measure-zero cut locus; curvature data is homogeneous.
inline Model make_cp2(double k) {
  if (!(k > 0)) throw std::invalid_argument("cp2 model requires k > 0");
  Model m;
  m.info.name = "cp2";
  m.info.param = k;
  for (int i = 0; i < 4; ++i) {
    m.info.lo[i] = -0.8;
    m.info.hi[i] = 0.8;
  }
  m.info.closed = true;
  m.info.homogeneous = true;
  m.info.volume = 8.0 * kPi * kPi / (k * k);
  m.info.has_topology = true;
  m.info.chi = 3;
  m.info.sigma = 1;
  const double a = 2.0 / k;
  m.fields = [a](const Vec4d& x, Mat<Jet2, 4>& g, Mat<Jet2, 4>& J) {
    const auto xj = detail::coordinate_jets(x);
    const auto jx = detail::standard_jx(xj);
    Jet2 rho(1);
    for (int i = 0; i < 4; ++i) rho = rho + xj[i] * xj[i];
    const Jet2 pref = Jet2(2 * a) / (rho * rho);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Jet2 e = -(xj[i] * xj[j]) - jx[i] * jx[j];
        if (i == j) e = e + rho;
        g(i, j) = pref * e;
      }
    J = detail::standard_j();
  };
  return m;
}

// Complex hyperbolic ball (Bergman-type metric) scaled so the holomorphic
// sectional curvature is identically k < 0. Potential -(2/|k|) log(1-|w|^2);
// the sampling box stays well inside the unit ball.
inline Model make_ball(double k) {
  if (!(k < 0)) throw std::invalid_argument("ball model requires k < 0");
  Model m;
  m.info.name = "ball";
  m.info.param = k;
  for (int i = 0; i < 4; ++i) {
    m.info.lo[i] = -0.45;
    m.info.hi[i] = 0.45;
  }
  m.info.closed = false;
  const double a = -2.0 / k;
  m.fields = [a](const Vec4d& x, Mat<Jet2, 4>& g, Mat<Jet2, 4>& J) {
    const auto xj = detail::coordinate_jets(x);
    const auto jx = detail::standard_jx(xj);
    Jet2 rho(1);
    for (int i = 0; i < 4; ++i) rho = rho - xj[i] * xj[i];
    const Jet2 pref = Jet2(2 * a) / (rho * rho);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        Jet2 e = xj[i] * xj[j] + jx[i] * jx[j];
        if (i == j) e = e + rho;
        g(i, j) = pref * e;
      }
    J = detail::standard_j();
  };
  return m;
}

// Nilmanifold (compact quotient of the Heisenberg group times a circle) with
// its invariant coframe e1 = dx1, e2 = dx2, e3 = dx3 - x1 dx2, e4 = dx4 and
// the closed almost Kaehler structure J e1 = e3, J e2 = -e4 (F = e13 - e24,
// dF = 0). Strictly almost Kaehler: |A|^2 = 1/4 everywhere.
inline Model make_kt() {
  Model m;
  m.info.name = "kt";
  m.info.closed = true;
  m.info.has_topology = true;
  m.info.chi = 0;
  m.info.sigma = 0;
  m.fields = [](const Vec4d& x, Mat<Jet2, 4>& g, Mat<Jet2, 4>& J) {
    const Jet2 x1 = Jet2::variable(0, x[0]);
    g = Mat<Jet2, 4>::identity();
    g(1, 1) = Jet2(1) + x1 * x1;
    g(1, 2) = g(2, 1) = -x1;
    // Images of the coordinate fields: J d1 = d3, J d2 = x1 d1 - d4,
    // J d3 = -d1, J d4 = d2 + x1 d3.
    J = Mat<Jet2, 4>{};
    J(2, 0) = 1;
    J(0, 1) = x1;
    J(3, 1) = -1;
    J(0, 2) = -1;
    J(1, 3) = 1;
    J(2, 3) = x1;
  };
  return m;
}

// Product of two round spheres of radii r1, r2 in polar coordinates
// (x1, x2) x (x3, x4), a Kaehler surface with nonzero anti-self-dual Weyl
// part whenever the radii differ. The chart covers the product up to a
// measure-zero set (poles and one meridian per factor), and quadrature
// nodes never touch the degenerate boundary, so closed-manifold integrals
// are taken over the full coordinate box.
inline Model make_s2xs2(double r1, double r2) {
  Model m;
  m.info.name = "s2xs2";
  m.info.lo = {0.0, 0.0, 0.0, 0.0};
  m.info.hi = {kPi, 2.0 * kPi, kPi, 2.0 * kPi};
  m.info.closed = true;
  m.info.has_topology = true;
  m.info.chi = 4;
  m.info.sigma = 0;
  const double a = r1 * r1, b = r2 * r2;
  m.fields = [a, b](const Vec4d& x, Mat<Jet2, 4>& g, Mat<Jet2, 4>& J) {
    const Jet2 t1 = Jet2::variable(0, x[0]);
    const Jet2 t2 = Jet2::variable(2, x[2]);
    const Jet2 s1 = sin(t1), s2 = sin(t2);
    g = Mat<Jet2, 4>{};
    g(0, 0) = Jet2(a);
    g(1, 1) = Jet2(a) * s1 * s1;
    g(2, 2) = Jet2(b);
    g(3, 3) = Jet2(b) * s2 * s2;
    J = Mat<Jet2, 4>{};
    J(1, 0) = Jet2(1) / s1;   // J d1 = d2 / sin x1
    J(0, 1) = -s1;            // J d2 = -sin x1 d1
    J(3, 2) = Jet2(1) / s2;
    J(2, 3) = -s2;
  };
  return m;
}

// Parametric built-in factory used by the CLI; k applies to cp2/ball.
inline Model make_builtin(const std::string& name, double k) {
  if (name == "torus") return make_torus();
  if (name == "kt") return make_kt();
  if (name == "cp2") return make_cp2(k == 0 ? 1.0 : k);
  if (name == "ball") return make_ball(k == 0 ? -1.0 : k);
  if (name == "s2xs2") return make_s2xs2(1.0, std::sqrt(2.0));
  throw std::invalid_argument("unknown model '" + name +
                              "' (expected torus|kt|cp2|ball|s2xs2)");
}

// ===== user model files =====
//
// JSON with expression-valued entries:
// {
//   "name": "...",
//   "metric": [[g11, ..., g14], ..., [g41, ..., g44]],   // 16 expressions
//   "J":      [[J11, ..., J14], ...],                    // J[i][j]: coefficient
//                                                        // of d_i in J(d_j)
//   "domain": {"min": [..4 numbers..], "max": [..4 numbers..]},
//   "closed": false,            // optional
//   "chi": 0, "sigma": 0,       // optional, with "closed": true
//   "structural_tol": 1e-7      // optional
// }

inline Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw std::runtime_error("malformed JSON in " + path + ": " + e.what());
  }

  auto require = [&](const char* key) {
    if (!doc.contains(key))
      throw std::runtime_error(path + ": missing required key \"" +
                               std::string(key) + "\"");
  };
  require("metric");
  require("J");
  require("domain");

  auto parse_grid = [&](const char* key) {
    const auto& arr = doc.at(key);
    if (!arr.is_array() || arr.size() != 4)
      throw std::runtime_error(path + ": \"" + key + "\" must be a 4x4 array");
    std::array<std::array<Expr, 4>, 4> grid;
    for (int i = 0; i < 4; ++i) {
      const auto& row = arr.at(i);
      if (!row.is_array() || row.size() != 4)
        throw std::runtime_error(path + ": \"" + key + "\" row " +
                                 std::to_string(i + 1) + " must have 4 entries");
      for (int j = 0; j < 4; ++j) {
        const std::string text = row.at(j).is_string()
                                     ? row.at(j).get<std::string>()
                                     : row.at(j).dump();
        try {
          grid[i][j] = Expr::parse(text);
        } catch (const ParseError& e) {
          std::ostringstream msg;
          msg << path << ": " << key << "[" << i + 1 << "][" << j + 1
              << "] = \"" << text << "\": " << e.what();
          throw std::runtime_error(msg.str());
        }
      }
    }
    return grid;
  };

  auto metric = std::make_shared<std::array<std::array<Expr, 4>, 4>>(
      parse_grid("metric"));
  auto jgrid = std::make_shared<std::array<std::array<Expr, 4>, 4>>(
      parse_grid("J"));

  Model m;
  m.info.name = doc.value("name", std::string("user"));
  const auto& dom = doc.at("domain");
  for (int i = 0; i < 4; ++i) {
    m.info.lo[i] = dom.at("min").at(i).get<double>();
    m.info.hi[i] = dom.at("max").at(i).get<double>();
    if (!(m.info.lo[i] < m.info.hi[i]))
      throw std::runtime_error(path + ": domain min must be below max");
  }
  m.info.closed = doc.value("closed", false);
  m.info.structural_tol = doc.value("structural_tol", 1e-7);
  if (doc.contains("chi") || doc.contains("sigma")) {
    m.info.has_topology = true;
    m.info.chi = doc.value("chi", 0.0);
    m.info.sigma = doc.value("sigma", 0.0);
  }

  m.fields = [metric, jgrid](const Vec4d& x, Mat<Jet2, 4>& g, Mat<Jet2, 4>& J) {
    const auto xj = detail::coordinate_jets(x);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        g(i, j) = (*metric)[i][j].eval(xj);
        J(i, j) = (*jgrid)[i][j].eval(xj);
      }
  };
  return m;
}

}  // namespace curvlab
