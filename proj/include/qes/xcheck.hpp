#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qes/models.hpp"
#include "qes/spectra.hpp"

namespace qes {

/// v + a e1 + b e2 + ab e1 e2 with e1^2 = e2^2 = 0: exact first and mixed second
/// derivatives of composite evaluators, no step size.
struct HyperDual {
  double v = 0, a = 0, b = 0, ab = 0;

  HyperDual() = default;
  HyperDual(double value) : v(value) {}  // NOLINT: implicit lift of constants
  HyperDual(double value, double da, double db, double dab) : v(value), a(da), b(db), ab(dab) {}

  friend HyperDual operator+(const HyperDual& x, const HyperDual& y) {
    return {x.v + y.v, x.a + y.a, x.b + y.b, x.ab + y.ab};
  }
  friend HyperDual operator-(const HyperDual& x, const HyperDual& y) {
    return {x.v - y.v, x.a - y.a, x.b - y.b, x.ab - y.ab};
  }
  friend HyperDual operator*(const HyperDual& x, const HyperDual& y) {
    return {x.v * y.v, x.v * y.a + x.a * y.v, x.v * y.b + x.b * y.v,
            x.v * y.ab + x.a * y.b + x.b * y.a + x.ab * y.v};
  }
  friend HyperDual operator/(const HyperDual& x, const HyperDual& y);
  HyperDual operator-() const { return {-v, -a, -b, -ab}; }
  HyperDual& operator+=(const HyperDual& y) { return *this = *this + y; }
  HyperDual& operator*=(const HyperDual& y) { return *this = *this * y; }
};

/// Applies a scalar function given f, f', f'' at x.v.
HyperDual lift(const HyperDual& x, double f, double df, double d2f);
HyperDual log_abs(const HyperDual& x);
HyperDual exp(const HyperDual& x);

using Point = std::vector<double>;
using ScalarField = std::function<HyperDual(const std::vector<HyperDual>&)>;
using VectorField = std::function<std::vector<HyperDual>(const std::vector<HyperDual>&)>;

struct SecondPartials {
  double value = 0, d_i = 0, d_j = 0, d_ij = 0;
};
SecondPartials hyperdual_second_partials(const ScalarField& f, const Point& x, std::size_t i, std::size_t j);
double hyperdual_laplacian(const ScalarField& f, const Point& x);

struct CartesianModel {
  std::string name;
  std::size_t dim = 0;
  ModelDescriptor descriptor;  // always the cartesian coefficient set
  ScalarField log_psi0;
  ScalarField potential;
  VectorField invariants;      // empty for h4
  std::function<double(const Point&)> singular_distance;
  /// omega (dim/2 + sum of ground-state exponents)
  double e0_root_sum = 0;
  std::optional<double> e0_printed;
  bool center_of_mass_removed = false;
  std::optional<std::string> tau2_interpretation;
};

/// Throws std::invalid_argument for unknown names. `tau2_homogeneous` selects the
/// degree-6 reading of the H3 invariant tau_2.
CartesianModel cartesian_model(const std::string& name, const ModelParams& params, bool tau2_homogeneous = false);

/// Uniform draws in [-box, box]^dim from mt19937_64(seed), rejected within `floor` of
/// the singular locus. G2 points are projected to Y = 0 before the test.
std::vector<Point> sample_points(const CartesianModel& m, std::uint64_t seed, std::size_t count, double floor = 1e-2,
                                 double box = 1.5);

struct ProbeResult {
  std::vector<double> values;
  double mean = 0;
  double spread = 0;  // max |value - mean| / |mean|
};
/// (H Psi0) / Psi0 at each point.
ProbeResult e0_probe(const CartesianModel& m, const std::vector<Point>& points);

std::vector<double> invariants_eval(const CartesianModel& m, const Point& x);

struct ResidualReport {
  std::vector<double> per_point;
  double max = 0;
};

/// H(Psi0 P(t)) against Psi0 (E0 P(t) + h_image(t) / c), relative to the summed term
/// magnitudes at each point.
ResidualReport gauge_residual(const CartesianModel& m, const Polynomial& P, const Polynomial& h_image, double e0,
                              const std::vector<Point>& points);

/// Same with h_image = h(P) computed exactly and E0 = e0_root_sum.
ResidualReport gauge_residual(const CartesianModel& m, const Polynomial& P, const std::vector<Point>& points);

/// Gauge residuals of the H3 monomials tau2, tau3, tau1 tau2, tau2^2 under both readings
/// of tau2. verdict is "homogeneous", "printed", "both" or "neither" at `tol`.
struct Tau2Verdict {
  double printed = 0;
  double homogeneous = 0;
  std::string verdict;
};
Tau2Verdict h3_tau2_verdict(const ModelParams& params, std::uint64_t seed, std::size_t count, double tol = 1e-9);

/// Extra Cartesian potential U(v) = sum_{p=-1..3} coeffs[p+1] v^p that turns h + delta h
/// into a Schrodinger operator with Psi = Psi0 exp(g(v)) P(v).
struct QesPotential {
  double kappa = 0;
  std::vector<double> coeffs;  // v^-1, v^0, v^1, v^2, v^3
};
QesPotential qes_potential(const CartesianModel& m, const QesParams& q);

/// Exact bisection of a bracket down to `width`, returned as the midpoint.
double refine_root(const UPoly& p, const RootBracket& bracket, const Rational& width);
/// Null vector of (matrix - lambda I) in double precision, scaled to max-norm 1.
std::vector<double> qes_eigenvector(const QesBlock& block, double lambda);

/// Residual of (H + U - E) Psi at the points, E = E0 + lambda / c. `quadratic_scale`
/// multiplies the v^2 coefficient of U (1 for the true potential).
ResidualReport qes_residual(const CartesianModel& m, const QesParams& q, double lambda,
                            const std::vector<double>& eigenvector, double e0, const std::vector<Point>& points,
                            double quadratic_scale = 1.0);

}  // namespace qes
