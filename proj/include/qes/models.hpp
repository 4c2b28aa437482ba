#pragma once

#include <string>
#include <vector>

#include "qes/flags.hpp"

namespace qes {

/// Which coefficient table a constructor emits. `printed` follows the published
/// algebraic forms literally; `cartesian` uses the coefficients obtained by gauge
/// rotating the Cartesian Hamiltonian. They differ only for calogero, bcn and g2.
enum class CoefficientSet { printed, cartesian };

std::string to_string(CoefficientSet s);
CoefficientSet parse_coefficient_set(const std::string& s);

struct ModelParams {
  Rational omega = 1;
  Rational nu = 0;
  Rational nu2 = 0;
  Rational mu = 0;
  int n_bodies = 3;
  /// z2n only: per-coordinate couplings; empty means nu for every coordinate.
  std::vector<Rational> nu_i;
  /// on only: the centrifugal exponent of the ground state r^l.
  Rational l_tilde = 0;
  CoefficientSet coefficients = CoefficientSet::printed;
};

struct QesParams {
  Rational a = 0;
  Rational gamma = 0;
  int k = 0;
};

struct ModelDescriptor {
  std::string name;
  std::size_t d = 0;
  CharacteristicVector f;
  /// h = c * Psi0^{-1} (H - E0) Psi0
  Rational gauge_scale = 1;
  /// epsilon(p) = 2 omega sum_i frequencies[i] p_i
  std::vector<int> frequencies;
  /// operator eigenvalue = operator_factor * epsilon
  Rational operator_factor = 1;
  std::size_t radial_index = 0;
  std::vector<std::string> variables;
  bool has_cartesian = true;
  ModelParams params;
};

const std::vector<std::string>& model_names();
/// Throws std::invalid_argument on an unknown name or out-of-range body count.
ModelDescriptor describe(const std::string& name, const ModelParams& params);
DiffOp build(const ModelDescriptor& model);

DiffOp build_on(const ModelParams& params, const Rational& l_tilde);
DiffOp build_z2n(int N, const std::vector<Rational>& nu_i, const Rational& omega);
DiffOp build_calogero(int N, const ModelParams& params);
DiffOp build_bcn(int N, const ModelParams& params);
DiffOp build_g2(const ModelParams& params);
DiffOp build_h3(const ModelParams& params);
DiffOp build_h4(const ModelParams& params);

/// 4(a v^2 - gamma) d_v - 4 a k v + 2 omega k in the model's radial variable v.
DiffOp build_qes_delta(const ModelDescriptor& model, const QesParams& q);
/// 4 gamma d_v.
DiffOp build_gamma_shift(const ModelDescriptor& model, const Rational& gamma);

/// The model's epsilon(p).
Rational spectrum_formula(const ModelDescriptor& model, const Exponents& p);
/// Eigenvalue of the registered operator on the level p.
Rational operator_eigenvalue(const ModelDescriptor& model, const Exponents& p);

}  // namespace qes
