#pragma once

#include <functional>
#include <string>
#include <vector>

#include "mkdv/banded.hpp"
#include "mkdv/grid.hpp"

namespace mkdv {

// EC8/MC8 live on the 8-point stencil (spatial offsets -2..1), EC10/MC10 on
// the 10-point stencil (-2..2); the two baselines use 8 points.
enum class SchemeFamily { EC8, MC8, EC10, MC10, NarrowBox, Multisymplectic };

const char* family_name(SchemeFamily f);
SchemeFamily family_from_name(const std::string& name);  // throws ConfigError
bool is_ten_point(SchemeFamily f);

// Family member selector. lambda_coeff is the dimensionless parameter the
// result tables are indexed by; every formula uses lambda = lambda_coeff*dx^2.
struct SchemeSpec {
  SchemeFamily family = SchemeFamily::EC10;
  double lambda_coeff = 0.0;  // must be 0 for NarrowBox and Multisymplectic
};

// Evaluators for one conservation law of a scheme. The defining property,
// checked on arbitrary grid data by the verify module, is the divergence
// identity  Q * residual = D_m F + D_n G.  Every density reads only level 0
// of its window, so "G at time level j" means evaluating with level0 = u(t_j).
struct ConservationLawEval {
  int law_index = 1;  // 1 = mass, 2 = momentum, 3 = energy
  std::function<GridFunction(const TwoLevelField&)> density;
  std::function<GridFunction(const TwoLevelField&)> flux;
  std::function<GridFunction(const TwoLevelField&)> characteristic;
};

// Scheme residual A(u^n, u^{n+1}) = D_m F1 + D_n G1 per node.
// Rejects non-finite field values and nonzero lambda on the baselines.
GridFunction residual(const SchemeSpec& spec, const TwoLevelField& F);

// d residual[r] / d level1[c], assembled by forward-mode evaluation of the
// same formula code. Declared half-bandwidth: 3 for 8-point families, 4 for
// 10-point families (outer bands are structurally zero).
CyclicBandedMatrix jacobian(const SchemeSpec& spec, const TwoLevelField& F);

// Law 1 for every family, plus law 3 for EC8/EC10 and law 2 for MC8/MC10.
std::vector<ConservationLawEval> conservation_laws(const SchemeSpec& spec);

// Law indices with a scheme-defined density, in ascending order.
std::vector<int> preserved_laws(SchemeFamily f);

// Independent transcriptions of the two average-vector-field schemes, coded
// directly from their own formulas on the public grid operators. EC10(0) and
// MC10(0) must reproduce them to roundoff; tests rely on the separate path.
GridFunction avf_ec_residual(const TwoLevelField& F);
GridFunction avf_mc_residual(const TwoLevelField& F);

}  // namespace mkdv
