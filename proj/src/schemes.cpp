#include "mkdv/schemes.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cmath>

#include "formulas.hpp"
#include "mkdv/dual.hpp"
#include "mkdv/errors.hpp"

namespace mkdv {

namespace {

// Slot window for forward-mode rows. The widest composite stencil reaches
// offsets -2..2; 4 also covers the declared band of the 10-point families.
constexpr int kSlotRadius = 4;
using Dual = StencilDual<kSlotRadius>;

expr::Ex2<double> as_expr_pair(const TwoLevelField& F) {
  return {{F.level0}, {F.level1}};
}

// Level 0 enters the Jacobian as constants; level 1 carries the seeds.
expr::Ex2<Dual> as_dual_pair(const TwoLevelField& F) {
  const int M = F.grid.M;
  expr::Ex2<Dual> u;
  u.l0.v.reserve(M);
  u.l1.v.reserve(M);
  for (int i = 0; i < M; ++i) {
    u.l0.v.push_back(Dual(F.level0[i]));
    u.l1.v.push_back(Dual::seeded(F.level1[i]));
  }
  return u;
}

void validate(const SchemeSpec& spec, const TwoLevelField& F) {
  if (!std::isfinite(spec.lambda_coeff))
    throw ConfigError("lambda_coeff must be finite");
  if (spec.lambda_coeff != 0.0 &&
      (spec.family == SchemeFamily::NarrowBox ||
       spec.family == SchemeFamily::Multisymplectic))
    throw ConfigError(std::string(family_name(spec.family)) +
                      " has no free parameter; lambda must be 0");
  if (!all_finite(F.level0) || !all_finite(F.level1))
    throw ConfigError("field values must be finite");
}

double scaled_lambda(const SchemeSpec& spec, const Grid& g) {
  return spec.lambda_coeff * g.dx * g.dx;
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

const char* family_name(SchemeFamily f) {
  switch (f) {
    case SchemeFamily::EC8:
      return "EC8";
    case SchemeFamily::MC8:
      return "MC8";
    case SchemeFamily::EC10:
      return "EC10";
    case SchemeFamily::MC10:
      return "MC10";
    case SchemeFamily::NarrowBox:
      return "NarrowBox";
    case SchemeFamily::Multisymplectic:
      return "Multisymplectic";
  }
  return "?";
}

SchemeFamily family_from_name(const std::string& name) {
  const std::string n = lower(name);
  if (n == "ec8") return SchemeFamily::EC8;
  if (n == "mc8") return SchemeFamily::MC8;
  if (n == "ec10") return SchemeFamily::EC10;
  if (n == "mc10") return SchemeFamily::MC10;
  if (n == "narrowbox" || n == "narrow_box") return SchemeFamily::NarrowBox;
  if (n == "multisymplectic") return SchemeFamily::Multisymplectic;
  throw ConfigError("unknown scheme '" + name +
                    "' (expected EC8, MC8, EC10, MC10, NarrowBox, or "
                    "Multisymplectic)");
}

bool is_ten_point(SchemeFamily f) {
  return f == SchemeFamily::EC10 || f == SchemeFamily::MC10;
}

GridFunction residual(const SchemeSpec& spec, const TwoLevelField& F) {
  validate(spec, F);
  const Grid& g = F.grid;
  return formulas::residual_t(spec.family, as_expr_pair(F), g.dx, g.dt,
                              scaled_lambda(spec, g))
      .v;
}

CyclicBandedMatrix jacobian(const SchemeSpec& spec, const TwoLevelField& F) {
  validate(spec, F);
  const Grid& g = F.grid;
  const int h = is_ten_point(spec.family) ? 4 : 3;
  const auto res = formulas::residual_t(spec.family, as_dual_pair(F), g.dx,
                                        g.dt, scaled_lambda(spec, g));
  CyclicBandedMatrix J(g.M, h);
  for (int r = 0; r < g.M; ++r) {
    const Dual& row = res.v[r];
    for (int s = -kSlotRadius; s <= kSlotRadius; ++s) {
      const double d = row.d[kSlotRadius + s];
      if (s >= -h && s <= h) {
        J.at_offset(r, s) = d;
      } else {
        assert(d == 0.0);  // reach beyond the declared band is structural
      }
    }
  }
  return J;
}

std::vector<int> preserved_laws(SchemeFamily f) {
  switch (f) {
    case SchemeFamily::EC8:
    case SchemeFamily::EC10:
      return {1, 3};
    case SchemeFamily::MC8:
    case SchemeFamily::MC10:
      return {1, 2};
    case SchemeFamily::NarrowBox:
    case SchemeFamily::Multisymplectic:
      return {1};
  }
  return {};
}

std::vector<ConservationLawEval> conservation_laws(const SchemeSpec& spec) {
  std::vector<ConservationLawEval> laws;

  ConservationLawEval mass;
  mass.law_index = 1;
  mass.density = [spec](const TwoLevelField& F) {
    return formulas::density1(spec.family, expr::Ex<double>{F.level0}).v;
  };
  mass.flux = [spec](const TwoLevelField& F) {
    const Grid& g = F.grid;
    return formulas::flux1(spec.family, as_expr_pair(F), g.dx, g.dt,
                           scaled_lambda(spec, g))
        .v;
  };
  mass.characteristic = [](const TwoLevelField& F) {
    return GridFunction(F.grid.M, 1.0);
  };
  laws.push_back(std::move(mass));

  switch (spec.family) {
    case SchemeFamily::EC8: {
      ConservationLawEval energy;
      energy.law_index = 3;
      energy.density = [](const TwoLevelField& F) {
        return formulas::density3_ec8(expr::Ex<double>{F.level0}, F.grid.dx).v;
      };
      energy.flux = [spec](const TwoLevelField& F) {
        const Grid& g = F.grid;
        return formulas::flux3_ec8(as_expr_pair(F), g.dx, g.dt,
                                   scaled_lambda(spec, g))
            .v;
      };
      energy.characteristic = [spec](const TwoLevelField& F) {
        const Grid& g = F.grid;
        return expr::mm(formulas::flux1_ec8(as_expr_pair(F), g.dx, g.dt,
                                            scaled_lambda(spec, g)))
            .v;
      };
      laws.push_back(std::move(energy));
      break;
    }
    case SchemeFamily::MC8: {
      ConservationLawEval momentum;
      momentum.law_index = 2;
      momentum.density = [spec](const TwoLevelField& F) {
        const Grid& g = F.grid;
        return formulas::density2_mc8(expr::Ex<double>{F.level0}, g.dx, g.dt,
                                      scaled_lambda(spec, g))
            .v;
      };
      momentum.flux = [spec](const TwoLevelField& F) {
        const Grid& g = F.grid;
        return formulas::flux2_mc8(as_expr_pair(F), g.dx, g.dt,
                                   scaled_lambda(spec, g))
            .v;
      };
      momentum.characteristic = [](const TwoLevelField& F) {
        const auto u = as_expr_pair(F);
        return expr::mm(expr::mn(expr::sh(u, -1))).v;
      };
      laws.push_back(std::move(momentum));
      break;
    }
    case SchemeFamily::EC10: {
      ConservationLawEval energy;
      energy.law_index = 3;
      energy.density = [](const TwoLevelField& F) {
        return formulas::density3_ec10(expr::Ex<double>{F.level0}, F.grid.dx)
            .v;
      };
      energy.flux = [spec](const TwoLevelField& F) {
        const Grid& g = F.grid;
        return formulas::flux3_ec10(as_expr_pair(F), g.dx, g.dt,
                                    scaled_lambda(spec, g))
            .v;
      };
      energy.characteristic = [spec](const TwoLevelField& F) {
        const Grid& g = F.grid;
        return expr::sh(formulas::phi_ec10(as_expr_pair(F), g.dx, g.dt,
                                           scaled_lambda(spec, g)),
                        1)
            .v;
      };
      laws.push_back(std::move(energy));
      break;
    }
    case SchemeFamily::MC10: {
      ConservationLawEval momentum;
      momentum.law_index = 2;
      momentum.density = [spec](const TwoLevelField& F) {
        const Grid& g = F.grid;
        return formulas::density2_mc10(expr::Ex<double>{F.level0}, g.dx,
                                       scaled_lambda(spec, g))
            .v;
      };
      momentum.flux = [spec](const TwoLevelField& F) {
        const Grid& g = F.grid;
        return formulas::flux2_mc10(as_expr_pair(F), g.dx, g.dt,
                                    scaled_lambda(spec, g))
            .v;
      };
      momentum.characteristic = [](const TwoLevelField& F) {
        return expr::mn(as_expr_pair(F)).v;
      };
      laws.push_back(std::move(momentum));
      break;
    }
    case SchemeFamily::NarrowBox:
    case SchemeFamily::Multisymplectic:
      break;
  }
  return laws;
}

// The two average-vector-field schemes, written out on the plain grid
// operators with no shared code with the expression layer. EC10 and MC10 at
// lambda = 0 must reproduce these node for node.
GridFunction avf_ec_residual(const TwoLevelField& F) {
  const Grid& g = F.grid;
  const int M = g.M;
  const GridFunction b0 = shift_space(F.level0, -1);
  const GridFunction b1 = shift_space(F.level1, -1);
  const GridFunction a0 = shift_space(F.level0, -2);
  const GridFunction a1 = shift_space(F.level1, -2);
  GridFunction avgB(M), avgB2(M), avgA(M);
  for (int i = 0; i < M; ++i) {
    avgB[i] = 0.5 * (b1[i] + b0[i]);
    avgB2[i] = 0.5 * (b1[i] * b1[i] + b0[i] * b0[i]);  // average of squares
    avgA[i] = 0.5 * (a1[i] + a0[i]);
  }
  const GridFunction d2A = fwd_diff_space(fwd_diff_space(avgA, g.dx), g.dx);
  GridFunction inner(M);
  for (int i = 0; i < M; ++i)
    inner[i] = (1.0 / 3.0) * avgB[i] * avgB2[i] + d2A[i];
  const GridFunction dflux = fwd_diff_space(fwd_avg_space(inner), g.dx);
  GridFunction out(M);
  for (int i = 0; i < M; ++i)
    out[i] = dflux[i] + (F.level1[i] - F.level0[i]) / g.dt;
  return out;
}

GridFunction avf_mc_residual(const TwoLevelField& F) {
  const Grid& g = F.grid;
  const int M = g.M;
  const GridFunction b0 = shift_space(F.level0, -1);
  const GridFunction b1 = shift_space(F.level1, -1);
  const GridFunction a0 = shift_space(F.level0, -2);
  const GridFunction a1 = shift_space(F.level1, -2);
  GridFunction avgB(M), avgA(M), sqB(M);
  for (int i = 0; i < M; ++i) {
    avgB[i] = 0.5 * (b1[i] + b0[i]);
    avgA[i] = 0.5 * (a1[i] + a0[i]);
    sqB[i] = avgB[i] * avgB[i];  // square of the average
  }
  const GridFunction mB = fwd_avg_space(avgB);
  const GridFunction mB2 = fwd_avg_space(sqB);
  const GridFunction d2A =
      fwd_diff_space(fwd_diff_space(fwd_avg_space(avgA), g.dx), g.dx);
  GridFunction inner(M);
  for (int i = 0; i < M; ++i)
    inner[i] = (1.0 / 3.0) * mB[i] * mB2[i] + d2A[i];
  const GridFunction dflux = fwd_diff_space(inner, g.dx);
  GridFunction out(M);
  for (int i = 0; i < M; ++i)
    out[i] = dflux[i] + (F.level1[i] - F.level0[i]) / g.dt;
  return out;
}

}  // namespace mkdv
