#pragma once

#include "expr.hpp"
#include "mkdv/schemes.hpp"

// Term-by-term transcriptions of every scheme's flux, density, and
// characteristic expressions onto the whole-grid expression layer. Index
// conventions: the base pair u is the field at spatial offset 0, sh(u,k) is
// the field at offset k, spatial operators mm/dm act levelwise, and mn/dn
// collapse the two levels. An expression written with mun applied after a
// square means "average the squares", never "square the average"; the
// transcription preserves the printed operator order exactly so the discrete
// divergence identities hold to roundoff, not just to truncation order.
//
// lam here is the already-scaled coefficient lambda_coeff * dx^2.
namespace mkdv::formulas {

using expr::Ex;
using expr::Ex2;
using expr::dm;
using expr::dn;
using expr::mm;
using expr::mn;
using expr::sh;

// ---- EC8: energy-preserving 8-point scheme -------------------------------

template <class T>
Ex<T> flux1_ec8(const Ex2<T>& u, double dx, double dt, double lam) {
  const Ex2<T> A = sh(u, -2);
  const Ex2<T> m2 = mm(mm(A));
  return (1.0 / 3.0) * (mn(m2) * mn(m2 * m2)) + dm(dm(mn(A), dx), dx) +
         lam * dn(dm(mm(A), dx), dt);
}

// Shared bilinear block of EC8's law-3 flux; MC8's law-2 flux reuses it.
template <class T>
Ex<T> cross_block_8(const Ex2<T>& u, double dx, double dt) {
  const Ex2<T> A = sh(u, -2);
  return dm(mm(mn(A)), dx) * dn(mm(mm(A)), dt) -
         mm(mm(mn(A))) * dm(dn(mm(A), dt), dx);
}

template <class T>
Ex<T> flux3_ec8(const Ex2<T>& u, double dx, double dt, double lam) {
  const Ex2<T> A = sh(u, -2);
  const Ex2<T> B = sh(u, -1);
  const Ex2<T> m2 = mm(mm(A));
  const Ex<T> F1 = flux1_ec8(u, dx, dt, lam);
  const Ex<T> X = cross_block_8(u, dx, dt);
  const Ex<T> W = m2.l0 * m2.l0 + m2.l1 * m2.l1 + m2.l0 * m2.l1;
  return 0.5 * (F1 * F1) + 0.5 * X +
         (0.5 * lam) * (dn(mm(A), dt) * dn(mm(B), dt)) +
         (dx * dx / 48.0) * (W * X);
}

template <class T>
Ex<T> density3_ec8(const Ex<T>& u0, double dx) {
  const Ex<T> mA = mm(sh(u0, -2));
  const Ex<T> mB = mm(sh(u0, -1));
  return (1.0 / 12.0) *
             ((mB * mm(mm(mA))) *
              (mm(mm(mA * mA)) +
               (0.25 * dx * dx) * (dm(mA, dx) * dm(mB, dx)))) +
         0.5 * (mB * dm(dm(mA, dx), dx));
}

// ---- MC8: momentum-preserving 8-point scheme -----------------------------

template <class T>
Ex<T> flux1_mc8(const Ex2<T>& u, double dx, double dt, double lam) {
  const Ex2<T> A = sh(u, -2);
  const Ex2<T> B = sh(u, -1);
  const Ex<T> nA = mn(A);
  const Ex<T> nB = mn(B);
  const Ex2<T> dmp = dm(mm(A), dx);
  const Ex<T> dnA = dm(nA, dx);
  return (1.0 / 6.0) * (mn(A + u) * (nB * nB)) + dm(dm(nA, dx), dx) +
         lam * (2.0 * (nB * mm(dnA * dnA)) +
                2.0 * (dm(dm(nA, dx), dx) * mm(mm(nA * nA))) -
                (dx * dt) * (dn(dmp, dt) * mn(dmp * dmp)));
}

template <class T>
Ex<T> flux2_mc8(const Ex2<T>& u, double dx, double dt, double lam) {
  const Ex2<T> A = sh(u, -2);
  const Ex2<T> B = sh(u, -1);
  const Ex<T> nA = mn(A);
  const Ex<T> nB = mn(B);
  const Ex<T> nU = mn(u);
  const Ex2<T> dmp = dm(mm(A), dx);
  const Ex<T> X = cross_block_8(u, dx, dt);
  return (1.0 / 12.0) * ((nB * nB) * (2.0 * (nA * mm(nB)) + nB * nU)) +
         nB * dm(dm(nA, dx), dx) - 0.5 * (dm(nA, dx) * dm(nB, dx)) +
         lam * ((mm(nA) * mm(nB)) *
                (dm(nA, dx) * dm(nB, dx) + mn(A + u) * dm(dm(nA, dx), dx))) +
         (0.25 * lam * dx * dt) *
             (X * (2.0 * mn(dmp * dmp) - dmp.l0 * dmp.l1));
}

template <class T>
Ex<T> density2_mc8(const Ex<T>& u0, double dx, double dt, double lam) {
  const Ex<T> mA = mm(sh(u0, -2));
  const Ex<T> mB = mm(sh(u0, -1));
  const Ex<T> dm2A = dm(mm(mA), dx);
  return 0.5 * (mB * mB) +
         (lam * dt * dx) *
             ((mB * dm(dm(mA, dx), dx)) *
              (0.25 * (dm(mB, dx) * dm(mA, dx)) - dm2A * dm2A));
}

// ---- EC10: energy-preserving 10-point scheme -----------------------------

template <class T>
Ex<T> phi_ec10(const Ex2<T>& u, double dx, double dt, double lam) {
  const Ex2<T> A = sh(u, -2);
  const Ex2<T> B = sh(u, -1);
  return (1.0 / 3.0) * (mn(B * B) * mn(B)) + dm(dm(mn(A), dx), dx) +
         lam * dm(dn(mm(A), dt), dx);
}

template <class T>
Ex<T> flux1_ec10(const Ex2<T>& u, double dx, double dt, double lam) {
  return mm(phi_ec10(u, dx, dt, lam));
}

template <class T>
Ex<T> flux3_ec10(const Ex2<T>& u, double dx, double dt, double lam) {
  const Ex2<T> B = sh(u, -1);
  const Ex<T> phi = phi_ec10(u, dx, dt, lam);
  return 0.5 * (phi * sh(phi, 1) + dm(mn(B), dx) * dn(mm(B), dt) -
                mm(mn(B)) * dm(dn(B, dt), dx) + lam * (dn(u, dt) * dn(B, dt)));
}

template <class T>
Ex<T> density3_ec10(const Ex<T>& u0, double dx) {
  return (1.0 / 12.0) * ((u0 * u0) * (u0 * u0)) +
         0.5 * (u0 * dm(dm(sh(u0, -1), dx), dx));
}

// ---- MC10: momentum-preserving 10-point scheme ----------------------------

template <class T>
Ex<T> flux1_mc10(const Ex2<T>& u, double dx, double dt, double lam) {
  const Ex2<T> A = sh(u, -2);
  const Ex2<T> B = sh(u, -1);
  const Ex<T> nB = mn(B);
  return (1.0 / 3.0) * (mm(nB) * mm(nB * nB)) + dm(dm(mn(mm(A)), dx), dx) +
         lam * dm(dn(B, dt), dx);
}

template <class T>
Ex<T> flux2_mc10(const Ex2<T>& u, double dx, double dt, double lam) {
  const Ex2<T> A = sh(u, -2);
  const Ex2<T> B = sh(u, -1);
  const Ex<T> nB = mn(B);
  const Ex<T> nU = mn(u);
  return (1.0 / 12.0) * ((nB * nU) * (nB * nB + nU * nU + nB * nU)) +
         mm(nB) * dm(dm(mm(mn(A)), dx), dx) -
         0.25 * (dm(nB, dx) * dm(mn(A + u), dx)) +
         (0.5 * lam) *
             (mm(nB) * dm(dn(B, dt), dx) - dm(nB, dx) * dn(mm(B), dt));
}

template <class T>
Ex<T> density2_mc10(const Ex<T>& u0, double dx, double lam) {
  return 0.5 * (u0 * (u0 + lam * dm(dm(sh(u0, -1), dx), dx)));
}

// ---- Baselines -------------------------------------------------------------

template <class T>
Ex<T> flux1_narrowbox(const Ex2<T>& u, double dx) {
  const Ex2<T> A = sh(u, -2);
  const Ex<T> nB = mn(sh(u, -1));
  return (1.0 / 3.0) * (nB * nB * nB) + dm(dm(mn(A), dx), dx);
}

template <class T>
Ex<T> flux1_multisymplectic(const Ex2<T>& u, double dx) {
  const Ex2<T> A = sh(u, -2);
  const Ex<T> q = mm(mn(A));
  return (1.0 / 3.0) * mm(q * q * q) + dm(dm(mn(A), dx), dx);
}

// ---- Dispatch ---------------------------------------------------------------

template <class T>
Ex<T> flux1(SchemeFamily fam, const Ex2<T>& u, double dx, double dt,
            double lam) {
  switch (fam) {
    case SchemeFamily::EC8:
      return flux1_ec8(u, dx, dt, lam);
    case SchemeFamily::MC8:
      return flux1_mc8(u, dx, dt, lam);
    case SchemeFamily::EC10:
      return flux1_ec10(u, dx, dt, lam);
    case SchemeFamily::MC10:
      return flux1_mc10(u, dx, dt, lam);
    case SchemeFamily::NarrowBox:
      return flux1_narrowbox(u, dx);
    case SchemeFamily::Multisymplectic:
      return flux1_multisymplectic(u, dx);
  }
  return {};
}

// Mass density, one time level. Every family's G1 reads a single level.
template <class T>
Ex<T> density1(SchemeFamily fam, const Ex<T>& u0) {
  switch (fam) {
    case SchemeFamily::EC8:
    case SchemeFamily::MC8:
    case SchemeFamily::NarrowBox:
      return mm(sh(u0, -1));
    case SchemeFamily::EC10:
    case SchemeFamily::MC10:
      return u0;
    case SchemeFamily::Multisymplectic:
      return mm(mm(mm(sh(u0, -2))));
  }
  return {};
}

// A(u^n, u^{n+1}) = Dm F1 + Dn G1, with G1 applied to each level separately.
template <class T>
Ex<T> residual_t(SchemeFamily fam, const Ex2<T>& u, double dx, double dt,
                 double lam) {
  const Ex2<T> g1{density1(fam, u.l0), density1(fam, u.l1)};
  return dm(flux1(fam, u, dx, dt, lam), dx) + dn(g1, dt);
}

}  // namespace mkdv::formulas
