#pragma once

// Igusa-Clebsch invariants of a binary sextic, computed exactly through the
// transvectant calculus. The normalization is pinned by the reference
// integers of the acceptance suite; the classical covariants are
//   i = (f,f)_4, Delta = (i,i)_2, y1 = (f,i)_4, y2 = (i,y1)_2, y3 = (i,y2)_2,
//   A = (f,f)_6, B = (i,i)_4, C = (i,Delta)_4, D = (y3,y1)_2.

#include "cmcurves/polynomial.hpp"

namespace cmcurves {

struct WrongDegree : std::invalid_argument {
  WrongDegree() : std::invalid_argument("WrongDegree: sextic input must have degree 5 or 6") {}
};
struct SingularModel : std::domain_error {
  SingularModel() : std::domain_error("SingularModel: vanishing discriminant") {}
};

struct IgusaInvariants {
  CycloElement I2, I4, I6, I10;
  CycloElement i1, i2, i3;  // I2^5/I10, I2^3 I4/I10, I2^2 I6/I10
};

inline IgusaInvariants igusa_clebsch(const Poly& sextic) {
  if (sextic.degree() != 5 && sextic.degree() != 6) throw WrongDegree();
  if (!sextic.is_squarefree()) throw SingularModel();
  BiForm f = BiForm::from_poly(sextic, 6);

  BiForm i = transvectant(f, f, 4);
  BiForm delta = transvectant(i, i, 2);
  BiForm y1 = transvectant(f, i, 4);
  BiForm y2 = transvectant(i, y1, 2);
  BiForm y3 = transvectant(i, y2, 2);
  CycloElement A = transvectant(f, f, 6).constant_value();
  CycloElement B = transvectant(i, i, 4).constant_value();
  CycloElement C = transvectant(i, delta, 4).constant_value();
  CycloElement D = transvectant(y3, y1, 2).constant_value();

  IgusaInvariants out;
  out.I2 = Rational(-120) * A;
  out.I4 = Rational(-720) * (A * A) + Rational(6750) * B;
  out.I6 = Rational(8640) * (A * A * A) - Rational(108000) * (A * B) + Rational(202500) * C;
  out.I10 = Rational(-62208) * (A * A * A * A * A) + Rational(972000) * (A * A * A * B) +
            Rational(1620000) * (A * A * C) - Rational(3037500) * (A * B * B) -
            Rational(6075000) * (B * C) - Rational(4556250) * D;
  if (out.I10.is_zero()) throw SingularModel();
  out.i1 = out.I2 * out.I2 * out.I2 * out.I2 * out.I2 / out.I10;
  out.i2 = out.I2 * out.I2 * out.I2 * out.I4 / out.I10;
  out.i3 = out.I2 * out.I2 * out.I6 / out.I10;
  return out;
}

/// Equality of the absolute invariant triple; a sufficient isomorphism
/// criterion for the generic genus-2 instances handled here.
inline bool isomorphism_check(const Poly& a, const Poly& b) {
  IgusaInvariants ia = igusa_clebsch(a), ib = igusa_clebsch(b);
  return ia.i1 == ib.i1 && ia.i2 == ib.i2 && ia.i3 == ib.i3;
}

}  // namespace cmcurves
