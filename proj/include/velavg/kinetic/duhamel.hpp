#pragma once

#include "velavg/kinetic/field.hpp"

namespace velavg {

/// Time quadrature for the characteristic integral.
///
/// The integration window [0, t] is first clipped to the part of the
/// characteristic that meets the source support; `panels` equal Gauss-Legendre
/// panels of order `quad_order` then cover the clipped window.
struct DuhamelOptions {
  bool damped = false;
  int quad_order = 4;
  int panels = 64;
};

/// u(t,x,p) = int_0^t w(s-t) f(s, x + (p/p0)(s-t), p) ds with w = 1, or
/// w(r) = e^r when damped. The result is supported on [t_lo, T] x (x box
/// dilated by T) x B_R. Throws std::invalid_argument if quad_order < 2 or
/// panels < 1.
ScalarField7 duhamel_solve(const ScalarField7& f, const DuhamelOptions& options = {});

inline ScalarField7 duhamel_solve(const ScalarField7& f, bool damped, int quad_order) {
  return duhamel_solve(f, DuhamelOptions{damped, quad_order, 64});
}

/// Free: d_t u + v.grad u = f.  Damped: u + d_t u + v.grad u = h.
enum class TransportForm { free, damped };

struct PhasePoint {
  double t = 0.0;
  Vec3 x;
  Vec3 p;
};

/// Residual of the transport equation at `pt`, with every partial derivative
/// replaced by a centered difference of step h_fd.
double transport_residual(const ScalarField7& u, const ScalarField7& f, const PhasePoint& pt,
                          double h_fd, TransportForm form = TransportForm::free);

}  // namespace velavg
