// Copyright 2026 The vortwave authors
// SPDX-License-Identifier: Apache-2.0
//
// Exact Lyapunov-Schmidt reduction at (alpha_c, H) in exponential-polynomial
// arithmetic.
#pragma once

#include "vortwave/detail/expoly.hpp"
#include "vortwave/params.hpp"

namespace vortwave::detail {

struct Reduction {
  double o1;     // -1/3 l(F_fff[v,v,v]) / l(F_alpha f v)
  double o2;     // l(F_ff[v,z]) / l(F_alpha f v)
  double total;  // both numerators combined before division
  double transversality;  // l(F_alpha f v)
  TrigField z;   // F_f z = F_ff[v,v], z = 0 on the bed, no cos q component
};

Reduction reduce(const ModelParams& params);

// n-th directional derivative of the residual at (alpha, H) along d,
// interior part and top trace.
struct Derivative {
  TrigField interior;
  TrigTrace top;
};
Derivative residual_derivative(const ModelParams& params, double alpha, const TrigField& d,
                               int order);

TrigField trivial_field(double gamma);
TrigField null_field(double gamma);  // h* / C_hat

// l(u, b) for the cos q content of u and b.
double orthogonality(const ModelParams& params, const TrigField& u, const TrigTrace& b);

}  // namespace vortwave::detail
