#pragma once

#include "bvmin/graphs.hpp"
#include "bvmin/sdr.hpp"
#include "bvmin/wick.hpp"

namespace bvmin {

// Value of one stable graph: vertex tensors from the hbar coefficient of q
// picked by genus, edges contracted through the two-point function, legs
// passed down to the small double. Symmetric-tensor normalization, so the
// sum weighted by 1/|Aut| is the connected part of the Gaussian integral.
Poly graph_amplitude(const StableGraph& g, const QuantumElement& q,
                     const LagrangianData& lag, int cutoff);

// hbar log of the integral of e^{q/hbar} against the normalized measure on
// the Lagrangian, kept to the stated order and leg count: the sum over
// stable graphs of graph_amplitude / |Aut|. The input must close the master
// equation.
QuantumElement rho(const QuantumElement& q, const LagrangianData& lag,
                   int hbar_order, int arity_cutoff);

// Same series through exp, raw moments and log at scalar values of hbar,
// recovered by interpolation. Slower; kept as an independent route.
QuantumElement rho_free_energy(const QuantumElement& q,
                               const LagrangianData& lag, int hbar_order,
                               int arity_cutoff);

// Transferred structure on the small space of the retract: double, integrate
// over the Lagrangian, halve.
LinfStructure minimal_model_linf(const LinfStructure& m, const SDRData& sdr,
                                 int cutoff);

UnimodularStructure minimal_model_unimodular(const UnimodularStructure& u,
                                             const SDRData& sdr, int cutoff);

}  // namespace bvmin
