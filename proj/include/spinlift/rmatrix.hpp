// Base and multiplicity-lifted R-matrices on V (x) V.
//
// Entry conventions, with u in A_I and w in A_J and states written
// (slot1, slot2):
//
//   inter-set (I != J):
//     R[(u,w),(u,w)] = b(l)                                    label-diagonal
//     R[(u,w),(w,u)] = (-1)^{|I||J|} * (c(l) if I<J else d(l)) label-exchange
//   intra-set (I == J), weight a_I:
//     Diagonal convention:  R[(u,w),(u,w)] = a_I(l)  for all u,w in A_I
//     Exchange convention:  R[(u,w),(w,u)] = a_I(l)  for all u,w in A_I
//
// Every nonzero entry preserves the full StateIndex multiset (ice rule).
// At the origin b=0, c=d=1, a_I = (-1)^{|I|}, so the Exchange convention has
// R(0) equal to the graded permutation exactly.

#pragma once

#include "spinlift/operators.hpp"
#include "spinlift/weights.hpp"

namespace spinlift {

// R-matrix of the underlying model, all multiplicities forced to 1.
SpectralOperator build_r_base(const ModelSpec& spec, cd lambda);

// Full multiplicity lift; equals build_r_base entrywise when all n_I = 1.
SpectralOperator build_r_lifted(const ModelSpec& spec, cd lambda);

// Max-norm of R12(u-v) R13(u-w) R23(v-w) - R23(v-w) R13(u-w) R12(u-v) on
// V (x) V (x) V, embeddings graded.  Convention defaults to the spec's.
double check_ybe(const ModelSpec& spec, cd u, cd v, cd w);
double check_ybe(const ModelSpec& spec, cd u, cd v, cd w, LiftConvention convention);

// True iff every entry above `tol` in magnitude connects basis states with
// equal StateIndex multisets.
bool check_form_constraint(const SpectralOperator& r, const ModelSpec& spec, double tol = 0.0);

}  // namespace spinlift
