/*
   Copyright 2026 The vbc authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <vector>

#include "vbc/matrix.hpp"
#include "vbc/ratfunc.hpp"

namespace vbc {

using RMat = Mat<RatFunc>;
using RVec = std::vector<RatFunc>;
using PolyMatrix = Mat<RatFunc>;  // entries with unit denominators

/** Base ring of a lattice in k(x)^N: k[x] or the valuation ring O_inf of -deg. */
enum class Ring { Poly, Inf };

bool in_ring(const RatFunc& a, Ring R);
bool in_ring(const RVec& v, Ring R);
bool in_ring(const RMat& m, Ring R);

struct HnfResult {
    RMat H;           // M * U; first `zero` columns vanish, the rest is the canonical basis
    RMat U;           // unimodular over the ring
    size_t zero = 0;  // number of vanishing leading columns
    RMat basis() const;  // the nonzero columns
};

/**
 * Column Hermite form. Pivots are found bottom-up; over k[x] pivots are monic
 * (rational entries are handled by scaling with the common denominator), over
 * O_inf pivots are x^{-v}. Entries to the right of a pivot are reduced modulo it.
 */
HnfResult hnf_transform(const RMat& M, Ring R);
RMat hnf(const RMat& M, Ring R);

// Canonical representative of x modulo the lattice with square basis B.
RVec lattice_reduce(const RMat& B, const RVec& x, Ring R);
bool lattice_contains(const RMat& B, const RVec& x, Ring R);
bool lattice_contains(const RMat& B, const RMat& X, Ring R);
// Basis of {c : S c in R^m} for S of full column rank.
RMat lattice_preimage(const RMat& S, Ring R);
RMat lattice_intersect(const RMat& B1, const RMat& B2, Ring R);
RMat lattice_sum(const RMat& B1, const RMat& B2, Ring R);
// Lattice basis of {z in R^N : C z = 0} (columns).
RMat lattice_kernel(const RMat& C, Ring R);
// R-basis of (column space of V) intersected with the lattice L (square basis).
RMat lattice_saturate(const RMat& L, const RMat& V, Ring R);

// Column degree |v| (-1 for the zero column) and pivot index as in the reduced-form theory.
int col_norm(const RMat& M, size_t j);
int col_pivot(const RMat& M, size_t j);

struct PopovResult {
    RMat P, U;
};
// Weak Popov by pivot cancellation; with normalize = true the full Popov form.
PopovResult weak_popov(const PolyMatrix& M, bool normalize = true);
bool is_reduced(const PolyMatrix& M);
bool is_popov(const PolyMatrix& M);

}  // namespace vbc
