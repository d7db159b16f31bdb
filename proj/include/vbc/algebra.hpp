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
#include "vbc/ideal.hpp"

namespace vbc {

using FVec = std::vector<Fe>;
using FMat = Mat<Fe>;

/** Finite-dimensional associative unital algebra over a finite field, by structure constants. */
struct FiniteAlgebra {
    const GF* k = nullptr;
    size_t dim = 0;
    std::vector<std::vector<FVec>> c;  // c[i][j] = coordinates of b_i b_j
    FVec one;
    std::vector<EMat> elems;  // basis as K-matrices when the algebra comes from a bundle

    FVec zero() const { return FVec(dim, Fe::zero(k)); }
    FVec basis(size_t i) const;
    FVec mul(const FVec& a, const FVec& b) const;
    FVec add(const FVec& a, const FVec& b) const;
    FVec sub(const FVec& a, const FVec& b) const;
    FVec scale(const FVec& a, const Fe& s) const;
    // Column t is a b_t (left) or b_t a (right).
    FMat left(const FVec& a) const;
    FMat right(const FVec& a) const;
    FVec random(Rng& rng) const;
    bool is_zero(const FVec& a) const;
    bool associative() const;
    // K-matrix of an element (needs elems).
    EMat to_matrix(const FVec& a) const;
};

// Subalgebra of M_n(k) spanned by the given (closed, unital) set of matrices.
FiniteAlgebra matrix_algebra(const GF* k, const std::vector<FMat>& basis);

// Basis (columns) of the Jacobson radical.
FMat radical(const FiniteAlgebra& A);

/** A simple factor M_n(k_i), k_i = k[theta]/(f) of degree d, with lifted matrix units. */
struct SimpleFactor {
    size_t n = 1, d = 1;
    Poly minpoly;               // f
    std::vector<FVec> idem;     // primitive orthogonal idempotents E_1..E_n
    std::vector<FVec> col_unit; // u_{j1} in E_j A E_1 (u_{11} = E_1)
    std::vector<FVec> row_unit; // u_{1j} in E_1 A E_j with u_{1j} u_{j1} = E_1
    FVec theta;                 // root of f in E_1 A E_1
    // u_{j1} theta^a u_{1l}: the element mapped to theta^a in position (j, l).
    FVec unit(const FiniteAlgebra& A, size_t j, size_t l, size_t a) const;
};

struct AlgebraDecomposition {
    FMat radical;     // columns
    FMat complement;  // columns, closed under multiplication
    FMat proj;        // A -> A/J in the coordinates of a fixed complement basis
    std::vector<SimpleFactor> factors;
    bool in_radical(const FVec& a) const;
};

AlgebraDecomposition wedderburn_malcev(const FiniteAlgebra& A, Rng& rng);

// phi_i(a): n x n matrix over k_i (entries as polynomials in theta reduced mod f).
std::vector<std::vector<Poly>> factor_matrix(const FiniteAlgebra& A, const AlgebraDecomposition& D, size_t i,
                                             const FVec& a);

// Minimal polynomial of a in the corner algebra with identity e (a = e a e).
Poly minimal_polynomial(const FiniteAlgebra& A, const FVec& a, const FVec& e);
FVec eval_poly(const FiniteAlgebra& A, const Poly& f, const FVec& a, const FVec& e);

}  // namespace vbc
