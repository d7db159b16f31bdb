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

#include <string>
#include <utility>
#include <vector>

#include "vbc/function_field.hpp"

namespace vbc {

using EMat = Mat<Elem>;
using EVec = std::vector<Elem>;

/**
 * A maximal order of K as a free module over its base ring, with a fixed basis
 * of elements of K. Coordinates live in k(x) for Fi and Inf and in k(t), t = 1/x,
 * for InfModel (stored as rational functions in the variable of the model).
 */
struct Order {
    const FunctionField* K = nullptr;
    OrderKind kind = OrderKind::Fi;
    Ring R = Ring::Poly;
    int n = 0;
    std::vector<Elem> basis;
    RVec one;  // coordinates of 1
    RMat binv;  // inverse of the basis in power coordinates (Inf only)

    RVec coords(const Elem& a) const;
    Elem elem(const RVec& c) const;
    RMat mul_matrix(const Elem& a) const;  // z -> a z in coordinates
};

/** Fractional ideal of an order, stored by its canonical Hermite basis in order coordinates. */
struct Ideal {
    const Order* O = nullptr;
    RMat H;

    static Ideal unit(const Order& O);
    static Ideal principal(const Order& O, const Elem& a);
    static Ideal from_generators(const Order& O, const std::vector<Elem>& gens);
    static Ideal from_basis(const Order& O, const RMat& B);
    // Prime ideal of a place (finite places for Fi, infinite ones for InfModel and Inf).
    static Ideal of_place(const Order& O, const Place& P);

    Ideal operator*(const Ideal& o) const;
    Ideal operator+(const Ideal& o) const;
    Ideal operator*(const Elem& a) const;
    Ideal inv() const;
    Ideal pow(int e) const;
    Ideal intersect(const Ideal& o) const;
    bool operator==(const Ideal& o) const { return H == o.H; }
    bool operator!=(const Ideal& o) const { return !(H == o.H); }
    bool is_unit() const;
    bool is_integral() const;
    bool contains(const Elem& a) const;
    // Sum of v_P(I) deg P over the places of the order.
    int deg() const;
    int valuation(const Place& P) const;
    std::vector<Elem> basis_elems() const;
    // Canonical representative of a modulo the ideal.
    Elem reduce(const Elem& a) const;
    std::string str() const;
};

// e in I and f in J with e + f = 1 (I + J must be the unit ideal).
std::pair<Elem, Elem> coprime_split(const Ideal& I, const Ideal& J);

/** Pseudo-matrix: the module sum_j a_j M_j of K^m. */
struct PseudoMatrix {
    std::vector<Ideal> a;
    EMat M;
    size_t rows() const { return M.r; }
    size_t cols() const { return M.c; }
};

/**
 * Canonical Hermite form: columns with pivots equal to 1 at strictly increasing
 * rows, zero below the pivot, entries at earlier pivot rows reduced modulo
 * a_i a_j^{-1}. Zero columns are dropped.
 */
PseudoMatrix pseudo_hnf(const PseudoMatrix& pm);
PseudoMatrix pseudo_image(const PseudoMatrix& pm);
// Pseudo-matrix in K^c whose module is the kernel of (alpha_j) -> sum alpha_j M_j on the sum of the a_j.
PseudoMatrix pseudo_kernel(const PseudoMatrix& pm);
// Hermite form of the module generated by the given vectors over the order.
PseudoMatrix pm_from_generators(const Order& O, const std::vector<EVec>& gens, size_t m);
bool pm_equal(const PseudoMatrix& a, const PseudoMatrix& b);
bool pm_contains(const PseudoMatrix& pm, const EVec& v);

// Matrix over the base field of coefficients whose columns are a base-ring basis of the module,
// in the coordinates K^m = k(x)^{mn} given by the power basis.
RMat pm_restrict(const PseudoMatrix& pm);
RVec to_power_coords(const EVec& v);
EVec from_power_coords(const FunctionField& K, const RVec& v);
// Base-ring lattice spanned by the elements b * column for b in the order basis.
RMat order_span(const Order& O, const EMat& M);

// A_inf-basis (as columns) of the A_inf-module generated by the given vectors of K^m.
EMat inf_basis_from_generators(const FunctionField& K, const std::vector<EVec>& gens, size_t m);

}  // namespace vbc
