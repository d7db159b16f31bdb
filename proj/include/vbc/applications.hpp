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

#include <functional>
#include <optional>
#include <vector>

#include "vbc/bundle_algebra.hpp"
#include "vbc/cohomology.hpp"

namespace vbc {

/** Genus-1 field with a degree-1 infinite place O and the data of a trivialized canonical bundle. */
struct EllipticContext {
    FieldPtr K;
    PlacePtr O;
    SerreContext ctx;
    MatrixPair Linf;  // line_bundle(O), degree 1
    Elem h;           // div h = div w, normalized to leading coefficient 1 at O
    MatrixPair S;     // iota(w): the line bundle h A_fi, sub of the Atiyah extensions

    // Throws "not an elliptic context" unless genus 1 with a degree-1 infinite place.
    static EllipticContext make(const FieldPtr& K);
    static EllipticContext make(const SerreContext& ctx);
};

// Degree-0 line bundle LP(p, 1, pi_O^{-1}) for a degree-1 finite place P.
MatrixPair pic0_line(const EllipticContext& E, const PlacePtr& P);

/** Atiyah extension 0 -> S^s -> E -> L -> 0, s = h0(L), classified by the identity of End_k(H^0(L)). */
struct AtiyahStep {
    Extension ext;
    EMat kappa;
    std::vector<EVec> sections;  // basis m_j of H^0(L)
};
AtiyahStep atiyah_extension(const EllipticContext& E, const MatrixPair& L);

MatrixPair atiyah_Fr(const EllipticContext& E, int r);
// Indecomposable bundle of rank r and degree d attached to the degree-0 line bundle L0.
MatrixPair atiyah_bundle(const EllipticContext& E, const MatrixPair& L0, int r, int d, uint64_t seed = 1);

/** The successive extensions of the weakly-stable construction. */
struct WeaklyStableResult {
    std::vector<MatrixPair> chain;  // L_1, ..., L_r
    std::vector<EMat> kappas;       // class of step i (i >= 2)
    const MatrixPair& bundle() const { return chain.back(); }
};
// Optional replacement of the dual basis at a step (verified before use); phi = e_1 on that basis.
using DualBasisHook = std::function<std::optional<std::vector<EVec>>(size_t step, const MatrixPair& sub,
                                                                     const MatrixPair& quot)>;
WeaklyStableResult weakly_stable_bundle(const SerreContext& ctx, int r, int d, const Divisor& D,
                                        const MatrixPair& L1, const MatrixPair& L2, const MatrixPair& Lp,
                                        const DualBasisHook& hook = {});

// L_P = A_P^r at every place of the support of D.
bool is_balanced(const MatrixPair& g, const Divisor& D);
// Saturated rank-1 sub-bundle L cap K v.
MatrixPair line_subbundle(const MatrixPair& g, const EVec& v);

/** Evaluation code: rows are a basis of H^0, columns (place, coordinate, k_P basis index). */
struct CodeSpec {
    MatrixPair bundle;
    Divisor D;
    FMat generator;
    size_t rank = 0;  // rank of the generator over k
};
CodeSpec ag_code_generator(const MatrixPair& L, const Divisor& D);

}  // namespace vbc
