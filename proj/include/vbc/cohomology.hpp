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

#include "vbc/pairs.hpp"

namespace vbc {

/** k-basis of H^0 of a lattice pair, as vectors of K^r. */
struct SectionBasis {
    MatrixPair bundle;
    std::vector<EVec> vecs;
    size_t dim() const { return vecs.size(); }
};

/** Differential w = f d(pi_Q0) fixing the Serre pairing. */
struct SerreContext {
    FieldPtr K;
    Differential w;
    // The uniformizer of Q0 is a unit at the other infinite places.
    bool uniformizer_ok = true;

    static SerreContext make(const FieldPtr& K);
    static SerreContext make(const FieldPtr& K, const Differential& w);
    int k0_size() const;
};

/** Coordinates of sections in a fixed basis through expansions at one place. */
class SectionCoords {
  public:
    SectionCoords(const FunctionField& K, std::vector<EVec> basis, PlacePtr P = nullptr);
    // Throws "not a section" when f is outside the span (checked exactly when verify is set).
    std::vector<Fe> operator()(const EVec& f, bool verify = true) const;
    size_t dim() const { return basis_.size(); }
    int ell() const { return ell_; }

  private:
    std::vector<Fe> features(const EVec& f) const;
    const FunctionField* K_;
    std::vector<EVec> basis_;
    PlacePtr P_;
    std::vector<int> v_;
    int ell_ = 0;
    std::vector<size_t> rows_;
    Mat<Fe> inv_;
};

// Global sections via restriction to k(x) and a reduced basis.
SectionBasis h0(const MatrixPair& g);
// Coordinates of f in the basis (throws "not a section" when f is outside the span).
std::vector<Fe> h0_coords(const EVec& f, const SectionBasis& B);
std::vector<Fe> h0_coords(const EVec& f, const std::vector<EVec>& basis, const FunctionField& K, const PlacePtr& P);

// Rank-1 pair iota(w)^{-1}: its sections are the Riemann-Roch space of div w.
MatrixPair canonical_pair(const SerreContext& ctx);
// Basis of H^0(iota(w)^{-1} L^dual), the dual of H^1(L).
SectionBasis h1_dual_basis(const MatrixPair& g, const SerreContext& ctx);
int h1_dim(const MatrixPair& g, const SerreContext& ctx);
int euler_characteristic(const MatrixPair& g, const SerreContext& ctx);

struct H1Report {
    int ell = 0;               // truncation length reached
    bool formula_ok = false;   // closed-form output passed its own verification
    bool used_fallback = false;
};
// a in K^r whose infinite repartition pairs to phi against the basis M of H^0(iota(w)^{-1} L^dual).
EVec h1_representative(const MatrixPair& g, const std::vector<EVec>& M, const std::vector<Fe>& phi,
                       const SerreContext& ctx, H1Report* report = nullptr);

// theta_w(a, b) for a general repartition vector b of rank r.
Fe serre_pair(const EVec& a, const Repartition& b, const SerreContext& ctx);
// theta_w(a, b_inf) for the infinite repartition of b in K^r.
Fe serre_pair_inf(const EVec& a, const EVec& b, const SerreContext& ctx);
Repartition infinite_repartition(const EVec& b);

// Sum over all places of Res_P(f dx); zero by the residue theorem.
Fe global_residue_sum(const FunctionField& K, const Elem& f);

/** Extension 0 -> LP(sub) -> E -> LP(quot) -> 0 with its two canonical maps. */
struct Extension {
    MatrixPair pair;
    EMat iota, proj;
};
// kappa is r' x r'' (r' = rank of sub), read as an infinite repartition.
Extension extension_from_class(const MatrixPair& sub, const MatrixPair& quot, const EMat& kappa);
// General repartition matrix: entries kappa[j][i] = component i r' + j of a rank r' r'' repartition.
Extension extension_from_repartition(const MatrixPair& sub, const MatrixPair& quot, const Repartition& kappa,
                                     const SerreContext& ctx);
// Dual basis of Ext^1(quot, sub) = H^1(Hom(quot, sub)).
SectionBasis ext_dual_basis(const MatrixPair& sub, const MatrixPair& quot, const SerreContext& ctx);
// Coordinates of a class against a dual basis.
std::vector<Fe> class_coordinates(const SectionBasis& dual, const EMat& kappa, const SerreContext& ctx);
// Extension classified by the linear form phi on the dual basis.
Extension extension_from_form(const MatrixPair& sub, const MatrixPair& quot, const std::vector<Fe>& phi,
                              const SerreContext& ctx, EMat* kappa_out = nullptr);

}  // namespace vbc
