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
#include <string>
#include <vector>

#include "vbc/ideal.hpp"

namespace vbc {

/** Matrix pair (a, g_fi, g_inf): the lattice pair (sum a_j g_fi e_j, g_inf A_inf^r). */
struct MatrixPair {
    FieldPtr K;
    std::vector<Ideal> a;  // ideals of K->order(OrderKind::Fi)
    EMat gfi, ginf;

    size_t rank() const { return a.size(); }
    PseudoMatrix fi_pm() const { return PseudoMatrix{a, gfi}; }
};

// Checks shapes and invertibility; throws MathError otherwise.
MatrixPair make_pair(const FieldPtr& K, std::vector<Ideal> a, EMat gfi, EMat ginf);
MatrixPair trivial_pair(const FieldPtr& K, size_t r);
// Rank-1 pair with given ideal and scalar matrices.
MatrixPair rank1_pair(const FieldPtr& K, const Ideal& a, const Elem& gfi, const Elem& ginf);

MatrixPair det_pair(const MatrixPair& g);
// Degree of the bundle.
int degree(const MatrixPair& g);
MatrixPair tensor(const MatrixPair& g, const MatrixPair& h);
MatrixPair dsum(const MatrixPair& g, const MatrixPair& h);
MatrixPair dual(const MatrixPair& g);
// Hom(LP(g), LP(h)) = dual(g) (x) h; vectors map to matrices by hom_to_matrix.
MatrixPair hom_bundle(const MatrixPair& g, const MatrixPair& h);
// Identification K^{r r'} = M_{r' x r}(K): v[i r' + j] is the (j, i) entry.
EMat hom_to_matrix(const EVec& v, size_t rows, size_t cols);
EVec matrix_to_hom(const EMat& M);
// (a, T g_fi, T g_inf) for invertible T: the image of LP(g) under T.
MatrixPair transform(const MatrixPair& g, const EMat& T);
// Rank-1 pair with v_P(L) = -D_P at every place.
MatrixPair line_bundle(const FieldPtr& K, const Divisor& D);

// Lattices restricted to k(x): columns form a k[x]-basis (fi) and an O_inf-basis (inf) in
// power coordinates (index i n + t).
RMat rest_fi(const MatrixPair& g);
RMat rest_inf(const MatrixPair& g);
// Rest over the rational function field of the same constant field.
MatrixPair restrict_to_base(const MatrixPair& g);
FieldPtr rational_field(const GF* k);
// Conorm of a pair over k(x) to K.
MatrixPair conorm_from_base(const MatrixPair& g0, const FieldPtr& K);

bool fi_contains(const MatrixPair& g, const EVec& v);
bool inf_contains(const MatrixPair& g, const EVec& v);
bool global_section(const MatrixPair& g, const EVec& v);
// Equality of lattice pairs (not isomorphism).
bool equals(const MatrixPair& g, const MatrixPair& h);
// The pair with the finite pseudo-matrix in canonical Hermite form.
MatrixPair canonical(const MatrixPair& g);

/** Homomorphism K^r -> K^{r'} given by a matrix, between two lattice pairs. */
struct BundleHom {
    MatrixPair src, tgt;
    EMat M;
};
bool is_hom(const MatrixPair& src, const MatrixPair& tgt, const EMat& M);
// Both M and M^{-1} are homomorphisms.
bool is_isomorphism(const MatrixPair& src, const MatrixPair& tgt, const EMat& M);

/** Lattice pair with an injective map into K^m. */
struct SubPair {
    MatrixPair pair;
    EMat emb;
};
// Pair L' and embedding C with C(L'_fi) = module of fi and C(L'_inf) = A_inf span of the columns of inf.
SubPair dim_shift(const FieldPtr& K, const PseudoMatrix& fi, const EMat& inf);
SubPair image(const MatrixPair& src, const EMat& M);
SubPair kernel(const MatrixPair& src, const EMat& M);
// Same lattice pair in the coordinates of another embedding with identical span.
MatrixPair rebase(const SubPair& s, const EMat& new_emb);

/** Constant field extension K' = k'K with [k':k] = e. */
struct ConstantExtension {
    FieldPtr K, Kp;
    unsigned e = 1;
    uint32_t rho = 0;     // image in k' of the generator of k over its prime field
    uint32_t theta = 0;   // generator of k' over k; powers 0..e-1 form a basis
    Mat<Fe> decomp;       // F_p-coordinates of k' -> coefficients over k in the theta basis

    uint32_t map(uint32_t a) const;
    Poly map(const Poly& f) const;
    RatFunc map(const RatFunc& f) const;
    Elem map(const Elem& a) const;
    // a = sum_s theta^s c_s with c_s in K.
    std::vector<Elem> split(const Elem& a) const;
    Elem theta_pow(unsigned s) const;
};
ConstantExtension constant_extension(const FieldPtr& K, unsigned e);
MatrixPair conorm(const ConstantExtension& E, const MatrixPair& g);
// Restriction of scalars along k'/k (the trace of a bundle): rank r e, index i e + s.
MatrixPair trace_down(const ConstantExtension& E, const MatrixPair& gp);

std::string pair_str(const MatrixPair& g);

}  // namespace vbc
