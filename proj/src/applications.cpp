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

#include "vbc/applications.hpp"

#include <algorithm>
#include <string>

namespace vbc {

namespace {

MatrixPair power_sum(const MatrixPair& g, size_t s) {
    MatrixPair acc = g;
    for (size_t i = 1; i < s; ++i) acc = dsum(acc, g);
    return acc;
}

MatrixPair tensor_power(const MatrixPair& L, int e) {
    MatrixPair base = e < 0 ? dual(L) : L;
    MatrixPair acc = trivial_pair(L.K, 1);
    for (int i = 0; i < std::abs(e); ++i) acc = tensor(acc, base);
    return acc;
}

// Verified replacement basis of H^0(iota(w)^{-1} Hom^dual).
std::vector<EVec> checked_dual_basis(const MatrixPair& hom, const std::vector<EVec>& vecs,
                                     const SerreContext& ctx) {
    MatrixPair db = tensor(dual(hom), canonical_pair(ctx));
    SectionBasis ref = h0(db);
    if (vecs.size() != ref.dim()) throw MathError("supplied dual basis has the wrong size");
    SectionCoords sc(*ctx.K, ref.vecs);
    FMat C(ref.dim(), vecs.size(), Fe::zero(ctx.K->k()));
    for (size_t j = 0; j < vecs.size(); ++j) {
        if (!global_section(db, vecs[j])) throw MathError("supplied dual basis vector is not a section");
        C.set_col(j, sc(vecs[j]));
    }
    if (rank(C) != vecs.size()) throw MathError("supplied dual basis is not independent");
    return vecs;
}

}  // namespace

EllipticContext EllipticContext::make(const SerreContext& ctx) {
    const FunctionField& K = *ctx.K;
    if (K.genus() != 1) throw MathError("not an elliptic context: genus is not 1");
    EllipticContext E;
    E.K = ctx.K;
    for (auto& Q : K.infinite_places())
        if (Q->deg == 1) {
            E.O = Q;
            break;
        }
    if (!E.O) throw MathError("not an elliptic context: no degree-1 infinite place");
    E.ctx = ctx;
    Divisor DO;
    DO.add(E.O, 1);
    E.Linf = line_bundle(E.K, DO);
    Divisor Dw = K.differential_divisor(ctx.w);
    SectionBasis H = h0(line_bundle(E.K, -Dw));
    if (H.dim() != 1) throw MathError("internal: canonical divisor is not principal");
    Elem h = H.vecs[0][0];
    int v = K.valuation(h, *E.O);
    Fe lead = K.expand(h, *E.O, v, 1)[0][0];
    E.h = h * K.constant(lead.inv().v);
    const Order& A = K.order(OrderKind::Fi);
    E.S = rank1_pair(E.K, Ideal::principal(A, E.h), K.one(), E.h);
    return E;
}

EllipticContext EllipticContext::make(const FieldPtr& K) {
    if (K->genus() != 1) throw MathError("not an elliptic context: genus is not 1");
    for (auto& Q : K->infinite_places())
        if (Q->deg == 1) return make(SerreContext::make(K, Differential{K->one(), Q}));
    throw MathError("not an elliptic context: no degree-1 infinite place");
}

MatrixPair pic0_line(const EllipticContext& E, const PlacePtr& P) {
    if (P->infinite || P->deg != 1) throw MathError("Pic0 representative needs a degree-1 finite place");
    const Order& A = E.K->order(OrderKind::Fi);
    return rank1_pair(E.K, Ideal::of_place(A, *P), E.K->one(), E.O->pi.inv());
}

AtiyahStep atiyah_extension(const EllipticContext& E, const MatrixPair& L) {
    const FunctionField& K = *E.K;
    SectionBasis H = h0(L);
    const size_t s = H.dim(), r = L.rank();
    if (s == 0) throw MathError("Atiyah extension needs a bundle with sections");
    // Canonical order of the sections: increasing pole order at O.
    auto pole = [&](const EVec& v) {
        int m = 1 << 28;
        for (auto& x : v)
            if (!x.is_zero()) m = std::min(m, K.valuation(x, *E.O));
        return m;
    };
    std::stable_sort(H.vecs.begin(), H.vecs.end(), [&](const EVec& a, const EVec& b) { return pole(a) > pole(b); });
    MatrixPair sub = power_sum(E.S, s);
    MatrixPair hom = hom_bundle(L, sub);
    // Dual basis h^{-2} m_j in slot k, paired against the identity of End_k(H^0(L)).
    Elem h2 = (E.h * E.h).inv();
    std::vector<EVec> M;
    std::vector<Fe> phi;
    for (size_t j = 0; j < s; ++j)
        for (size_t kk = 0; kk < s; ++kk) {
            EVec w(r * s, K.zero());
            for (size_t i = 0; i < r; ++i) w[i * s + kk] = h2 * H.vecs[j][i];
            M.push_back(w);
            phi.push_back(j == kk ? Fe::one(K.k()) : Fe::zero(K.k()));
        }
    M = checked_dual_basis(hom, M, E.ctx);
    EVec a = h1_representative(hom, M, phi, E.ctx);
    AtiyahStep st;
    st.kappa = hom_to_matrix(a, s, r);
    st.ext = extension_from_class(sub, L, st.kappa);
    st.sections = H.vecs;
    return st;
}

MatrixPair atiyah_Fr(const EllipticContext& E, int r) {
    if (r < 1) throw MathError("rank must be positive");
    MatrixPair F = trivial_pair(E.K, 1);
    for (int i = 2; i <= r; ++i) {
        F = atiyah_extension(E, F).ext.pair;
        if (h0(F).dim() != 1) throw MathError("internal: F_r has more than one section");
    }
    if (degree(F) != 0) throw MathError("internal: F_r has nonzero degree");
    Rng rng(static_cast<uint64_t>(r));
    if (semisimple_dim(F, rng) != 1) throw MathError("internal: F_r is not absolutely indecomposable");
    return F;
}

namespace {

MatrixPair build(const EllipticContext& E, const MatrixPair& L0, int r, int d) {
    if (r == 1) return tensor(L0, tensor_power(E.Linf, d));
    if (d == 0) return tensor(atiyah_Fr(E, r), L0);
    if (d < 0) return dual(build(E, dual(L0), r, -d));
    if (d >= r) return tensor(build(E, L0, r, d - r), E.Linf);
    return atiyah_extension(E, build(E, L0, r - d, d)).ext.pair;
}

}  // namespace

MatrixPair atiyah_bundle(const EllipticContext& E, const MatrixPair& L0, int r, int d, uint64_t seed) {
    if (r < 1) throw MathError("rank must be positive");
    if (L0.rank() != 1 || degree(L0) != 0) throw MathError("L0 must be a degree-0 line bundle");
    MatrixPair g = build(E, L0, r, d);
    if (static_cast<int>(g.rank()) != r || degree(g) != d) throw MathError("internal: wrong rank or degree");
    Rng rng(seed);
    if (semisimple_dim(g, rng) != 1) throw MathError("internal: output is not absolutely indecomposable");
    return g;
}

bool is_balanced(const MatrixPair& g, const Divisor& D) {
    const FunctionField& K = *g.K;
    for (auto& [P, c] : D.terms) {
        if (c == 0) continue;
        if (P->infinite) throw MathError("divisor support must be finite");
        int total = 0;
        for (size_t j = 0; j < g.rank(); ++j) {
            int va = g.a[j].valuation(*P);
            int vmin = 1 << 28;
            for (size_t i = 0; i < g.rank(); ++i)
                if (!g.gfi(i, j).is_zero()) vmin = std::min(vmin, K.valuation(g.gfi(i, j), *P));
            if (va + vmin < 0) return false;
            total += va;
        }
        if (total + K.valuation(det(g.gfi), *P) != 0) return false;
    }
    return true;
}

MatrixPair line_subbundle(const MatrixPair& g, const EVec& v) {
    const FunctionField& K = *g.K;
    const size_t r = g.rank();
    size_t p = r;
    for (size_t i = 0; i < r && p == r; ++i)
        if (!v[i].is_zero()) p = i;
    if (p == r) throw MathError("zero vector spans no line");
    if (r == 1) return g;
    EMat M(r - 1, r, K.zero());
    Elem vp = v[p].inv();
    size_t row = 0;
    for (size_t i = 0; i < r; ++i) {
        if (i == p) continue;
        M(row, i) = K.one();
        M(row, p) = -(v[i] * vp);
        ++row;
    }
    return kernel(g, M).pair;
}

WeaklyStableResult weakly_stable_bundle(const SerreContext& ctx, int r, int d, const Divisor& D,
                                        const MatrixPair& L1, const MatrixPair& L2, const MatrixPair& Lp,
                                        const DualBasisHook& hook) {
    if (r < 1) throw MathError("rank must be positive");
    const int alpha = d >= 0 ? d / r : -((-d + r - 1) / r);
    const int beta = d - alpha * r;
    if (L1.rank() != 1 || L2.rank() != 1 || Lp.rank() != 1) throw MathError("inputs must be line bundles");
    if (degree(L1) != alpha || degree(L2) != alpha || degree(Lp) != alpha + 1)
        throw MathError("input degrees must be floor(d/r), floor(d/r), floor(d/r) + 1");
    if (!D.effective()) throw MathError("divisor must be effective");
    if (!is_balanced(L1, D) || !is_balanced(L2, D) || !is_balanced(Lp, D))
        throw MathError("inputs are not D-balanced");
    WeaklyStableResult out;
    out.chain.push_back(L1);
    for (int i = 2; i <= r; ++i) {
        const MatrixPair& sub = out.chain.back();
        const MatrixPair& quot = i <= r - beta ? L2 : Lp;
        MatrixPair hom = hom_bundle(quot, sub);
        std::vector<EVec> basis;
        std::optional<std::vector<EVec>> custom;
        if (hook) custom = hook(static_cast<size_t>(i), sub, quot);
        if (custom)
            basis = checked_dual_basis(hom, *custom, ctx);
        else
            basis = ext_dual_basis(sub, quot, ctx).vecs;
        if (basis.empty()) throw MathError("no non-trivial extension at step " + std::to_string(i));
        std::vector<Fe> phi(basis.size(), Fe::zero(ctx.K->k()));
        phi[0] = Fe::one(ctx.K->k());
        EVec a = h1_representative(hom, basis, phi, ctx);
        EMat kappa = hom_to_matrix(a, sub.rank(), quot.rank());
        out.kappas.push_back(kappa);
        out.chain.push_back(extension_from_class(sub, quot, kappa).pair);
    }
    const MatrixPair& g = out.bundle();
    if (static_cast<int>(g.rank()) != r || degree(g) != d) throw MathError("internal: wrong rank or degree");
    if (!is_balanced(g, D)) throw MathError("internal: output is not D-balanced");
    // Spot check of weak stability on sub-lines spanned by global sections.
    for (auto& v : h0(g).vecs)
        if (degree(line_subbundle(g, v)) * r > d) throw MathError("weak stability check failed");
    return out;
}

CodeSpec ag_code_generator(const MatrixPair& L, const Divisor& D) {
    const FunctionField& K = *L.K;
    if (!D.effective()) throw MathError("divisor must be effective");
    for (auto& [P, c] : D.terms)
        if (c != 0 && P->infinite) throw MathError("divisor support must be finite");
    if (!is_balanced(L, D)) throw MathError("evaluation undefined");
    SectionBasis H = h0(L);
    const size_t r = L.rank();
    size_t n = 0;
    for (auto& [P, c] : D.terms)
        if (c != 0) n += r * P->deg;
    CodeSpec out;
    out.bundle = L;
    out.D = D;
    out.generator = FMat(H.dim(), n, Fe::zero(K.k()));
    size_t col = 0;
    for (auto& [P, c] : D.terms) {
        if (c == 0) continue;
        for (size_t i = 0; i < r; ++i) {
            for (size_t t = 0; t < H.dim(); ++t) {
                if (H.vecs[t][i].is_zero()) continue;
                auto red = K.reduce(H.vecs[t][i], *P);
                for (int b = 0; b < P->deg; ++b) out.generator(t, col + b) = red[b];
            }
            col += P->deg;
        }
    }
    out.rank = H.dim() && n ? vbc::rank(out.generator) : 0;
    return out;
}

}  // namespace vbc
