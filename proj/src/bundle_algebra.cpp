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

#include "vbc/bundle_algebra.hpp"

#include <algorithm>
#include <tuple>

namespace vbc {

namespace {

EMat identity_of(const FunctionField& K, size_t r) { return EMat::identity(r, K.one()); }

}  // namespace

FiniteAlgebra end_algebra(const MatrixPair& g) {
    const FunctionField& K = *g.K;
    const size_t r = g.rank();
    SectionBasis H = h0(hom_bundle(g, g));
    FiniteAlgebra A;
    A.k = K.k();
    A.dim = H.dim();
    for (auto& v : H.vecs) A.elems.push_back(hom_to_matrix(v, r, r));
    SectionCoords sc(K, H.vecs);
    A.c.assign(A.dim, std::vector<FVec>(A.dim));
    for (size_t i = 0; i < A.dim; ++i)
        for (size_t j = 0; j < A.dim; ++j) A.c[i][j] = sc(matrix_to_hom(A.elems[i] * A.elems[j]));
    A.one = sc(matrix_to_hom(identity_of(K, r)));
    return A;
}

MonteCarloIsom::MonteCarloIsom(const MatrixPair& g, const MatrixPair& gp) : g_(g), gp_(gp) {
    if (g.rank() != gp.rank()) return;
    const size_t r = g.rank();
    SectionBasis E = h0(hom_bundle(g, g));
    SectionBasis H = h0(hom_bundle(g, gp));
    SectionBasis B = h0(hom_bundle(gp, g));
    s_ = E.dim();
    match_ = H.dim() == s_ && B.dim() == s_;
    if (!match_) return;
    for (auto& v : H.vecs) hom_.push_back(hom_to_matrix(v, r, r));
    for (auto& v : B.vecs) back_.push_back(hom_to_matrix(v, r, r));
    end_.emplace(*g.K, E.vecs);
}

IsomResult MonteCarloIsom::trial(Rng& rng, uint64_t sample_set_size) const {
    if (!match_) return {std::nullopt, g_.rank() != gp_.rank() ? "rank mismatch" : "dimension mismatch"};
    const FunctionField& K = *g_.K;
    const GF* k = K.k();
    if (k->q() <= s_) throw MathError("field too small; use deterministic path");
    const uint64_t S = sample_set_size == 0 ? k->q() : std::min<uint64_t>(sample_set_size, k->q());
    const size_t r = g_.rank();
    EMat F(r, r, K.zero());
    for (auto& m : hom_) {
        uint32_t a = static_cast<uint32_t>(rand_below(rng, S));
        if (a) F = F + m.scaled(K.constant(a));
    }
    // alpha(f): Hom(L', L) -> End(L), n -> n o f, in the chosen bases.
    FMat alpha(s_, s_, Fe::zero(k));
    for (size_t j = 0; j < s_; ++j) alpha.set_col(j, (*end_)(matrix_to_hom(back_[j] * F)));
    if (det(alpha).is_zero()) return {std::nullopt, "inconclusive"};
    if (!is_isomorphism(g_, gp_, F)) return {std::nullopt, "inconclusive"};
    return {BundleHom{g_, gp_, F}, ""};
}

IsomResult isom_monte_carlo(const MatrixPair& g, const MatrixPair& gp, uint64_t seed, uint64_t sample_set_size) {
    MonteCarloIsom mc(g, gp);
    Rng rng(seed);
    return mc.trial(rng, sample_set_size);
}

IsomResult isom_indecomposable(const MatrixPair& g, const MatrixPair& gp, Rng& rng) {
    if (g.rank() != gp.rank()) return {std::nullopt, "rank mismatch"};
    const FunctionField& K = *g.K;
    const size_t r = g.rank(), n = 2 * r;
    FiniteAlgebra A = end_algebra(dsum(g, gp));
    AlgebraDecomposition D = wedderburn_malcev(A, rng);
    if (D.factors.size() != 1 || D.factors[0].n != 2) return {std::nullopt, "semisimple part is not 2 x 2 matrices"};
    // Corner eps' A eps: maps from the first summand to the second.
    std::vector<EMat> corners;
    for (auto& E : A.elems) {
        EMat C(n, n, K.zero());
        C.put(r, 0, E.sub(r, 0, r, r));
        corners.push_back(C);
    }
    std::vector<EVec> basis;
    for (auto& E : A.elems) basis.push_back(matrix_to_hom(E));
    SectionCoords sc(K, basis);
    for (auto& C : corners) {
        FVec x = sc(matrix_to_hom(C));
        if (D.in_radical(x)) continue;
        EMat M = C.sub(r, 0, r, r);
        if (is_isomorphism(g, gp, M)) return {BundleHom{g, gp, M}, ""};
    }
    return {std::nullopt, "no isomorphism in the corner (input not indecomposable)"};
}

MatrixPair SplitResult::source() const {
    std::optional<MatrixPair> acc;
    for (auto& f : factors)
        for (int j = 0; j < f.multiplicity; ++j) acc = acc ? dsum(*acc, f.bundle) : f.bundle;
    if (!acc) throw MathError("empty splitting");
    return *acc;
}

SplitResult split_lattice(const MatrixPair& g, Rng& rng) {
    FiniteAlgebra A = end_algebra(g);
    AlgebraDecomposition D = wedderburn_malcev(A, rng);
    SplitResult out;
    std::vector<EMat> blocks;
    for (auto& sf : D.factors) {
        SplitFactor F;
        F.multiplicity = static_cast<int>(sf.n);
        F.division_dim = sf.d;
        {
            std::vector<FVec> vs;
            for (size_t t = 0; t < A.dim; ++t) vs.push_back(A.mul(A.mul(sf.idem[0], A.basis(t)), sf.idem[0]));
            FMat M(A.dim, vs.size(), Fe::zero(A.k));
            for (size_t t = 0; t < vs.size(); ++t) M.set_col(t, vs[t]);
            F.end_dim = rank(M);
        }
        SubPair first = image(g, A.to_matrix(sf.idem[0]));
        F.bundle = first.pair;
        blocks.push_back(first.emb);
        for (size_t j = 1; j < sf.n; ++j) {
            SubPair sp = image(g, A.to_matrix(sf.idem[j]));
            IsomResult iso = isom_indecomposable(first.pair, sp.pair, rng);
            if (!iso.found()) throw MathError("internal: equivalent idempotents give non-isomorphic summands");
            blocks.push_back(sp.emb * iso.hom->M);
        }
        out.factors.push_back(std::move(F));
    }
    EMat T = blocks[0];
    for (size_t i = 1; i < blocks.size(); ++i) T = T.hcat(blocks[i]);
    out.T = T;
    out.verified = is_isomorphism(out.source(), g, T);
    if (!out.verified) throw MathError("internal: reassembly map is not an isomorphism");
    return out;
}

IsomResult isom_general(const MatrixPair& g, const MatrixPair& gp, Rng& rng) {
    if (g.rank() != gp.rank()) return {std::nullopt, "rank mismatch"};
    if (degree(g) != degree(gp)) return {std::nullopt, "degree mismatch"};
    SplitResult a = split_lattice(g, rng), b = split_lattice(gp, rng);
    if (a.factors.size() != b.factors.size()) return {std::nullopt, "different number of indecomposable factors"};
    // Block offsets in the two sources.
    auto offsets = [](const SplitResult& s) {
        std::vector<size_t> off;
        size_t o = 0;
        for (auto& f : s.factors) {
            off.push_back(o);
            o += f.bundle.rank() * f.multiplicity;
        }
        return off;
    };
    auto oa = offsets(a), ob = offsets(b);
    // Cheap invariants first, then the indecomposable test on the remaining candidates.
    std::vector<size_t> order(a.factors.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto key = [](const SplitFactor& f) { return std::make_tuple(f.bundle.rank(), degree(f.bundle), f.multiplicity); };
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t x, size_t y) { return key(a.factors[x]) < key(a.factors[y]); });
    const size_t r = g.rank();
    const FunctionField& K = *g.K;
    EMat Q(r, r, K.zero());
    std::vector<bool> used(b.factors.size(), false);
    for (size_t ia : order) {
        const SplitFactor& fa = a.factors[ia];
        bool matched = false;
        for (size_t ib = 0; ib < b.factors.size() && !matched; ++ib) {
            const SplitFactor& fb = b.factors[ib];
            if (used[ib] || key(fa) != key(fb)) continue;
            IsomResult iso = isom_indecomposable(fa.bundle, fb.bundle, rng);
            if (!iso.found()) continue;
            used[ib] = matched = true;
            const size_t rf = fa.bundle.rank();
            for (int j = 0; j < fa.multiplicity; ++j) Q.put(ob[ib] + j * rf, oa[ia] + j * rf, iso.hom->M);
        }
        if (!matched) return {std::nullopt, "an indecomposable factor has no isomorphic partner"};
    }
    EMat M = b.T * Q * inverse(a.T);
    if (!is_isomorphism(g, gp, M)) throw MathError("internal: assembled map is not an isomorphism");
    return {BundleHom{g, gp, M}, ""};
}

size_t semisimple_dim(const MatrixPair& g, Rng& rng) {
    FiniteAlgebra A = end_algebra(g);
    return wedderburn_malcev(A, rng).complement.c;
}

}  // namespace vbc
