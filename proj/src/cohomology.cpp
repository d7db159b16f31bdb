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


#include "vbc/cohomology.hpp"

#include <algorithm>
#include <map>

namespace vbc {

namespace {

constexpr int kMaxEll = 1 << 12;

bool all_zero(const std::vector<Fe>& v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace

SerreContext SerreContext::make(const FieldPtr& K) { return make(K, K->default_differential()); }

SerreContext SerreContext::make(const FieldPtr& K, const Differential& w) {
    SerreContext c{K, w, true};
    for (auto& Q : K->infinite_places())
        if (Q != w.Q0 && K->valuation(w.Q0->pi, *Q) != 0) c.uniformizer_ok = false;
    return c;
}

int SerreContext::k0_size() const {
    int s = 1;
    for (int i = 0; i < w.Q0->deg; ++i) s *= static_cast<int>(K->k()->q());
    return s;
}

SectionBasis h0(const MatrixPair& g) {
    const FunctionField& K = *g.K;
    const GF* k = K.k();
    SectionBasis out{g, {}};
    if (g.rank() == 0) return out;
    RMat Gf = rest_fi(g), Gi = rest_inf(g);
    RMat M = inverse(Gi) * Gf;
    Poly d = Poly::one(k);
    for (auto& e : M.a)
        if (!e.is_zero()) d = lcm(d, e.den);
    RMat P = weak_popov(M.scaled(RatFunc(d)), true).P;
    for (size_t i = 0; i < P.c; ++i) {
        int nb = col_norm(P, i);
        if (nb < 0) continue;
        RVec b = P.col(i);
        for (int j = 0; j <= d.deg() - nb; ++j) {
            RatFunc s(Poly::monomial(k, 1, j), d);
            RVec w = b;
            for (auto& x : w)
                if (!x.is_zero()) x = x * s;
            out.vecs.push_back(from_power_coords(K, Gi * w));
        }
    }
    return out;
}

SectionCoords::SectionCoords(const FunctionField& K, std::vector<EVec> basis, PlacePtr P)
    : K_(&K), basis_(std::move(basis)), P_(P ? P : K.infinite_places().front()) {
    const size_t s = basis_.size();
    if (s == 0) return;
    const size_t r = basis_.front().size();
    v_.assign(r, 0);
    for (size_t i = 0; i < r; ++i) {
        bool any = false;
        for (size_t j = 0; j < s; ++j) {
            if (basis_[j][i].is_zero()) continue;
            int vv = K.valuation(basis_[j][i], *P_);
            v_[i] = any ? std::min(v_[i], vv) : vv;
            any = true;
        }
    }
    const GF* k = K.k();
    for (ell_ = 1; ell_ <= kMaxEll; ell_ *= 2) {
        std::vector<std::vector<Fe>> cols;
        for (auto& m : basis_) cols.push_back(features(m));
        Mat<Fe> N(cols.front().size(), s, Fe::zero(k));
        for (size_t j = 0; j < s; ++j) N.set_col(j, cols[j]);
        // Pick s independent rows.
        Echelon<Fe> ech = rref(N.transpose());
        if (ech.pivots.size() < s) continue;
        rows_ = ech.pivots;
        Mat<Fe> Ns(s, s, Fe::zero(k));
        for (size_t a = 0; a < s; ++a)
            for (size_t j = 0; j < s; ++j) Ns(a, j) = N(rows_[a], j);
        inv_ = inverse(Ns);
        return;
    }
    throw MathError("internal: truncation never became injective");
}

std::vector<Fe> SectionCoords::features(const EVec& f) const {
    const int dP = P_->deg;
    std::vector<Fe> out(f.size() * ell_ * dP, Fe::zero(K_->k()));
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_zero()) continue;
        auto ex = K_->expand(f[i], *P_, v_[i], ell_);
        for (int a = 0; a < ell_; ++a)
            for (int b = 0; b < dP; ++b) out[(i * ell_ + a) * dP + b] = ex[a][b];
    }
    return out;
}

std::vector<Fe> SectionCoords::operator()(const EVec& f, bool verify) const {
    const size_t s = basis_.size();
    if (s == 0) {
        for (auto& x : f)
            if (!x.is_zero()) throw MathError("not a section");
        return {};
    }
    if (f.size() != basis_.front().size()) throw MathError("rank mismatch in section coordinates");
    auto ft = features(f);
    std::vector<Fe> sel(s, Fe::zero(K_->k()));
    for (size_t a = 0; a < s; ++a) sel[a] = ft[rows_[a]];
    std::vector<Fe> c = inv_ * sel;
    if (verify) {
        EVec acc(f.size(), K_->zero());
        for (size_t j = 0; j < s; ++j) {
            if (c[j].is_zero()) continue;
            Elem cj = K_->constant(c[j].v);
            for (size_t i = 0; i < f.size(); ++i)
                if (!basis_[j][i].is_zero()) acc[i] += basis_[j][i] * cj;
        }
        if (acc != f) throw MathError("not a section");
    }
    return c;
}

std::vector<Fe> h0_coords(const EVec& f, const std::vector<EVec>& basis, const FunctionField& K, const PlacePtr& P) {
    return SectionCoords(K, basis, P)(f);
}

std::vector<Fe> h0_coords(const EVec& f, const SectionBasis& B) {
    const FunctionField& K = *B.bundle.K;
    return h0_coords(f, B.vecs, K, K.infinite_places().front());
}

MatrixPair canonical_pair(const SerreContext& ctx) {
    return line_bundle(ctx.K, ctx.K->differential_divisor(ctx.w));
}

SectionBasis h1_dual_basis(const MatrixPair& g, const SerreContext& ctx) {
    return h0(tensor(dual(g), canonical_pair(ctx)));
}

int h1_dim(const MatrixPair& g, const SerreContext& ctx) { return static_cast<int>(h1_dual_basis(g, ctx).dim()); }

int euler_characteristic(const MatrixPair& g, const SerreContext& ctx) {
    return static_cast<int>(h0(g).dim()) - h1_dim(g, ctx);
}

Repartition infinite_repartition(const EVec& b) {
    Repartition R;
    R.r = b.size();
    R.inf = b;
    return R;
}

Fe serre_pair_inf(const EVec& a, const EVec& b, const SerreContext& ctx) {
    if (a.size() != b.size()) throw MathError("rank mismatch in pairing");
    const FunctionField& K = *ctx.K;
    Elem s = K.zero();
    for (size_t i = 0; i < a.size(); ++i)
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    if (s.is_zero()) return Fe::zero(K.k());
    Repartition R;
    R.inf = {s};
    return K.residue(R, ctx.w);
}

Fe serre_pair(const EVec& a, const Repartition& b, const SerreContext& ctx) {
    const FunctionField& K = *ctx.K;
    Repartition R;
    for (auto& [P, vals] : b.local) {
        if (vals.size() != a.size()) throw MathError("rank mismatch in pairing");
        Elem s = K.zero();
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * vals[i];
        R.local.push_back({P, {s}});
    }
    if (!b.inf.empty()) {
        if (b.inf.size() != a.size()) throw MathError("rank mismatch in pairing");
        Elem s = K.zero();
        for (size_t i = 0; i < a.size(); ++i) s += a[i] * b.inf[i];
        R.inf = {s};
    }
    return K.residue(R, ctx.w);
}

Fe global_residue_sum(const FunctionField& K, const Elem& f) {
    Fe acc = Fe::zero(K.k());
    if (f.is_zero()) return acc;
    for (auto& [P, c] : K.divisor_of(f).terms)
        if (!P->infinite && c < 0) acc += K.residue_dx(f, P);
    return acc + K.residue_dx_infinity(f);
}

EVec h1_representative(const MatrixPair& g, const std::vector<EVec>& M, const std::vector<Fe>& phi,
                       const SerreContext& ctx, H1Report* report) {
    const FunctionField& K = *ctx.K;
    const GF* k = K.k();
    const size_t r = g.rank(), s = M.size();
    if (phi.size() != s) throw MathError("phi has the wrong length");
    for (auto& m : M)
        if (m.size() != r) throw MathError("basis vectors have the wrong rank");
    H1Report rep;
    EVec zero(r, K.zero());
    if (s == 0 || all_zero(phi)) {
        rep.formula_ok = true;
        if (report) *report = rep;
        return zero;
    }
    const PlacePtr Q0 = ctx.w.Q0;
    const int dq = Q0->deg;
    auto infs = K.infinite_places();
    // Offsets at Q0 for m_ij f and at the other infinite places for m_ij.
    std::vector<std::vector<Elem>> n(r, std::vector<Elem>(s));
    std::vector<int> v(r, 0);
    for (size_t i = 0; i < r; ++i) {
        bool any = false;
        for (size_t j = 0; j < s; ++j) {
            n[i][j] = M[j][i] * ctx.w.f;
            if (n[i][j].is_zero()) continue;
            int vv = K.valuation(n[i][j], *Q0);
            v[i] = any ? std::min(v[i], vv) : vv;
            any = true;
        }
    }
    std::map<PlacePtr, int> need;  // lower bound for L v_Q(pi)
    for (auto& Q : infs) {
        if (Q == Q0) continue;
        int lo = 1 << 28;
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < s; ++j)
                if (!M[j][i].is_zero()) lo = std::min(lo, K.valuation(M[j][i], *Q));
        if (lo == (1 << 28)) continue;
        need[Q] = -lo - K.differential_valuation(ctx.w, Q);
    }
    // Trace system over k.
    int ell = 1;
    Mat<Fe> T;
    for (;; ell *= 2) {
        if (ell > kMaxEll) throw MathError("internal: truncation never reached full rank");
        T = Mat<Fe>(r * ell * dq, s, Fe::zero(k));
        for (size_t i = 0; i < r; ++i)
            for (size_t j = 0; j < s; ++j) {
                auto ex = K.expand(n[i][j], *Q0, v[i], ell);
                for (int a = 0; a < ell; ++a)
                    for (int b = 0; b < dq; ++b) {
                        std::vector<Fe> eb(dq, Fe::zero(k));
                        eb[b] = Fe::one(k);
                        T((i * ell + a) * dq + b, j) = K.kp_trace(*Q0, K.kp_mul(*Q0, eb, ex[a]));
                    }
            }
        if (rank(T) == s) break;
    }
    rep.ell = ell;
    auto x = solve_vec(T.transpose(), phi);
    if (!x) throw MathError("internal: trace system not solvable");
    long L = 1;
    while (L < ell) L *= ctx.k0_size();
    // Lifts vanishing at the other infinite places, and the correction element pi.
    auto lift = [&](const std::vector<Fe>& a) {
        if (all_zero(a)) return K.zero();
        Elem base = K.lift(a, *Q0);
        if (infs.size() == 1) return base;
        std::vector<CrtConstraint> cs{{Q0, base, 1}};
        for (auto& Q : infs)
            if (Q != Q0) cs.push_back({Q, K.zero(), 1});
        return K.crt(cs);
    };
    Elem pi = K.one();
    if (infs.size() > 1) {
        std::vector<CrtConstraint> cs{{Q0, K.one(), 1}};
        for (auto& [Q, lo] : need) {
            long e = lo <= 0 ? 0 : (lo + L - 1) / L;
            if (e > 0) cs.push_back({Q, K.zero(), static_cast<int>(e)});
        }
        if (cs.size() > 1) pi = K.crt(cs);
    }
    Elem piL = pi.pow(L);
    Elem t = Q0->pi;
    Elem tinv = t.inv();
    EVec c(r, K.zero());
    for (size_t i = 0; i < r; ++i) {
        Elem acc = K.zero();
        for (int a = 0; a < ell; ++a) {
            std::vector<Fe> av(dq, Fe::zero(k));
            for (int b = 0; b < dq; ++b) av[b] = (*x)[(i * ell + a) * dq + b];
            Elem la = lift(av);
            if (la.is_zero()) continue;
            acc += la.pow(L) * tinv.pow(a);
        }
        if (!acc.is_zero()) c[i] = piL * tinv.pow(v[i] + 1) * acc;
    }
    auto verify = [&](const EVec& cand) {
        for (size_t j = 0; j < s; ++j)
            if (serre_pair_inf(M[j], cand, ctx) != phi[j]) return false;
        return true;
    };
    if (verify(c)) {
        rep.formula_ok = true;
        if (report) *report = rep;
        return c;
    }
    // Fallback: exact linear solve over the same family of candidates.
    rep.used_fallback = true;
    std::vector<EVec> cands;
    for (size_t i = 0; i < r; ++i)
        for (int a = 0; a < ell; ++a)
            for (int b = 0; b < dq; ++b) {
                std::vector<Fe> eb(dq, Fe::zero(k));
                eb[b] = Fe::one(k);
                EVec e(r, K.zero());
                e[i] = piL * tinv.pow(v[i] + 1 + a) * lift(eb).pow(L);
                cands.push_back(e);
            }
    Mat<Fe> P(s, cands.size(), Fe::zero(k));
    for (size_t j = 0; j < s; ++j)
        for (size_t u = 0; u < cands.size(); ++u) P(j, u) = serre_pair_inf(M[j], cands[u], ctx);
    auto y = solve_vec(P, phi);
    if (!y) throw MathError("internal: pairing candidates do not span the dual");
    EVec out(r, K.zero());
    for (size_t u = 0; u < cands.size(); ++u) {
        if ((*y)[u].is_zero()) continue;
        Elem cu = K.constant((*y)[u].v);
        for (size_t i = 0; i < r; ++i) out[i] += cands[u][i] * cu;
    }
    if (!verify(out)) throw MathError("internal: H1 representative failed verification");
    if (report) *report = rep;
    return out;
}

Extension extension_from_class(const MatrixPair& sub, const MatrixPair& quot, const EMat& kappa) {
    const size_t r1 = sub.rank(), r2 = quot.rank();
    if (kappa.r != r1 || kappa.c != r2) throw MathError("class has the wrong shape");
    const FunctionField& K = *sub.K;
    std::vector<Ideal> a = sub.a;
    a.insert(a.end(), quot.a.begin(), quot.a.end());
    EMat gfi = sub.gfi.block_diag(quot.gfi);
    EMat ginf = sub.ginf.block_diag(quot.ginf);
    ginf.put(0, r1, -(kappa * quot.ginf));
    Extension E;
    E.pair = make_pair(sub.K, a, gfi, ginf);
    E.iota = EMat(r1 + r2, r1, K.zero());
    E.proj = EMat(r2, r1 + r2, K.zero());
    for (size_t i = 0; i < r1; ++i) E.iota(i, i) = K.one();
    for (size_t i = 0; i < r2; ++i) E.proj(i, r1 + i) = K.one();
    return E;
}

SectionBasis ext_dual_basis(const MatrixPair& sub, const MatrixPair& quot, const SerreContext& ctx) {
    return h1_dual_basis(hom_bundle(quot, sub), ctx);
}

std::vector<Fe> class_coordinates(const SectionBasis& dual, const EMat& kappa, const SerreContext& ctx) {
    EVec kv = matrix_to_hom(kappa);
    std::vector<Fe> out;
    for (auto& m : dual.vecs) out.push_back(serre_pair_inf(m, kv, ctx));
    return out;
}

Extension extension_from_form(const MatrixPair& sub, const MatrixPair& quot, const std::vector<Fe>& phi,
                              const SerreContext& ctx, EMat* kappa_out) {
    SectionBasis D = ext_dual_basis(sub, quot, ctx);
    MatrixPair H = hom_bundle(quot, sub);
    EVec a = h1_representative(H, D.vecs, phi, ctx);
    EMat kappa = hom_to_matrix(a, sub.rank(), quot.rank());
    if (kappa_out) *kappa_out = kappa;
    return extension_from_class(sub, quot, kappa);
}

Extension extension_from_repartition(const MatrixPair& sub, const MatrixPair& quot, const Repartition& kappa,
                                     const SerreContext& ctx) {
    SectionBasis D = ext_dual_basis(sub, quot, ctx);
    std::vector<Fe> phi;
    for (auto& m : D.vecs) phi.push_back(serre_pair(m, kappa, ctx));
    return extension_from_form(sub, quot, phi, ctx);
}

}  // namespace vbc
