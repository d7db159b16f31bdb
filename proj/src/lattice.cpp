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

#include "vbc/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace vbc {

bool in_ring(const RatFunc& a, Ring R) {
    if (a.is_zero()) return true;
    return R == Ring::Poly ? a.is_poly() : a.inf_val() >= 0;
}

bool in_ring(const RVec& v, Ring R) {
    for (auto& a : v)
        if (!in_ring(a, R)) return false;
    return true;
}

bool in_ring(const RMat& m, Ring R) {
    for (auto& a : m.a)
        if (!in_ring(a, R)) return false;
    return true;
}

RMat HnfResult::basis() const { return H.sub(0, zero, H.r, H.c - zero); }

namespace {

void col_axpy(RMat& A, size_t dst, const RatFunc& f, size_t src) {
    // col_dst -= f * col_src
    if (f.is_zero()) return;
    for (size_t i = 0; i < A.r; ++i)
        if (!A(i, src).is_zero()) A(i, dst) -= f * A(i, src);
}

void col_swap(RMat& A, size_t i, size_t j) {
    for (size_t k = 0; k < A.r; ++k) std::swap(A(k, i), A(k, j));
}

void col_scale(RMat& A, size_t j, const RatFunc& f) {
    for (size_t k = 0; k < A.r; ++k)
        if (!A(k, j).is_zero()) A(k, j) = A(k, j) * f;
}

// (col_i, col_j) <- (u col_i + v col_j, s col_i + t col_j)
void col_mix(RMat& A, size_t i, size_t j, const RatFunc& u, const RatFunc& v, const RatFunc& s, const RatFunc& t) {
    for (size_t k = 0; k < A.r; ++k) {
        const RatFunc a = A(k, i), b = A(k, j);
        if (a.is_zero() && b.is_zero()) continue;
        A(k, i) = u * a + v * b;
        A(k, j) = s * a + t * b;
    }
}

HnfResult hnf_poly(RMat A) {
    const GF* F = A.z.field();
    RMat U = RMat::identity(A.c, RatFunc::one(F));
    long col = static_cast<long>(A.c);
    for (long row = static_cast<long>(A.r) - 1; row >= 0 && col > 0; --row) {
        size_t piv = static_cast<size_t>(col - 1);
        for (size_t j = 0; j < piv; ++j) {
            if (A(row, j).is_zero()) continue;
            if (A(row, piv).is_zero()) {
                col_swap(A, j, piv);
                col_swap(U, j, piv);
                continue;
            }
            const Poly& a = A(row, j).num;
            const Poly& b = A(row, piv).num;
            if (a.deg() >= b.deg()) {
                auto [q, r] = a.divmod(b);
                if (r.is_zero()) {
                    col_axpy(A, j, RatFunc(q), piv);
                    col_axpy(U, j, RatFunc(q), piv);
                    continue;
                }
            } else {
                auto [q, r] = b.divmod(a);
                if (r.is_zero()) {
                    col_axpy(A, piv, RatFunc(q), j);
                    col_axpy(U, piv, RatFunc(q), j);
                    col_swap(A, j, piv);
                    col_swap(U, j, piv);
                    continue;
                }
            }
            Xgcd g = xgcd(a, b);
            RatFunc u(g.u), v(g.v), s(-(b / g.g)), t(a / g.g);
            // new piv = u col_j + v col_piv ; new j = (b/g) col_j - (a/g) col_piv
            col_mix(A, piv, j, v, u, -t, -s);
            col_mix(U, piv, j, v, u, -t, -s);
        }
        if (A(row, piv).is_zero()) continue;
        RatFunc li = RatFunc::constant(F, F->inv(A(row, piv).num.lc()));
        if (!li.is_one()) {
            col_scale(A, piv, li);
            col_scale(U, piv, li);
        }
        const Poly pv = A(row, piv).num;
        for (size_t l = piv + 1; l < A.c; ++l) {
            if (A(row, l).is_zero()) continue;
            Poly q = A(row, l).num / pv;
            if (q.is_zero()) continue;
            col_axpy(A, l, RatFunc(q), piv);
            col_axpy(U, l, RatFunc(q), piv);
        }
        --col;
    }
    return {std::move(A), std::move(U), static_cast<size_t>(col)};
}

HnfResult hnf_inf(RMat A) {
    const GF* F = A.z.field();
    RMat U = RMat::identity(A.c, RatFunc::one(F));
    long col = static_cast<long>(A.c);
    for (long row = static_cast<long>(A.r) - 1; row >= 0 && col > 0; --row) {
        size_t piv = static_cast<size_t>(col - 1);
        // Select minimal valuation among columns 0..piv (lowest index on ties).
        long best = -1;
        int bv = 0;
        for (size_t j = 0; j <= piv; ++j) {
            if (A(row, j).is_zero()) continue;
            int v = A(row, j).inf_val();
            if (best < 0 || v < bv) {
                best = static_cast<long>(j);
                bv = v;
            }
        }
        if (best < 0) continue;
        if (static_cast<size_t>(best) != piv) {
            col_swap(A, best, piv);
            col_swap(U, best, piv);
        }
        RatFunc s = RatFunc::xpow(F, -bv) / A(row, piv);
        col_scale(A, piv, s);
        col_scale(U, piv, s);
        for (size_t j = 0; j < piv; ++j) {
            if (A(row, j).is_zero()) continue;
            RatFunc f = A(row, j) / A(row, piv);
            col_axpy(A, j, f, piv);
            col_axpy(U, j, f, piv);
        }
        for (size_t l = piv + 1; l < A.c; ++l) {
            if (A(row, l).is_zero()) continue;
            // Keep only the part with t-exponent < bv.
            RatFunc rest = A(row, l) - A(row, l).inf_truncate(bv);
            if (rest.is_zero()) continue;
            RatFunc f = rest * RatFunc::xpow(F, bv);
            col_axpy(A, l, f, piv);
            col_axpy(U, l, f, piv);
        }
        --col;
    }
    return {std::move(A), std::move(U), static_cast<size_t>(col)};
}

Poly common_den(const RMat& M) {
    const GF* F = M.z.field();
    Poly d = Poly::one(F);
    for (auto& a : M.a)
        if (!a.den.is_one()) d = lcm(d, a.den);
    return d;
}

}  // namespace

HnfResult hnf_transform(const RMat& M, Ring R) {
    if (R == Ring::Inf) return hnf_inf(M);
    Poly d = common_den(M);
    if (d.is_one()) return hnf_poly(M);
    RatFunc dr(d);
    HnfResult res = hnf_poly(M.scaled(dr));
    res.H = res.H.scaled(dr.inv());
    return res;
}

RMat hnf(const RMat& M, Ring R) { return hnf_transform(M, R).basis(); }

RVec lattice_reduce(const RMat& B, const RVec& x, Ring R) {
    auto c = solve_vec(B, x);
    if (!c) throw MathError("vector outside the lattice span");
    RVec frac(c->size(), B.z);
    for (size_t i = 0; i < c->size(); ++i) {
        const RatFunc& ci = (*c)[i];
        if (ci.is_zero()) continue;
        if (R == Ring::Poly)
            frac[i] = ci - RatFunc(ci.poly_part());
        else
            frac[i] = ci.inf_truncate(0);
    }
    return B * frac;
}

bool lattice_contains(const RMat& B, const RVec& x, Ring R) {
    auto c = solve_vec(B, x);
    return c && in_ring(*c, R);
}

bool lattice_contains(const RMat& B, const RMat& X, Ring R) {
    auto c = solve(B, X);
    return c && in_ring(*c, R);
}

RMat lattice_preimage(const RMat& S, Ring R) {
    const GF* F = S.z.field();
    size_t n = S.c;
    if (R == Ring::Poly) {
        Poly d = common_den(S);
        RatFunc dr(d);
        RMat Sp = d.is_one() ? S : S.scaled(dr);
        HnfResult h = hnf_transform(Sp.transpose(), R);
        RMat G = h.basis();
        if (G.c != n) throw MathError("preimage of a rank-deficient map");
        return hnf(inverse(G.transpose()).scaled(dr), R);
    }
    (void)F;
    HnfResult h = hnf_transform(S.transpose(), R);
    RMat G = h.basis();
    if (G.c != n) throw MathError("preimage of a rank-deficient map");
    return hnf(inverse(G.transpose()), R);
}

RMat lattice_intersect(const RMat& B1, const RMat& B2, Ring R) {
    return lattice_preimage(inverse(B1).vcat(inverse(B2)), R);
}

RMat lattice_sum(const RMat& B1, const RMat& B2, Ring R) { return hnf(B1.hcat(B2), R); }

RMat lattice_kernel(const RMat& C, Ring R) {
    HnfResult h = hnf_transform(C, R);
    return h.U.sub(0, 0, h.U.r, h.zero);
}

RMat lattice_saturate(const RMat& L, const RMat& V, Ring R) {
    // Equations cutting out span(V): rows of a basis of the left kernel of V.
    RMat W = kernel(V.transpose()).transpose();
    if (W.r == 0) return L;
    RMat K = lattice_kernel(W * L, R);
    return hnf(L * K, R);
}

int col_norm(const RMat& M, size_t j) {
    int d = -1;
    for (size_t i = 0; i < M.r; ++i)
        if (!M(i, j).is_zero()) d = std::max(d, M(i, j).num.deg());
    return d;
}

int col_pivot(const RMat& M, size_t j) {
    int d = col_norm(M, j);
    int p = -1;
    for (size_t i = 0; i < M.r; ++i)
        if (!M(i, j).is_zero() && M(i, j).num.deg() == d) p = static_cast<int>(i);
    return p;
}

namespace {

int edeg(const RatFunc& a) { return a.is_zero() ? -1 : a.num.deg(); }

}  // namespace

bool is_reduced(const PolyMatrix& M) {
    const GF* F = M.z.field();
    Mat<Fe> L(M.r, M.c, Fe::zero(F));
    for (size_t j = 0; j < M.c; ++j) {
        int d = col_norm(M, j);
        if (d < 0) return false;
        for (size_t i = 0; i < M.r; ++i)
            if (edeg(M(i, j)) == d) L(i, j) = Fe(F, M(i, j).num.lc());
    }
    return rank(L) == M.c;
}

bool is_popov(const PolyMatrix& M) {
    if (!is_reduced(M)) return false;
    std::vector<int> piv(M.c), nrm(M.c);
    for (size_t j = 0; j < M.c; ++j) {
        piv[j] = col_pivot(M, j);
        nrm[j] = col_norm(M, j);
        if (M(piv[j], j).num.lc() != 1) return false;
    }
    for (size_t i = 0; i < M.c; ++i)
        for (size_t j = i + 1; j < M.c; ++j)
            if (piv[i] == piv[j]) return false;
    for (size_t j = 0; j + 1 < M.c; ++j) {
        if (nrm[j] > nrm[j + 1]) return false;
        if (nrm[j] == nrm[j + 1] && piv[j] > piv[j + 1]) return false;
    }
    for (size_t j = 0; j < M.c; ++j)
        for (size_t i = 0; i < M.c; ++i) {
            if (i == j) continue;
            if (edeg(M(piv[j], i)) >= nrm[j]) return false;
        }
    return true;
}

PopovResult weak_popov(const PolyMatrix& M0, bool normalize) {
    const GF* F = M0.z.field();
    for (auto& a : M0.a)
        if (!a.is_poly()) throw MathError("polynomial matrix expected");
    RMat M = M0;
    RMat U = RMat::identity(M.c, RatFunc::one(F));
    for (size_t j = 0; j < M.c; ++j)
        if (col_norm(M, j) < 0) throw MathError("singular");
    // Pivot cancellation until all pivot indices are distinct.
    while (true) {
        bool changed = false;
        for (size_t i = 0; i < M.c && !changed; ++i)
            for (size_t j = 0; j < M.c && !changed; ++j) {
                if (i == j) continue;
                int pi = col_pivot(M, i), pj = col_pivot(M, j);
                if (pi != pj) continue;
                int di = col_norm(M, i), dj = col_norm(M, j);
                size_t lo = di <= dj ? i : j, hi = di <= dj ? j : i;
                int dl = std::min(di, dj), dh = std::max(di, dj);
                uint32_t f = F->div(M(pi, hi).num.lc(), M(pi, lo).num.lc());
                RatFunc mult(Poly::monomial(F, f, dh - dl));
                col_axpy(M, hi, mult, lo);
                col_axpy(U, hi, mult, lo);
                if (col_norm(M, hi) < 0) throw MathError("singular");
                changed = true;
            }
        if (!changed) break;
    }
    if (!normalize) return {M, U};
    for (size_t j = 0; j < M.c; ++j) {
        int p = col_pivot(M, j);
        uint32_t li = F->inv(M(p, j).num.lc());
        if (li != 1) {
            col_scale(M, j, RatFunc::constant(F, li));
            col_scale(U, j, RatFunc::constant(F, li));
        }
    }
    // Reduce entries in pivot rows of other columns.
    size_t guard = 0;
    while (true) {
        bool changed = false;
        for (size_t j = 0; j < M.c; ++j) {
            int p = col_pivot(M, j);
            int d = col_norm(M, j);
            for (size_t i = 0; i < M.c; ++i) {
                if (i == j) continue;
                int e = edeg(M(p, i));
                if (e < d) continue;
                RatFunc mult(Poly::monomial(F, M(p, i).num.lc(), e - d));
                col_axpy(M, i, mult, j);
                col_axpy(U, i, mult, j);
                changed = true;
            }
        }
        if (!changed) break;
        if (++guard > 100000) throw MathError("Popov normalization did not terminate");
    }
    std::vector<size_t> order(M.c);
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> nrm(M.c), piv(M.c);
    for (size_t j = 0; j < M.c; ++j) {
        nrm[j] = col_norm(M, j);
        piv[j] = col_pivot(M, j);
    }
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (nrm[a] != nrm[b]) return nrm[a] < nrm[b];
        return piv[a] < piv[b];
    });
    RMat P = M.cols(order), V = U.cols(order);
    if (M.r == M.c && !is_popov(P)) throw MathError("Popov normalization failed");
    return {P, V};
}

}  // namespace vbc
