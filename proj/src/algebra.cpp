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

#include "vbc/algebra.hpp"

#include <algorithm>

namespace vbc {

FVec FiniteAlgebra::basis(size_t i) const {
    FVec v = zero();
    v[i] = Fe::one(k);
    return v;
}

FVec FiniteAlgebra::mul(const FVec& a, const FVec& b) const {
    FVec out = zero();
    for (size_t i = 0; i < dim; ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < dim; ++j) {
            if (b[j].is_zero()) continue;
            Fe s = a[i] * b[j];
            const FVec& cij = c[i][j];
            for (size_t t = 0; t < dim; ++t)
                if (!cij[t].is_zero()) out[t] += s * cij[t];
        }
    }
    return out;
}

FVec FiniteAlgebra::add(const FVec& a, const FVec& b) const {
    FVec r = a;
    for (size_t i = 0; i < dim; ++i) r[i] += b[i];
    return r;
}

FVec FiniteAlgebra::sub(const FVec& a, const FVec& b) const {
    FVec r = a;
    for (size_t i = 0; i < dim; ++i) r[i] -= b[i];
    return r;
}

FVec FiniteAlgebra::scale(const FVec& a, const Fe& s) const {
    FVec r = a;
    for (auto& x : r) x = x * s;
    return r;
}

FMat FiniteAlgebra::left(const FVec& a) const {
    FMat M(dim, dim, Fe::zero(k));
    for (size_t t = 0; t < dim; ++t) M.set_col(t, mul(a, basis(t)));
    return M;
}

FMat FiniteAlgebra::right(const FVec& a) const {
    FMat M(dim, dim, Fe::zero(k));
    for (size_t t = 0; t < dim; ++t) M.set_col(t, mul(basis(t), a));
    return M;
}

FVec FiniteAlgebra::random(Rng& rng) const {
    FVec v = zero();
    for (auto& x : v) x = Fe(k, k->random(rng));
    return v;
}

bool FiniteAlgebra::is_zero(const FVec& a) const {
    return std::all_of(a.begin(), a.end(), [](const Fe& x) { return x.is_zero(); });
}

bool FiniteAlgebra::associative() const {
    for (size_t i = 0; i < dim; ++i)
        for (size_t j = 0; j < dim; ++j)
            for (size_t l = 0; l < dim; ++l)
                if (mul(mul(basis(i), basis(j)), basis(l)) != mul(basis(i), mul(basis(j), basis(l)))) return false;
    for (size_t i = 0; i < dim; ++i)
        if (mul(one, basis(i)) != basis(i) || mul(basis(i), one) != basis(i)) return false;
    return true;
}

EMat FiniteAlgebra::to_matrix(const FVec& a) const {
    if (elems.size() != dim || dim == 0) throw MathError("algebra has no matrix basis");
    EMat M(elems[0].r, elems[0].c, elems[0].z);
    for (size_t i = 0; i < dim; ++i)
        if (!a[i].is_zero()) M = M + elems[i].scaled(Elem::from_rat(elems[0].z.M, RatFunc::constant(k, a[i].v)));
    return M;
}

namespace {

FVec flatten(const FMat& M) {
    FVec v;
    for (size_t i = 0; i < M.r; ++i)
        for (size_t j = 0; j < M.c; ++j) v.push_back(M(i, j));
    return v;
}

FMat columns(const GF* k, size_t n, const std::vector<FVec>& vs) {
    FMat M(n, vs.size(), Fe::zero(k));
    for (size_t j = 0; j < vs.size(); ++j) M.set_col(j, vs[j]);
    return M;
}

// Column basis of the span.
FMat span(const GF* k, size_t n, const std::vector<FVec>& vs) {
    if (vs.empty()) return FMat(n, 0, Fe::zero(k));
    FMat M = columns(k, n, vs);
    auto e = rref(M);
    return M.cols(e.pivots);
}

std::vector<FVec> cols_of(const FMat& M) {
    std::vector<FVec> out;
    for (size_t j = 0; j < M.c; ++j) out.push_back(M.col(j));
    return out;
}

// Coordinates of v in the column basis B (which must contain v).
std::optional<FVec> coords_in(const FMat& B, const FVec& v) { return solve_vec(B, v); }

}  // namespace

FiniteAlgebra matrix_algebra(const GF* k, const std::vector<FMat>& basis) {
    if (basis.empty()) throw MathError("empty algebra basis");
    const size_t n = basis[0].r;
    std::vector<FVec> flat;
    for (auto& b : basis) flat.push_back(flatten(b));
    FMat B = columns(k, n * n, flat);
    if (rank(B) != basis.size()) throw MathError("algebra basis is not independent");
    FiniteAlgebra A;
    A.k = k;
    A.dim = basis.size();
    A.c.assign(A.dim, std::vector<FVec>(A.dim));
    for (size_t i = 0; i < A.dim; ++i)
        for (size_t j = 0; j < A.dim; ++j) {
            auto x = coords_in(B, flatten(basis[i] * basis[j]));
            if (!x) throw MathError("matrix span is not closed under multiplication");
            A.c[i][j] = *x;
        }
    auto one = coords_in(B, flatten(FMat::identity(n, Fe::one(k))));
    if (!one) throw MathError("matrix span does not contain the identity");
    A.one = *one;
    return A;
}

// Radical by the p-power trace criterion over the prime field.
FMat radical(const FiniteAlgebra& A) {
    const GF* k = A.k;
    const uint32_t p = k->p();
    const size_t m = k->m(), n = A.dim, N = n * m;
    if (n == 0) return FMat(0, 0, Fe::zero(k));
    // F_p basis b_t z^u, index t m + u.
    auto fq_of = [&](size_t idx) {
        FVec v = A.zero();
        std::vector<uint32_t> d(m, 0);
        d[idx % m] = 1;
        v[idx / m] = Fe(k, k->from_digits(d));
        return v;
    };
    auto fp_of = [&](const FVec& v) {
        std::vector<uint32_t> out(N, 0);
        for (size_t t = 0; t < n; ++t) {
            auto d = k->digits(v[t].v);
            for (size_t u = 0; u < m && u < d.size(); ++u) out[t * m + u] = d[u];
        }
        return out;
    };
    using IMat = std::vector<std::vector<uint64_t>>;
    // Left multiplication by F_p basis elements.
    std::vector<IMat> L(N, IMat(N, std::vector<uint64_t>(N, 0)));
    std::vector<FVec> fq(N);
    for (size_t b = 0; b < N; ++b) fq[b] = fq_of(b);
    for (size_t b = 0; b < N; ++b)
        for (size_t g = 0; g < N; ++g) {
            auto col = fp_of(A.mul(fq[b], fq[g]));
            for (size_t i = 0; i < N; ++i) L[b][i][g] = col[i];
        }
    auto lmat = [&](const std::vector<uint32_t>& x) {
        IMat M(N, std::vector<uint64_t>(N, 0));
        for (size_t b = 0; b < N; ++b) {
            if (!x[b]) continue;
            for (size_t i = 0; i < N; ++i)
                for (size_t j = 0; j < N; ++j) M[i][j] = (M[i][j] + x[b] * L[b][i][j]) % p;
        }
        return M;
    };
    auto mulmod = [&](const IMat& a, const IMat& b, uint64_t mod) {
        IMat c(N, std::vector<uint64_t>(N, 0));
        for (size_t i = 0; i < N; ++i)
            for (size_t t = 0; t < N; ++t) {
                if (!a[i][t]) continue;
                for (size_t j = 0; j < N; ++j) c[i][j] = (c[i][j] + a[i][t] * b[t][j]) % mod;
            }
        return c;
    };
    auto g_val = [&](const std::vector<uint32_t>& x, unsigned i, uint64_t pi, uint64_t mod) -> uint32_t {
        IMat M = lmat(x);
        // M^(p^i) modulo p^(i+1)
        IMat R = M;
        for (unsigned s = 0; s < i; ++s) {
            IMat base = R, acc;
            bool first = true;
            for (uint32_t e = p; e; e >>= 1) {
                if (e & 1) {
                    acc = first ? base : mulmod(acc, base, mod);
                    first = false;
                }
                if (e > 1) base = mulmod(base, base, mod);
            }
            R = acc;
        }
        uint64_t tr = 0;
        for (size_t j = 0; j < N; ++j) tr = (tr + R[j][j]) % mod;
        return static_cast<uint32_t>((tr / pi) % p);
    };
    const GF* fp = GF::get(p);
    unsigned l = 0;
    for (uint64_t q = p; q <= N; q *= p) ++l;
    std::vector<std::vector<uint32_t>> I;
    for (size_t b = 0; b < N; ++b) {
        std::vector<uint32_t> e(N, 0);
        e[b] = 1;
        I.push_back(e);
    }
    uint64_t pi = 1;
    for (unsigned i = 0; i <= l && !I.empty(); ++i, pi *= p) {
        const uint64_t mod = pi * p;
        FMat G(N, I.size(), Fe::zero(fp));
        for (size_t t = 0; t < I.size(); ++t) {
            IMat Lu = lmat(I[t]);
            for (size_t j = 0; j < N; ++j) {
                std::vector<uint32_t> x(N);
                for (size_t r = 0; r < N; ++r) x[r] = static_cast<uint32_t>(Lu[r][j]);
                G(j, t) = Fe(fp, g_val(x, i, pi, mod));
            }
        }
        FMat Kr = kernel(G);
        std::vector<std::vector<uint32_t>> next;
        for (size_t c = 0; c < Kr.c; ++c) {
            std::vector<uint32_t> v(N, 0);
            for (size_t t = 0; t < I.size(); ++t) {
                if (Kr(t, c).is_zero()) continue;
                for (size_t r = 0; r < N; ++r) v[r] = (v[r] + Kr(t, c).v * I[t][r]) % p;
            }
            next.push_back(v);
        }
        I = std::move(next);
    }
    std::vector<FVec> vs;
    for (auto& v : I) {
        FVec a = A.zero();
        for (size_t t = 0; t < n; ++t) {
            std::vector<uint32_t> d(v.begin() + t * m, v.begin() + (t + 1) * m);
            a[t] = Fe(k, k->from_digits(d));
        }
        vs.push_back(a);
    }
    FMat J = span(k, n, vs);
    if (J.c * m != I.size()) throw MathError("internal: radical is not a subspace over k");
    // Two-sided ideal and nilpotent.
    std::vector<FVec> jb = cols_of(J);
    for (auto& a : jb)
        for (size_t t = 0; t < n; ++t) {
            if (J.c && (!coords_in(J, A.mul(a, A.basis(t))) || !coords_in(J, A.mul(A.basis(t), a))))
                throw MathError("internal: radical is not an ideal");
        }
    std::vector<FVec> pw = jb;
    for (size_t s = 0; s <= n && !pw.empty(); ++s) {
        std::vector<FVec> nx;
        for (auto& a : pw)
            for (auto& b : jb) nx.push_back(A.mul(a, b));
        FMat S = span(k, n, nx);
        pw = cols_of(S);
    }
    if (!pw.empty()) throw MathError("internal: radical is not nilpotent");
    return J;
}

FVec eval_poly(const FiniteAlgebra& A, const Poly& f, const FVec& a, const FVec& e) {
    FVec acc = A.zero();
    for (int i = f.deg(); i >= 0; --i) {
        acc = A.mul(acc, a);
        acc = A.add(acc, A.scale(e, Fe(A.k, f.coeff(i))));
    }
    return acc;
}

Poly minimal_polynomial(const FiniteAlgebra& A, const FVec& a, const FVec& e) {
    const GF* k = A.k;
    std::vector<FVec> pw{e};
    for (size_t d = 1; d <= A.dim + 1; ++d) {
        FVec next = A.mul(pw.back(), a);
        FMat B = columns(k, A.dim, pw);
        auto x = solve_vec(B, next);
        if (x) {
            std::vector<uint32_t> c(d + 1, 0);
            for (size_t i = 0; i < d; ++i) c[i] = k->neg((*x)[i].v);
            c[d] = 1;
            return Poly(k, c);
        }
        pw.push_back(next);
    }
    throw MathError("internal: minimal polynomial not found");
}

FVec SimpleFactor::unit(const FiniteAlgebra& A, size_t j, size_t l, size_t a) const {
    FVec t = idem[0];
    for (size_t s = 0; s < a; ++s) t = A.mul(t, theta);
    return A.mul(A.mul(col_unit[j], t), row_unit[l]);
}

bool AlgebraDecomposition::in_radical(const FVec& a) const {
    FVec q = proj * a;
    return std::all_of(q.begin(), q.end(), [](const Fe& x) { return x.is_zero(); });
}

namespace {

struct Quotient {
    FiniteAlgebra B;
    FMat lift, proj;
};

Quotient quotient(const FiniteAlgebra& A, const FMat& J) {
    const GF* k = A.k;
    const size_t n = A.dim;
    FMat aug = J.hcat(FMat::identity(n, Fe::one(k)));
    auto e = rref(aug);
    std::vector<size_t> cidx;
    for (auto pv : e.pivots)
        if (pv >= J.c) cidx.push_back(pv - J.c);
    FMat C(n, cidx.size(), Fe::zero(k));
    for (size_t t = 0; t < cidx.size(); ++t) C(cidx[t], t) = Fe::one(k);
    FMat T = J.hcat(C);
    FMat Ti = inverse(T);
    Quotient Q;
    Q.lift = C;
    Q.proj = Ti.sub(J.c, 0, C.c, n);
    FiniteAlgebra& B = Q.B;
    B.k = k;
    B.dim = C.c;
    B.c.assign(B.dim, std::vector<FVec>(B.dim));
    for (size_t i = 0; i < B.dim; ++i)
        for (size_t j = 0; j < B.dim; ++j) B.c[i][j] = Q.proj * A.mul(C.col(i), C.col(j));
    B.one = Q.proj * A.one;
    return Q;
}

FMat center(const FiniteAlgebra& B) {
    const size_t n = B.dim;
    FMat M(n * n, n, Fe::zero(B.k));
    for (size_t i = 0; i < n; ++i)
        for (size_t t = 0; t < n; ++t) {
            FVec d = B.sub(B.mul(B.basis(i), B.basis(t)), B.mul(B.basis(t), B.basis(i)));
            for (size_t s = 0; s < n; ++s) M(t * n + s, i) = d[s];
        }
    return kernel(M);
}

size_t corner_dim(const FiniteAlgebra& B, const FVec& e) {
    std::vector<FVec> vs;
    for (size_t t = 0; t < B.dim; ++t) vs.push_back(B.mul(B.mul(e, B.basis(t)), e));
    return span(B.k, B.dim, vs).c;
}

// Split e using the factorization of the minimal polynomial of z (in the corner of e).
std::vector<FVec> split_by(const FiniteAlgebra& B, const FVec& z, const FVec& e) {
    Poly mu = minimal_polynomial(B, z, e);
    auto fac = factor(mu);
    if (fac.size() < 2) return {};
    std::vector<FVec> out;
    for (auto& [f, ex] : fac) {
        Poly fe = f.pow(ex);
        Poly g = mu / fe;
        Poly P = (g * invmod(g % fe, fe)) % mu;
        out.push_back(eval_poly(B, P, z, e));
    }
    return out;
}

constexpr int kMaxAttempts = 400;

std::vector<FVec> central_idempotents(const FiniteAlgebra& B, Rng& rng) {
    FMat Z = center(B);
    std::vector<FVec> work{B.one}, done;
    while (!work.empty()) {
        FVec e = work.back();
        work.pop_back();
        std::vector<FVec> ez;
        for (size_t t = 0; t < Z.c; ++t) ez.push_back(B.mul(e, Z.col(t)));
        FMat EZ = span(B.k, B.dim, ez);
        bool finished = false;
        for (int att = 0; att < kMaxAttempts && !finished; ++att) {
            FVec z = B.zero();
            for (size_t t = 0; t < EZ.c; ++t) z = B.add(z, B.scale(EZ.col(t), Fe(B.k, B.k->random(rng))));
            auto parts = split_by(B, z, e);
            if (!parts.empty()) {
                for (auto& q : parts) work.push_back(q);
                finished = true;
            } else if (static_cast<size_t>(minimal_polynomial(B, z, e).deg()) == EZ.c) {
                done.push_back(e);
                finished = true;
            }
        }
        if (!finished) throw MathError("internal: center splitting did not converge");
    }
    return done;
}

std::vector<FVec> primitive_idempotents(const FiniteAlgebra& B, const FVec& eps, size_t d, Rng& rng) {
    std::vector<FVec> work{eps}, done;
    while (!work.empty()) {
        FVec e = work.back();
        work.pop_back();
        if (corner_dim(B, e) == d) {
            done.push_back(e);
            continue;
        }
        bool finished = false;
        for (int att = 0; att < kMaxAttempts && !finished; ++att) {
            FVec a = B.mul(B.mul(e, B.random(rng)), e);
            auto parts = split_by(B, a, e);
            if (!parts.empty()) {
                for (auto& q : parts) work.push_back(q);
                finished = true;
            }
        }
        if (!finished) throw MathError("internal: idempotent splitting did not converge");
    }
    return done;
}

// Inverse of z in the local corner algebra with identity e.
FVec corner_inverse(const FiniteAlgebra& A, const FVec& z, const FVec& e) {
    auto y = solve_vec(A.left(z), e);
    if (!y) throw MathError("internal: corner element is not invertible");
    return A.mul(A.mul(e, *y), e);
}

}  // namespace

AlgebraDecomposition wedderburn_malcev(const FiniteAlgebra& A, Rng& rng) {
    const GF* k = A.k;
    AlgebraDecomposition D;
    D.radical = radical(A);
    Quotient Q = quotient(A, D.radical);
    D.proj = Q.proj;
    const FiniteAlgebra& B = Q.B;
    auto lift = [&](const FVec& b) { return Q.lift * b; };
    auto centrals = central_idempotents(B, rng);
    // Order blocks canonically by dimension only for reproducibility of the output shape.
    struct Block {
        FVec eps;
        size_t d, n;
        std::vector<FVec> idem;
    };
    std::vector<Block> blocks;
    for (auto& eps : centrals) {
        Block b;
        b.eps = eps;
        FMat Z = center(B);
        std::vector<FVec> ez;
        for (size_t t = 0; t < Z.c; ++t) ez.push_back(B.mul(eps, Z.col(t)));
        b.d = span(k, B.dim, ez).c;
        size_t dim = corner_dim(B, eps);
        size_t nn = 1;
        while (nn * nn * b.d < dim) ++nn;
        if (nn * nn * b.d != dim) throw MathError("internal: simple block has inconsistent dimension");
        b.n = nn;
        b.idem = primitive_idempotents(B, eps, b.d, rng);
        if (b.idem.size() != nn) throw MathError("internal: wrong number of primitive idempotents");
        blocks.push_back(std::move(b));
    }
    // Lift all primitive idempotents to orthogonal idempotents of A.
    FVec f = A.one;
    size_t total = 0;
    for (auto& b : blocks) total += b.idem.size();
    size_t count = 0;
    for (auto& b : blocks) {
        SimpleFactor sf;
        sf.n = b.n;
        sf.d = b.d;
        for (auto& eb : b.idem) {
            ++count;
            FVec x;
            if (count == total) {
                x = f;
            } else {
                x = A.mul(A.mul(f, lift(eb)), f);
                for (int it = 0; it < 64; ++it) {
                    FVec x2 = A.mul(x, x);
                    if (x2 == x) break;
                    x = A.sub(A.scale(x2, Fe(k, k->from_int(3))), A.scale(A.mul(x2, x), Fe(k, k->from_int(2))));
                }
                if (A.mul(x, x) != x) throw MathError("internal: idempotent lifting did not converge");
            }
            sf.idem.push_back(x);
            f = A.sub(f, x);
        }
        D.factors.push_back(std::move(sf));
    }
    if (!A.is_zero(f)) throw MathError("internal: lifted idempotents do not sum to one");
    // Matrix units and field generators.
    for (auto& sf : D.factors) {
        const FVec& E1 = sf.idem[0];
        sf.col_unit.assign(sf.n, E1);
        sf.row_unit.assign(sf.n, E1);
        for (size_t j = 1; j < sf.n; ++j) {
            const FVec& Ej = sf.idem[j];
            FVec u;
            bool found = false;
            for (size_t t = 0; t < A.dim && !found; ++t) {
                u = A.mul(A.mul(Ej, A.basis(t)), E1);
                found = !D.in_radical(u);
            }
            if (!found) throw MathError("internal: no matrix unit between equivalent idempotents");
            std::vector<FVec> cand;
            FMat sys(D.proj.r, A.dim, Fe::zero(k));
            for (size_t t = 0; t < A.dim; ++t) {
                cand.push_back(A.mul(A.mul(E1, A.basis(t)), Ej));
                sys.set_col(t, D.proj * A.mul(cand.back(), u));
            }
            auto y = solve_vec(sys, D.proj * E1);
            if (!y) throw MathError("internal: matrix unit has no inverse modulo the radical");
            FVec w = A.zero();
            for (size_t t = 0; t < A.dim; ++t)
                if (!(*y)[t].is_zero()) w = A.add(w, A.scale(cand[t], (*y)[t]));
            FVec wu = A.mul(w, u);
            FVec v = A.mul(corner_inverse(A, wu, E1), w);
            if (A.mul(v, u) != E1 || A.mul(u, v) != Ej) throw MathError("internal: matrix units do not invert");
            sf.col_unit[j] = u;
            sf.row_unit[j] = v;
        }
        if (sf.d == 1) {
            sf.theta = E1;
            sf.minpoly = Poly(k, {k->neg(1), 1});
            continue;
        }
        FVec pE1 = D.proj * E1;
        bool found = false;
        for (int att = 0; att < kMaxAttempts && !found; ++att) {
            FVec x = A.mul(A.mul(E1, A.random(rng)), E1);
            Poly mu = minimal_polynomial(B, D.proj * x, pE1);
            if (static_cast<size_t>(mu.deg()) != sf.d) continue;
            // Newton iteration lifts the root modulo the radical.
            for (int it = 0; it < 64; ++it) {
                FVec fx = eval_poly(A, mu, x, E1);
                if (A.is_zero(fx)) {
                    found = true;
                    break;
                }
                FVec dfx = eval_poly(A, mu.derivative(), x, E1);
                x = A.sub(x, A.mul(fx, corner_inverse(A, dfx, E1)));
            }
            if (!found) throw MathError("internal: field generator lifting did not converge");
            sf.theta = x;
            sf.minpoly = mu;
        }
        if (!found) throw MathError("internal: no generator of the center field found");
    }
    std::vector<FVec> comp;
    for (auto& sf : D.factors)
        for (size_t j = 0; j < sf.n; ++j)
            for (size_t l = 0; l < sf.n; ++l)
                for (size_t a = 0; a < sf.d; ++a) comp.push_back(sf.unit(A, j, l, a));
    D.complement = columns(k, A.dim, comp);
    if (rank(D.radical.hcat(D.complement)) != A.dim) throw MathError("internal: complement and radical do not span");
    for (auto& a : comp)
        for (auto& b : comp)
            if (!coords_in(D.complement, A.mul(a, b))) throw MathError("internal: complement is not closed");
    return D;
}

std::vector<std::vector<Poly>> factor_matrix(const FiniteAlgebra& A, const AlgebraDecomposition& D, size_t i,
                                             const FVec& a) {
    const SimpleFactor& sf = D.factors.at(i);
    const GF* k = A.k;
    std::vector<FVec> pw;
    FVec t = sf.idem[0];
    for (size_t s = 0; s < sf.d; ++s) {
        pw.push_back(D.proj * t);
        t = A.mul(t, sf.theta);
    }
    FMat P = columns(k, D.proj.r, pw);
    std::vector<std::vector<Poly>> out(sf.n, std::vector<Poly>(sf.n));
    for (size_t j = 0; j < sf.n; ++j)
        for (size_t l = 0; l < sf.n; ++l) {
            FVec x = A.mul(A.mul(sf.row_unit[j], a), sf.col_unit[l]);
            auto c = solve_vec(P, D.proj * x);
            if (!c) throw MathError("internal: corner element outside the center field");
            std::vector<uint32_t> cc;
            for (auto& v : *c) cc.push_back(v.v);
            out[j][l] = Poly(k, cc);
        }
    return out;
}

}  // namespace vbc
