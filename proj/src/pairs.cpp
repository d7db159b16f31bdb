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


#include "vbc/pairs.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace vbc {

namespace {

EMat elem_identity(const FunctionField& K, size_t r) { return EMat::identity(r, K.one()); }

std::vector<EVec> matrix_columns(const EMat& M) {
    std::vector<EVec> out;
    for (size_t j = 0; j < M.c; ++j) out.push_back(M.col(j));
    return out;
}

EVec scale(const EVec& v, const Elem& s) {
    EVec r = v;
    for (auto& x : r)
        if (!x.is_zero()) x = x * s;
    return r;
}

bool lattice_has_all(const RMat& H, const RMat& X, Ring R) { return X.c == 0 || lattice_contains(H, X, R); }

}  // namespace

MatrixPair make_pair(const FieldPtr& K, std::vector<Ideal> a, EMat gfi, EMat ginf) {
    const size_t r = a.size();
    if (gfi.r != r || gfi.c != r || ginf.r != r || ginf.c != r) throw MathError("matrix pair shape mismatch");
    if (r > 0 && (det(gfi).is_zero() || det(ginf).is_zero())) throw MathError("matrix pair not invertible");
    for (auto& I : a)
        if (I.O != &K->order(OrderKind::Fi)) throw MathError("coefficient ideal over the wrong order");
    return MatrixPair{K, std::move(a), std::move(gfi), std::move(ginf)};
}

MatrixPair trivial_pair(const FieldPtr& K, size_t r) {
    return MatrixPair{K, std::vector<Ideal>(r, Ideal::unit(K->order(OrderKind::Fi))), elem_identity(*K, r),
                      elem_identity(*K, r)};
}

MatrixPair rank1_pair(const FieldPtr& K, const Ideal& a, const Elem& gfi, const Elem& ginf) {
    EMat f(1, 1, K->zero()), i(1, 1, K->zero());
    f(0, 0) = gfi;
    i(0, 0) = ginf;
    return make_pair(K, {a}, f, i);
}

MatrixPair det_pair(const MatrixPair& g) {
    Ideal p = Ideal::unit(g.K->order(OrderKind::Fi));
    for (auto& I : g.a) p = p * I;
    return rank1_pair(g.K, p, det(g.gfi), det(g.ginf));
}

int degree(const MatrixPair& g) {
    if (g.rank() == 0) return 0;
    int d = 0;
    for (auto& I : g.a) d += I.deg();
    d += det(g.gfi).norm().deg();
    return -d + det(g.ginf).norm().deg();
}

MatrixPair tensor(const MatrixPair& g, const MatrixPair& h) {
    std::vector<Ideal> a;
    for (auto& x : g.a)
        for (auto& y : h.a) a.push_back(x * y);
    return MatrixPair{g.K, a, g.gfi.kron(h.gfi), g.ginf.kron(h.ginf)};
}

MatrixPair dsum(const MatrixPair& g, const MatrixPair& h) {
    std::vector<Ideal> a = g.a;
    a.insert(a.end(), h.a.begin(), h.a.end());
    if (g.rank() == 0) return h;
    if (h.rank() == 0) return g;
    return MatrixPair{g.K, a, g.gfi.block_diag(h.gfi), g.ginf.block_diag(h.ginf)};
}

MatrixPair dual(const MatrixPair& g) {
    std::vector<Ideal> a;
    for (auto& x : g.a) a.push_back(x.inv());
    return MatrixPair{g.K, a, inverse(g.gfi.transpose()), inverse(g.ginf.transpose())};
}

MatrixPair hom_bundle(const MatrixPair& g, const MatrixPair& h) { return tensor(dual(g), h); }

EMat hom_to_matrix(const EVec& v, size_t rows, size_t cols) {
    if (v.size() != rows * cols) throw MathError("hom vector size mismatch");
    EMat M(rows, cols, v.front().zero_like());
    for (size_t i = 0; i < cols; ++i)
        for (size_t j = 0; j < rows; ++j) M(j, i) = v[i * rows + j];
    return M;
}

EVec matrix_to_hom(const EMat& M) {
    EVec v(M.r * M.c, M.z);
    for (size_t i = 0; i < M.c; ++i)
        for (size_t j = 0; j < M.r; ++j) v[i * M.r + j] = M(j, i);
    return v;
}

MatrixPair transform(const MatrixPair& g, const EMat& T) { return MatrixPair{g.K, g.a, T * g.gfi, T * g.ginf}; }

MatrixPair line_bundle(const FieldPtr& K, const Divisor& D) {
    const Order& A = K->order(OrderKind::Fi);
    Ideal I = Ideal::unit(A);
    std::vector<std::pair<PlacePtr, int>> vs;
    bool inf_trivial = true;
    for (auto& [P, c] : D.terms) {
        if (c == 0) continue;
        if (!P->infinite) I = I * Ideal::of_place(A, *P).pow(-c);
    }
    for (auto& Q : K->infinite_places()) {
        int c = D.coeff(Q);
        if (c != 0) inf_trivial = false;
        vs.push_back({Q, -c});
    }
    Elem gi = inf_trivial ? K->one() : K->element_with_valuations(vs);
    return rank1_pair(K, I, K->one(), gi);
}

RMat rest_fi(const MatrixPair& g) {
    if (g.rank() == 0) return RMat(0, 0, RatFunc(g.K->k()));
    return pm_restrict(g.fi_pm());
}

RMat rest_inf(const MatrixPair& g) {
    if (g.rank() == 0) return RMat(0, 0, RatFunc(g.K->k()));
    return order_span(g.K->order(OrderKind::Inf), g.ginf);
}

FieldPtr rational_field(const GF* k) {
    static std::mutex mu;
    static std::map<const GF*, FieldPtr> cache;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    FieldPtr K = FunctionField::rational(k);
    cache[k] = K;
    return K;
}

namespace {
EMat to_rational(const FieldPtr& K0, const RMat& R) {
    EMat M(R.r, R.c, K0->zero());
    for (size_t i = 0; i < R.r; ++i)
        for (size_t j = 0; j < R.c; ++j) M(i, j) = K0->from_rat(R(i, j));
    return M;
}
}  // namespace

MatrixPair restrict_to_base(const MatrixPair& g) {
    FieldPtr K0 = rational_field(g.K->k());
    RMat Gf = rest_fi(g), Gi = rest_inf(g);
    std::vector<Ideal> a(Gf.c, Ideal::unit(K0->order(OrderKind::Fi)));
    return make_pair(K0, a, to_rational(K0, Gf), to_rational(K0, Gi));
}

MatrixPair conorm_from_base(const MatrixPair& g0, const FieldPtr& K) {
    if (g0.K->n() != 1) throw MathError("conorm source must be the rational function field");
    const Order& A = K->order(OrderKind::Fi);
    std::vector<Ideal> a;
    for (auto& I : g0.a) a.push_back(Ideal::principal(A, K->from_rat(I.H(0, 0))));
    auto lift = [&](const EMat& M) {
        EMat out(M.r, M.c, K->zero());
        for (size_t i = 0; i < M.r; ++i)
            for (size_t j = 0; j < M.c; ++j) out(i, j) = K->from_rat(M(i, j).c[0]);
        return out;
    };
    return make_pair(K, a, lift(g0.gfi), lift(g0.ginf));
}

bool fi_contains(const MatrixPair& g, const EVec& v) {
    return lattice_contains(hnf(rest_fi(g), Ring::Poly), to_power_coords(v), Ring::Poly);
}

bool inf_contains(const MatrixPair& g, const EVec& v) {
    return lattice_contains(hnf(rest_inf(g), Ring::Inf), to_power_coords(v), Ring::Inf);
}

bool global_section(const MatrixPair& g, const EVec& v) { return fi_contains(g, v) && inf_contains(g, v); }

bool equals(const MatrixPair& g, const MatrixPair& h) {
    if (g.rank() != h.rank()) return false;
    if (g.rank() == 0) return true;
    return hnf(rest_fi(g), Ring::Poly) == hnf(rest_fi(h), Ring::Poly) &&
           hnf(rest_inf(g), Ring::Inf) == hnf(rest_inf(h), Ring::Inf);
}

MatrixPair canonical(const MatrixPair& g) {
    PseudoMatrix h = pseudo_hnf(g.fi_pm());
    return MatrixPair{g.K, h.a, h.M, g.ginf};
}

bool is_hom(const MatrixPair& src, const MatrixPair& tgt, const EMat& M) {
    if (M.r != tgt.rank() || M.c != src.rank()) return false;
    if (src.rank() == 0 || tgt.rank() == 0) return true;
    const FunctionField& K = *src.K;
    auto image_of = [&](const RMat& R) {
        RMat X(tgt.rank() * K.n(), R.c, RatFunc(K.k()));
        for (size_t j = 0; j < R.c; ++j) X.set_col(j, to_power_coords(M * from_power_coords(K, R.col(j))));
        return X;
    };
    return lattice_has_all(hnf(rest_fi(tgt), Ring::Poly), image_of(rest_fi(src)), Ring::Poly) &&
           lattice_has_all(hnf(rest_inf(tgt), Ring::Inf), image_of(rest_inf(src)), Ring::Inf);
}

bool is_isomorphism(const MatrixPair& src, const MatrixPair& tgt, const EMat& M) {
    if (M.r != M.c || M.r != src.rank() || tgt.rank() != src.rank()) return false;
    auto Minv = try_inverse(M);
    if (!Minv) return false;
    return is_hom(src, tgt, M) && is_hom(tgt, src, *Minv);
}

SubPair dim_shift(const FieldPtr& K, const PseudoMatrix& fi, const EMat& inf) {
    const size_t rho = fi.cols();
    if (inf.c != rho) throw MathError("finite and infinite parts have different ranks");
    if (rho == 0) return SubPair{MatrixPair{K, {}, EMat(0, 0, K->zero()), EMat(0, 0, K->zero())}, inf};
    auto G = solve(inf, fi.M);
    if (!G) throw MathError("finite and infinite parts span different spaces");
    return SubPair{make_pair(K, fi.a, *G, elem_identity(*K, rho)), inf};
}

SubPair image(const MatrixPair& src, const EMat& M) {
    const FunctionField& K = *src.K;
    PseudoMatrix pm = pseudo_hnf(PseudoMatrix{src.a, M * src.gfi});
    if (pm.cols() == 0) throw MathError("rank 0");
    EMat B = inf_basis_from_generators(K, matrix_columns(M * src.ginf), M.r);
    return dim_shift(src.K, pm, B);
}

SubPair kernel(const MatrixPair& src, const EMat& M) {
    const FunctionField& K = *src.K;
    const size_t r = src.rank();
    PseudoMatrix pk = pseudo_kernel(PseudoMatrix{src.a, M * src.gfi});
    if (pk.cols() == 0) return dim_shift(src.K, PseudoMatrix{{}, EMat(r, 0, K.zero())}, EMat(r, 0, K.zero()));
    PseudoMatrix fi{pk.a, src.gfi * pk.M};
    EMat W = kernel(M * src.ginf);
    const Order& Ai = K.order(OrderKind::Inf);
    RMat L = order_span(Ai, elem_identity(K, r));
    RMat Wb = lattice_saturate(L, order_span(Ai, W), Ring::Inf);
    std::vector<EVec> gens;
    for (size_t j = 0; j < Wb.c; ++j) gens.push_back(from_power_coords(K, Wb.col(j)));
    EMat B = inf_basis_from_generators(K, gens, r);
    return dim_shift(src.K, fi, src.ginf * B);
}

MatrixPair rebase(const SubPair& s, const EMat& new_emb) {
    auto T = solve(new_emb, s.emb);
    if (!T) throw MathError("embeddings span different spaces");
    return transform(s.pair, *T);
}

uint32_t ConstantExtension::map(uint32_t a) const {
    const GF* k = K->k();
    const GF* kp = Kp->k();
    if (k->m() == 1) return a;
    auto d = k->digits(a);
    uint32_t acc = 0, pw = 1;
    for (size_t i = 0; i < d.size(); ++i) {
        acc = kp->add(acc, kp->mul(kp->from_int(d[i]), pw));
        pw = kp->mul(pw, rho);
    }
    return acc;
}

Poly ConstantExtension::map(const Poly& f) const {
    std::vector<uint32_t> c;
    for (auto x : f.c) c.push_back(map(x));
    return Poly(Kp->k(), c);
}

RatFunc ConstantExtension::map(const RatFunc& f) const { return RatFunc(map(f.num), map(f.den)); }

Elem ConstantExtension::map(const Elem& a) const {
    Elem b = Kp->zero();
    for (size_t i = 0; i < a.c.size(); ++i) b.c[i] = map(a.c[i]);
    return b;
}

Elem ConstantExtension::theta_pow(unsigned s) const {
    return Kp->from_rat(RatFunc::constant(Kp->k(), Kp->k()->pow(theta, s)));
}

std::vector<Elem> ConstantExtension::split(const Elem& a) const {
    const GF* k = K->k();
    const GF* kp = Kp->k();
    const unsigned m = k->m();
    const uint64_t q = k->q();
    std::vector<Elem> out(e, K->zero());
    auto coeffs = [&](uint32_t v) {
        auto d = kp->digits(v);
        d.resize(m * e, 0);
        std::vector<Fe> dv;
        for (auto x : d) dv.push_back(Fe(decomp.z.F, x));
        std::vector<Fe> c = decomp * dv;
        std::vector<uint32_t> res(e);
        for (unsigned s = 0; s < e; ++s) {
            std::vector<uint32_t> dig(m);
            for (unsigned i = 0; i < m; ++i) dig[i] = c[s * m + i].v;
            res[s] = k->from_digits(dig);
        }
        return res;
    };
    for (size_t t = 0; t < a.c.size(); ++t) {
        const RatFunc& r = a.c[t];
        if (r.is_zero()) continue;
        Poly num = r.num, den = r.den;
        // Multiply by the conjugates of the denominator so that it becomes defined over k.
        for (unsigned i = 1; i < e; ++i) {
            std::vector<uint32_t> cc;
            uint64_t ex = 1;
            for (unsigned j = 0; j < i; ++j) ex *= q;
            for (auto x : r.den.c) cc.push_back(kp->pow(x, ex));
            Poly conj(kp, cc);
            num = num * conj;
            den = den * conj;
        }
        std::vector<uint32_t> dk;
        for (auto x : den.c) {
            auto cs = coeffs(x);
            for (unsigned s = 1; s < e; ++s)
                if (cs[s] != 0) throw MathError("internal: norm of denominator not over the base field");
            dk.push_back(cs[0]);
        }
        Poly D(k, dk);
        std::vector<std::vector<uint32_t>> nk(e, std::vector<uint32_t>(num.c.size(), 0));
        for (size_t j = 0; j < num.c.size(); ++j) {
            auto cs = coeffs(num.c[j]);
            for (unsigned s = 0; s < e; ++s) nk[s][j] = cs[s];
        }
        for (unsigned s = 0; s < e; ++s) out[s].c[t] = RatFunc(Poly(k, nk[s]), D);
    }
    return out;
}

ConstantExtension constant_extension(const FieldPtr& K, unsigned e) {
    if (e == 0) throw MathError("extension degree must be positive");
    const GF* k = K->k();
    const unsigned m = k->m();
    const GF* kp = GF::get(k->p(), m * e);
    const GF* Fp = GF::get(k->p());
    ConstantExtension E;
    E.K = K;
    E.e = e;
    E.rho = 1;
    if (m > 1) {
        std::vector<uint32_t> mc;
        for (auto x : k->modulus()) mc.push_back(x);
        auto rs = roots(Poly(kp, mc));
        if (rs.empty()) throw MathError("internal: no embedding of the constant field");
        E.rho = *std::min_element(rs.begin(), rs.end());
    }
    E.theta = m * e > 1 ? kp->gen() : 1;
    Mat<Fe> B(m * e, m * e, Fe::zero(Fp));
    for (unsigned s = 0; s < e; ++s)
        for (unsigned i = 0; i < m; ++i) {
            uint32_t v = kp->mul(kp->pow(E.theta, s), kp->pow(E.rho, i));
            auto d = kp->digits(v);
            d.resize(m * e, 0);
            for (unsigned t = 0; t < m * e; ++t) B(t, s * m + i) = Fe(Fp, d[t]);
        }
    auto Binv = try_inverse(B);
    if (!Binv) throw MathError("internal: theta powers are not a basis");
    E.decomp = *Binv;
    // Same defining polynomial and integral bases over k'.
    auto mapr = [&](const RatFunc& f) {
        auto mp = [&](const Poly& p) {
            std::vector<uint32_t> c;
            for (auto x : p.c) {
                if (m == 1) {
                    c.push_back(x);
                    continue;
                }
                auto d = k->digits(x);
                uint32_t acc = 0, pw = 1;
                for (auto di : d) {
                    acc = kp->add(acc, kp->mul(kp->from_int(di), pw));
                    pw = kp->mul(pw, E.rho);
                }
                c.push_back(acc);
            }
            return Poly(kp, c);
        };
        return RatFunc(mp(f.num), mp(f.den));
    };
    std::vector<RatFunc> chi;
    for (auto& c : K->fm()->chi) chi.push_back(mapr(c));
    auto mapm = [&](const RMat& M) {
        RMat out(M.r, M.c, RatFunc(kp));
        for (size_t i = 0; i < M.r; ++i)
            for (size_t j = 0; j < M.c; ++j) out(i, j) = mapr(M(i, j));
        return out;
    };
    std::optional<RMat> bfi, binf;
    if (!K->fm()->power_basis) bfi = mapm(K->fm()->B);
    if (!K->im()->power_basis) binf = mapm(K->im()->B);
    E.Kp = FunctionField::make(kp, chi, bfi, binf);
    return E;
}

MatrixPair conorm(const ConstantExtension& E, const MatrixPair& g) {
    const Order& Ap = E.Kp->order(OrderKind::Fi);
    std::vector<Ideal> a;
    for (auto& I : g.a) {
        std::vector<Elem> gens;
        for (auto& b : I.basis_elems()) gens.push_back(E.map(b));
        a.push_back(Ideal::from_generators(Ap, gens));
    }
    auto mapm = [&](const EMat& M) {
        EMat out(M.r, M.c, E.Kp->zero());
        for (size_t i = 0; i < M.r; ++i)
            for (size_t j = 0; j < M.c; ++j) out(i, j) = E.map(M(i, j));
        return out;
    };
    return make_pair(E.Kp, a, mapm(g.gfi), mapm(g.ginf));
}

MatrixPair trace_down(const ConstantExtension& E, const MatrixPair& gp) {
    const FunctionField& K = *E.K;
    const size_t r = gp.rank(), e = E.e;
    auto down = [&](const EVec& v) {
        EVec out(r * e, K.zero());
        for (size_t i = 0; i < r; ++i) {
            auto parts = E.split(v[i]);
            for (size_t s = 0; s < e; ++s) out[i * e + s] = parts[s];
        }
        return out;
    };
    std::vector<EVec> gf, gi;
    for (size_t j = 0; j < r; ++j) {
        EVec cf = gp.gfi.col(j), ci = gp.ginf.col(j);
        for (unsigned s = 0; s < e; ++s) {
            Elem th = E.theta_pow(s);
            for (auto& h : gp.a[j].basis_elems()) gf.push_back(down(scale(cf, th * h)));
            gi.push_back(down(scale(ci, th)));
        }
    }
    PseudoMatrix pm = pm_from_generators(K.order(OrderKind::Fi), gf, r * e);
    EMat B = inf_basis_from_generators(K, gi, r * e);
    if (pm.cols() != r * e || B.c != r * e) throw MathError("internal: trace has the wrong rank");
    return make_pair(E.K, pm.a, pm.M, B);
}

std::string pair_str(const MatrixPair& g) {
    std::ostringstream os;
    const FunctionField& K = *g.K;
    os << "ideals:";
    for (auto& I : g.a) os << " " << I.str();
    auto mat = [&](const EMat& M) {
        std::ostringstream s;
        s << "[";
        for (size_t i = 0; i < M.r; ++i) {
            s << (i ? "; " : "");
            for (size_t j = 0; j < M.c; ++j) s << (j ? ", " : "") << K.elem_str(M(i, j));
        }
        return s.str() + "]";
    };
    os << "\ng_fi: " << mat(g.gfi) << "\ng_inf: " << mat(g.ginf);
    return os.str();
}

}  // namespace vbc
