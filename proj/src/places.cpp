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

#include <algorithm>
#include <sstream>

#include "vbc/function_field.hpp"

namespace vbc {

namespace {

/** The finite algebra C = A/pA with basis x^i omega_a (index a*d + i). */
struct ResAlg {
    const Model* m;
    Poly p;
    const GF* k;
    int n, d, D;

    ResAlg(const Model* model, const Poly& prime) : m(model), p(prime), k(model->k) {
        n = m->n;
        d = p.deg();
        D = n * d;
    }
    std::vector<Fe> toC(const RVec& w) const {
        std::vector<Fe> v(D, Fe::zero(k));
        for (int a = 0; a < n; ++a) {
            Poly r = rat_mod(w[a], p);
            for (int i = 0; i < d; ++i) v[a * d + i] = Fe(k, r.coeff(i));
        }
        return v;
    }
    RVec fromC(const std::vector<Fe>& v) const {
        RVec w(n, RatFunc(k));
        for (int a = 0; a < n; ++a) {
            std::vector<uint32_t> c(d);
            for (int i = 0; i < d; ++i) c[i] = v[a * d + i].v;
            w[a] = RatFunc(Poly(k, c));
        }
        return w;
    }
    std::vector<Fe> mul(const std::vector<Fe>& a, const std::vector<Fe>& b) const {
        return toC(m->omega_mulmod(fromC(a), fromC(b), p));
    }
    std::vector<Fe> pow(std::vector<Fe> b, uint64_t e) const {
        std::vector<Fe> r = one();
        while (e) {
            if (e & 1) r = mul(r, b);
            e >>= 1;
            if (e) b = mul(b, b);
        }
        return r;
    }
    std::vector<Fe> one() const { return toC(m->one_omega); }
    std::vector<Fe> unit(int j) const {
        std::vector<Fe> v(D, Fe::zero(k));
        v[j] = Fe::one(k);
        return v;
    }
    Mat<Fe> frobenius() const {
        Mat<Fe> F(D, D, Fe::zero(k));
        for (int j = 0; j < D; ++j) F.set_col(j, pow(unit(j), k->q()));
        return F;
    }
    // Basis (columns) of the nilradical.
    Mat<Fe> radical(const Mat<Fe>& F) const {
        int t = 1;
        uint64_t qt = k->q();
        while (qt < (uint64_t)D) {
            qt *= k->q();
            ++t;
        }
        Mat<Fe> Ft = F;
        for (int i = 1; i < t; ++i) Ft = Ft * F;
        return kernel(Ft);
    }
};

std::vector<Fe> vsub(std::vector<Fe> a, const std::vector<Fe>& b) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
    return a;
}

std::vector<Fe> vscale(std::vector<Fe> a, const Fe& s) {
    for (auto& x : a) x *= s;
    return a;
}

Mat<Fe> cols_of(const std::vector<std::vector<Fe>>& vs, size_t D, const GF* k) {
    Mat<Fe> M(D, vs.size(), Fe::zero(k));
    for (size_t j = 0; j < vs.size(); ++j) M.set_col(j, vs[j]);
    return M;
}

// Rows spanning the annihilator of the column space of J.
Mat<Fe> annihilator(const Mat<Fe>& J, size_t D, const GF* k) {
    if (J.c == 0) return Mat<Fe>::identity(D, Fe::one(k));
    return kernel(J.transpose()).transpose();
}

RatFunc trace_form_det(const Model& m) {
    RMat T(m.n, m.n, RatFunc(m.k));
    for (int a = 0; a < m.n; ++a)
        for (int b = 0; b < m.n; ++b) T(a, b) = m.trace_power(m.from_omega(m.omega_prod[a][b]));
    return det(T);
}

std::string mat_key(const RMat& M) {
    std::ostringstream s;
    for (size_t j = 0; j < M.c; ++j)
        for (size_t i = 0; i < M.r; ++i) {
            const RatFunc& e = M(i, j);
            s << e.num.deg() << ':';
            for (int t = e.num.deg(); t >= 0; --t) s << e.num.coeff(t) << ',';
            s << ';';
        }
    return s.str();
}

}  // namespace

bool Place::operator<(const Place& o) const {
    if (infinite != o.infinite) return !infinite;
    if (prime != o.prime) return prime < o.prime;
    return index < o.index;
}

std::shared_ptr<FunctionField> FunctionField::make(const GF* k, std::vector<RatFunc> chi, std::optional<RMat> basis_fi,
                                                   std::optional<RMat> basis_inf) {
    if (chi.size() < 2) throw MathError("minimal polynomial must have degree at least 1");
    if (!chi.back().is_one()) throw MathError("minimal polynomial must be monic");
    std::shared_ptr<FunctionField> K(new FunctionField());
    K->k_ = k;
    K->fi.k = k;
    K->fi.n = static_cast<int>(chi.size()) - 1;
    K->fi.chi = std::move(chi);
    K->setup(std::move(basis_fi), std::move(basis_inf));
    return K;
}

std::shared_ptr<FunctionField> FunctionField::rational(const GF* k) {
    return make(k, {RatFunc(-Poly::x(k)), RatFunc::one(k)});
}

void FunctionField::setup(std::optional<RMat> bfi, std::optional<RMat> binf) {
    const int n = fi.n;
    const GF* k = k_;
    fi.B = bfi ? *bfi : RMat::identity(n, RatFunc::one(k));
    fi.ypow.clear();
    Model probe = fi;
    probe.B = RMat::identity(n, RatFunc::one(k));
    probe.init();
    {
        RMat T(n, n, RatFunc(k));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                RVec ya(n, RatFunc(k)), yb(n, RatFunc(k));
                ya[a] = RatFunc::one(k);
                yb[b] = RatFunc::one(k);
                T(a, b) = probe.trace_power(probe.mul_power(ya, yb));
            }
        if (det(T).is_zero()) throw MathError("minimal polynomial is not separable");
    }
    // Shift for the model at infinity: Y = y / x^c integral over k[1/x].
    int c = 0;
    for (int i = 0; i < n; ++i) {
        if (fi.chi[i].is_zero()) continue;
        int dg = fi.chi[i].deg();
        int need = dg <= 0 ? 0 : (dg + (n - i) - 1) / (n - i);
        c = std::max(c, need);
    }
    c_ = c;
    inf.k = k;
    inf.n = n;
    inf.chi.assign(n + 1, RatFunc(k));
    inf.chi[n] = RatFunc::one(k);
    for (int i = 0; i < n; ++i)
        if (!fi.chi[i].is_zero()) inf.chi[i] = fi.chi[i].invert_var() * RatFunc::xpow(k, c * (n - i));
    inf.B = binf ? *binf : RMat::identity(n, RatFunc::one(k));
    for (const Model* m : {&fi, &inf}) {
        const RMat& B = m->B;
        if (B.r != (size_t)n || B.c != (size_t)n || det(B).is_zero()) throw MathError("integral basis must be an invertible n x n matrix");
    }
    fi.init();
    inf.init();
    for (const Model* m : {&fi, &inf}) {
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                if (!in_ring(m->omega_prod[a][b], Ring::Poly)) throw MathError("integral basis is not closed under multiplication");
        if (!in_ring(m->one_omega, Ring::Poly)) throw MathError("integral basis does not contain 1");
        for (int i = 0; i < n; ++i)
            if (!m->chi[i].is_poly()) throw MathError("minimal polynomial coefficients must be polynomials in x");
    }
    // Maximality at the primes where the discriminant is not squarefree.
    RatFunc dfi = trace_form_det(fi);
    for (auto& [pp, mult] : factor(dfi.num))
        if (mult >= 2) check_maximal(fi, pp);
    RatFunc dinf = trace_form_det(inf);
    if (dinf.val(Poly::x(k)) >= 2) check_maximal(inf, Poly::x(k));
}

void FunctionField::check_maximal(const Model& m, const Poly& p) const {
    ResAlg C(&m, p);
    Mat<Fe> J = C.radical(C.frobenius());
    const int n = m.n;
    RMat gens(n, n + J.c, RatFunc(k_));
    for (int a = 0; a < n; ++a) gens(a, a) = RatFunc(p);
    for (size_t j = 0; j < J.c; ++j) gens.set_col(n + j, C.fromC(J.col(j)));
    RMat I = hnf(gens, Ring::Poly);
    RMat Iinv = inverse(I);
    RMat S(n * n, n, RatFunc(k_));
    for (int j = 0; j < n; ++j) S.put(j * n, 0, Iinv * m.omega_mul_matrix(I.col(j)));
    RMat O = lattice_preimage(S, Ring::Poly);
    RatFunc dt = det(O);
    if (dt.val(p) != 0) throw MathError("equation order not maximal; supply integral basis");
}

Elem FunctionField::x() const { return Elem::from_rat(&fi, RatFunc::x(k_)); }

Elem FunctionField::y() const {
    Elem e = zero();
    if (n() == 1) {
        e.c[0] = -fi.chi[0];
        return e;
    }
    e.c[1] = RatFunc::one(k_);
    return e;
}

Elem FunctionField::to_model(const Elem& a, const Model* m) const {
    if (m == &fi) return a;
    Elem r = Elem::zero(&inf);
    for (int i = 0; i < n(); ++i)
        if (!a.c[i].is_zero()) r.c[i] = a.c[i].invert_var() * RatFunc::xpow(k_, -c_ * i);
    return r;
}

Elem FunctionField::from_model(const Elem& a) const {
    if (a.M == &fi) return a;
    Elem r = zero();
    for (int i = 0; i < n(); ++i)
        if (!a.c[i].is_zero()) r.c[i] = a.c[i].invert_var() * RatFunc::xpow(k_, -c_ * i);
    return r;
}

std::vector<Elem> FunctionField::fi_basis() const {
    std::vector<Elem> out;
    for (int t = 0; t < n(); ++t) out.push_back(Elem(&fi, fi.B.col(t)));
    return out;
}

std::vector<Elem> FunctionField::inf_basis() const {
    std::vector<Elem> out;
    for (int t = 0; t < n(); ++t) out.push_back(from_model(Elem(&inf, inf.B.col(t))));
    return out;
}

std::vector<PlacePtr> FunctionField::decompose(const Poly& p0) const {
    if (p0.deg() < 1) throw MathError("prime must have positive degree");
    Poly p = p0.monic();
    if (!is_irreducible(p)) throw MathError("polynomial is reducible");
    {
        std::lock_guard<std::mutex> g(mu_);
        auto it = cache_.find(p.c);
        if (it != cache_.end()) return it->second;
    }
    auto res = decompose_model(&fi, p, false);
    std::lock_guard<std::mutex> g(mu_);
    cache_.emplace(p.c, res);
    return cache_[p.c];
}

std::vector<PlacePtr> FunctionField::infinite_places() const {
    {
        std::lock_guard<std::mutex> g(mu_);
        if (inf_done_) return inf_cache_;
    }
    auto res = decompose_model(&inf, Poly::x(k_), true);
    std::lock_guard<std::mutex> g(mu_);
    if (!inf_done_) {
        inf_cache_ = res;
        inf_done_ = true;
    }
    return inf_cache_;
}

PlacePtr FunctionField::place_by_id(const std::string& id) const {
    if (id.rfind("inf:", 0) == 0) {
        for (auto& P : infinite_places())
            if (P->id == id) return P;
    } else {
        std::lock_guard<std::mutex> g(mu_);
        for (auto& [key, ps] : cache_)
            for (auto& P : ps)
                if (P->id == id) return P;
    }
    throw MathError("unknown place " + id);
}

std::vector<PlacePtr> FunctionField::places_of_degree(int d) const {
    std::vector<PlacePtr> out;
    if (d < 1) return out;
    uint64_t q = k_->q(), count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    for (uint64_t idx = 0; idx < count; ++idx) {
        std::vector<uint32_t> c(d + 1);
        uint64_t t = idx;
        for (int i = 0; i < d; ++i) {
            c[i] = static_cast<uint32_t>(t % q);
            t /= q;
        }
        c[d] = 1;
        Poly p(k_, c);
        if (!is_irreducible(p)) continue;
        for (auto& P : decompose(p)) out.push_back(P);
    }
    std::sort(out.begin(), out.end(), PlaceLess());
    return out;
}

std::vector<Poly> FunctionField::disc_primes() const {
    {
        std::lock_guard<std::mutex> g(mu_);
        if (disc_done_) return disc_primes_;
    }
    std::vector<Poly> out;
    for (auto& [pp, mult] : factor(trace_form_det(fi).num)) out.push_back(pp);
    std::lock_guard<std::mutex> g(mu_);
    disc_primes_ = out;
    disc_done_ = true;
    return disc_primes_;
}

std::vector<PlacePtr> FunctionField::decompose_model(const Model* m, const Poly& p, bool infinite) const {
    const GF* k = k_;
    const int n = m->n;
    ResAlg C(m, p);
    const int D = C.D, d = C.d;
    Mat<Fe> F = C.frobenius();
    Mat<Fe> J = C.radical(F);
    Mat<Fe> Q = annihilator(J, D, k);
    Mat<Fe> Bp = kernel(Q * (F - Mat<Fe>::identity(D, Fe::one(k))));
    const size_t s = Bp.c - J.c;

    // Primitive idempotents of C/J by splitting with Berlekamp elements.
    std::vector<std::vector<Fe>> idem = {C.one()};
    Rng rng(0xdec0 + 7919ULL * p.deg() + p.coeff(0));
    int guard = 0;
    while (idem.size() < s) {
        if (++guard > 2000) throw MathError("place decomposition failed to split");
        std::vector<Fe> b(D, Fe::zero(k));
        for (size_t j = 0; j < Bp.c; ++j) {
            Fe r(k, k->random(rng));
            for (int i = 0; i < D; ++i) b[i] += r * Bp(i, j);
        }
        std::vector<std::vector<Fe>> next;
        for (auto& e : idem) {
            std::vector<Fe> w = C.mul(e, b);
            // Minimal polynomial of w modulo J inside eC.
            std::vector<std::vector<Fe>> pw = {e};
            std::vector<Fe> mu;
            for (int deg = 1; deg <= D + 1; ++deg) {
                pw.push_back(C.mul(pw.back(), w));
                Mat<Fe> V(Q.r, pw.size(), Fe::zero(k));
                for (size_t j = 0; j < pw.size(); ++j) V.set_col(j, Q * pw[j]);
                Mat<Fe> K = kernel(V);
                if (K.c > 0) {
                    mu = K.col(0);
                    break;
                }
            }
            std::vector<uint32_t> mc(mu.size());
            for (size_t i = 0; i < mu.size(); ++i) mc[i] = mu[i].v;
            Poly mp(k, mc);
            auto rts = roots(mp);
            if (rts.size() < 2) {
                next.push_back(e);
                continue;
            }
            for (uint32_t lam : rts) {
                std::vector<Fe> el = e;
                for (uint32_t other : rts) {
                    if (other == lam) continue;
                    std::vector<Fe> f = vsub(w, vscale(e, Fe(k, other)));
                    el = vscale(C.mul(el, f), Fe(k, k->inv(k->sub(lam, other))));
                }
                next.push_back(el);
            }
        }
        idem = next;
    }

    std::vector<std::shared_ptr<Place>> out;
    for (auto& eps : idem) {
        auto P = std::make_shared<Place>();
        P->K = this;
        P->infinite = infinite;
        P->model = m;
        P->prime = p;
        std::vector<std::vector<Fe>> kg;
        for (size_t j = 0; j < J.c; ++j) kg.push_back(J.col(j));
        std::vector<Fe> ome = vsub(C.one(), eps);
        for (int j = 0; j < D; ++j) kg.push_back(C.mul(ome, C.unit(j)));
        Mat<Fe> ker = image(cols_of(kg, D, k));
        P->deg = D - static_cast<int>(ker.c);
        P->f = P->deg / d;
        // Residue field basis: 1 then greedy unit vectors.
        std::vector<std::vector<Fe>> kb = {C.one()};
        Mat<Fe> cur = ker.hcat(cols_of(kb, D, k));
        for (int j = 0; j < D && (int)kb.size() < P->deg; ++j) {
            Mat<Fe> t = cur.hcat(cols_of({C.unit(j)}, D, k));
            if (rank(t) == t.c) {
                kb.push_back(C.unit(j));
                cur = t;
            }
        }
        Mat<Fe> T = cols_of(kb, D, k).hcat(ker);
        P->red = inverse(T).sub(0, 0, P->deg, D);
        for (auto& v : kb) P->kp_lift.push_back(C.fromC(v));
        P->kp_mul.assign(P->deg, std::vector<std::vector<Fe>>(P->deg));
        for (int i = 0; i < P->deg; ++i)
            for (int j = 0; j < P->deg; ++j) P->kp_mul[i][j] = P->red * C.mul(kb[i], kb[j]);
        // Prime ideal lattice.
        RMat gens(n, n + ker.c, RatFunc(k));
        for (int a = 0; a < n; ++a) gens(a, a) = RatFunc(p);
        for (size_t j = 0; j < ker.c; ++j) gens.set_col(n + j, C.fromC(ker.col(j)));
        P->P = hnf(gens, Ring::Poly);
        RMat S(n * n, n, RatFunc(k));
        for (int j = 0; j < n; ++j) S.put(j * n, 0, m->omega_mul_matrix(P->P.col(j)));
        RMat Pinv = lattice_preimage(S, Ring::Poly);
        bool found = false;
        for (size_t j = 0; j < Pinv.c && !found; ++j) {
            RVec b = Pinv.col(j);
            for (auto& x : b) x = x * RatFunc(p);
            for (auto& x : b)
                if (!rat_mod(x, p).is_zero()) {
                    found = true;
                    break;
                }
            if (found) P->beta = b;
        }
        if (!found) throw MathError("internal: no valuation element");
        P->eps = C.fromC(eps);
        out.push_back(P);
    }
    // Ramification indices.
    for (auto& P : out) {
        RVec pw(n, RatFunc(k));
        for (int a = 0; a < n; ++a) pw[a] = m->one_omega[a] * RatFunc(p);
        P->e = 0;
        P->e = valuation_w(pw, *P);
    }
    int sum = 0;
    for (auto& P : out) sum += P->e * P->f;
    if (sum != n) throw MathError("internal: ramification identity failed");
    int emax = 0, emin = n;
    for (auto& P : out) {
        emax = std::max(emax, P->e);
        emin = std::min(emin, P->e);
    }
    for (auto& P : out) {
        P->emax = emax;
        P->emin = emin;
        P->alone = out.size() == 1;
    }
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return mat_key(a->P) < mat_key(b->P); });
    for (size_t i = 0; i < out.size(); ++i) {
        auto& P = out[i];
        P->index = static_cast<int>(i);
        P->id = infinite ? "inf:" + std::to_string(i) : "fi:" + p.str("x") + ":" + std::to_string(i);
        // Uniformizer: first basis column of P with valuation one.
        bool ok = false;
        for (size_t j = 0; j < P->P.c && !ok; ++j)
            if (valuation_w(P->P.col(j), *P) == 1) {
                P->pi_w = P->P.col(j);
                ok = true;
            }
        for (size_t i1 = 0; i1 < P->P.c && !ok; ++i1)
            for (size_t i2 = i1 + 1; i2 < P->P.c && !ok; ++i2) {
                RVec w = P->P.col(i1);
                RVec w2 = P->P.col(i2);
                for (int a = 0; a < n; ++a) w[a] += w2[a];
                if (valuation_w(w, *P) == 1) {
                    P->pi_w = w;
                    ok = true;
                }
            }
        if (!ok) throw MathError("internal: no uniformizer among prime ideal generators");
        P->pi = from_model(Elem(m, m->from_omega(P->pi_w)));
        if (P->alone) {
            P->two_gen = P->pi;
        } else {
            RVec e2 = m->omega_mul(P->eps, P->eps);
            RVec one_e(n, RatFunc(k));
            for (int a = 0; a < n; ++a) one_e[a] = m->one_omega[a] - P->eps[a];
            RVec t = m->omega_mul(e2, P->pi_w);
            RVec u = m->omega_mul(one_e, one_e);
            for (int a = 0; a < n; ++a) t[a] += u[a];
            // A uniformizer that is a unit at the conjugate places.
            P->pi_w = t;
            P->two_gen = from_model(Elem(m, m->from_omega(t)));
            P->pi = P->two_gen;
        }
    }
    return std::vector<PlacePtr>(out.begin(), out.end());
}

namespace {
std::string term_str(const RatFunc& c, const std::string& mono) {
    if (mono.empty()) return c.str();
    if (c.is_one()) return mono;
    std::string cs = c.str();
    bool simple = c.is_poly() && c.num.c.size() == 1 && cs.find('+') == std::string::npos;
    if (simple) return cs + "*" + mono;
    return "(" + cs + ")*" + mono;
}
}  // namespace

std::string FunctionField::elem_str(const Elem& a) const {
    std::string s;
    for (int i = 0; i < n(); ++i) {
        if (a.c[i].is_zero()) continue;
        std::string mono = i == 0 ? "" : (i == 1 ? "y" : "y^" + std::to_string(i));
        std::string t = term_str(a.c[i], mono);
        if (!s.empty()) s += "+";
        s += t;
    }
    return s.empty() ? "0" : s;
}

}  // namespace vbc
