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
#include <set>
#include <sstream>

#include "vbc/function_field.hpp"

namespace vbc {

namespace {

std::vector<Fe> to_c(const RVec& w, const Poly& p) {
    const int d = p.deg();
    std::vector<Fe> v(w.size() * d, Fe::zero(p.F));
    for (size_t a = 0; a < w.size(); ++a) {
        Poly r = rat_mod(w[a], p);
        for (int i = 0; i < d; ++i) v[a * d + i] = Fe(p.F, r.coeff(i));
    }
    return v;
}

bool divisible(const RatFunc& r, const Poly& p) { return r.is_zero() || (r.num % p).is_zero(); }

RVec mulmod_pow(const Model* m, RVec b, uint64_t e, const Poly& mod) {
    RVec r = m->one_omega;
    for (auto& x : b) x = RatFunc(rat_mod(x, mod));
    while (e) {
        if (e & 1) r = m->omega_mulmod(r, b, mod);
        e >>= 1;
        if (e) b = m->omega_mulmod(b, b, mod);
    }
    return r;
}

RatFunc rat_derivative(const RatFunc& r) {
    if (r.is_zero()) return r;
    Poly nd = r.num.derivative() * r.den - r.num * r.den.derivative();
    return RatFunc(nd, r.den * r.den);
}

}  // namespace

int FunctionField::valuation_w(const RVec& w, const Place& P) const {
    const Poly& p = P.prime;
    int m = 0;
    bool any = false;
    for (auto& c : w)
        if (!c.is_zero()) {
            any = true;
            m = std::max(m, -c.val(p));
        }
    if (!any) throw MathError("valuation of zero");
    RVec z = w;
    if (m > 0) {
        RatFunc pm(p.pow(m));
        for (auto& c : z) c = c * pm;
    }
    const RatFunc pr(p);
    int count = 0;
    bool all_div = true;
    for (;;) {
        all_div = P.e > 0;
        for (auto& c : z)
            if (!all_div || !divisible(c, p)) {
                all_div = false;
                break;
            }
        if (all_div) {
            for (auto& c : z) c = c / pr;
            count += P.e;
            continue;
        }
        RVec t = P.model->omega_mul(z, P.beta);
        bool ok = true;
        for (auto& c : t)
            if (!divisible(c, p)) {
                ok = false;
                break;
            }
        if (!ok) break;
        for (auto& c : t) c = c / pr;
        z = std::move(t);
        ++count;
    }
    return count - P.e * m;
}

int FunctionField::valuation(const Elem& a, const Place& P) const {
    return valuation_w(to_model(a, P.model).omega(), P);
}

std::vector<Fe> FunctionField::reduce_w(const RVec& w, const Place& P) const {
    const Poly& p = P.prime;
    int m = 0;
    for (auto& c : w)
        if (!c.is_zero()) m = std::max(m, -c.val(p));
    if (m == 0) return P.red * to_c(w, p);
    if (P.alone) throw MathError("reduction of an element with a pole");
    const Model* M = P.model;
    Poly pm = p.pow(m), mod = pm * p;
    RVec u = mulmod_pow(M, P.eps, static_cast<uint64_t>(P.emax) * m, mod);
    RVec c = w;
    for (auto& x : c) x = RatFunc(rat_mod(x * RatFunc(pm), mod));
    RVec prod = M->omega_mulmod(u, c, mod);
    for (auto& x : prod) {
        if (!divisible(RatFunc(x.num), pm)) throw MathError("reduction of an element with a pole");
        x = RatFunc(x.num / pm);
    }
    return P.red * to_c(prod, p);
}

std::vector<Fe> FunctionField::reduce(const Elem& a, const Place& P) const {
    return reduce_w(to_model(a, P.model).omega(), P);
}

Elem FunctionField::lift(const std::vector<Fe>& c, const Place& P) const {
    const Model* M = P.model;
    RVec w(M->n, RatFunc(k_));
    for (size_t j = 0; j < c.size(); ++j) {
        if (c[j].is_zero()) continue;
        for (int a = 0; a < M->n; ++a) w[a] += P.kp_lift[j][a].scale(c[j].v);
    }
    return from_model(Elem(M, M->from_omega(w)));
}

std::vector<std::vector<Fe>> FunctionField::expand(const Elem& a0, const Place& P, int from, int count) const {
    std::vector<std::vector<Fe>> out(std::max(count, 0), std::vector<Fe>(P.deg, Fe::zero(k_)));
    if (count <= 0 || a0.is_zero()) return out;
    const Model* M = P.model;
    Elem a = to_model(a0, M);
    int v = valuation_w(a.omega(), P);
    if (v >= from + count) return out;
    int start = std::min(v, from);
    Elem pim(M, M->from_omega(P.pi_w));
    Elem pinv = pim.inv();
    Elem b = a * pim.pow(-start);
    const int L = from + count - start;
    // Teichmueller digits for residue fields larger than k.
    uint64_t Q = 1;
    for (int i = 0; i < P.deg; ++i) Q *= k_->q();
    int s = 0, Mprec = 0;
    Poly modM;
    if (P.deg > 1) {
        uint64_t Qs = 1;
        while (Qs < (uint64_t)L + 1) {
            Qs *= Q;
            ++s;
        }
        Mprec = (L + 1 + P.e - 1) / P.e + 1;
        modM = P.prime.pow(Mprec);
    }
    for (int i = start; i < from + count; ++i) {
        std::vector<Fe> c = reduce_w(b.omega(), P);
        if (i >= from) out[i - from] = c;
        bool zero = true;
        for (auto& x : c)
            if (!x.is_zero()) zero = false;
        if (!zero) {
            Elem t = Elem::zero(M);
            if (P.deg == 1) {
                t = Elem::from_rat(M, RatFunc::constant(k_, c[0].v));
            } else {
                RVec w(M->n, RatFunc(k_));
                for (size_t j = 0; j < c.size(); ++j)
                    for (int a2 = 0; a2 < M->n; ++a2) w[a2] += P.kp_lift[j][a2].scale(c[j].v);
                for (int r = 0; r < s; ++r) w = mulmod_pow(M, w, Q, modM);
                t = Elem(M, M->from_omega(w));
            }
            b -= t;
        }
        if (i + 1 < from + count) b *= pinv;
    }
    return out;
}

int FunctionField::dx_valuation(const Place& P) const {
    {
        std::lock_guard<std::mutex> g(mu_);
        auto it = dxval_.find(P.id);
        if (it != dxval_.end()) return it->second;
    }
    Elem d = derivative(P.pi);
    if (d.is_zero()) throw MathError("inseparable uniformizer");
    int v = -valuation(d, P);
    std::lock_guard<std::mutex> g(mu_);
    dxval_[P.id] = v;
    return v;
}

Divisor FunctionField::divisor_of(const Elem& a) const {
    if (a.is_zero()) throw MathError("divisor of zero");
    std::set<std::vector<uint32_t>> seen;
    std::vector<Poly> primes;
    auto addp = [&](const Poly& f) {
        if (f.deg() < 1) return;
        for (auto& [pp, m] : factor(f))
            if (seen.insert(pp.c).second) primes.push_back(pp);
    };
    RatFunc N = a.norm();
    addp(N.num);
    addp(N.den);
    for (auto& c : a.omega())
        if (!c.is_zero()) addp(c.den);
    Divisor D;
    for (auto& p : primes)
        for (auto& P : decompose(p)) D.add(P, valuation(a, *P));
    for (auto& P : infinite_places()) D.add(P, valuation(a, *P));
    return D;
}

int FunctionField::height(const Elem& a) const {
    int h = 0;
    for (auto& [P, v] : divisor_of(a).terms)
        if (v > 0) h += v * P->deg;
    return h;
}

Elem FunctionField::derivative(const Elem& a) const {
    const int n = this->n();
    Elem out = zero();
    for (int i = 0; i < n; ++i) out.c[i] = rat_derivative(a.c[i]);
    if (n == 1) return out;
    Elem cx = zero(), cy = zero();
    for (int i = 0; i < n; ++i) cx.c[i] = rat_derivative(fi.chi[i]);
    for (int i = 1; i <= n; ++i) {
        RatFunc t = fi.chi[i].scale(k_->from_int(i));
        if (i - 1 < n) cy.c[i - 1] += t;
    }
    Elem dy = -(cx / cy);
    Elem ay = zero();
    for (int i = 1; i < n; ++i) ay.c[i - 1] = a.c[i].scale(k_->from_int(i));
    return out + ay * dy;
}

Differential FunctionField::default_differential() const { return Differential{one(), infinite_places().front()}; }

Elem FunctionField::dx_coefficient(const Differential& w) const {
    Elem d = derivative(w.Q0->pi);
    if (d.is_zero()) throw MathError("inseparable uniformizer");
    return w.f * d;
}

int FunctionField::differential_valuation(const Differential& w, const PlacePtr& P) const {
    return valuation(dx_coefficient(w), *P) + dx_valuation(*P);
}

Divisor FunctionField::differential_divisor(const Differential& w) const {
    if (w.f.is_zero()) throw MathError("zero differential");
    Elem h = dx_coefficient(w);
    Divisor D = divisor_of(h);
    std::vector<PlacePtr> extra;
    for (auto& p : disc_primes())
        for (auto& P : decompose(p)) extra.push_back(P);
    for (auto& P : infinite_places()) extra.push_back(P);
    for (auto& P : extra) D.add(P, dx_valuation(*P));
    return D;
}

int FunctionField::genus() const {
    {
        std::lock_guard<std::mutex> g(mu_);
        if (genus_ >= 0) return genus_;
    }
    int deg = 0;
    for (auto& p : disc_primes())
        for (auto& P : decompose(p)) deg += dx_valuation(*P) * P->deg;
    for (auto& P : infinite_places()) deg += dx_valuation(*P) * P->deg;
    if (deg % 2 != 0 || deg < -2) throw MathError("internal: canonical degree inconsistent");
    std::lock_guard<std::mutex> g(mu_);
    genus_ = deg / 2 + 1;
    return genus_;
}

RVec FunctionField::idempotent(const Place& P, int M) const {
    const Model* m = P.model;
    if (P.alone) return m->one_omega;
    Poly mod = P.prime.pow(std::max(M, 1));
    RVec e = P.eps;
    int need = P.emax * std::max(M, 1), have = 1;
    const RatFunc three = RatFunc::constant(k_, k_->from_int(3)), two = RatFunc::constant(k_, k_->from_int(2));
    while (have < need) {
        RVec e2 = m->omega_mulmod(e, e, mod);
        RVec e3 = m->omega_mulmod(e2, e, mod);
        for (int a = 0; a < m->n; ++a) e[a] = RatFunc(rat_mod(e2[a] * three - e3[a] * two, mod));
        have *= 2;
    }
    return e;
}

namespace {
Fe residue_at_prime(const RatFunc& s, const Poly& p) {
    const GF* k = p.F;
    if (s.is_zero()) return Fe::zero(k);
    int m = -s.val(p);
    if (m <= 0) return Fe::zero(k);
    Poly pm = p.pow(m);
    Poly w = s.den / pm;
    Poly A = (s.num % pm) * invmod(w % pm, pm) % pm;
    Poly top = A / p.pow(m - 1);
    return Fe(k, top.coeff(p.deg() - 1));
}

Fe residue_at_infinity(const RatFunc& s) {
    const GF* k = s.num.F;
    if (s.is_zero()) return Fe::zero(k);
    return Fe(k, k->neg(s.inf_expand(1, 2)[0]));
}
}  // namespace

Fe FunctionField::residue_dx(const Elem& b, const PlacePtr& P) const {
    if (b.is_zero()) return Fe::zero(k_);
    const Model* m = P->model;
    Elem s = b;
    if (!P->alone) {
        std::vector<PlacePtr> over = P->infinite ? infinite_places() : decompose(P->prime);
        int N = 0;
        for (auto& Q : over) N = std::max(N, -(valuation(b, *Q) + dx_valuation(*Q)));
        if (N <= 0) return Fe::zero(k_);
        int M = (N + P->emin - 1) / P->emin + 1;
        Elem E = from_model(Elem(m, m->from_omega(idempotent(*P, M))));
        s = E * b;
    }
    RatFunc t = s.trace();
    return P->infinite ? residue_at_infinity(t) : residue_at_prime(t, P->prime);
}

Fe FunctionField::residue_dx_infinity(const Elem& b) const {
    if (b.is_zero()) return Fe::zero(k_);
    return residue_at_infinity(b.trace());
}

Fe FunctionField::residue(const Repartition& r, const Differential& w) const {
    Elem h = dx_coefficient(w);
    Fe acc = Fe::zero(k_);
    for (auto& [P, v] : r.local)
        if (!v.empty()) acc += residue_dx(v[0] * h, P);
    if (!r.inf.empty()) acc += residue_dx_infinity(r.inf[0] * h);
    return acc;
}

std::vector<Fe> FunctionField::kp_mul(const Place& P, const std::vector<Fe>& a, const std::vector<Fe>& b) const {
    std::vector<Fe> out(P.deg, Fe::zero(k_));
    for (int i = 0; i < P.deg; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < P.deg; ++j) {
            if (b[j].is_zero()) continue;
            Fe s = a[i] * b[j];
            for (int t = 0; t < P.deg; ++t) out[t] += s * P.kp_mul[i][j][t];
        }
    }
    return out;
}

Fe FunctionField::kp_trace(const Place& P, const std::vector<Fe>& a) const {
    Fe t = Fe::zero(k_);
    for (int j = 0; j < P.deg; ++j) {
        std::vector<Fe> ej(P.deg, Fe::zero(k_));
        ej[j] = Fe::one(k_);
        t += kp_mul(P, a, ej)[j];
    }
    return t;
}

// Chinese remaindering: local solutions per prime glued with rational-function weights.
Elem FunctionField::crt_attempt(const std::vector<CrtConstraint>& cs, int boost) const {
    struct Group {
        bool inf;
        Poly p;
        std::vector<size_t> idx;
        Elem z;
    };
    std::vector<Group> groups;
    for (size_t i = 0; i < cs.size(); ++i) {
        const Place& P = *cs[i].P;
        bool found = false;
        for (auto& g : groups)
            if (g.inf == P.infinite && (g.inf || g.p == P.prime)) {
                g.idx.push_back(i);
                found = true;
                break;
            }
        if (!found) groups.push_back({P.infinite, P.prime, {i}, zero()});
    }
    auto val = [&](const Elem& a, const Place& P) { return a.is_zero() ? (1 << 28) : valuation(a, P); };
    for (auto& g : groups) {
        const Place& P0 = *cs[g.idx[0]].P;
        if (g.idx.size() == 1 && P0.alone) {
            g.z = cs[g.idx[0]].target;
            continue;
        }
        int vmin = 1 << 28, nmax = 0;
        for (size_t i : g.idx) {
            nmax = std::max(nmax, cs[i].order);
            for (size_t j : g.idx)
                if (!cs[j].target.is_zero()) vmin = std::min(vmin, valuation(cs[j].target, *cs[i].P));
        }
        if (vmin == (1 << 28)) continue;
        int M = (std::max(nmax - vmin, 0) + P0.emin - 1) / P0.emin + 1;
        M *= boost;
        Elem z = zero();
        for (size_t i : g.idx) {
            if (cs[i].target.is_zero()) continue;
            const Model* m = cs[i].P->model;
            Elem E = from_model(Elem(m, m->from_omega(idempotent(*cs[i].P, M))));
            z += E * cs[i].target;
        }
        g.z = z;
    }
    if (groups.size() == 1) return groups[0].z;
    // Required k(x)-adic orders of the weights.
    const size_t G = groups.size();
    std::vector<int> prec(G, 0);
    int V = 0;
    bool has_inf = false;
    for (auto& g : groups) has_inf = has_inf || g.inf;
    for (size_t i = 0; i < G; ++i) {
        if (groups[i].z.is_zero()) continue;
        for (size_t j = 0; j < G; ++j) {
            int need = 0;
            for (size_t t : groups[j].idx) need = std::max(need, cs[t].order - val(groups[i].z, *cs[t].P));
            need *= boost;
            if (groups[j].inf)
                V = std::max(V, need);
            else
                prec[j] = std::max(prec[j], need);
        }
    }
    for (size_t j = 0; j < G; ++j)
        if (!groups[j].inf) prec[j] = std::max(prec[j], 1);
    Poly Mall = Poly::one(k_);
    int S = 0;
    std::vector<Poly> mods(G);
    for (size_t j = 0; j < G; ++j) {
        if (groups[j].inf) continue;
        mods[j] = groups[j].p.pow(prec[j]);
        Mall = Mall * mods[j];
        S += mods[j].deg();
    }
    Poly Dn = Poly::one(k_);
    if (has_inf) {
        Poly r;
        for (int dg = 1; r.F == nullptr; ++dg) {
            uint64_t q = k_->q(), cnt = 1;
            for (int i = 0; i < dg; ++i) cnt *= q;
            for (uint64_t idx = 0; idx < cnt; ++idx) {
                std::vector<uint32_t> cf(dg + 1);
                uint64_t t = idx;
                for (int i = 0; i < dg; ++i) {
                    cf[i] = static_cast<uint32_t>(t % q);
                    t /= q;
                }
                cf[dg] = 1;
                Poly cand(k_, cf);
                bool used = false;
                for (auto& g : groups)
                    if (!g.inf && g.p == cand) used = true;
                if (!used && is_irreducible(cand)) {
                    r = cand;
                    break;
                }
            }
        }
        int K = (S + V + r.deg()) / r.deg() + 1;
        Dn = r.pow(K);
    }
    Elem a = zero();
    RatFunc sum_u(k_);
    for (size_t i = 0; i < G; ++i) {
        if (groups[i].inf) continue;
        Poly Mi = Mall / mods[i];
        Poly t = (Dn % mods[i]) * invmod(Mi % mods[i], mods[i]) % mods[i];
        RatFunc u(t * Mi, Dn);
        sum_u += u;
        if (!groups[i].z.is_zero()) a += groups[i].z.scale(u);
    }
    for (auto& g : groups)
        if (g.inf && !g.z.is_zero()) a += g.z.scale(RatFunc::one(k_) - sum_u);
    return a;
}

Elem FunctionField::crt(const std::vector<CrtConstraint>& cs) const {
    if (cs.empty()) return zero();
    for (int attempt = 0; attempt < 6; ++attempt) {
        Elem a = crt_attempt(cs, 1 << attempt);
        bool ok = true;
        for (auto& c : cs) {
            Elem d = a - c.target;
            if (!d.is_zero() && valuation(d, *c.P) < c.order) {
                ok = false;
                break;
            }
        }
        if (ok) return a;
    }
    throw MathError("internal: approximation failed");
}

Elem FunctionField::element_with_valuations(const std::vector<std::pair<PlacePtr, int>>& vs) const {
    std::vector<CrtConstraint> cs;
    for (auto& [P, v] : vs) cs.push_back({P, P->pi.pow(v), v + 1});
    return crt(cs);
}

int Divisor::deg() const {
    int d = 0;
    for (auto& [P, v] : terms) d += v * P->deg;
    return d;
}

int Divisor::coeff(const PlacePtr& P) const {
    auto it = terms.find(P);
    return it == terms.end() ? 0 : it->second;
}

void Divisor::add(const PlacePtr& P, int v) {
    if (v == 0) return;
    int& c = terms[P];
    c += v;
    if (c == 0) terms.erase(P);
}

Divisor Divisor::operator+(const Divisor& o) const {
    Divisor r = *this;
    for (auto& [P, v] : o.terms) r.add(P, v);
    return r;
}

Divisor Divisor::operator-() const { return scaled(-1); }

Divisor Divisor::operator-(const Divisor& o) const { return *this + (-o); }

Divisor Divisor::scaled(int s) const {
    Divisor r;
    for (auto& [P, v] : terms) r.add(P, v * s);
    return r;
}

bool Divisor::operator==(const Divisor& o) const {
    if (terms.size() != o.terms.size()) return false;
    for (auto& [P, v] : terms)
        if (o.coeff(P) != v) return false;
    return true;
}

bool Divisor::effective() const {
    for (auto& [P, v] : terms)
        if (v < 0) return false;
    return true;
}

std::string Divisor::str() const {
    std::ostringstream s;
    bool first = true;
    for (auto& [P, v] : terms) {
        if (!first) s << (v < 0 ? " - " : " + ");
        else if (v < 0) s << "-";
        first = false;
        int a = std::abs(v);
        if (a != 1) s << a << "*";
        s << P->id;
    }
    if (first) s << "0";
    return s.str();
}

}  // namespace vbc
