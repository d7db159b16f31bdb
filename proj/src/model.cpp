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

#include "vbc/function_field.hpp"

namespace vbc {

Poly rat_mod(const RatFunc& r, const Poly& m) {
    if (r.is_zero()) return Poly(m.F);
    if (r.is_poly()) return r.num % m;
    return (r.num % m * invmod(r.den, m)) % m;
}

void Model::init() {
    const RatFunc zero(k);
    ypow.clear();
    if (n >= 2) {
        RVec cur(n, zero);
        for (int i = 0; i < n; ++i) cur[i] = -chi[i];
        ypow.push_back(cur);
        for (int j = 1; j <= n - 2; ++j) {
            RVec nxt(n, zero);
            RatFunc top = cur[n - 1];
            for (int i = n - 1; i >= 1; --i) nxt[i] = cur[i - 1];
            if (!top.is_zero())
                for (int i = 0; i < n; ++i) nxt[i] -= top * chi[i];
            ypow.push_back(nxt);
            cur = nxt;
        }
    }
    trace_ypow.assign(n, zero);
    for (int i = 0; i < n; ++i) {
        RVec yi(n, zero);
        yi[i] = RatFunc::one(k);
        RatFunc t = zero;
        for (int j = 0; j < n; ++j) {
            RVec yj(n, zero);
            yj[j] = RatFunc::one(k);
            t += mul_power(yi, yj)[j];
        }
        trace_ypow[i] = t;
    }
    power_basis = B == RMat::identity(n, RatFunc::one(k));
    Binv = inverse(B);
    RVec e0(n, zero);
    e0[0] = RatFunc::one(k);
    one_omega = to_omega(e0);
    omega_prod.assign(n, std::vector<RVec>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) omega_prod[a][b] = to_omega(mul_power(B.col(a), B.col(b)));
}

RVec Model::mul_power(const RVec& a, const RVec& b) const {
    const RatFunc zero(k);
    std::vector<RatFunc> r(2 * n - 1, zero);
    for (int i = 0; i < n; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; j < n; ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    RVec out(r.begin(), r.begin() + n);
    for (int j = n; j < 2 * n - 1; ++j) {
        if (r[j].is_zero()) continue;
        const RVec& red = ypow[j - n];
        for (int i = 0; i < n; ++i)
            if (!red[i].is_zero()) out[i] += r[j] * red[i];
    }
    return out;
}

RVec Model::omega_mul(const RVec& u, const RVec& v) const {
    if (power_basis) return mul_power(u, v);
    RVec out(n, RatFunc(k));
    for (int a = 0; a < n; ++a) {
        if (u[a].is_zero()) continue;
        for (int b = 0; b < n; ++b) {
            if (v[b].is_zero()) continue;
            RatFunc s = u[a] * v[b];
            const RVec& t = omega_prod[a][b];
            for (int i = 0; i < n; ++i)
                if (!t[i].is_zero()) out[i] += s * t[i];
        }
    }
    return out;
}

RVec Model::omega_mulmod(const RVec& u, const RVec& v, const Poly& m) const {
    std::vector<Poly> acc(n, Poly(k));
    for (int a = 0; a < n; ++a) {
        if (u[a].is_zero()) continue;
        for (int b = 0; b < n; ++b) {
            if (v[b].is_zero()) continue;
            Poly s = (u[a].num * v[b].num) % m;
            if (s.is_zero()) continue;
            const RVec& t = omega_prod[a][b];
            for (int i = 0; i < n; ++i)
                if (!t[i].is_zero()) acc[i] += s * t[i].num;
        }
    }
    RVec out(n, RatFunc(k));
    for (int i = 0; i < n; ++i) out[i] = RatFunc(acc[i] % m);
    return out;
}

RMat Model::omega_mul_matrix(const RVec& b) const {
    RMat m(n, n, RatFunc(k));
    for (int a = 0; a < n; ++a) {
        RVec ea(n, RatFunc(k));
        ea[a] = RatFunc::one(k);
        m.set_col(a, omega_mul(ea, b));
    }
    return m;
}

RatFunc Model::trace_power(const RVec& pw) const {
    RatFunc t(k);
    for (int i = 0; i < n; ++i)
        if (!pw[i].is_zero()) t += pw[i] * trace_ypow[i];
    return t;
}

bool Elem::is_zero() const {
    for (auto& a : c)
        if (!a.is_zero()) return false;
    return true;
}

bool Elem::is_one() const {
    if (!c[0].is_one()) return false;
    for (size_t i = 1; i < c.size(); ++i)
        if (!c[i].is_zero()) return false;
    return true;
}

bool Elem::is_rational() const {
    for (size_t i = 1; i < c.size(); ++i)
        if (!c[i].is_zero()) return false;
    return true;
}

Elem Elem::operator+(const Elem& o) const {
    Elem r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
    return r;
}

Elem Elem::operator-(const Elem& o) const {
    Elem r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
    return r;
}

Elem Elem::operator-() const {
    Elem r = *this;
    for (auto& a : r.c) a = -a;
    return r;
}

Elem Elem::operator*(const Elem& o) const {
    if (is_rational()) return o.scale(c[0]);
    if (o.is_rational()) return scale(o.c[0]);
    return Elem(M, M->mul_power(c, o.c));
}

Elem Elem::scale(const RatFunc& r) const {
    Elem e = *this;
    for (auto& a : e.c)
        if (!a.is_zero()) a = a * r;
    return e;
}

RMat Elem::mul_matrix() const {
    RMat m(M->n, M->n, RatFunc(M->k));
    for (int j = 0; j < M->n; ++j) {
        RVec e(M->n, RatFunc(M->k));
        e[j] = RatFunc::one(M->k);
        m.set_col(j, M->mul_power(c, e));
    }
    return m;
}

Elem Elem::inv() const {
    if (is_zero()) throw MathError("division by zero");
    if (is_rational()) return from_rat(M, c[0].inv());
    RVec e0(M->n, RatFunc(M->k));
    e0[0] = RatFunc::one(M->k);
    auto s = solve_vec(mul_matrix(), e0);
    if (!s) throw MathError("element not invertible");
    return Elem(M, *s);
}

Elem Elem::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    Elem r = one_like(), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

RatFunc Elem::norm() const {
    if (is_rational()) return c[0].pow(M->n);
    return det(mul_matrix());
}

}  // namespace vbc
