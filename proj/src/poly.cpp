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

#include "vbc/poly.hpp"

#include <algorithm>

namespace vbc {

Poly Poly::monomial(const GF* f, uint32_t a, int d) {
    if (a == 0) return Poly(f);
    std::vector<uint32_t> v(d + 1, 0);
    v[d] = a;
    return Poly(f, std::move(v));
}

int Poly::low_deg() const {
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i]) return static_cast<int>(i);
    return -1;
}

Poly Poly::operator+(const Poly& o) const {
    const GF* f = F ? F : o.F;
    std::vector<uint32_t> r(std::max(c.size(), o.c.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = f->add(coeff(i), o.coeff(i));
    return Poly(f, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    const GF* f = F ? F : o.F;
    std::vector<uint32_t> r(std::max(c.size(), o.c.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = f->sub(coeff(i), o.coeff(i));
    return Poly(f, std::move(r));
}

Poly Poly::operator-() const {
    std::vector<uint32_t> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = F->neg(c[i]);
    return Poly(F, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    const GF* f = F ? F : o.F;
    if (c.empty() || o.c.empty()) return Poly(f);
    std::vector<uint32_t> r(c.size() + o.c.size() - 1, 0);
    if (f->prime_field()) {
        const uint64_t p = f->p();
        // Accumulate several products before reducing when p is small.
        const bool small = p < (1u << 16);
        std::vector<uint64_t> acc(r.size(), 0);
        for (size_t i = 0; i < c.size(); ++i) {
            if (!c[i]) continue;
            uint64_t a = c[i];
            for (size_t j = 0; j < o.c.size(); ++j) {
                acc[i + j] += a * o.c[j];
                if (!small) acc[i + j] %= p;
            }
            if (small && (i & 1023) == 1023)
                for (auto& x : acc) x %= p;
        }
        for (size_t i = 0; i < r.size(); ++i) r[i] = static_cast<uint32_t>(acc[i] % p);
    } else {
        for (size_t i = 0; i < c.size(); ++i) {
            if (!c[i]) continue;
            for (size_t j = 0; j < o.c.size(); ++j) r[i + j] = f->add(r[i + j], f->mul(c[i], o.c[j]));
        }
    }
    return Poly(f, std::move(r));
}

bool Poly::operator<(const Poly& o) const {
    if (deg() != o.deg()) return deg() < o.deg();
    for (int i = deg(); i >= 0; --i)
        if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
}

Poly Poly::scale(uint32_t a) const {
    if (a == 0) return Poly(F);
    std::vector<uint32_t> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = F->mul(c[i], a);
    return Poly(F, std::move(r));
}

Poly Poly::shift(int k) const {
    if (c.empty() || k == 0) return *this;
    std::vector<uint32_t> r(k, 0);
    r.insert(r.end(), c.begin(), c.end());
    return Poly(F, std::move(r));
}

Poly Poly::truncate(int k) const {
    if ((int)c.size() <= k) return *this;
    return Poly(F, std::vector<uint32_t>(c.begin(), c.begin() + std::max(k, 0)));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
    if (d.is_zero()) throw MathError("polynomial division by zero");
    const GF* f = F ? F : d.F;
    if (deg() < d.deg()) return {Poly(f), *this};
    std::vector<uint32_t> r = c;
    std::vector<uint32_t> q(c.size() - d.c.size() + 1, 0);
    uint32_t li = f->inv(d.lc());
    int dd = d.deg();
    if (f->prime_field()) {
        const uint64_t p = f->p();
        for (int i = deg(); i >= dd; --i) {
            uint32_t a = r[i];
            if (!a) continue;
            uint64_t co = uint64_t(a) * li % p;
            q[i - dd] = static_cast<uint32_t>(co);
            uint64_t nco = p - co;
            for (int j = 0; j <= dd; ++j) r[i - dd + j] = static_cast<uint32_t>((r[i - dd + j] + nco * d.c[j]) % p);
        }
    } else {
        for (int i = deg(); i >= dd; --i) {
            uint32_t a = r[i];
            if (!a) continue;
            uint32_t co = f->mul(a, li);
            q[i - dd] = co;
            for (int j = 0; j <= dd; ++j) r[i - dd + j] = f->sub(r[i - dd + j], f->mul(co, d.c[j]));
        }
    }
    r.resize(dd);
    return {Poly(f, std::move(q)), Poly(f, std::move(r))};
}

Poly Poly::monic() const {
    if (is_zero()) return *this;
    return scale(F->inv(lc()));
}

Poly Poly::derivative() const {
    if (c.size() <= 1) return Poly(F);
    std::vector<uint32_t> r(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) r[i - 1] = F->mul(c[i], F->from_int(static_cast<int64_t>(i)));
    return Poly(F, std::move(r));
}

uint32_t Poly::eval(uint32_t a) const {
    uint32_t r = 0;
    for (size_t i = c.size(); i-- > 0;) r = F->add(F->mul(r, a), c[i]);
    return r;
}

Poly Poly::pow(uint64_t e) const {
    Poly r = one(F), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

Poly Poly::powmod(uint64_t e, const Poly& m) const {
    Poly r = one(F) % m, b = *this % m;
    while (e) {
        if (e & 1) r = (r * b) % m;
        e >>= 1;
        if (e) b = (b * b) % m;
    }
    return r;
}

Poly Poly::compose(const Poly& g) const {
    Poly r(F);
    for (size_t i = c.size(); i-- > 0;) r = r * g + constant(F, c[i]);
    return r;
}

Poly Poly::reverse(int d) const {
    std::vector<uint32_t> r(d + 1, 0);
    for (int i = 0; i <= deg() && i <= d; ++i) r[d - i] = c[i];
    return Poly(F, std::move(r));
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = deg(); i >= 0; --i) {
        if (!c[i]) continue;
        std::string co = F->str(c[i]);
        if (i > 0 && co.find('+') != std::string::npos) co = "(" + co + ")";
        std::string mon = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
        std::string term;
        if (i == 0)
            term = co;
        else if (c[i] == 1)
            term = mon;
        else
            term = co + "*" + mon;
        if (!s.empty()) s += "+";
        s += term;
    }
    return s;
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a, y = b;
    while (!y.is_zero()) {
        Poly r = x % y;
        x = std::move(y);
        y = std::move(r);
    }
    return x.monic();
}

Xgcd xgcd(const Poly& a, const Poly& b) {
    const GF* f = a.F ? a.F : b.F;
    if (a.is_zero() && b.is_zero()) throw MathError("xgcd of two zero polynomials");
    Poly r0 = a, r1 = b, s0 = Poly::one(f), s1(f), t0(f), t1 = Poly::one(f);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Poly s2 = s0 - q * s1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        Poly t2 = t0 - q * t1;
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    uint32_t li = f->inv(r0.lc());
    return {r0.scale(li), s0.scale(li), t0.scale(li)};
}

Poly lcm(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly(a.F ? a.F : b.F);
    return ((a / gcd(a, b)) * b).monic();
}

Poly invmod(const Poly& a, const Poly& m) {
    auto r = xgcd(a % m, m);
    if (!r.g.is_one()) throw MathError("not invertible modulo polynomial");
    return r.u % m;
}

int poly_val(const Poly& a, const Poly& p) {
    if (a.is_zero()) throw MathError("valuation of zero");
    int v = 0;
    Poly t = a;
    while (true) {
        auto [q, r] = t.divmod(p);
        if (!r.is_zero()) break;
        t = std::move(q);
        ++v;
    }
    return v;
}

namespace {

// p-th root of a polynomial whose derivative vanishes.
Poly pth_root(const Poly& f) {
    const GF* F = f.F;
    uint32_t p = F->p();
    uint64_t e = 1;
    for (unsigned i = 1; i < F->m(); ++i) e *= p;  // a^(q/p) is the p-th root
    std::vector<uint32_t> r(f.deg() / p + 1, 0);
    for (int i = 0; i <= f.deg(); i += p) r[i / p] = F->pow(f.c[i], e);
    return Poly(F, std::move(r));
}

// Distinct-degree factorization of a monic squarefree f.
std::vector<std::pair<Poly, int>> ddf(Poly f) {
    const GF* F = f.F;
    std::vector<std::pair<Poly, int>> out;
    Poly x = Poly::x(F);
    Poly h = x % f;
    int d = 0;
    while (f.deg() >= 2 * (d + 1)) {
        ++d;
        h = h.powmod(F->q(), f);
        Poly g = gcd(h - x, f);
        if (!g.is_one()) {
            out.push_back({g, d});
            f = f / g;
            h = h % f;
        }
    }
    if (f.deg() > 0) out.push_back({f.monic(), f.deg()});
    return out;
}

void edf(const Poly& f, int d, Rng& rng, std::vector<Poly>& out) {
    if (f.deg() == d) {
        out.push_back(f.monic());
        return;
    }
    const GF* F = f.F;
    while (true) {
        std::vector<uint32_t> v(f.deg());
        for (auto& a : v) a = F->random(rng);
        Poly a(F, v);
        if (a.deg() < 1) continue;
        Poly b;
        if (F->p() == 2) {
            // Trace map to F_2 composed over degree d extension.
            Poly t = a % f, acc = t;
            unsigned total = F->m() * d;
            for (unsigned i = 1; i < total; ++i) {
                t = (t * t) % f;
                acc += t;
            }
            b = acc;
        } else {
            uint64_t qd = 1;
            for (int i = 0; i < d; ++i) qd *= F->q();
            b = a.powmod((qd - 1) / 2, f) - Poly::one(F);
        }
        Poly g = gcd(b, f);
        if (g.deg() > 0 && g.deg() < f.deg()) {
            edf(g, d, rng, out);
            edf(f / g, d, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<Poly, int>> squarefree(const Poly& f0) {
    if (f0.is_zero()) throw MathError("zero input");
    std::vector<std::pair<Poly, int>> out;
    Poly f = f0.monic();
    if (f.deg() <= 0) return out;
    Poly d = f.derivative();
    if (d.is_zero()) {
        for (auto& [g, k] : squarefree(pth_root(f))) out.push_back({g, k * (int)f.F->p()});
        return out;
    }
    Poly c = gcd(f, d);
    Poly w = f / c;
    int i = 1;
    while (!w.is_one()) {
        Poly y = gcd(w, c);
        Poly z = w / y;
        if (z.deg() > 0) out.push_back({z.monic(), i});
        ++i;
        w = y;
        c = c / y;
    }
    if (c.deg() > 0) {
        for (auto& [g, k] : squarefree(pth_root(c))) out.push_back({g, k * (int)f.F->p()});
    }
    return out;
}

std::vector<std::pair<Poly, int>> factor(const Poly& f, uint64_t seed) {
    if (f.is_zero()) throw MathError("zero input");
    Rng rng(seed);
    std::vector<std::pair<Poly, int>> out;
    const GF* F = f.F;
    for (auto& [g, mult] : squarefree(f)) {
        if (F->q() <= 16) {
            // Tiny fields: peel linear factors by exhaustive root search first.
            Poly h = g;
            for (uint32_t a = 0; a < F->q() && h.deg() > 0; ++a) {
                if (h.eval(a) == 0) {
                    Poly lin(F, {F->neg(a), 1});
                    out.push_back({lin, mult});
                    h = h / lin;
                }
            }
            if (h.deg() <= 0) continue;
            for (auto& [u, d] : ddf(h.monic())) {
                std::vector<Poly> parts;
                edf(u, d, rng, parts);
                for (auto& p : parts) out.push_back({p, mult});
            }
            continue;
        }
        for (auto& [u, d] : ddf(g)) {
            std::vector<Poly> parts;
            edf(u, d, rng, parts);
            for (auto& p : parts) out.push_back({p, mult});
        }
    }
    // Merge equal factors (can arise across squarefree layers) and sort.
    std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.first < b.first; });
    std::vector<std::pair<Poly, int>> merged;
    for (auto& pr : out) {
        if (!merged.empty() && merged.back().first == pr.first)
            merged.back().second += pr.second;
        else
            merged.push_back(pr);
    }
    return merged;
}

bool is_irreducible(const Poly& f) {
    if (f.deg() <= 0) return false;
    auto fs = factor(f);
    return fs.size() == 1 && fs[0].second == 1;
}

std::vector<uint32_t> roots(const Poly& f) {
    std::vector<uint32_t> r;
    for (auto& [g, m] : factor(f))
        if (g.deg() == 1) r.push_back(f.F->neg(g.c[0]));
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace vbc
