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

#include "vbc/ratfunc.hpp"

namespace vbc {

RatFunc::RatFunc(const Poly& n, const Poly& d) {
    if (d.is_zero()) throw MathError("zero denominator");
    const GF* f = d.F;
    if (n.is_zero()) {
        num = Poly(f);
        den = Poly::one(f);
        return;
    }
    if (d.deg() == 0) {
        uint32_t li = f->inv(d.lc());
        num = n.scale(li);
        den = Poly::one(f);
        return;
    }
    Poly g = gcd(n, d);
    Poly nn = g.is_one() ? n : n / g;
    Poly dd = g.is_one() ? d : d / g;
    uint32_t li = f->inv(dd.lc());
    num = nn.scale(li);
    den = dd.scale(li);
}

RatFunc RatFunc::xpow(const GF* f, int k) {
    if (k >= 0) return RatFunc(Poly::monomial(f, 1, k));
    RatFunc r;
    r.num = Poly::one(f);
    r.den = Poly::monomial(f, 1, -k);
    return r;
}

int RatFunc::deg() const {
    if (is_zero()) throw MathError("degree of zero");
    return num.deg() - den.deg();
}

int RatFunc::inf_val() const {
    if (is_zero()) throw MathError("valuation of zero");
    return den.deg() - num.deg();
}

int RatFunc::val(const Poly& p) const {
    if (is_zero()) throw MathError("valuation of zero");
    return poly_val(num, p) - poly_val(den, p);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den == o.den) {
        if (den.is_one()) {
            RatFunc r;
            r.num = num + o.num;
            r.den = den;
            return r;
        }
        return RatFunc(num + o.num, den);
    }
    if (den.is_one()) {
        RatFunc r;
        r.num = num * o.den + o.num;
        r.den = o.den;
        return r;  // already reduced: gcd(num*d+n, d) = gcd(n, d) = 1
    }
    if (o.den.is_one()) {
        RatFunc r;
        r.num = num + o.num * den;
        r.den = den;
        return r;
    }
    Poly g = gcd(den, o.den);
    Poly a = den / g, b = o.den / g;
    Poly n = num * b + o.num * a;
    if (n.is_zero()) return zero_like();
    // Only factors of g can cancel.
    Poly h = gcd(n, g);
    RatFunc r;
    if (h.is_one()) {
        r.num = n;
        r.den = a * o.den;
    } else {
        r = RatFunc(n, a * o.den);
    }
    return r;
}

RatFunc RatFunc::operator-() const {
    RatFunc r;
    r.num = -num;
    r.den = den;
    return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc(num.F ? num.F : o.num.F);
    if (den.is_one() && o.den.is_one()) {
        RatFunc r;
        r.num = num * o.num;
        r.den = den;
        return r;
    }
    Poly g1 = o.den.is_one() ? Poly::one(num.F) : gcd(num, o.den);
    Poly g2 = den.is_one() ? Poly::one(num.F) : gcd(o.num, den);
    Poly n1 = g1.is_one() ? num : num / g1;
    Poly d2 = g1.is_one() ? o.den : o.den / g1;
    Poly n2 = g2.is_one() ? o.num : o.num / g2;
    Poly d1 = g2.is_one() ? den : den / g2;
    Poly n = n1 * n2, d = d1 * d2;
    uint32_t li = d.F->inv(d.lc());
    RatFunc r;
    r.num = li == 1 ? n : n.scale(li);
    r.den = li == 1 ? d : d.scale(li);
    return r;
}

RatFunc RatFunc::inv() const {
    if (is_zero()) throw MathError("division by zero");
    RatFunc r;
    uint32_t li = num.F->inv(num.lc());
    r.num = den.scale(li);
    r.den = num.scale(li);
    return r;
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inv(); }

bool RatFunc::operator<(const RatFunc& o) const {
    if (den != o.den) return den < o.den;
    return num < o.num;
}

RatFunc RatFunc::pow(int e) const {
    if (e < 0) return inv().pow(-e);
    RatFunc r = one_like(), b = *this;
    while (e) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

RatFunc RatFunc::invert_var() const {
    if (is_zero()) return *this;
    const GF* f = num.F;
    int k = den.deg() - num.deg();
    Poly rn = num.reverse(num.deg()), rd = den.reverse(den.deg());
    RatFunc r(rn, rd);
    return r * xpow(f, k);
}

std::vector<uint32_t> RatFunc::inf_expand(int lo, int hi) const {
    const GF* f = num.F;
    std::vector<uint32_t> out(std::max(hi - lo, 0), 0);
    if (is_zero() || hi <= lo) return out;
    int k = den.deg() - num.deg();  // r = t^k * S(t), S(0) != 0
    int need = hi - k;  // coefficients of S up to t^{need-1}
    if (need <= 0) return out;
    Poly rn = num.reverse(num.deg()), rd = den.reverse(den.deg());
    // Power series division S = rn / rd, rd(0) = lc(den) = 1.
    std::vector<uint32_t> s(need, 0), a(need, 0);
    for (int i = 0; i < need; ++i) a[i] = rn.coeff(i);
    uint32_t i0 = f->inv(rd.coeff(0));
    for (int i = 0; i < need; ++i) {
        uint32_t v = a[i];
        for (int j = 1; j <= i && j <= rd.deg(); ++j) v = f->sub(v, f->mul(rd.coeff(j), s[i - j]));
        s[i] = f->mul(v, i0);
    }
    for (int i = lo; i < hi; ++i) {
        int j = i - k;
        if (j >= 0 && j < need) out[i - lo] = s[j];
    }
    return out;
}

RatFunc RatFunc::inf_truncate(int v) const {
    const GF* f = num.F;
    if (is_zero()) return *this;
    int lo = inf_val();
    if (lo >= v) return zero_like();
    auto co = inf_expand(lo, v);
    // sum_{i=lo}^{v-1} c_i x^{-i} = (sum c_i x^{v-1-i}) / x^{v-1}
    std::vector<uint32_t> pc(v - lo, 0);
    for (int i = lo; i < v; ++i) pc[v - 1 - i] = co[i - lo];
    return RatFunc(Poly(f, pc)) * xpow(f, -(v - 1));
}

static bool has_op(const std::string& s, bool mult) {
    int depth = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char ch = s[i];
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && (ch == '+' || (i > 0 && ch == '-') || (mult && ch == '*'))) return true;
    }
    return false;
}

std::string RatFunc::str(const std::string& var) const {
    std::string n = num.str(var);
    if (den.is_one()) return n;
    std::string d = den.str(var);
    if (has_op(n, false)) n = "(" + n + ")";
    if (has_op(d, true)) d = "(" + d + ")";
    return n + "/" + d;
}

}  // namespace vbc
