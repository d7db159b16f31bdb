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

#include "vbc/gf.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace vbc {

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

using V = std::vector<uint64_t>;

void trim(V& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

V pmulmod(const V& a, const V& b, const V& f, uint64_t p) {
    if (a.empty() || b.empty()) return {};
    V r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    size_t m = f.size() - 1;
    for (size_t i = r.size(); i-- > m;) {
        uint64_t c = r[i];
        if (!c) continue;
        for (size_t j = 0; j <= m; ++j) r[i - m + j] = (r[i - m + j] + (p - c) * f[j]) % p;
    }
    r.resize(std::min(r.size(), m));
    trim(r);
    return r;
}

uint64_t ipow(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = r * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return r;
}

V pgcd(V a, V b, uint64_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        uint64_t inv = ipow(b.back(), p - 2, p);
        while (a.size() >= b.size()) {
            uint64_t c = a.back() * inv % p;
            size_t s = a.size() - b.size();
            for (size_t j = 0; j < b.size(); ++j) a[s + j] = (a[s + j] + (p - c) * b[j]) % p;
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    return a;
}

V xpow_pk(const V& f, uint64_t p, unsigned k) {
    // x^(p^k) mod f
    V r = {0, 1};
    for (unsigned i = 0; i < k; ++i) {
        V acc = {1};
        V base = r;
        uint64_t e = p;
        while (e) {
            if (e & 1) acc = pmulmod(acc, base, f, p);
            base = pmulmod(base, base, f, p);
            e >>= 1;
        }
        r = acc;
    }
    return r;
}

bool irreducible_fp(const V& f, uint64_t p) {
    unsigned m = static_cast<unsigned>(f.size() - 1);
    V x = {0, 1};
    V t = xpow_pk(f, p, m);
    V d = t;
    if (d.size() < 2) d.resize(2, 0);
    d[1] = (d[1] + p - 1) % p;
    trim(d);
    if (!d.empty()) return false;
    for (unsigned r = 2; r <= m; ++r) {
        if (m % r || !is_prime(r)) continue;
        V s = xpow_pk(f, p, m / r);
        if (s.size() < 2) s.resize(2, 0);
        s[1] = (s[1] + p - 1) % p;
        trim(s);
        V g = pgcd(s, f, p);
        if (g.size() != 1) return false;
    }
    return true;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> r;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            r.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) r.push_back(n);
    return r;
}

}  // namespace

GF::GF(uint32_t p, unsigned m) : p_(p), m_(m) {
    uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
        q *= p;
        if (q > (1ull << 31)) throw MathError("field too large");
    }
    q_ = static_cast<uint32_t>(q);
    if (m == 1) {
        mod_ = {0, 1};
        return;
    }
    // Smallest monic irreducible in the integer encoding of the lower coefficients.
    for (uint64_t code = 0; code < q; ++code) {
        V f(m + 1, 0);
        uint64_t c = code;
        for (unsigned i = 0; i < m; ++i) {
            f[i] = c % p;
            c /= p;
        }
        f[m] = 1;
        if (f[0] == 0) continue;
        if (irreducible_fp(f, p)) {
            mod_.assign(f.begin(), f.end());
            break;
        }
    }
    if (q_ <= (1u << 22)) {
        // Primitive element search, then exp/log tables.
        auto pf = prime_factors(q_ - 1);
        uint32_t g = 0;
        for (uint32_t cand = 2; cand < q_ && !g; ++cand) {
            bool ok = true;
            for (auto r : pf) {
                uint32_t acc = 1, base = cand;
                uint64_t e = (q_ - 1) / r;
                while (e) {
                    if (e & 1) acc = mul_slow(acc, base);
                    base = mul_slow(base, base);
                    e >>= 1;
                }
                if (acc == 1) {
                    ok = false;
                    break;
                }
            }
            if (ok) g = cand;
        }
        exp_.resize(2 * (q_ - 1));
        log_.assign(q_, 0);
        uint32_t a = 1;
        for (uint32_t i = 0; i < q_ - 1; ++i) {
            exp_[i] = a;
            log_[a] = i;
            a = mul_slow(a, g);
        }
        for (uint32_t i = q_ - 1; i < 2 * (q_ - 1); ++i) exp_[i] = exp_[i - (q_ - 1)];
    }
}

const GF* GF::get(uint32_t p, unsigned m) {
    static std::mutex mu;
    static std::map<std::pair<uint32_t, unsigned>, std::unique_ptr<GF>> reg;
    if (!is_prime(p)) throw MathError("characteristic must be prime");
    if (m == 0) throw MathError("extension degree must be positive");
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = reg[{p, m}];
    if (!slot) slot.reset(new GF(p, m));
    return slot.get();
}

std::vector<uint32_t> GF::digits(uint32_t a) const {
    std::vector<uint32_t> d(m_);
    for (unsigned i = 0; i < m_; ++i) {
        d[i] = a % p_;
        a /= p_;
    }
    return d;
}

uint32_t GF::from_digits(const std::vector<uint32_t>& d) const {
    uint32_t a = 0;
    for (size_t i = d.size(); i-- > 0;) a = a * p_ + d[i] % p_;
    return a;
}

uint32_t GF::add(uint32_t a, uint32_t b) const {
    if (m_ == 1) {
        uint64_t s = uint64_t(a) + b;
        return static_cast<uint32_t>(s >= p_ ? s - p_ : s);
    }
    uint32_t r = 0, pw = 1;
    for (unsigned i = 0; i < m_; ++i) {
        uint32_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        uint32_t s = da + db;
        if (s >= p_) s -= p_;
        r += s * pw;
        pw *= p_;
    }
    return r;
}

uint32_t GF::neg(uint32_t a) const {
    if (m_ == 1) return a ? p_ - a : 0;
    uint32_t r = 0, pw = 1;
    for (unsigned i = 0; i < m_; ++i) {
        uint32_t d = a % p_;
        a /= p_;
        r += (d ? p_ - d : 0) * pw;
        pw *= p_;
    }
    return r;
}

uint32_t GF::sub(uint32_t a, uint32_t b) const { return add(a, neg(b)); }

uint32_t GF::mul_slow(uint32_t a, uint32_t b) const {
    auto da = digits(a), db = digits(b);
    V va(da.begin(), da.end()), vb(db.begin(), db.end()), f(mod_.begin(), mod_.end());
    trim(va);
    trim(vb);
    V r = pmulmod(va, vb, f, p_);
    std::vector<uint32_t> d(m_, 0);
    for (size_t i = 0; i < r.size(); ++i) d[i] = static_cast<uint32_t>(r[i]);
    return from_digits(d);
}

uint32_t GF::mul(uint32_t a, uint32_t b) const {
    if (m_ == 1) return static_cast<uint32_t>(uint64_t(a) * b % p_);
    if (!a || !b) return 0;
    if (!exp_.empty()) return exp_[log_[a] + log_[b]];
    return mul_slow(a, b);
}

uint32_t GF::pow(uint32_t a, uint64_t e) const {
    uint32_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint32_t GF::inv(uint32_t a) const {
    if (!a) throw MathError("division by zero");
    if (m_ == 1) return static_cast<uint32_t>(ipow(a, p_ - 2, p_));
    if (!exp_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    return pow(a, q_ - 2);
}

uint32_t GF::from_int(int64_t v) const {
    int64_t r = v % int64_t(p_);
    if (r < 0) r += p_;
    return static_cast<uint32_t>(r);
}

uint32_t GF::trace_fp(uint32_t a) const {
    uint32_t t = 0, b = a;
    for (unsigned i = 0; i < m_; ++i) {
        t = add(t, b);
        b = pow(b, p_);
    }
    return t;
}

std::string GF::str(uint32_t a) const {
    if (m_ == 1) return std::to_string(a);
    auto d = digits(a);
    std::string s;
    for (size_t i = m_; i-- > 0;) {
        if (!d[i]) continue;
        if (!s.empty()) s += "+";
        std::string mon = i == 0 ? "" : (i == 1 ? "a" : "a^" + std::to_string(i));
        if (i == 0)
            s += std::to_string(d[i]);
        else if (d[i] == 1)
            s += mon;
        else
            s += std::to_string(d[i]) + "*" + mon;
    }
    return s.empty() ? "0" : s;
}

}  // namespace vbc
