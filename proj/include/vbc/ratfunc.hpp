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

#pragma once

#include <string>
#include <vector>

#include "vbc/poly.hpp"

namespace vbc {

/** Element of k(x): reduced fraction with monic denominator. */
class RatFunc {
  public:
    Poly num, den;

    RatFunc() = default;
    explicit RatFunc(const GF* f) : num(f), den(Poly::one(f)) {}
    RatFunc(const Poly& n) : num(n), den(Poly::one(n.F)) {}  // NOLINT implicit by design
    RatFunc(const Poly& n, const Poly& d);
    static RatFunc constant(const GF* f, uint32_t a) { return RatFunc(Poly::constant(f, a)); }
    static RatFunc zero(const GF* f) { return RatFunc(f); }
    static RatFunc one(const GF* f) { return constant(f, 1); }
    static RatFunc x(const GF* f) { return RatFunc(Poly::x(f)); }
    // x^k for any integer k.
    static RatFunc xpow(const GF* f, int k);

    const GF* field() const { return num.F; }
    bool is_zero() const { return num.is_zero(); }
    bool is_one() const { return num.is_one() && den.is_one(); }
    bool is_poly() const { return den.is_one(); }
    bool is_constant() const { return den.is_one() && num.is_constant(); }
    // deg(num) - deg(den); throws on zero.
    int deg() const;
    // Valuation at infinity: deg(den) - deg(num).
    int inf_val() const;
    // Valuation at a monic irreducible p of k[x].
    int val(const Poly& p) const;

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator-() const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }
    bool operator<(const RatFunc& o) const;
    RatFunc inv() const;
    RatFunc pow(int e) const;
    RatFunc scale(uint32_t a) const { return RatFunc(num.scale(a), den); }
    RatFunc zero_like() const { return RatFunc(num.F); }
    RatFunc one_like() const { return one(num.F); }
    // Polynomial part (quotient of num by den).
    Poly poly_part() const { return num / den; }
    // Substitute x -> 1/x and multiply by x^k.
    RatFunc invert_var() const;
    // Coefficients c_i of x^{-i} for the expansion at infinity, lo <= i < hi.
    std::vector<uint32_t> inf_expand(int lo, int hi) const;
    // Part of the expansion at infinity with t-exponent < v, t = 1/x (a Laurent polynomial).
    RatFunc inf_truncate(int v) const;
    std::string str(const std::string& var = "x") const;
};

}  // namespace vbc
