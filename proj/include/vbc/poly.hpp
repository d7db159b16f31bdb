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
#include <utility>
#include <vector>

#include "vbc/gf.hpp"

namespace vbc {

/** Dense univariate polynomial over a finite field, coefficients low to high. */
class Poly {
  public:
    const GF* F = nullptr;
    std::vector<uint32_t> c;

    Poly() = default;
    explicit Poly(const GF* f) : F(f) {}
    Poly(const GF* f, std::vector<uint32_t> coeffs) : F(f), c(std::move(coeffs)) { trim(); }
    static Poly constant(const GF* f, uint32_t a) { return Poly(f, {a}); }
    static Poly monomial(const GF* f, uint32_t a, int d);
    static Poly x(const GF* f) { return monomial(f, 1, 1); }
    static Poly one(const GF* f) { return constant(f, 1); }

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    bool is_constant() const { return c.size() <= 1; }
    uint32_t lc() const { return c.empty() ? 0 : c.back(); }
    uint32_t coeff(int i) const { return i >= 0 && i < (int)c.size() ? c[i] : 0; }
    // Lowest index with a nonzero coefficient (x-adic valuation); -1 for zero.
    int low_deg() const;

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator/(const Poly& o) const { return divmod(o).first; }
    Poly operator%(const Poly& o) const { return divmod(o).second; }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    bool operator==(const Poly& o) const { return c == o.c; }
    bool operator!=(const Poly& o) const { return c != o.c; }
    // Total order: by degree, then coefficients from the top down.
    bool operator<(const Poly& o) const;

    Poly scale(uint32_t a) const;
    Poly shift(int k) const;  // multiply by x^k (k >= 0)
    Poly truncate(int k) const;  // mod x^k
    std::pair<Poly, Poly> divmod(const Poly& d) const;
    Poly monic() const;
    Poly derivative() const;
    uint32_t eval(uint32_t a) const;
    Poly pow(uint64_t e) const;
    Poly powmod(uint64_t e, const Poly& m) const;
    Poly mulmod(const Poly& o, const Poly& m) const { return (*this * o) % m; }
    Poly compose(const Poly& g) const;
    // Reverse coefficients relative to degree d: x^d f(1/x).
    Poly reverse(int d) const;
    std::string str(const std::string& var = "x") const;

  private:
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
};

struct Xgcd {
    Poly g, u, v;
};

Poly gcd(const Poly& a, const Poly& b);
Xgcd xgcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);
// Inverse of a modulo m; throws if not coprime.
Poly invmod(const Poly& a, const Poly& m);
// Multiplicity of the irreducible p in a (a nonzero).
int poly_val(const Poly& a, const Poly& p);

bool is_irreducible(const Poly& f);
std::vector<std::pair<Poly, int>> squarefree(const Poly& f);
// Monic irreducible factors with multiplicity, sorted; unit dropped.
std::vector<std::pair<Poly, int>> factor(const Poly& f, uint64_t seed = 0x5eed);
std::vector<uint32_t> roots(const Poly& f);

}  // namespace vbc
