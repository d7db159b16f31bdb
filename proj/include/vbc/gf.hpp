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

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace vbc {

using Rng = std::mt19937_64;

// Uniform integer in [0, n) independent of the standard library implementation.
inline uint64_t rand_below(Rng& rng, uint64_t n) { return n ? rng() % n : 0; }

struct MathError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/**
 * Finite field F_q, q = p^m, presented as F_p[z]/(f) with f the lexicographically
 * smallest monic irreducible of degree m. Elements are encoded as integers
 * sum d_i p^i with digits d_i the coefficients of z^i. Contexts are interned.
 */
class GF {
  public:
    static const GF* get(uint32_t p, unsigned m = 1);

    uint32_t p() const { return p_; }
    unsigned m() const { return m_; }
    uint32_t q() const { return q_; }
    bool prime_field() const { return m_ == 1; }
    const std::vector<uint32_t>& modulus() const { return mod_; }

    uint32_t add(uint32_t a, uint32_t b) const;
    uint32_t sub(uint32_t a, uint32_t b) const;
    uint32_t neg(uint32_t a) const;
    uint32_t mul(uint32_t a, uint32_t b) const;
    uint32_t inv(uint32_t a) const;
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }
    uint32_t pow(uint32_t a, uint64_t e) const;
    uint32_t from_int(int64_t v) const;
    // Generator z of F_q over F_p (equals p when m > 1, 1 otherwise is not meaningful).
    uint32_t gen() const { return m_ > 1 ? p_ : 1; }
    std::vector<uint32_t> digits(uint32_t a) const;
    uint32_t from_digits(const std::vector<uint32_t>& d) const;
    // Trace to F_p as an integer in [0, p).
    uint32_t trace_fp(uint32_t a) const;
    uint32_t random(Rng& rng) const { return static_cast<uint32_t>(rand_below(rng, q_)); }
    std::string str(uint32_t a) const;

  private:
    GF(uint32_t p, unsigned m);
    uint32_t mul_slow(uint32_t a, uint32_t b) const;

    uint32_t p_;
    unsigned m_;
    uint32_t q_;
    std::vector<uint32_t> mod_;  // monic modulus over F_p, low to high
    std::vector<uint32_t> exp_, log_;  // tables when m > 1 and q small
};

/** Field element with its context; value semantics. */
struct Fe {
    const GF* F = nullptr;
    uint32_t v = 0;

    Fe() = default;
    Fe(const GF* f, uint32_t val) : F(f), v(val) {}
    static Fe zero(const GF* f) { return Fe(f, 0); }
    static Fe one(const GF* f) { return Fe(f, 1); }

    bool is_zero() const { return v == 0; }
    bool is_one() const { return v == 1; }
    Fe operator+(const Fe& o) const { return Fe(F, F->add(v, o.v)); }
    Fe operator-(const Fe& o) const { return Fe(F, F->sub(v, o.v)); }
    Fe operator-() const { return Fe(F, F->neg(v)); }
    Fe operator*(const Fe& o) const { return Fe(F, F->mul(v, o.v)); }
    Fe operator/(const Fe& o) const {
        if (o.v == 0) throw MathError("division by zero");
        return Fe(F, F->div(v, o.v));
    }
    Fe& operator+=(const Fe& o) { return *this = *this + o; }
    Fe& operator-=(const Fe& o) { return *this = *this - o; }
    Fe& operator*=(const Fe& o) { return *this = *this * o; }
    bool operator==(const Fe& o) const { return v == o.v; }
    bool operator!=(const Fe& o) const { return v != o.v; }
    Fe inv() const { return Fe::one(F) / *this; }
    Fe zero_like() const { return Fe(F, 0); }
    Fe one_like() const { return Fe(F, 1); }
};

bool is_prime(uint64_t n);

}  // namespace vbc
