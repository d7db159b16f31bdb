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

#include <utility>
#include <vector>

#include "vbc/pairs.hpp"

namespace vbc::testing {

inline Poly poly(const GF* F, std::vector<int64_t> c) {
    std::vector<uint32_t> v;
    for (auto x : c) v.push_back(F->from_int(x));
    return Poly(F, v);
}

inline RatFunc rat(const GF* F, std::vector<int64_t> num, std::vector<int64_t> den = {1}) {
    return RatFunc(poly(F, num), poly(F, den));
}

// y^2 = x^3 + x over F_7.
inline FieldPtr fixture_a() {
    static FieldPtr K = [] {
        const GF* F = GF::get(7);
        return FieldPtr(FunctionField::make(F, {rat(F, {0, -1, 0, -1}), RatFunc(F), RatFunc::one(F)}));
    }();
    return K;
}

// y^2 = x^5 + 1 over F_101.
inline FieldPtr fixture_b() {
    static FieldPtr K = [] {
        const GF* F = GF::get(101);
        return FieldPtr(FunctionField::make(F, {rat(F, {-1, 0, 0, 0, 0, -1}), RatFunc(F), RatFunc::one(F)}));
    }();
    return K;
}

// Place over the prime x of Fixture A (the ideal <x, y>).
inline PlacePtr fixture_a_p() { return fixture_a()->decompose(Poly::x(fixture_a()->k())).front(); }

// pi = y / x^2 at the infinite place of Fixture A.
inline Elem fixture_a_pi() {
    auto K = fixture_a();
    return K->y() * K->from_rat(RatFunc::xpow(K->k(), -2));
}

// L = LP((A, p^-1), diag(x^2/(x^2+4), 1), [[1, -1/pi], [0, 1]]).
inline MatrixPair fixture_a_L() {
    auto K = fixture_a();
    const GF* F = K->k();
    const Order& A = K->order(OrderKind::Fi);
    Ideal p = Ideal::of_place(A, *fixture_a_p());
    EMat gfi = EMat::identity(2, K->one()), ginf = EMat::identity(2, K->one());
    gfi(0, 0) = K->from_rat(rat(F, {0, 0, 1}, {4, 0, 1}));
    ginf(0, 1) = -fixture_a_pi().inv();
    return make_pair(K, {Ideal::unit(A), p.inv()}, gfi, ginf);
}

// pi = y / x^3 at the infinite place of Fixture B.
inline Elem fixture_b_pi() {
    auto K = fixture_b();
    return K->y() * K->from_rat(RatFunc::xpow(K->k(), -3));
}

// Places <x, y + 1> (first) and <x, y - 1> (second) of Fixture B.
inline std::pair<PlacePtr, PlacePtr> fixture_b_p12() {
    auto K = fixture_b();
    auto ps = K->decompose(Poly::x(K->k()));
    PlacePtr p1 = K->valuation(K->y() + K->one(), *ps[0]) > 0 ? ps[0] : ps[1];
    PlacePtr p2 = p1 == ps[0] ? ps[1] : ps[0];
    return {p1, p2};
}

// The three line bundles of the rank-3 degree-10 example: L, L1, L2.
struct FixtureBLines {
    MatrixPair L, L1, L2;
};
inline FixtureBLines fixture_b_lines() {
    auto K = fixture_b();
    const Order& A = K->order(OrderKind::Fi);
    auto [p1, p2] = fixture_b_p12();
    return {rank1_pair(K, Ideal::unit(A), K->one(), fixture_b_pi().pow(-4)),
            rank1_pair(K, Ideal::of_place(A, *p1).pow(-3), K->one(), K->one()),
            rank1_pair(K, Ideal::of_place(A, *p2).pow(-3), K->one(), K->one())};
}

// Reference dual bases of the two extension steps (step 2: a; step 3: f_1, ..., f_4).
inline std::vector<EVec> fixture_b_reference_basis(size_t step) {
    auto K = fixture_b();
    const GF* F = K->k();
    Elem d6 = K->from_rat(rat(F, {6, 0, 0, 0, 0, 1}).inv());
    auto R = [&](std::vector<int64_t> n) { return K->from_rat(rat(F, n)) * d6; };
    if (step == 2) return {{R({0, 0, -2}) * (K->y() + K->one())}};
    Elem half = K->constant(F->inv(F->from_int(-2)));
    Elem x4 = R({0, 0, 0, 0, 1}), x5 = R({0, 0, 0, 0, 0, 1}), x7 = R({0, 0, 0, 0, 0, 0, 0, 1});
    Elem x8 = R({0, 0, 0, 0, 0, 0, 0, 0, 1});
    return {{K->zero(), x7},
            {K->zero(), x4 * K->y() - x4},
            {x7, x8 * half},
            {x4 * K->y() + x4, (x5 * K->y() - x5) * half}};
}

// Expected E_2 and E_3.
inline std::pair<MatrixPair, MatrixPair> fixture_b_reference_pairs() {
    auto K = fixture_b();
    const Order& A = K->order(OrderKind::Fi);
    auto lines = fixture_b_lines();
    Elem pi = fixture_b_pi();
    EMat g2 = EMat::identity(2, K->one());
    g2(0, 1) = (K->constant(2) * pi * pi).inv();
    EMat g3 = EMat::identity(3, K->one());
    g3(0, 1) = g2(0, 1);
    g3(1, 2) = -pi.inv();
    g3(2, 2) = pi.pow(-4);
    return {make_pair(K, {lines.L1.a[0], lines.L2.a[0]}, EMat::identity(2, K->one()), g2),
            make_pair(K, {lines.L1.a[0], lines.L2.a[0], Ideal::unit(A)}, EMat::identity(3, K->one()), g3)};
}

}  // namespace vbc::testing
