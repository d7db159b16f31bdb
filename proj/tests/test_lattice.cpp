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

#include <gtest/gtest.h>

#include "vbc/lattice.hpp"

using namespace vbc;

namespace {

const GF* F7 = GF::get(7);

RatFunc rp(Rng& rng, int maxdeg) {
    std::vector<uint32_t> v(rng() % (maxdeg + 1) + 1);
    for (auto& a : v) a = F7->random(rng);
    return RatFunc(Poly(F7, v));
}

RatFunc rr(Rng& rng, int maxdeg) {
    RatFunc d = rp(rng, maxdeg);
    if (d.is_zero()) d = RatFunc::one(F7);
    return rp(rng, maxdeg) / d;
}

RMat unimodular_poly(Rng& rng, size_t n) {
    RMat U = RMat::identity(n, RatFunc::one(F7));
    for (int t = 0; t < 6; ++t) {
        size_t i = rng() % n, j = rng() % n;
        if (i == j) continue;
        RatFunc f = rp(rng, 2);
        for (size_t k = 0; k < n; ++k) U(k, j) += f * U(k, i);
    }
    return U;
}

RMat unimodular_inf(Rng& rng, size_t n) {
    RMat U = RMat::identity(n, RatFunc::one(F7));
    for (int t = 0; t < 6; ++t) {
        size_t i = rng() % n, j = rng() % n;
        if (i == j) continue;
        RatFunc f = rp(rng, 2) / RatFunc(Poly::monomial(F7, 1, 2));
        if (!in_ring(f, Ring::Inf)) continue;
        for (size_t k = 0; k < n; ++k) U(k, j) += f * U(k, i);
    }
    return U;
}

}  // namespace

TEST(Hnf, Basic) {
    RMat I = RMat::identity(3, RatFunc::one(F7));
    EXPECT_EQ(hnf(I, Ring::Poly), I);
    EXPECT_EQ(hnf(I, Ring::Inf), I);
    RMat m(1, 2, RatFunc(F7));
    m(0, 0) = RatFunc::x(F7);
    m(0, 1) = RatFunc::x(F7) * RatFunc::x(F7);
    RMat h = hnf(m, Ring::Poly);
    ASSERT_EQ(h.c, 1u);
    EXPECT_EQ(h(0, 0), RatFunc::x(F7));
}

TEST(Hnf, CanonicalUnderGeneratorChange) {
    Rng rng(3);
    for (int t = 0; t < 30; ++t) {
        size_t n = 1 + rng() % 3;
        RMat B(n, n, RatFunc(F7));
        for (auto& a : B.a) a = rr(rng, 2);
        if (det(B).is_zero()) continue;
        for (Ring R : {Ring::Poly, Ring::Inf}) {
            RMat U = R == Ring::Poly ? unimodular_poly(rng, n) : unimodular_inf(rng, n);
            RMat extra = B * (R == Ring::Poly ? unimodular_poly(rng, n) : unimodular_inf(rng, n));
            RMat H1 = hnf(B, R);
            RMat H2 = hnf((B * U).hcat(extra), R);
            EXPECT_EQ(H1, H2);
            EXPECT_TRUE(lattice_contains(H1, B, R));
            EXPECT_TRUE(lattice_contains(B, H1, R));
            auto v = B.col(0);
            auto red = lattice_reduce(H1, v, R);
            for (auto& a : red) EXPECT_TRUE(a.is_zero());
        }
    }
}

TEST(Hnf, PreimageAndIntersection) {
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
        size_t n = 2;
        RMat B1(n, n, RatFunc(F7)), B2(n, n, RatFunc(F7));
        for (auto& a : B1.a) a = rr(rng, 2);
        for (auto& a : B2.a) a = rr(rng, 2);
        if (det(B1).is_zero() || det(B2).is_zero()) continue;
        for (Ring R : {Ring::Poly, Ring::Inf}) {
            RMat I = lattice_intersect(B1, B2, R);
            EXPECT_TRUE(lattice_contains(B1, I, R));
            EXPECT_TRUE(lattice_contains(B2, I, R));
            RMat S = lattice_sum(B1, B2, R);
            EXPECT_TRUE(lattice_contains(S, B1, R));
            EXPECT_TRUE(lattice_contains(S, B2, R));
            // Index identity: det(I) det(S) ~ det(B1) det(B2).
            RatFunc q = det(I) * det(S) / (det(B1) * det(B2));
            if (R == Ring::Poly)
                EXPECT_TRUE(q.is_constant());
            else
                EXPECT_EQ(q.inf_val(), 0);
        }
    }
}

TEST(Popov, IdentityAndRandom) {
    RMat I = RMat::identity(3, RatFunc::one(F7));
    EXPECT_EQ(weak_popov(I).P, I);
    Rng rng(11);
    for (int t = 0; t < 30; ++t) {
        size_t n = 2 + rng() % 3;
        RMat D = RMat::identity(n, RatFunc::one(F7));
        for (size_t i = 0; i < n; ++i) D(i, i) = rp(rng, 3) + RatFunc::xpow(F7, 4);
        RMat M = unimodular_poly(rng, n) * D * unimodular_poly(rng, n);
        auto res = weak_popov(M);
        EXPECT_TRUE(is_popov(res.P));
        EXPECT_EQ(M * res.U, res.P);
        EXPECT_TRUE(det(res.U).is_constant());
        EXPECT_EQ(hnf(res.P, Ring::Poly), hnf(M, Ring::Poly));
        // Popov form is unique.
        auto res2 = weak_popov(M * unimodular_poly(rng, n));
        EXPECT_EQ(res2.P, res.P);
        // Degree predictability.
        RVec a(n, RatFunc(F7));
        int expect = -1;
        for (size_t i = 0; i < n; ++i) {
            a[i] = rp(rng, 2);
            if (!a[i].is_zero()) expect = std::max(expect, a[i].num.deg() + col_norm(res.P, i));
        }
        RMat v = RMat::column(res.P * a, RatFunc(F7));
        EXPECT_EQ(col_norm(v, 0), expect);
    }
}

TEST(Popov, SingularRejected) {
    RMat M(2, 2, RatFunc(F7));
    M(0, 0) = RatFunc::x(F7);
    M(0, 1) = RatFunc::x(F7);
    M(1, 0) = RatFunc::one(F7);
    M(1, 1) = RatFunc::one(F7);
    EXPECT_THROW(weak_popov(M), MathError);
}
