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

#include "fixtures.hpp"
#include "vbc/ideal.hpp"

using namespace vbc;
using namespace vbc::testing;

namespace {

PlacePtr place_over(const FieldPtr& K, const Poly& p) { return K->decompose(p).front(); }

// y^2 = x^3 + x^2 over F_7: the order k[x][y] is not maximal at x.
FieldPtr nodal() {
    static FieldPtr K = [] {
        const GF* F = GF::get(7);
        RMat B = RMat::identity(2, RatFunc::one(F));
        B(1, 1) = rat(F, {1}, {0, 1});
        return FieldPtr(FunctionField::make(F, {rat(F, {0, 0, -1, -1}), RatFunc(F), RatFunc::one(F)}, B));
    }();
    return K;
}

}  // namespace

TEST(Ideal, PlaceDegrees) {
    auto K = fixture_a();
    const GF* F = K->k();
    const Order& A = K->order(OrderKind::Fi);
    auto P = place_over(K, poly(F, {0, 1}));
    Ideal p = Ideal::of_place(A, *P);
    EXPECT_EQ(p.deg(), 1);
    EXPECT_EQ(p.inv().deg(), -1);
    Ideal p2 = p * p;
    EXPECT_EQ(p2.valuation(*P), 2);
    EXPECT_EQ(p2, Ideal::principal(A, K->x()));
    EXPECT_EQ(p * p.inv(), Ideal::unit(A));
    EXPECT_TRUE(p.contains(K->y()));
    EXPECT_FALSE(p.contains(K->one()));
    EXPECT_EQ(p.pow(-2), p2.inv());
}

TEST(Ideal, InfiniteOrder) {
    auto K = fixture_a();
    const Order& Ai = K->order(OrderKind::Inf);
    auto Q = K->infinite_places().front();
    Ideal q = Ideal::of_place(Ai, *Q);
    EXPECT_EQ(q.deg(), 1);
    EXPECT_EQ(q.valuation(*Q), 1);
    EXPECT_TRUE(q.contains(Q->pi));
    EXPECT_FALSE(q.contains(K->one()));
    // 1/x has valuation 2 at the ramified place.
    Elem t = K->from_rat(RatFunc::xpow(K->k(), -1));
    EXPECT_EQ(Ideal::principal(Ai, t), q * q);
    EXPECT_EQ(Ideal::principal(Ai, K->x()).deg(), -2);
}

TEST(Ideal, NonMonogenicOrder) {
    auto K = nodal();
    const GF* F = K->k();
    const Order& A = K->order(OrderKind::Fi);
    Elem u = K->y() / K->x();
    EXPECT_TRUE(Ideal::unit(A).contains(u));
    auto ps = K->decompose(poly(F, {0, 1}));
    ASSERT_EQ(ps.size(), 2u);
    Ideal p0 = Ideal::of_place(A, *ps[0]), p1 = Ideal::of_place(A, *ps[1]);
    EXPECT_EQ(p0 * p1, Ideal::principal(A, K->x()));
    EXPECT_EQ(p0.intersect(p1), p0 * p1);
    EXPECT_EQ(p0 + p1, Ideal::unit(A));
    auto [e, f] = coprime_split(p0, p1);
    EXPECT_TRUE(p0.contains(e));
    EXPECT_TRUE(p1.contains(f));
    EXPECT_TRUE((e + f).is_one());
}

TEST(Ideal, ReduceIsCanonical) {
    auto K = fixture_a();
    const GF* F = K->k();
    const Order& A = K->order(OrderKind::Fi);
    auto P = place_over(K, poly(F, {1, 0, 1}));
    Ideal I = Ideal::of_place(A, *P).pow(2);
    Elem a = K->y() * K->x() + K->constant(3);
    Elem b = a + I.basis_elems()[1] * K->x();
    EXPECT_EQ(I.reduce(a), I.reduce(b));
    EXPECT_TRUE(I.contains(a - I.reduce(a)));
}

TEST(PseudoMatrix, HermiteFormIsCanonical) {
    auto K = fixture_a();
    const GF* F = K->k();
    const Order& A = K->order(OrderKind::Fi);
    auto P = place_over(K, poly(F, {0, 1}));
    Ideal p = Ideal::of_place(A, *P);
    PseudoMatrix pm;
    pm.M = EMat(2, 3, K->zero());
    pm.M(0, 0) = K->y();
    pm.M(1, 0) = K->x();
    pm.M(0, 1) = K->one();
    pm.M(1, 1) = K->x() + K->one();
    pm.M(0, 2) = K->x() * K->y();
    pm.M(1, 2) = K->constant(2);
    pm.a = {p, Ideal::unit(A), p.inv()};
    PseudoMatrix h = pseudo_hnf(pm);
    ASSERT_EQ(h.cols(), 2u);
    EXPECT_TRUE(h.M(0, 0).is_one());
    EXPECT_TRUE(h.M(1, 1).is_one());
    EXPECT_TRUE(h.M(1, 0).is_zero());
    EXPECT_TRUE(pm_equal(h, pseudo_hnf(h)));
    // Same module from a permuted generating set.
    PseudoMatrix q = pm;
    std::swap(q.a[0], q.a[2]);
    for (size_t i = 0; i < 2; ++i) std::swap(q.M(i, 0), q.M(i, 2));
    EXPECT_TRUE(pm_equal(pm, q));
    // Membership.
    EVec v = {K->y() * Elem(p.basis_elems()[0]), K->x() * p.basis_elems()[0]};
    EXPECT_TRUE(pm_contains(h, v));
    Ideal p2 = p.inv().pow(2);
    EVec w = {p2.basis_elems()[0], K->zero()};
    EXPECT_EQ(pm_contains(h, w), false);
    // Kernel of a rank-2 map from three columns has rank 1 and maps to zero.
    PseudoMatrix ker = pseudo_kernel(pm);
    ASSERT_EQ(ker.cols(), 1u);
    EVec kc = ker.M.col(0);
    EVec img = pm.M * kc;
    for (auto& x : img) EXPECT_TRUE(x.is_zero());
}

TEST(PseudoMatrix, InfiniteBasisFromGenerators) {
    auto K = fixture_a();
    EVec g1 = {K->x(), K->y()};
    EVec g2 = {K->one(), K->zero()};
    EMat B = inf_basis_from_generators(*K, {g1, g2}, 2);
    ASSERT_EQ(B.c, 2u);
    const Order& Ai = K->order(OrderKind::Inf);
    RMat L = hnf(order_span(Ai, B), Ring::Inf);
    EXPECT_TRUE(lattice_contains(L, to_power_coords(g1), Ring::Inf));
    EXPECT_TRUE(lattice_contains(L, to_power_coords(g2), Ring::Inf));
}
