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
#include "vbc/bundle_algebra.hpp"

namespace vbc {
namespace {

using namespace vbc::testing;

MatrixPair line(int twist_inf) {
    auto K = fixture_a();
    const Order& A = K->order(OrderKind::Fi);
    Ideal p = Ideal::of_place(A, *fixture_a_p());
    return rank1_pair(K, p.inv(), K->one(), fixture_a_pi().pow(twist_inf));
}

TEST(BundleAlgebra, RankOneEndomorphisms) {
    auto A = end_algebra(line(1));
    EXPECT_EQ(A.dim, 1u);
    EXPECT_TRUE(A.associative());
}

TEST(BundleAlgebra, SumOfEqualLines) {
    MatrixPair L = line(0);  // degree 1
    ASSERT_EQ(degree(L), 1);
    MatrixPair LL = dsum(L, L);
    auto A = end_algebra(LL);
    EXPECT_EQ(A.dim, 4u);
    Rng rng(7);
    auto D = wedderburn_malcev(A, rng);
    ASSERT_EQ(D.factors.size(), 1u);
    EXPECT_EQ(D.factors[0].n, 2u);
    auto S = split_lattice(LL, rng);
    ASSERT_EQ(S.factors.size(), 1u);
    EXPECT_EQ(S.factors[0].multiplicity, 2);
    EXPECT_EQ(degree(S.factors[0].bundle), 1);
    EXPECT_TRUE(S.verified);
    EXPECT_TRUE(is_isomorphism(S.source(), LL, S.T));
}

TEST(BundleAlgebra, DistinctDegreeZeroLines) {
    auto K = fixture_a();
    MatrixPair O = trivial_pair(K, 1), L0 = line(1);
    ASSERT_EQ(degree(L0), 0);
    auto A = end_algebra(dsum(O, L0));
    EXPECT_EQ(A.dim, 2u);
    Rng rng(3);
    auto D = wedderburn_malcev(A, rng);
    EXPECT_EQ(D.factors.size(), 2u);
    EXPECT_EQ(D.radical.c, 0u);
    EXPECT_FALSE(isom_indecomposable(O, L0, rng).found());
    auto S = split_lattice(dsum(L0, O), rng);
    EXPECT_EQ(S.factors.size(), 2u);
    EXPECT_FALSE(isom_general(O, L0, rng).found());
}

TEST(BundleAlgebra, IsomorphismOfTwistedLine) {
    auto K = fixture_a();
    MatrixPair L = line(1);
    EMat c = EMat::identity(1, K->one());
    c(0, 0) = K->x() + K->y() * K->constant(3);
    MatrixPair Lt = transform(L, c);
    Rng rng(11);
    auto r = isom_indecomposable(L, Lt, rng);
    ASSERT_TRUE(r.found());
    EXPECT_TRUE(is_isomorphism(L, Lt, r.hom->M));
    auto mc = isom_monte_carlo(L, Lt, 5);
    ASSERT_TRUE(mc.found());
    EXPECT_TRUE(is_isomorphism(L, Lt, mc.hom->M));
    auto gen = isom_general(dsum(L, L), dsum(Lt, L), rng);
    ASSERT_TRUE(gen.found());
    // Different degree is rejected.
    EXPECT_FALSE(isom_general(L, line(0), rng).found());
    EXPECT_EQ(isom_monte_carlo(L, line(0), 1).reason, "dimension mismatch");
}

TEST(BundleAlgebra, SmallFieldIsRejected) {
    // End(L + L) has dimension 4; Monte-Carlo over F_3 is refused.
    const GF* F = GF::get(3);
    auto K = FieldPtr(FunctionField::make(F, {rat(F, {0, -1, 0, -1}), RatFunc(F), RatFunc::one(F)}));
    MatrixPair O = trivial_pair(K, 2);
    try {
        isom_monte_carlo(O, O, 1);
        ADD_FAILURE() << "expected an error";
    } catch (const MathError& e) {
        EXPECT_STREQ(e.what(), "field too small; use deterministic path");
    }
}

}  // namespace
}  // namespace vbc
