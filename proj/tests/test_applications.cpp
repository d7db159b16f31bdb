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

#include <algorithm>

#include "fixtures.hpp"
#include "vbc/applications.hpp"

namespace vbc {
namespace {

using namespace vbc::testing;

MatrixPair example_L0() {
    auto K = fixture_a();
    Ideal p = Ideal::of_place(K->order(OrderKind::Fi), *fixture_a_p());
    return rank1_pair(K, p.inv(), K->one(), fixture_a_pi());
}

TEST(Elliptic, Context) {
    auto K = fixture_a();
    auto E = EllipticContext::make(K);
    EXPECT_EQ(K->elem_str(E.h), "(x^2+3)/x^2");
    EXPECT_EQ(degree(E.Linf), 1);
    EXPECT_EQ(degree(E.S), 0);
    EXPECT_THROW(EllipticContext::make(fixture_b()), MathError);
    auto P = K->places_of_degree(1).front();
    EXPECT_EQ(degree(pic0_line(E, P)), 0);
}

TEST(Elliptic, AtiyahFr) {
    auto K = fixture_a();
    auto E = EllipticContext::make(K);
    EXPECT_TRUE(equals(atiyah_Fr(E, 1), trivial_pair(K, 1)));
    MatrixPair F2 = atiyah_Fr(E, 2);
    EXPECT_EQ(F2.rank(), 2u);
    EXPECT_EQ(degree(F2), 0);
    EXPECT_EQ(h0(F2).dim(), 1u);
    auto A2 = end_algebra(F2);
    EXPECT_EQ(A2.dim, 2u);
    EXPECT_EQ(radical(A2).c, 1u);
    MatrixPair F3 = atiyah_Fr(E, 3);
    EXPECT_EQ(h0(F3).dim(), 1u);
    EXPECT_EQ(end_algebra(F3).dim, 3u);
    Rng rng(2);
    EXPECT_FALSE(isom_general(F3, dsum(F2, trivial_pair(K, 1)), rng).found());
}

TEST(Elliptic, AtiyahBundleWorkedExample) {
    auto K = fixture_a();
    auto E = EllipticContext::make(K);
    MatrixPair L0 = example_L0();
    MatrixPair L1 = tensor(L0, tensor(E.Linf, E.Linf));
    auto H = h0(L1);
    ASSERT_EQ(H.dim(), 2u);
    // Span {1, x pi}.
    Elem xpi = K->x() * fixture_a_pi();
    SectionCoords sc(*K, H.vecs);
    EXPECT_NO_THROW(sc({K->one()}));
    EXPECT_NO_THROW(sc({xpi}));
    MatrixPair G = atiyah_bundle(E, L0, 3, 2);
    Elem pi = fixture_a_pi();
    const Order& A = K->order(OrderKind::Fi);
    Ideal hI = Ideal::principal(A, E.h);
    Ideal p = Ideal::of_place(A, *fixture_a_p());
    EMat g = EMat::identity(3, K->one());
    g(0, 2) = -pi.pow(-2);
    g(1, 2) = -pi.inv();
    g(2, 2) = pi.inv();
    EXPECT_TRUE(equals(G, make_pair(K, {hI, hI, p.inv()}, EMat::identity(3, K->one()), g)));
    EXPECT_EQ(degree(G), 2);
    auto End = end_algebra(G);
    ASSERT_EQ(End.dim, 1u);
    auto iso = isom_monte_carlo(det_pair(G), L1, 1);
    ASSERT_TRUE(iso.found());
    Elem ratio = iso.hom->M(0, 0) * E.h * E.h;
    EXPECT_TRUE(ratio.is_rational() && ratio.c[0].is_constant() && !ratio.is_zero());
    Rng rng(4);
    EXPECT_TRUE(isom_indecomposable(L1, det_pair(G), rng).found());
    // The bundle together with L1 splits into ranks 3 and 1.
    auto S = split_lattice(dsum(G, L1), rng);
    ASSERT_EQ(S.factors.size(), 2u);
    std::vector<size_t> ranks{S.factors[0].bundle.rank(), S.factors[1].bundle.rank()};
    std::sort(ranks.begin(), ranks.end());
    EXPECT_EQ(ranks, (std::vector<size_t>{1, 3}));
}

TEST(Elliptic, OtherRanksAndDegrees) {
    auto K = fixture_a();
    auto E = EllipticContext::make(K);
    MatrixPair L0 = example_L0();
    EXPECT_TRUE(equals(atiyah_bundle(E, L0, 1, 0), L0));
    for (auto [r, d] : std::vector<std::pair<int, int>>{{2, 1}, {2, -1}, {2, 3}, {3, 1}}) {
        MatrixPair G = atiyah_bundle(E, L0, r, d);
        EXPECT_EQ(static_cast<int>(G.rank()), r);
        EXPECT_EQ(degree(G), d);
    }
}

TEST(WeaklyStable, ReferenceChain) {
    auto K = fixture_b();
    auto ctx = SerreContext::make(K);
    auto lines = fixture_b_lines();
    Divisor D;
    for (int a : {2, 3, 5})
        for (auto& P : K->decompose(Poly(K->k(), {K->k()->neg(a), 1}))) D.add(P, 1);
    auto hook = [](size_t step, const MatrixPair&, const MatrixPair&) {
        return std::optional<std::vector<EVec>>(fixture_b_reference_basis(step));
    };
    auto res = weakly_stable_bundle(ctx, 3, 10, D, lines.L1, lines.L2, lines.L, hook);
    auto [E2, E3] = fixture_b_reference_pairs();
    ASSERT_EQ(res.chain.size(), 3u);
    EXPECT_TRUE(equals(res.chain[1], E2));
    EXPECT_TRUE(equals(res.chain[2], E3));
    auto code = ag_code_generator(res.bundle(), D);
    EXPECT_EQ(code.generator.r, h0(res.bundle()).dim());
    EXPECT_EQ(code.rank, code.generator.r);
    // Default dual bases give another valid bundle of the same type.
    auto res2 = weakly_stable_bundle(ctx, 3, 10, D, lines.L1, lines.L2, lines.L);
    EXPECT_EQ(degree(res2.bundle()), 10);
    EXPECT_TRUE(is_balanced(res2.bundle(), D));
    for (int t = 0; t < 5; ++t) {
        EVec v{K->x() * K->constant(t + 1), K->y() + K->constant(t), K->one()};
        EXPECT_LE(degree(line_subbundle(res2.bundle(), v)) * 3, 10);
    }
    // Rank 1 is the first input.
    EXPECT_TRUE(equals(weakly_stable_bundle(ctx, 1, 3, D, lines.L1, lines.L2, lines.L).bundle(), lines.L1));
    EXPECT_THROW(weakly_stable_bundle(ctx, 3, 12, D, lines.L1, lines.L2, lines.L), MathError);
}

TEST(AgCode, EmptyDivisorAndBalance) {
    auto K = fixture_a();
    MatrixPair L = example_L0();
    auto c = ag_code_generator(L, Divisor{});
    EXPECT_EQ(c.generator.c, 0u);
    Divisor D;
    D.add(fixture_a_p(), 1);
    try {
        ag_code_generator(L, D);
        ADD_FAILURE() << "expected an error";
    } catch (const MathError& e) {
        EXPECT_STREQ(e.what(), "evaluation undefined");
    }
}

TEST(AgCode, ClassicalOnePointCode) {
    // L(5 O) on Fixture A has basis 1, x, y, x^2, x y; evaluate at rational points.
    auto K = fixture_a();
    const GF* F = K->k();
    Divisor G;
    G.add(K->infinite_places().front(), 5);
    MatrixPair L = line_bundle(K, G);
    Divisor D;
    std::vector<PlacePtr> pts;
    for (auto& P : K->places_of_degree(1))
        if (P->deg == 1 && !(P->prime == Poly::x(F))) {
            D.add(P, 1);
            pts.push_back(P);
        }
    auto code = ag_code_generator(L, D);
    ASSERT_EQ(code.generator.r, 5u);
    ASSERT_EQ(code.generator.c, pts.size());
    FMat ev(5, pts.size(), Fe::zero(F));
    std::vector<std::pair<int, int>> mono{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}};
    size_t j = 0;
    for (auto& [P, c] : D.terms) {
        Fe a(F, F->neg(P->prime.coeff(0)));
        Fe b = K->reduce(K->y(), *P)[0];
        for (size_t t = 0; t < mono.size(); ++t) {
            Fe v = Fe::one(F);
            for (int i = 0; i < mono[t].first; ++i) v *= a;
            for (int i = 0; i < mono[t].second; ++i) v *= b;
            ev(t, j) = v;
        }
        ++j;
    }
    EXPECT_EQ(rank(ev), rank(code.generator));
    EXPECT_EQ(rank(ev.vcat(code.generator)), rank(ev));
    EXPECT_EQ(code.rank, 5u);
}

}  // namespace
}  // namespace vbc
