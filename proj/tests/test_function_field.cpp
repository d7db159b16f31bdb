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

using namespace vbc;
using namespace vbc::testing;

namespace {

Elem random_elem(const FieldPtr& K, Rng& rng, int dnum, int dden) {
    const GF* F = K->k();
    RVec c(K->n(), RatFunc(F));
    for (auto& x : c) {
        std::vector<uint32_t> nu(dnum + 1), de(dden + 1);
        for (auto& a : nu) a = F->random(rng);
        for (auto& a : de) a = F->random(rng);
        de[dden] = 1;
        x = RatFunc(Poly(F, nu), Poly(F, de));
    }
    Elem e = K->elem(c);
    if (e.is_zero()) e = K->one();
    return e;
}

}  // namespace

TEST(FunctionField, FixtureABasics) {
    auto K = fixture_a();
    const GF* F = K->k();
    EXPECT_EQ(K->n(), 2);
    EXPECT_EQ(K->shift(), 2);
    EXPECT_EQ(K->genus(), 1);
    auto over_x = K->decompose(Poly::x(F));
    ASSERT_EQ(over_x.size(), 1u);
    const Place& p = *over_x[0];
    EXPECT_EQ(p.e, 2);
    EXPECT_EQ(p.deg, 1);
    EXPECT_EQ(K->valuation(K->x(), p), 2);
    EXPECT_EQ(K->valuation(K->y(), p), 1);
    EXPECT_EQ(K->valuation(p.pi, p), 1);
    auto inf = K->infinite_places();
    ASSERT_EQ(inf.size(), 1u);
    const Place& Q = *inf[0];
    EXPECT_EQ(Q.deg, 1);
    EXPECT_EQ(Q.e, 2);
    Elem pi = K->y() * K->from_rat(RatFunc::xpow(F, -2));
    EXPECT_EQ(Q.pi, pi);
    Elem xpi = K->x() * pi;
    EXPECT_EQ(K->valuation(xpi, Q), -1);
    auto ex = K->expand(xpi, Q, -1, 4);
    std::vector<uint32_t> got;
    for (auto& c : ex) got.push_back(c[0].v);
    EXPECT_EQ(got, (std::vector<uint32_t>{1, 0, 0, 0}));
    auto e2 = K->expand(Q.pi, Q, 0, 2);
    EXPECT_EQ(e2[0][0].v, 0u);
    EXPECT_EQ(e2[1][0].v, 1u);
}

TEST(FunctionField, FixtureADivisors) {
    auto K = fixture_a();
    const GF* F = K->k();
    Divisor dy = K->divisor_of(K->y());
    EXPECT_EQ(dy.deg(), 0);
    EXPECT_EQ(dy.coeff(K->infinite_places()[0]), -3);
    EXPECT_EQ(K->height(K->y()), 3);
    EXPECT_EQ(K->height(K->one()), 0);
    EXPECT_TRUE(K->divisor_of(K->one()).terms.empty());
    Divisor dw = K->differential_divisor(K->default_differential());
    Divisor target = K->divisor_of(K->from_rat(rat(F, {3, 0, 1}, {0, 0, 1})));
    EXPECT_EQ(dw, target);
    EXPECT_EQ(dw.deg(), 0);
    // Residue of pi^{-1} at infinity against d(pi).
    Repartition r;
    r.inf = {K->infinite_places()[0]->pi.inv()};
    EXPECT_EQ(K->residue(r, K->default_differential()).v, 1u);
}

TEST(FunctionField, RationalHeight) {
    const GF* F = GF::get(7);
    auto K = FunctionField::rational(F);
    EXPECT_EQ(K->genus(), 0);
    Elem r = K->from_rat(rat(F, {0, 0, 1}, {4, 0, 1}));
    // Zeros: 2 at x. Poles: x^2+4 is irreducible of degree 2. deg(num) + deg(den) bounds it.
    EXPECT_EQ(K->height(r), 2);
    EXPECT_LE(K->height(r), 4);
    Elem dpi = K->derivative(K->infinite_places()[0]->pi);
    Differential dx{dpi.inv(), K->infinite_places()[0]};
    Divisor D = K->differential_divisor(dx);
    EXPECT_EQ(D.deg(), -2);
    EXPECT_EQ(D.coeff(K->infinite_places()[0]), -2);
}

TEST(FunctionField, LinearModel) {
    const GF* F = GF::get(5);
    auto K = FunctionField::make(F, {rat(F, {0, -1}), RatFunc::one(F)});
    EXPECT_EQ(K->genus(), 0);
    EXPECT_EQ(K->n(), 1);
}

TEST(FunctionField, FixtureB) {
    auto K = fixture_b();
    const GF* F = K->k();
    EXPECT_EQ(K->genus(), 2);
    auto over_x = K->decompose(Poly::x(F));
    ASSERT_EQ(over_x.size(), 2u);
    int hits_plus = 0, hits_minus = 0;
    for (auto& P : over_x) {
        EXPECT_EQ(P->e, 1);
        Elem yp = K->y() + K->one(), ym = K->y() - K->one();
        if (K->valuation(yp, *P) >= 1) ++hits_plus;
        if (K->valuation(ym, *P) >= 1) ++hits_minus;
    }
    EXPECT_EQ(hits_plus, 1);
    EXPECT_EQ(hits_minus, 1);
    auto inf = K->infinite_places();
    ASSERT_EQ(inf.size(), 1u);
    EXPECT_EQ(inf[0]->e, 2);
    Elem pi = K->y() * K->from_rat(RatFunc::xpow(F, -3));
    EXPECT_EQ(inf[0]->pi, pi);
    Elem a = (K->y() + K->one()) * K->from_rat(rat(F, {0, 0, -2}, {6, 0, 0, 0, 0, 1}));
    auto ex = K->expand(a, *inf[0], 1, 5);
    EXPECT_EQ(ex[0][0].v, F->from_int(-2));
    for (int i = 1; i < 5; ++i) EXPECT_EQ(ex[i][0].v, 0u);
    EXPECT_EQ(K->differential_divisor(K->default_differential()).deg(), 2);
}

TEST(FunctionField, ProductFormulaAndExpansion) {
    Rng rng(11);
    for (auto K : {fixture_a(), fixture_b()}) {
        for (int t = 0; t < 8; ++t) {
            Elem a = random_elem(K, rng, 3, 2);
            Divisor D = K->divisor_of(a);
            EXPECT_EQ(D.deg(), 0);
            for (auto& [P, v] : D.terms) {
                auto ex = K->expand(a, *P, v - 1, 2);
                bool z0 = true, z1 = true;
                for (auto& c : ex[0]) z0 = z0 && c.is_zero();
                for (auto& c : ex[1]) z1 = z1 && c.is_zero();
                EXPECT_TRUE(z0);
                EXPECT_FALSE(z1);
            }
            Elem b = random_elem(K, rng, 2, 1);
            EXPECT_LE(K->height(a * b), K->height(a) + K->height(b));
            Elem s = a + b;
            if (!s.is_zero()) EXPECT_LE(K->height(s), K->height(a) + K->height(b));
        }
    }
}

TEST(FunctionField, ResidueTheorem) {
    Rng rng(5);
    for (auto K : {fixture_a(), fixture_b()}) {
        for (int t = 0; t < 6; ++t) {
            Elem f = random_elem(K, rng, 3, 2);
            Divisor D = K->divisor_of(f);
            Fe sum = K->residue_dx_infinity(f);
            for (auto& [P, v] : D.terms)
                if (!P->infinite && v < 0) sum += K->residue_dx(f, P);
            // Ramified finite places also carry poles of dx-free terms only when v(f) < 0.
            EXPECT_TRUE(sum.is_zero());
        }
    }
}

TEST(FunctionField, CrtTwoPlaces) {
    auto K = fixture_b();
    const GF* F = K->k();
    auto ps = K->decompose(Poly::x(F));
    Elem a = K->crt({{ps[0], K->one(), 1}, {ps[1], K->zero(), 1}});
    EXPECT_EQ(K->reduce(a, *ps[0])[0].v, 1u);
    EXPECT_EQ(K->reduce(a, *ps[1])[0].v, 0u);
    Rng rng(3);
    auto over2 = K->decompose(poly(F, {-2, 1}));
    std::vector<CrtConstraint> cs;
    cs.push_back({ps[0], random_elem(K, rng, 2, 1), 3});
    cs.push_back({ps[1], random_elem(K, rng, 2, 1), 2});
    cs.push_back({K->infinite_places()[0], random_elem(K, rng, 2, 1), 4});
    for (auto& P : over2) cs.push_back({P, random_elem(K, rng, 2, 1), 2});
    Elem b = K->crt(cs);
    for (auto& c : cs) {
        Elem d = b - c.target;
        if (!d.is_zero()) EXPECT_GE(K->valuation(d, *c.P), c.order);
    }
    Elem e = K->element_with_valuations({{ps[0], 2}, {ps[1], -1}});
    EXPECT_EQ(K->valuation(e, *ps[0]), 2);
    EXPECT_EQ(K->valuation(e, *ps[1]), -1);
}
