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
#include "vbc/io.hpp"

using namespace vbc;
using namespace vbc::testing;

TEST(Io, ParsesAndPrintsElements) {
    auto K = fixture_a();
    Elem a = parse_elem(*K, "(x^2+3)/x^2");
    EXPECT_EQ(a, K->from_rat(rat(K->k(), {3, 0, 1}, {0, 0, 1})));
    Elem b = parse_elem(*K, "-y*x^(-2) + 2*x^-1");
    EXPECT_EQ(b, -K->y() * K->from_rat(RatFunc::xpow(K->k(), -2)) + K->from_rat(rat(K->k(), {2}, {0, 1})));
    for (const Elem& e : {a, b, fixture_a_pi(), fixture_a_pi().inv(), K->y().pow(3) / (K->x() + K->one())})
        EXPECT_EQ(parse_elem(*K, K->elem_str(e)), e) << K->elem_str(e);
    EXPECT_EQ(parse_elem(*K, "8"), K->one());
}

TEST(Io, RejectsMalformedInput) {
    auto K = fixture_a();
    EXPECT_THROW(parse_elem(*K, "x+"), ParseError);
    EXPECT_THROW(parse_elem(*K, "(x"), ParseError);
    EXPECT_THROW(parse_elem(*K, "1/0"), ParseError);
    EXPECT_THROW(parse_elem(*K, "z"), ParseError);
    EXPECT_THROW(parse_elem(*K, "a"), ParseError);
    EXPECT_THROW(parse_rat(K->k(), "y"), ParseError);
}

TEST(Io, ExtensionFieldGenerator) {
    const GF* F = GF::get(2, 2);
    RatFunc r = parse_rat(F, "a*x+a^2");
    EXPECT_EQ(parse_rat(F, r.str()), r);
    EXPECT_EQ(parse_rat(F, "a^3"), RatFunc::one(F));
}

TEST(Io, CurveFromJson) {
    NamedCurve c = curve_from_json(json::parse(R"({"name":"A","p":7,"equation":"y^2 - x^3 - x"})"));
    EXPECT_EQ(c.K->genus(), 1);
    EXPECT_EQ(c.K->fm()->chi, fixture_a()->fm()->chi);
    NamedCurve d = curve_from_json(json::parse(R"({"p":7,"minpoly":["-x^3-x","0","1"]})"));
    EXPECT_EQ(d.K->fm()->chi, fixture_a()->fm()->chi);
    EXPECT_THROW(curve_from_json(json::parse(R"({"p":8,"equation":"y^2-x"})")), ParseError);
    EXPECT_THROW(curve_from_json(json::parse(R"({"p":7,"equation":"x^2"})")), ParseError);
}

TEST(Io, PlacesAndDivisors) {
    auto K = fixture_a();
    for (int d = 1; d <= 2; ++d)
        for (auto& P : K->places_of_degree(d)) EXPECT_EQ(place_from_id(*K, P->id)->id, P->id);
    EXPECT_EQ(place_from_id(*K, "inf:0")->id, K->infinite_places()[0]->id);
    EXPECT_THROW(place_from_id(*K, "fi:x^2:0"), ParseError);
    EXPECT_THROW(place_from_id(*K, "inf:5"), ParseError);
    Divisor D = K->divisor_of(K->x());
    Divisor E = divisor_from_json(*K, divisor_to_json(D));
    EXPECT_EQ(D, E);
    EXPECT_EQ(divisor_to_json(D)["deg"], 0);
}

TEST(Io, PairRoundTrip) {
    auto K = fixture_a();
    MatrixPair L = fixture_a_L();
    json j = pair_to_json(L);
    MatrixPair M = pair_from_json(K, json::parse(j.dump()));
    EXPECT_TRUE(equals(L, M));
    json f = json::parse(R"J({"ideals":["unit",{"factors":[{"place":"fi:x:0","exp":-1}]}],
        "g_fi":[["x^2/(x^2+4)","0"],["0","1"]],"g_inf":[["1","-x^2/y"],["0","1"]]})J");
    EXPECT_TRUE(equals(pair_from_json(K, f), L));
    f["g_fi"] = json::parse(R"([["1"]])");
    EXPECT_THROW(pair_from_json(K, f), ParseError);
}

TEST(Io, IdealForms) {
    auto K = fixture_a();
    const Order& A = K->order(OrderKind::Fi);
    Ideal p = Ideal::of_place(A, *fixture_a_p());
    json h = json::array();
    for (size_t i = 0; i < p.H.r; ++i) {
        json row = json::array();
        for (size_t c = 0; c < p.H.c; ++c) row.push_back(p.H(i, c).str());
        h.push_back(row);
    }
    EXPECT_EQ(ideal_from_json(*K, json{{"hnf", h}}), p);
    EXPECT_EQ(ideal_from_json(*K, ideal_to_json(p)), p);
    EXPECT_EQ(ideal_from_json(*K, json::parse(R"({"generators":["x","y"]})")), p);
    EXPECT_THROW(ideal_from_json(*K, json::parse(R"({"hnf":[["1","0"],["0","x"]]})")), ParseError);
}
