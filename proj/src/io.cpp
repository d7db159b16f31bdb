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

#include "vbc/io.hpp"

#include <cctype>
#include <memory>

namespace vbc {

namespace {

/** Expression tree of the element grammar. */
struct Node {
    enum Kind { Num, Var, Add, Sub, Mul, Div, Neg, Pow } kind = Num;
    int64_t num = 0;
    char var = 0;
    std::unique_ptr<Node> l, r;
    long exp = 0;
};
using NodePtr = std::unique_ptr<Node>;

class Parser {
  public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr n = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return n;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("cannot parse \"" + s_ + "\": " + what + " at position " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    static NodePtr bin(Node::Kind k, NodePtr a, NodePtr b) {
        auto n = std::make_unique<Node>();
        n->kind = k;
        n->l = std::move(a);
        n->r = std::move(b);
        return n;
    }
    NodePtr expr() {
        NodePtr n = term();
        for (;;) {
            if (eat('+'))
                n = bin(Node::Add, std::move(n), term());
            else if (eat('-'))
                n = bin(Node::Sub, std::move(n), term());
            else
                return n;
        }
    }
    NodePtr term() {
        NodePtr n = unary();
        for (;;) {
            if (eat('*'))
                n = bin(Node::Mul, std::move(n), unary());
            else if (eat('/'))
                n = bin(Node::Div, std::move(n), unary());
            else
                return n;
        }
    }
    NodePtr unary() {
        if (eat('-')) {
            auto n = std::make_unique<Node>();
            n->kind = Node::Neg;
            n->l = unary();
            return n;
        }
        if (eat('+')) return unary();
        return power();
    }
    long integer() {
        skip();
        bool paren = eat('(');
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        skip();
        size_t st = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (st == pos_) fail("expected an integer exponent");
        long v = std::stol(s_.substr(st, pos_ - st));
        if (paren && !eat(')')) fail("expected ')'");
        return neg ? -v : v;
    }
    NodePtr power() {
        NodePtr base = atom();
        if (eat('^')) {
            auto n = std::make_unique<Node>();
            n->kind = Node::Pow;
            n->l = std::move(base);
            n->exp = integer();
            return n;
        }
        return base;
    }
    NodePtr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr n = expr();
            if (!eat(')')) fail("expected ')'");
            return n;
        }
        auto n = std::make_unique<Node>();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t st = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ - st > 18) fail("integer literal too long");
            n->kind = Node::Num;
            n->num = std::stoll(s_.substr(st, pos_ - st));
            return n;
        }
        if (c == 'x' || c == 'y' || c == 'a') {
            ++pos_;
            n->kind = Node::Var;
            n->var = c;
            return n;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string s_;
    size_t pos_ = 0;
};

template <class V, class Ops>
V eval(const Node& n, const Ops& ops) {
    switch (n.kind) {
        case Node::Num:
            return ops.num(n.num);
        case Node::Var:
            return ops.var(n.var);
        case Node::Add:
            return ops.add(eval<V>(*n.l, ops), eval<V>(*n.r, ops));
        case Node::Sub:
            return ops.sub(eval<V>(*n.l, ops), eval<V>(*n.r, ops));
        case Node::Mul:
            return ops.mul(eval<V>(*n.l, ops), eval<V>(*n.r, ops));
        case Node::Div:
            return ops.div(eval<V>(*n.l, ops), eval<V>(*n.r, ops));
        case Node::Neg:
            return ops.neg(eval<V>(*n.l, ops));
        case Node::Pow:
            return ops.pow(eval<V>(*n.l, ops), n.exp);
    }
    throw ParseError("internal: bad expression node");
}

uint32_t gen_of(const GF* k) {
    if (k->m() == 1) throw ParseError("the symbol 'a' needs a non-prime constant field");
    return k->gen();
}

struct ElemOps {
    const FunctionField& K;
    Elem num(int64_t v) const { return K.constant(K.k()->from_int(v)); }
    Elem var(char c) const {
        if (c == 'x') return K.x();
        if (c == 'y') return K.y();
        return K.constant(gen_of(K.k()));
    }
    Elem add(const Elem& a, const Elem& b) const { return a + b; }
    Elem sub(const Elem& a, const Elem& b) const { return a - b; }
    Elem mul(const Elem& a, const Elem& b) const { return a * b; }
    Elem div(const Elem& a, const Elem& b) const {
        if (b.is_zero()) throw ParseError("division by zero in expression");
        return a / b;
    }
    Elem neg(const Elem& a) const { return -a; }
    Elem pow(const Elem& a, long e) const {
        if (e < 0 && a.is_zero()) throw ParseError("negative power of zero in expression");
        return a.pow(e);
    }
};

struct RatOps {
    const GF* k;
    RatFunc num(int64_t v) const { return RatFunc::constant(k, k->from_int(v)); }
    RatFunc var(char c) const {
        if (c == 'x') return RatFunc::x(k);
        if (c == 'a') return RatFunc::constant(k, gen_of(k));
        throw ParseError("the symbol 'y' is not allowed here");
    }
    RatFunc add(const RatFunc& a, const RatFunc& b) const { return a + b; }
    RatFunc sub(const RatFunc& a, const RatFunc& b) const { return a - b; }
    RatFunc mul(const RatFunc& a, const RatFunc& b) const { return a * b; }
    RatFunc div(const RatFunc& a, const RatFunc& b) const {
        if (b.is_zero()) throw ParseError("division by zero in expression");
        return a / b;
    }
    RatFunc neg(const RatFunc& a) const { return -a; }
    RatFunc pow(const RatFunc& a, long e) const {
        if (e < 0 && a.is_zero()) throw ParseError("negative power of zero in expression");
        return a.pow(static_cast<int>(e));
    }
};

using YPoly = std::vector<RatFunc>;

struct YOps {
    const GF* k;
    static YPoly trim(YPoly p) {
        while (p.size() > 1 && p.back().is_zero()) p.pop_back();
        return p;
    }
    YPoly num(int64_t v) const { return {RatFunc::constant(k, k->from_int(v))}; }
    YPoly var(char c) const {
        if (c == 'x') return {RatFunc::x(k)};
        if (c == 'a') return {RatFunc::constant(k, gen_of(k))};
        return {RatFunc(k), RatFunc::one(k)};
    }
    YPoly add(YPoly a, const YPoly& b) const {
        if (a.size() < b.size()) a.resize(b.size(), RatFunc(k));
        for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
        return trim(a);
    }
    YPoly neg(YPoly a) const {
        for (auto& c : a) c = -c;
        return a;
    }
    YPoly sub(const YPoly& a, const YPoly& b) const { return add(a, neg(b)); }
    YPoly mul(const YPoly& a, const YPoly& b) const {
        YPoly c(a.size() + b.size() - 1, RatFunc(k));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
        return trim(c);
    }
    YPoly div(const YPoly& a, const YPoly& b) const {
        if (b.size() != 1 || b[0].is_zero()) throw ParseError("only division by nonzero elements of k(x) is allowed");
        YPoly c = a;
        for (auto& x : c) x = x / b[0];
        return c;
    }
    YPoly pow(const YPoly& a, long e) const {
        if (e < 0) {
            if (a.size() != 1 || a[0].is_zero()) throw ParseError("negative powers only of nonzero elements of k(x)");
            return {a[0].pow(static_cast<int>(e))};
        }
        YPoly r{RatFunc::one(k)};
        for (long i = 0; i < e; ++i) r = mul(r, a);
        return r;
    }
};

std::string as_string(const json& j, const char* what) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<int64_t>());
    throw ParseError(std::string("expected a string for ") + what);
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

RMat rmatrix_from_json(const GF* k, const json& j, size_t n) {
    if (!j.is_array() || j.size() != n) throw ParseError("basis matrix must have n rows");
    RMat M(n, n, RatFunc(k));
    for (size_t i = 0; i < n; ++i) {
        if (!j[i].is_array() || j[i].size() != n) throw ParseError("basis matrix must be square");
        for (size_t c = 0; c < n; ++c) M(i, c) = parse_rat(k, as_string(j[i][c], "matrix entry"));
    }
    return M;
}

}  // namespace

Elem parse_elem(const FunctionField& K, const std::string& s) {
    NodePtr n = Parser(s).parse();
    return eval<Elem>(*n, ElemOps{K});
}

RatFunc parse_rat(const GF* k, const std::string& s) {
    NodePtr n = Parser(s).parse();
    return eval<RatFunc>(*n, RatOps{k});
}

std::vector<RatFunc> parse_ypoly(const GF* k, const std::string& s) {
    NodePtr n = Parser(s).parse();
    return eval<YPoly>(*n, YOps{k});
}

NamedCurve curve_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("curve must be a JSON object");
    int64_t p = field(j, "p").get<int64_t>();
    int64_t m = j.value("m", 1);
    if (p < 2 || p > 65521 || !is_prime(static_cast<uint64_t>(p))) throw ParseError("p must be a prime below 2^16");
    if (m < 1 || m > 16) throw ParseError("m must be between 1 and 16");
    uint64_t q = 1;
    for (int64_t i = 0; i < m; ++i) q *= static_cast<uint64_t>(p);
    if (q > (1u << 24)) throw ParseError("field too large");
    const GF* k = GF::get(static_cast<uint32_t>(p), static_cast<unsigned>(m));
    std::vector<RatFunc> chi;
    if (j.contains("equation")) {
        chi = parse_ypoly(k, as_string(j["equation"], "equation"));
    } else {
        const json& c = j.contains("minpoly") ? j["minpoly"] : field(j, "chi");
        if (!c.is_array()) throw ParseError("minpoly must be a list of coefficients");
        for (auto& e : c) {
            const json& v = e.is_array() && e.size() == 1 ? e[0] : e;
            chi.push_back(parse_rat(k, as_string(v, "minpoly coefficient")));
        }
    }
    while (!chi.empty() && chi.back().is_zero()) chi.pop_back();
    if (chi.size() < 2) throw ParseError("the defining polynomial must have positive degree in y");
    RatFunc lc = chi.back();
    for (auto& c : chi) c = c / lc;
    const size_t n = chi.size() - 1;
    std::optional<RMat> bfi, binf;
    for (const char* key : {"integral_basis_fi", "basis_fi"})
        if (j.contains(key) && !bfi) bfi = rmatrix_from_json(k, j[key], n);
    for (const char* key : {"integral_basis_inf", "basis_inf"})
        if (j.contains(key) && !binf) binf = rmatrix_from_json(k, j[key], n);
    NamedCurve out;
    out.name = j.value("name", std::string("curve"));
    out.K = FunctionField::make(k, chi, bfi, binf);
    out.source = j;
    return out;
}

json curve_to_json(const NamedCurve& c) {
    if (!c.source.is_null()) return c.source;
    const FunctionField& K = *c.K;
    json j;
    j["name"] = c.name;
    j["p"] = K.k()->p();
    j["m"] = K.k()->m();
    json chi = json::array();
    for (auto& r : K.fm()->chi) chi.push_back(r.str());
    j["minpoly"] = chi;
    if (!K.fm()->power_basis) {
        json b = json::array();
        for (size_t i = 0; i < K.fm()->B.r; ++i) {
            json row = json::array();
            for (size_t t = 0; t < K.fm()->B.c; ++t) row.push_back(K.fm()->B(i, t).str());
            b.push_back(row);
        }
        j["integral_basis_fi"] = b;
    }
    return j;
}

PlacePtr place_from_id(const FunctionField& K, const std::string& id) {
    auto colon = id.rfind(':');
    if (colon == std::string::npos) throw ParseError("malformed place id " + id);
    long index = 0;
    try {
        index = std::stol(id.substr(colon + 1));
    } catch (const std::exception&) {
        throw ParseError("malformed place id " + id);
    }
    if (id.rfind("inf:", 0) == 0) {
        auto inf = K.infinite_places();
        if (index < 0 || static_cast<size_t>(index) >= inf.size()) throw ParseError("unknown place " + id);
        return inf[index];
    }
    if (id.rfind("fi:", 0) != 0) throw ParseError("malformed place id " + id);
    RatFunc pr = parse_rat(K.k(), id.substr(3, colon - 3));
    if (!pr.is_poly() || pr.num.deg() < 1) throw ParseError("place prime must be a polynomial in x");
    Poly p = pr.num.monic();
    if (!is_irreducible(p)) throw ParseError("place prime is not irreducible: " + id);
    auto ps = K.decompose(p);
    if (index < 0 || static_cast<size_t>(index) >= ps.size()) throw ParseError("unknown place " + id);
    return ps[index];
}

json place_to_json(const Place& P) {
    json j;
    j["id"] = P.id;
    j["infinite"] = P.infinite;
    j["prime"] = P.infinite ? P.prime.str("t") : P.prime.str("x");
    j["index"] = P.index;
    j["deg"] = P.deg;
    j["e"] = P.e;
    j["f"] = P.f;
    return j;
}

json elem_to_json(const FunctionField& K, const Elem& a) { return K.elem_str(a); }

Elem elem_from_json(const FunctionField& K, const json& j) { return parse_elem(K, as_string(j, "field element")); }

json vec_to_json(const FunctionField& K, const EVec& v) {
    json j = json::array();
    for (auto& x : v) j.push_back(elem_to_json(K, x));
    return j;
}

EVec vec_from_json(const FunctionField& K, const json& j) {
    if (!j.is_array()) throw ParseError("expected a list of field elements");
    EVec v;
    for (auto& e : j) v.push_back(elem_from_json(K, e));
    return v;
}

json matrix_to_json(const FunctionField& K, const EMat& M) {
    json j = json::array();
    for (size_t i = 0; i < M.r; ++i) {
        json row = json::array();
        for (size_t c = 0; c < M.c; ++c) row.push_back(elem_to_json(K, M(i, c)));
        j.push_back(row);
    }
    return j;
}

EMat matrix_from_json(const FunctionField& K, const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("expected a non-empty list of matrix rows");
    size_t cols = j[0].is_array() ? j[0].size() : 0;
    EMat M(j.size(), cols, K.zero());
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_array() || j[i].size() != cols) throw ParseError("matrix rows must have equal length");
        for (size_t c = 0; c < cols; ++c) M(i, c) = elem_from_json(K, j[i][c]);
    }
    return M;
}

json fmatrix_to_json(const Mat<Fe>& M) {
    json j = json::array();
    for (size_t i = 0; i < M.r; ++i) {
        json row = json::array();
        for (size_t c = 0; c < M.c; ++c) row.push_back(M(i, c).v);
        j.push_back(row);
    }
    return j;
}

Ideal ideal_from_json(const FunctionField& K, const json& j) {
    const Order& A = K.order(OrderKind::Fi);
    if (j.is_string() && (j == "unit" || j == "1")) return Ideal::unit(A);
    if (!j.is_object()) throw ParseError("ideal must be \"unit\" or an object");
    if (j.contains("generators")) {
        std::vector<Elem> gens;
        for (auto& g : j["generators"]) gens.push_back(elem_from_json(K, g));
        if (gens.empty()) throw ParseError("ideal needs at least one generator");
        bool nonzero = false;
        for (auto& g : gens) nonzero = nonzero || !g.is_zero();
        if (!nonzero) throw ParseError("the zero ideal is not a fractional ideal");
        return Ideal::from_generators(A, gens);
    }
    if (j.contains("hnf")) {
        const json& h = j["hnf"];
        const size_t n = static_cast<size_t>(K.n());
        if (!h.is_array() || h.size() != n) throw ParseError("hnf must be an n x n matrix over k(x)");
        RMat B(n, n, RatFunc(K.k()));
        for (size_t i = 0; i < n; ++i) {
            if (!h[i].is_array() || h[i].size() != n) throw ParseError("hnf must be an n x n matrix over k(x)");
            for (size_t c = 0; c < n; ++c) B(i, c) = parse_rat(K.k(), as_string(h[i][c], "hnf entry"));
        }
        if (rank(B) != n) throw ParseError("hnf basis is singular");
        Ideal I = Ideal::from_basis(A, B);
        for (auto& b : I.basis_elems())
            for (auto& w : A.basis)
                if (!I.contains(w * b)) throw ParseError("hnf basis does not span an ideal of the order");
        return I;
    }
    if (j.contains("factors")) {
        Ideal I = Ideal::unit(A);
        for (auto& f : j["factors"]) {
            PlacePtr P = place_from_id(K, as_string(field(f, "place"), "place"));
            if (P->infinite) throw ParseError("ideal factors must be finite places");
            I = I * Ideal::of_place(A, *P).pow(f.value("exp", 1));
        }
        return I;
    }
    throw ParseError("ideal object needs \"generators\", \"hnf\" or \"factors\"");
}

json ideal_to_json(const Ideal& I) {
    if (I.is_unit()) return "unit";
    json g = json::array();
    for (auto& b : I.basis_elems()) g.push_back(I.O->K->elem_str(b));
    return json{{"generators", g}};
}

MatrixPair pair_from_json(const FieldPtr& K, const json& j) {
    const json& ids = field(j, "ideals");
    if (!ids.is_array() || ids.empty()) throw ParseError("\"ideals\" must be a non-empty list");
    std::vector<Ideal> a;
    for (auto& i : ids) a.push_back(ideal_from_json(*K, i));
    EMat gfi = matrix_from_json(*K, j.contains("g_fi") ? j["g_fi"] : field(j, "gfi"));
    EMat ginf = matrix_from_json(*K, j.contains("g_inf") ? j["g_inf"] : field(j, "ginf"));
    if (j.contains("rank") && j["rank"].get<size_t>() != a.size())
        throw ParseError("\"rank\" does not match the number of ideals");
    if (gfi.r != a.size() || gfi.c != a.size() || ginf.r != a.size() || ginf.c != a.size())
        throw ParseError("matrix sizes must match the number of ideals");
    return make_pair(K, a, gfi, ginf);
}

json pair_to_json(const MatrixPair& g) {
    json ids = json::array();
    for (auto& I : g.a) ids.push_back(ideal_to_json(I));
    return json{{"rank", g.rank()},
                {"ideals", ids},
                {"g_fi", matrix_to_json(*g.K, g.gfi)},
                {"g_inf", matrix_to_json(*g.K, g.ginf)}};
}

Divisor divisor_from_json(const FunctionField& K, const json& j) {
    const json& terms = j.is_object() ? field(j, "terms") : j;
    if (!terms.is_array()) throw ParseError("divisor must be a list of terms");
    Divisor D;
    for (auto& t : terms) D.add(place_from_id(K, as_string(field(t, "place"), "place")), field(t, "coeff").get<int>());
    return D;
}

json divisor_to_json(const Divisor& D) {
    json terms = json::array();
    for (auto& [P, c] : D.terms)
        if (c != 0) terms.push_back(json{{"place", P->id}, {"coeff", c}});
    return json{{"terms", terms}, {"deg", D.deg()}};
}

}  // namespace vbc
