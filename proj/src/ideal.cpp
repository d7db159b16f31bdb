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

#include "vbc/ideal.hpp"

#include <algorithm>
#include <mutex>

namespace vbc {

namespace {
std::mutex order_mu;

RMat power_matrix(const std::vector<Elem>& es) {
    const Model* M = es.front().M;
    RMat B(M->n, es.size(), RatFunc(M->k));
    for (size_t j = 0; j < es.size(); ++j) B.set_col(j, es[j].c);
    return B;
}

EVec scale_vec(const EVec& v, const Elem& s) {
    EVec r = v;
    for (auto& x : r)
        if (!x.is_zero()) x = x * s;
    return r;
}

bool vec_zero(const EVec& v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}
}  // namespace

const Order& FunctionField::order(OrderKind kind) const {
    std::lock_guard<std::mutex> g(order_mu);
    auto& slot = orders_[static_cast<int>(kind)];
    if (slot) return *slot;
    auto O = std::make_shared<Order>();
    O->K = this;
    O->kind = kind;
    O->n = n();
    O->R = kind == OrderKind::Inf ? Ring::Inf : Ring::Poly;
    switch (kind) {
        case OrderKind::Fi: O->basis = fi_basis(); break;
        case OrderKind::Inf: O->basis = inf_basis(); break;
        case OrderKind::InfModel: O->basis = inf_basis(); break;
    }
    if (kind == OrderKind::Inf) O->binv = inverse(power_matrix(O->basis));
    slot = O;
    O->one = O->coords(one());
    return *slot;
}

RVec Order::coords(const Elem& a) const {
    switch (kind) {
        case OrderKind::Fi: return K->fm()->to_omega(a.c);
        case OrderKind::InfModel: return K->im()->to_omega(K->to_model(a, K->im()).c);
        case OrderKind::Inf: return binv * a.c;
    }
    return {};
}

Elem Order::elem(const RVec& c) const {
    switch (kind) {
        case OrderKind::Fi: return Elem(K->fm(), K->fm()->from_omega(c));
        case OrderKind::InfModel: return K->from_model(Elem(K->im(), K->im()->from_omega(c)));
        case OrderKind::Inf: {
            Elem r = K->zero();
            for (int t = 0; t < n; ++t)
                if (!c[t].is_zero()) r += basis[t].scale(c[t]);
            return r;
        }
    }
    return {};
}

RMat Order::mul_matrix(const Elem& a) const {
    switch (kind) {
        case OrderKind::Fi: return K->fm()->omega_mul_matrix(coords(a));
        case OrderKind::InfModel: return K->im()->omega_mul_matrix(coords(a));
        case OrderKind::Inf: {
            RMat m(n, n, RatFunc(K->k()));
            for (int t = 0; t < n; ++t) m.set_col(t, coords(a * basis[t]));
            return m;
        }
    }
    return {};
}

Ideal Ideal::from_basis(const Order& O, const RMat& B) {
    HnfResult h = hnf_transform(B, O.R);
    RMat H = h.basis();
    if (H.c != static_cast<size_t>(O.n)) throw MathError("zero ideal");
    return Ideal{&O, H};
}

Ideal Ideal::unit(const Order& O) { return Ideal{&O, RMat::identity(O.n, RatFunc::one(O.K->k()))}; }

Ideal Ideal::principal(const Order& O, const Elem& a) {
    if (a.is_zero()) throw MathError("zero ideal");
    return from_basis(O, O.mul_matrix(a));
}

Ideal Ideal::from_generators(const Order& O, const std::vector<Elem>& gens) {
    RMat all(O.n, 0, RatFunc(O.K->k()));
    for (auto& g : gens)
        if (!g.is_zero()) all = all.hcat(O.mul_matrix(g));
    if (all.c == 0) throw MathError("zero ideal");
    return from_basis(O, all);
}

Ideal Ideal::of_place(const Order& O, const Place& P) {
    if (O.kind == OrderKind::Fi) {
        if (P.infinite) throw MathError("finite place expected");
        return from_basis(O, P.P);
    }
    if (!P.infinite) throw MathError("infinite place expected");
    const Order& Om = O.K->order(OrderKind::InfModel);
    if (O.kind == OrderKind::InfModel) return from_basis(O, P.P);
    std::vector<Elem> gens;
    for (size_t j = 0; j < P.P.c; ++j) gens.push_back(Om.elem(P.P.col(j)));
    return from_generators(O, gens);
}

std::vector<Elem> Ideal::basis_elems() const {
    std::vector<Elem> out;
    for (size_t j = 0; j < H.c; ++j) out.push_back(O->elem(H.col(j)));
    return out;
}

Ideal Ideal::operator*(const Ideal& o) const {
    RMat all(O->n, 0, RatFunc(O->K->k()));
    for (auto& b : basis_elems()) all = all.hcat(O->mul_matrix(b) * o.H);
    return from_basis(*O, all);
}

Ideal Ideal::operator*(const Elem& a) const {
    if (a.is_zero()) throw MathError("zero ideal");
    return from_basis(*O, O->mul_matrix(a) * H);
}

Ideal Ideal::operator+(const Ideal& o) const { return from_basis(*O, H.hcat(o.H)); }

Ideal Ideal::inv() const {
    const int n = O->n;
    RMat S(n * n, n, RatFunc(O->K->k()));
    auto bs = basis_elems();
    for (int j = 0; j < n; ++j) S.put(j * n, 0, O->mul_matrix(bs[j]));
    return from_basis(*O, lattice_preimage(S, O->R));
}

Ideal Ideal::pow(int e) const {
    if (e < 0) return inv().pow(-e);
    Ideal r = unit(*O), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

Ideal Ideal::intersect(const Ideal& o) const { return from_basis(*O, lattice_intersect(H, o.H, O->R)); }

bool Ideal::is_unit() const { return H == RMat::identity(O->n, RatFunc::one(O->K->k())); }

bool Ideal::is_integral() const { return in_ring(H, O->R); }

bool Ideal::contains(const Elem& a) const { return a.is_zero() || lattice_contains(H, O->coords(a), O->R); }

int Ideal::deg() const {
    RatFunc d = det(H);
    return O->R == Ring::Inf ? d.inf_val() : d.deg();
}

int Ideal::valuation(const Place& P) const {
    int v = 1 << 28;
    for (auto& b : basis_elems())
        if (!b.is_zero()) v = std::min(v, O->K->valuation(b, P));
    return v;
}

Elem Ideal::reduce(const Elem& a) const {
    if (a.is_zero()) return a;
    return O->elem(lattice_reduce(H, O->coords(a), O->R));
}

std::string Ideal::str() const {
    std::string s = "<";
    auto bs = basis_elems();
    for (size_t j = 0; j < bs.size(); ++j) s += (j ? ", " : "") + O->K->elem_str(bs[j]);
    return s + ">";
}

std::pair<Elem, Elem> coprime_split(const Ideal& I, const Ideal& J) {
    const Order& O = *I.O;
    const size_t n = O.n;
    RMat M = I.H.hcat(J.H);
    HnfResult h = hnf_transform(M, O.R);
    RMat B = h.basis();
    if (B.c != n || B != RMat::identity(n, RatFunc::one(O.K->k()))) throw MathError("ideals are not coprime");
    RVec y = h.U.sub(0, h.zero, 2 * n, n) * O.one;
    RVec y1(y.begin(), y.begin() + n), y2(y.begin() + n, y.end());
    Elem e = O.elem(I.H * y1), f = O.elem(J.H * y2);
    if (!(e + f).is_one()) throw MathError("internal: coprime split failed");
    return {e, f};
}

PseudoMatrix pseudo_hnf(const PseudoMatrix& pm) {
    const size_t m = pm.rows();
    const size_t c = pm.cols();
    if (c == 0) return pm;
    std::vector<Ideal> a = pm.a;
    std::vector<EVec> C(c);
    for (size_t j = 0; j < c; ++j) C[j] = pm.M.col(j);
    long k = static_cast<long>(c) - 1;
    std::vector<size_t> piv;
    for (long i = static_cast<long>(m) - 1; i >= 0 && k >= 0; --i) {
        long j0 = -1;
        for (long j = k; j >= 0; --j)
            if (!C[j][i].is_zero()) {
                j0 = j;
                break;
            }
        if (j0 < 0) continue;
        std::swap(C[j0], C[k]);
        std::swap(a[j0], a[k]);
        {
            Elem d = C[k][i];
            a[k] = a[k] * d;
            C[k] = scale_vec(C[k], d.inv());
        }
        for (long j = 0; j < k; ++j) {
            if (C[j][i].is_zero()) continue;
            Elem d = C[j][i];
            Ideal ad = a[j] * d;
            Ideal dd = ad + a[k];
            Ideal dinv = dd.inv();
            auto [e, f] = coprime_split(a[k] * dinv, ad * dinv);
            Elem v = f / d;
            EVec nk(m), nj(m);
            for (size_t r = 0; r < m; ++r) {
                nk[r] = e * C[k][r] + v * C[j][r];
                nj[r] = C[j][r] - d * C[k][r];
            }
            a[j] = a[j] * a[k] * dinv;
            a[k] = dd;
            C[k] = nk;
            C[j] = nj;
        }
        piv.insert(piv.begin(), static_cast<size_t>(i));
        --k;
    }
    const size_t rho = piv.size();
    const size_t off = c - rho;
    PseudoMatrix out;
    out.M = EMat(m, rho, pm.M.z);
    for (size_t t = 0; t < rho; ++t) {
        out.a.push_back(a[off + t]);
        EVec& col = C[off + t];
        for (long s = static_cast<long>(t) - 1; s >= 0; --s) {
            const EVec& cs = C[off + s];
            Elem e = col[piv[s]];
            if (e.is_zero()) continue;
            Ideal q = a[off + s] * a[off + t].inv();
            Elem diff = e - q.reduce(e);
            if (diff.is_zero()) continue;
            for (size_t r = 0; r < m; ++r)
                if (!cs[r].is_zero()) col[r] -= diff * cs[r];
        }
        out.M.set_col(t, col);
    }
    return out;
}

PseudoMatrix pseudo_image(const PseudoMatrix& pm) { return pseudo_hnf(pm); }

RVec to_power_coords(const EVec& v) {
    RVec out;
    for (auto& e : v) out.insert(out.end(), e.c.begin(), e.c.end());
    return out;
}

EVec from_power_coords(const FunctionField& K, const RVec& v) {
    const size_t n = K.n();
    EVec out;
    for (size_t i = 0; i * n < v.size(); ++i) out.push_back(K.elem(RVec(v.begin() + i * n, v.begin() + (i + 1) * n)));
    return out;
}

RMat pm_restrict(const PseudoMatrix& pm) {
    const FunctionField& K = *pm.a.front().O->K;
    const size_t n = K.n();
    RMat out(pm.rows() * n, 0, RatFunc(K.k()));
    for (size_t j = 0; j < pm.cols(); ++j) {
        EVec col = pm.M.col(j);
        auto bs = pm.a[j].basis_elems();
        RMat blk(pm.rows() * n, bs.size(), RatFunc(K.k()));
        for (size_t t = 0; t < bs.size(); ++t) blk.set_col(t, to_power_coords(scale_vec(col, bs[t])));
        out = out.hcat(blk);
    }
    return out;
}

RMat order_span(const Order& O, const EMat& M) {
    const size_t n = O.n;
    RMat out(M.r * n, M.c * n, RatFunc(O.K->k()));
    for (size_t j = 0; j < M.c; ++j) {
        EVec col = M.col(j);
        for (size_t t = 0; t < n; ++t) out.set_col(j * n + t, to_power_coords(scale_vec(col, O.basis[t])));
    }
    return out;
}

PseudoMatrix pm_from_generators(const Order& O, const std::vector<EVec>& gens, size_t m) {
    PseudoMatrix pm;
    pm.M = EMat(m, gens.size(), O.K->zero());
    for (size_t j = 0; j < gens.size(); ++j) {
        pm.M.set_col(j, gens[j]);
        pm.a.push_back(Ideal::unit(O));
    }
    return pseudo_hnf(pm);
}

PseudoMatrix pseudo_kernel(const PseudoMatrix& pm) {
    const FunctionField& K = *pm.a.front().O->K;
    const Order& O = *pm.a.front().O;
    const size_t c = pm.cols();
    EMat V = kernel(pm.M);
    if (V.c == 0) return PseudoMatrix{{}, EMat(c, 0, K.zero())};
    // The sum of the a_j as a lattice in K^c, intersected with the kernel span.
    PseudoMatrix src;
    src.a = pm.a;
    src.M = EMat::identity(c, K.one());
    RMat L = pm_restrict(src);
    RMat S = order_span(O, V);
    RMat Wb = lattice_saturate(L, S, O.R);
    std::vector<EVec> gens;
    for (size_t j = 0; j < Wb.c; ++j) gens.push_back(from_power_coords(K, Wb.col(j)));
    return pm_from_generators(O, gens, c);
}

bool pm_equal(const PseudoMatrix& x, const PseudoMatrix& y) {
    if (x.rows() != y.rows()) return false;
    PseudoMatrix a = pseudo_hnf(x), b = pseudo_hnf(y);
    if (a.cols() != b.cols()) return false;
    for (size_t j = 0; j < a.cols(); ++j)
        if (a.a[j] != b.a[j]) return false;
    return a.M == b.M;
}

bool pm_contains(const PseudoMatrix& pm, const EVec& v) {
    if (pm.cols() == 0) return vec_zero(v);
    RMat L = hnf(pm_restrict(pm), pm.a.front().O->R);
    return lattice_contains(L, to_power_coords(v), pm.a.front().O->R);
}

EMat inf_basis_from_generators(const FunctionField& K, const std::vector<EVec>& gens, size_t m) {
    const Order& Om = K.order(OrderKind::InfModel);
    std::vector<EVec> nz;
    for (auto& g : gens)
        if (!vec_zero(g)) nz.push_back(g);
    if (nz.empty()) return EMat(m, 0, K.zero());
    PseudoMatrix pm = pm_from_generators(Om, nz, m);
    auto infs = K.infinite_places();
    EMat out(m, pm.cols(), K.zero());
    for (size_t j = 0; j < pm.cols(); ++j) {
        Elem beta = K.one();
        if (!pm.a[j].is_unit()) {
            std::vector<std::pair<PlacePtr, int>> vs;
            for (auto& Q : infs) vs.push_back({Q, pm.a[j].valuation(*Q)});
            beta = K.element_with_valuations(vs);
        }
        out.set_col(j, scale_vec(pm.M.col(j), beta));
    }
    return out;
}

}  // namespace vbc
