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

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "vbc/lattice.hpp"

namespace vbc {

class FunctionField;
struct Order;
enum class OrderKind { Fi = 0, Inf = 1, InfModel = 2 };

/**
 * A plane model k(t)[Y]/(chi) of K with an integral basis of the order over
 * k[t]. The finite model uses (x, y); the model at infinity uses (1/x, y/x^c).
 */
struct Model {
    const GF* k = nullptr;
    int n = 0;
    std::vector<RatFunc> chi;  // chi[0..n], monic
    RMat B, Binv;              // integral basis in power coordinates (columns)
    bool power_basis = true;
    std::vector<RVec> ypow;                   // y^{n+j} reduced, j = 0..n-2
    std::vector<RatFunc> trace_ypow;          // Tr(y^i), i = 0..n-1
    std::vector<std::vector<RVec>> omega_prod;  // omega_a * omega_b in omega coordinates
    RVec one_omega;                           // omega coordinates of 1

    void init();
    RVec mul_power(const RVec& a, const RVec& b) const;
    RVec to_omega(const RVec& pw) const { return power_basis ? pw : Binv * pw; }
    RVec from_omega(const RVec& w) const { return power_basis ? w : B * w; }
    RVec omega_mul(const RVec& u, const RVec& v) const;
    // Product with coordinates reduced modulo m (inputs polynomial coordinates).
    RVec omega_mulmod(const RVec& u, const RVec& v, const Poly& m) const;
    // Matrix of z -> z*b in omega coordinates.
    RMat omega_mul_matrix(const RVec& b) const;
    RatFunc trace_power(const RVec& pw) const;
};

/** Element of K in power coordinates of a model. */
class Elem {
  public:
    const Model* M = nullptr;
    RVec c;

    Elem() = default;
    Elem(const Model* m, RVec coords) : M(m), c(std::move(coords)) {}
    static Elem zero(const Model* m) { return Elem(m, RVec(m->n, RatFunc(m->k))); }
    static Elem one(const Model* m) { return from_rat(m, RatFunc::one(m->k)); }
    static Elem from_rat(const Model* m, const RatFunc& r) {
        Elem e = zero(m);
        e.c[0] = r;
        return e;
    }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;  // lies in k(x)
    Elem operator+(const Elem& o) const;
    Elem operator-(const Elem& o) const;
    Elem operator-() const;
    Elem operator*(const Elem& o) const;
    Elem operator/(const Elem& o) const { return *this * o.inv(); }
    Elem& operator+=(const Elem& o) { return *this = *this + o; }
    Elem& operator-=(const Elem& o) { return *this = *this - o; }
    Elem& operator*=(const Elem& o) { return *this = *this * o; }
    bool operator==(const Elem& o) const { return c == o.c; }
    bool operator!=(const Elem& o) const { return c != o.c; }
    Elem scale(const RatFunc& r) const;
    Elem inv() const;
    Elem pow(long e) const;
    Elem zero_like() const { return zero(M); }
    Elem one_like() const { return one(M); }
    RMat mul_matrix() const;  // power coordinates
    RatFunc trace() const { return M->trace_power(c); }
    RatFunc norm() const;
    RVec omega() const { return M->to_omega(c); }
};

/** A place of K, finite or infinite, with local data for valuations and residues. */
struct Place {
    const FunctionField* K = nullptr;
    bool infinite = false;
    const Model* model = nullptr;
    Poly prime;  // in the model variable (t = 1/x for infinite places)
    int index = 0;
    int e = 1, f = 1, deg = 1;
    int emax = 1, emin = 1;  // over all places above the same prime
    bool alone = true;
    RMat P;        // HNF basis (omega coordinates) of the prime ideal of the model order
    RVec beta;     // element of p P^{-1} not in pA (omega coordinates)
    RVec pi_w;     // uniformizer, omega coordinates
    Elem pi;       // uniformizer in K
    Elem two_gen;  // P = pA + two_gen A
    RVec eps;      // residue idempotent lift, omega coordinates (polynomial)
    // Residue field k_P: basis lifts (omega coordinates, polynomial), reduction map from
    // A/pA coordinates, structure constants.
    std::vector<RVec> kp_lift;
    Mat<Fe> red;
    std::vector<std::vector<std::vector<Fe>>> kp_mul;  // kp_mul[i][j] = b_i b_j
    std::string id;

    int dimA() const { return model->n * prime.deg(); }
    bool operator<(const Place& o) const;
};
using PlacePtr = std::shared_ptr<const Place>;

struct PlaceLess {
    bool operator()(const PlacePtr& a, const PlacePtr& b) const { return *a < *b; }
};

/** Finitely supported formal sum of places. */
struct Divisor {
    std::map<PlacePtr, int, PlaceLess> terms;

    int deg() const;
    int coeff(const PlacePtr& P) const;
    Divisor operator+(const Divisor& o) const;
    Divisor operator-(const Divisor& o) const;
    Divisor operator-() const;
    Divisor scaled(int s) const;
    bool operator==(const Divisor& o) const;
    bool effective() const;
    void add(const PlacePtr& P, int v);
    std::string str() const;
};

/** Differential f * d(pi_Q0). */
struct Differential {
    Elem f;
    PlacePtr Q0;
};

/** Repartition vector: values at finitely many places plus a part applied at every infinite place. */
struct Repartition {
    size_t r = 1;
    std::vector<std::pair<PlacePtr, std::vector<Elem>>> local;
    std::vector<Elem> inf;  // empty means zero
};

struct CrtConstraint {
    PlacePtr P;
    Elem target;
    int order;
};

class FunctionField {
  public:
    // chi given as coefficients chi[0..n] (monic); optional integral bases in power coordinates.
    static std::shared_ptr<FunctionField> make(const GF* k, std::vector<RatFunc> chi,
                                               std::optional<RMat> basis_fi = std::nullopt,
                                               std::optional<RMat> basis_inf = std::nullopt);
    static std::shared_ptr<FunctionField> rational(const GF* k);

    FunctionField(const FunctionField&) = delete;
    FunctionField& operator=(const FunctionField&) = delete;

    const GF* k() const { return k_; }
    int n() const { return fi.n; }
    int shift() const { return c_; }
    int genus() const;
    const Model* fm() const { return &fi; }
    const Model* im() const { return &inf; }

    Elem x() const;
    Elem y() const;
    Elem constant(uint32_t a) const { return Elem::from_rat(&fi, RatFunc::constant(k_, a)); }
    Elem from_rat(const RatFunc& r) const { return Elem::from_rat(&fi, r); }
    Elem one() const { return Elem::one(&fi); }
    Elem zero() const { return Elem::zero(&fi); }
    Elem elem(RVec c) const { return Elem(&fi, std::move(c)); }

    Elem to_model(const Elem& a, const Model* m) const;
    Elem from_model(const Elem& a) const;
    std::vector<Elem> fi_basis() const;
    std::vector<Elem> inf_basis() const;  // basis of A_inf over O_inf, in K

    std::vector<PlacePtr> decompose(const Poly& p) const;
    std::vector<PlacePtr> infinite_places() const;
    PlacePtr place_by_id(const std::string& id) const;
    // Places over primes of the given degree (finite), sorted.
    std::vector<PlacePtr> places_of_degree(int d) const;
    std::vector<Poly> disc_primes() const;

    int valuation(const Elem& a, const Place& P) const;
    // Coefficients from <= i < from + count of the pi_P-adic expansion (Teichmueller digits), each in k_P coordinates.
    std::vector<std::vector<Fe>> expand(const Elem& a, const Place& P, int from, int count) const;
    // Reduction of an element with v_P >= 0 into k_P coordinates.
    std::vector<Fe> reduce(const Elem& a, const Place& P) const;
    // Element of A_P lifting a residue-field vector (Teichmueller-free plain lift).
    Elem lift(const std::vector<Fe>& c, const Place& P) const;
    Divisor divisor_of(const Elem& a) const;
    int height(const Elem& a) const;
    Elem derivative(const Elem& a) const;  // d/dx
    Divisor differential_divisor(const Differential& w) const;
    int differential_valuation(const Differential& w, const PlacePtr& P) const;
    Differential default_differential() const;
    // h with w = h dx
    Elem dx_coefficient(const Differential& w) const;
    // Residue of b dx at P.
    Fe residue_dx(const Elem& b, const PlacePtr& P) const;
    // Sum of residues of b dx over all infinite places.
    Fe residue_dx_infinity(const Elem& b) const;
    Fe residue(const Repartition& r, const Differential& w) const;
    Elem crt(const std::vector<CrtConstraint>& cs) const;
    // Element with exactly the given valuations at the listed places.
    Elem element_with_valuations(const std::vector<std::pair<PlacePtr, int>>& vs) const;
    // Idempotent lift for P modulo p^M (omega coordinates of the model).
    RVec idempotent(const Place& P, int M) const;

    // Residue field helpers.
    std::vector<Fe> kp_mul(const Place& P, const std::vector<Fe>& a, const std::vector<Fe>& b) const;
    Fe kp_trace(const Place& P, const std::vector<Fe>& a) const;

    std::string elem_str(const Elem& a) const;

    // Valuation on omega coordinates of the place model.
    int valuation_w(const RVec& w, const Place& P) const;
    std::vector<Fe> reduce_w(const RVec& w, const Place& P) const;
    // v_P(dx).
    int dx_valuation(const Place& P) const;

    // Maximal orders as lattices: A_fi over k[x], A_inf over O_inf, and the order of the model at
    // infinity over k[1/x].
    const Order& order(OrderKind kind) const;

  private:
    FunctionField() = default;
    void setup(std::optional<RMat> bfi, std::optional<RMat> binf);
    std::vector<PlacePtr> decompose_model(const Model* m, const Poly& p, bool infinite) const;
    void check_maximal(const Model& m, const Poly& p) const;
    Elem crt_attempt(const std::vector<CrtConstraint>& cs, int boost) const;

    const GF* k_ = nullptr;
    int c_ = 0;
    Model fi, inf;
    mutable std::mutex mu_;
    mutable std::map<std::vector<uint32_t>, std::vector<PlacePtr>> cache_;
    mutable std::vector<PlacePtr> inf_cache_;
    mutable bool inf_done_ = false;
    mutable int genus_ = -1;
    mutable std::vector<Poly> disc_primes_;
    mutable bool disc_done_ = false;
    mutable std::map<std::string, int> dxval_;
    mutable std::shared_ptr<Order> orders_[3];
};

using FieldPtr = std::shared_ptr<const FunctionField>;

// Polynomial-coordinate helpers.
Poly rat_mod(const RatFunc& r, const Poly& m);

}  // namespace vbc
