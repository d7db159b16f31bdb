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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vbc/algebra.hpp"
#include "vbc/cohomology.hpp"

namespace vbc {

// End(LP(g)) with basis from h0(hom_bundle(g, g)); b_i b_j is the composition E_i E_j.
FiniteAlgebra end_algebra(const MatrixPair& g);

/** Outcome of an isomorphism search; hom is set only for verified isomorphisms. */
struct IsomResult {
    std::optional<BundleHom> hom;
    std::string reason;
    bool found() const { return hom.has_value(); }
};

/** Precomputed Hom spaces for repeated Monte-Carlo trials. */
class MonteCarloIsom {
  public:
    MonteCarloIsom(const MatrixPair& g, const MatrixPair& gp);
    size_t s() const { return s_; }
    bool dims_match() const { return match_; }
    // One sample with coefficients drawn from the first sample_set_size field elements.
    IsomResult trial(Rng& rng, uint64_t sample_set_size) const;

  private:
    MatrixPair g_, gp_;
    bool match_ = false;
    size_t s_ = 0;
    std::vector<EMat> hom_, back_;  // Hom(L, L') and Hom(L', L)
    std::optional<SectionCoords> end_;
};

// Errors with "field too small; use deterministic path" when |k| <= s.
IsomResult isom_monte_carlo(const MatrixPair& g, const MatrixPair& gp, uint64_t seed, uint64_t sample_set_size = 0);
// Requires LP(g) indecomposable.
IsomResult isom_indecomposable(const MatrixPair& g, const MatrixPair& gp, Rng& rng);

struct SplitFactor {
    MatrixPair bundle;
    int multiplicity = 1;
    size_t end_dim = 1;      // dim End(F)
    size_t division_dim = 1; // dim_k D(End(F))
    bool absolutely_indecomposable() const { return division_dim == 1; }
};
struct SplitResult {
    std::vector<SplitFactor> factors;
    EMat T;  // isomorphism from the sum of factors (with multiplicities, in order) to LP(g)
    bool verified = false;
    MatrixPair source() const;
};
SplitResult split_lattice(const MatrixPair& g, Rng& rng);
IsomResult isom_general(const MatrixPair& g, const MatrixPair& gp, Rng& rng);

// dim_k of End(L)/J(End(L)), the dimension of D(L).
size_t semisimple_dim(const MatrixPair& g, Rng& rng);

}  // namespace vbc
