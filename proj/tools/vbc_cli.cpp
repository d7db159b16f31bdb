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

// Command-line front end: JSON in, JSON out.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "vbc/applications.hpp"
#include "vbc/bundle_algebra.hpp"
#include "vbc/cohomology.hpp"
#include "vbc/io.hpp"

namespace fs = std::filesystem;
using namespace vbc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitMath = 3;
constexpr int kExitInternal = 1;

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

// Option values are either a path to a JSON file or inline JSON text.
json json_arg(const std::string& v) {
    if (fs::exists(v)) return read_json_file(v);
    try {
        return json::parse(v);
    } catch (const json::exception&) {
        throw ParseError("not a file and not valid JSON: " + v);
    }
}

/** Loaded curves and the global options. */
class Workspace {
  public:
    uint64_t seed = 1;
    std::string curve_path, out_path;
    bool verbose = false;

    void log(const std::string& msg) const {
        if (verbose) std::cerr << "vbc: " << msg << "\n";
    }

    const NamedCurve& curve() {
        if (!global_) {
            if (curve_path.empty()) throw ParseError("this command needs --curve");
            global_ = intern(curve_from_checked(read_json_file(curve_path), curve_path));
        }
        return *global_;
    }

    // Resolution order of a bundle's "curve" field: relative path, name of the --curve curve, inline object.
    const NamedCurve& resolve(const json& ref, const fs::path& base) {
        if (ref.is_object()) return *intern(curve_from_checked(ref, "inline curve"));
        if (!ref.is_string()) throw ParseError("\"curve\" must be a path, a name or an object");
        std::string s = ref.get<std::string>();
        fs::path p = base / s;
        if (fs::exists(p)) return *intern(curve_from_checked(read_json_file(p.string()), p.string()));
        if (!curve_path.empty() && curve().name == s) return curve();
        throw ParseError("cannot resolve curve reference \"" + s + "\"");
    }

    MatrixPair bundle(const std::string& path) {
        json j = json_arg(path);
        if (!j.is_object()) throw ParseError(path + ": a bundle must be a JSON object");
        fs::path base = fs::exists(path) ? fs::path(path).parent_path() : fs::current_path();
        const NamedCurve* c = nullptr;
        if (!curve_path.empty()) {
            c = &curve();
            if (j.contains("curve") && !same(*c, resolve(j["curve"], base)))
                throw ParseError(path + ": bundle curve differs from --curve");
        } else {
            if (!j.contains("curve")) throw ParseError(path + ": bundle has no \"curve\" and no --curve was given");
            c = &resolve(j["curve"], base);
        }
        try {
            MatrixPair g = pair_from_json(c->K, j);
            curve_of_[g.K.get()] = *c;
            return g;
        } catch (const MathError& e) {
            throw ParseError(path + ": invalid bundle: " + e.what());
        } catch (const json::exception& e) {
            throw ParseError(path + ": " + e.what());
        }
    }

    json curve_json(const FieldPtr& K) {
        auto it = curve_of_.find(K.get());
        if (it != curve_of_.end()) return curve_to_json(it->second);
        NamedCurve c;
        c.name = K->n() == 1 ? "rational" : "curve";
        c.K = K;
        return curve_to_json(c);
    }

    void remember(const NamedCurve& c) { curve_of_[c.K.get()] = c; }

    json bundle_json(const MatrixPair& g) {
        json j = pair_to_json(g);
        j["curve"] = curve_json(g.K);
        return j;
    }

  private:
    static NamedCurve curve_from_checked(const json& j, const std::string& what) {
        try {
            return curve_from_json(j);
        } catch (const MathError& e) {
            throw ParseError(what + ": invalid curve: " + e.what());
        } catch (const json::exception& e) {
            throw ParseError(what + ": " + e.what());
        }
    }
    static bool same(const NamedCurve& a, const NamedCurve& b) {
        return a.K == b.K || (a.K->k() == b.K->k() && a.K->fm()->chi == b.K->fm()->chi &&
                              a.K->fm()->B == b.K->fm()->B);
    }
    // One field object per distinct curve so that bundles from different files combine.
    const NamedCurve* intern(NamedCurve c) {
        for (auto& e : curves_)
            if (same(*e, c)) return e.get();
        curves_.push_back(std::make_unique<NamedCurve>(std::move(c)));
        curve_of_[curves_.back()->K.get()] = *curves_.back();
        return curves_.back().get();
    }

    std::vector<std::unique_ptr<NamedCurve>> curves_;
    const NamedCurve* global_ = nullptr;
    std::map<const FunctionField*, NamedCurve> curve_of_;
};

std::vector<Fe> form_arg(const GF* k, const std::string& v, size_t dim) {
    std::vector<Fe> phi(dim, Fe::zero(k));
    if (v.empty()) {
        if (dim == 0) throw MathError("the space is zero");
        phi[0] = Fe::one(k);
        return phi;
    }
    json j = json_arg(v);
    if (!j.is_array() || j.size() != dim)
        throw ParseError("--phi must list " + std::to_string(dim) + " coefficients");
    for (size_t i = 0; i < dim; ++i) {
        if (j[i].is_number_integer()) {
            phi[i] = Fe(k, k->from_int(j[i].get<int64_t>()));
            continue;
        }
        RatFunc r = parse_rat(k, j[i].get<std::string>());
        if (!r.is_poly() || r.num.deg() > 0) throw ParseError("--phi entries must be constants");
        phi[i] = Fe(k, r.num.deg() < 0 ? 0 : r.num.coeff(0));
    }
    return phi;
}

json basis_json(const FunctionField& K, const std::vector<EVec>& vecs) {
    json b = json::array();
    for (auto& v : vecs) b.push_back(vec_to_json(K, v));
    return b;
}

json fe_json(const Fe& a) { return a.v; }

json iso_json(Workspace& ws, const IsomResult& r, const std::string& method) {
    json j{{"isomorphic", r.found()}, {"method", method}};
    if (r.found()) j["matrix"] = matrix_to_json(*r.hom->src.K, r.hom->M);
    if (!r.reason.empty()) j["reason"] = r.reason;
    (void)ws;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    Workspace ws;
    CLI::App app{"Vector bundles on curves over finite fields as lattice pairs"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", ws.seed, "seed of the randomized routines")->capture_default_str();
    app.add_option("--curve", ws.curve_path, "curve file");
    app.add_option("--out", ws.out_path, "write the JSON result to this file");
    app.add_flag("-v,--verbose", ws.verbose, "log progress to standard error");

    std::function<json()> run;
    auto cmd = [&](const std::string& name, const std::string& help) { return app.add_subcommand(name, help); };

    // String options shared by several subcommands.
    std::string bundle, other, target, matrix, phi, kappa, divisor, elem, place, l1, l2, lp, dual_bases, method = "general";
    std::string a_vec, b_vec;
    int degree = 1, rank = 1, deg = 0, ext_degree = 0;
    uint64_t trials = 200, sample = 0;
    bool canonical_div = false;

    auto* c_info = cmd("curve-info", "genus, models and infinite places of a curve");
    c_info->callback([&] {
        run = [&] {
            const NamedCurve& c = ws.curve();
            const FunctionField& K = *c.K;
            json inf = json::array();
            for (auto& P : K.infinite_places()) inf.push_back(place_to_json(*P));
            json disc = json::array();
            for (auto& p : K.disc_primes()) disc.push_back(p.str("x"));
            return json{{"name", c.name},      {"p", K.k()->p()}, {"m", K.k()->m()},       {"q", K.k()->q()},
                        {"degree", K.n()},     {"genus", K.genus()}, {"infinite_places", inf},
                        {"shift", K.shift()},  {"disc_primes", disc}};
        };
    });

    auto* c_places = cmd("places", "places of a given degree");
    c_places->add_option("--degree", degree, "degree of the places")->capture_default_str();
    c_places->callback([&] {
        run = [&] {
            if (degree < 1) throw ParseError("--degree must be positive");
            const FunctionField& K = *ws.curve().K;
            json out = json::array();
            for (int e = 1; e <= degree; ++e)
                if (degree % e == 0)
                    for (auto& P : K.places_of_degree(e))
                        if (P->deg == degree) out.push_back(place_to_json(*P));
            for (auto& P : K.infinite_places())
                if (P->deg == degree) out.push_back(place_to_json(*P));
            return json{{"degree", degree}, {"count", out.size()}, {"places", out}};
        };
    });

    auto* c_div = cmd("divisor", "principal, canonical or given divisors");
    auto* g_div = c_div->add_option_group("source");
    g_div->add_option("--elem", elem, "principal divisor of this element");
    g_div->add_flag("--canonical", canonical_div, "divisor of the default differential");
    g_div->add_option("--divisor", divisor, "divisor file or inline JSON");
    g_div->require_option(1);
    c_div->callback([&] {
        run = [&] {
            const NamedCurve& c = ws.curve();
            if (!elem.empty()) return divisor_to_json(c.K->divisor_of(parse_elem(*c.K, elem)));
            if (canonical_div) return divisor_to_json(c.K->differential_divisor(c.K->default_differential()));
            Divisor D = divisor_from_json(*c.K, json_arg(divisor));
            json j = divisor_to_json(D);
            j["l_dim"] = h0(line_bundle(c.K, D)).dim();
            return j;
        };
    });

    auto* c_h0 = cmd("h0", "basis of the global sections");
    c_h0->add_option("--bundle", bundle, "bundle file")->required();
    c_h0->callback([&] {
        run = [&] {
            MatrixPair g = ws.bundle(bundle);
            SectionBasis B = h0(g);
            return json{{"dim", B.dim()}, {"basis", basis_json(*g.K, B.vecs)}};
        };
    });

    auto* c_h1d = cmd("h1-dual", "basis of the dual of H^1");
    c_h1d->add_option("--bundle", bundle, "bundle file")->required();
    c_h1d->callback([&] {
        run = [&] {
            MatrixPair g = ws.bundle(bundle);
            SerreContext ctx = SerreContext::make(g.K);
            SectionBasis B = h1_dual_basis(g, ctx);
            return json{{"dim", B.dim()}, {"basis", basis_json(*g.K, B.vecs)}};
        };
    });

    auto* c_h1r = cmd("h1-rep", "infinite repartition representing a linear form on the dual of H^1");
    c_h1r->add_option("--bundle", bundle, "bundle file")->required();
    c_h1r->add_option("--phi", phi, "coefficients of the form (default: first dual basis vector)");
    c_h1r->callback([&] {
        run = [&] {
            MatrixPair g = ws.bundle(bundle);
            SerreContext ctx = SerreContext::make(g.K);
            SectionBasis B = h1_dual_basis(g, ctx);
            std::vector<Fe> f = form_arg(g.K->k(), phi, B.dim());
            H1Report rep;
            EVec a = h1_representative(g, B.vecs, f, ctx, &rep);
            json fj = json::array();
            for (auto& x : f) fj.push_back(fe_json(x));
            return json{{"infinite_repartition", true}, {"representative", vec_to_json(*g.K, a)},
                        {"phi", fj},                    {"dual_basis", basis_json(*g.K, B.vecs)},
                        {"ell", rep.ell},               {"formula_ok", rep.formula_ok}};
        };
    });

    auto* c_sp = cmd("serre-pair", "pairing of a vector with an infinite repartition");
    c_sp->add_option("--a", a_vec, "vector of K^r (JSON list)")->required();
    c_sp->add_option("--b", b_vec, "infinite repartition of K^r (JSON list)")->required();
    c_sp->callback([&] {
        run = [&] {
            const NamedCurve& c = ws.curve();
            EVec a = vec_from_json(*c.K, json_arg(a_vec)), b = vec_from_json(*c.K, json_arg(b_vec));
            if (a.size() != b.size()) throw ParseError("--a and --b must have the same length");
            SerreContext ctx = SerreContext::make(c.K);
            return json{{"value", fe_json(serre_pair_inf(a, b, ctx))}};
        };
    });

    auto unary = [&](const std::string& name, const std::string& help, std::function<json(const MatrixPair&)> f) {
        auto* s = cmd(name, help);
        s->add_option("--bundle", bundle, "bundle file")->required();
        s->callback([&, f] { run = [&, f] { return f(ws.bundle(bundle)); }; });
        return s;
    };
    auto binary = [&](const std::string& name, const std::string& help,
                      std::function<json(const MatrixPair&, const MatrixPair&)> f) {
        auto* s = cmd(name, help);
        s->add_option("--bundle", bundle, "first bundle file")->required();
        s->add_option("--other", other, "second bundle file")->required();
        s->callback([&, f] {
            run = [&, f] {
                MatrixPair g = ws.bundle(bundle), h = ws.bundle(other);
                if (g.K != h.K) throw ParseError("the two bundles live on different curves");
                return f(g, h);
            };
        });
        return s;
    };

    unary("deg", "degree", [&](const MatrixPair& g) { return json{{"deg", vbc::degree(g)}}; });
    unary("det", "determinant line bundle", [&](const MatrixPair& g) { return ws.bundle_json(det_pair(g)); });
    unary("dual", "dual bundle", [&](const MatrixPair& g) { return ws.bundle_json(dual(g)); });
    binary("tensor", "tensor product", [&](const MatrixPair& g, const MatrixPair& h) { return ws.bundle_json(tensor(g, h)); });
    binary("dsum", "direct sum", [&](const MatrixPair& g, const MatrixPair& h) { return ws.bundle_json(dsum(g, h)); });
    binary("hom", "bundle of homomorphisms", [&](const MatrixPair& g, const MatrixPair& h) {
        return ws.bundle_json(hom_bundle(g, h));
    });
    unary("restrict", "restriction to the rational function field", [&](const MatrixPair& g) {
        return ws.bundle_json(restrict_to_base(g));
    });

    auto* c_con = cmd("conorm", "conorm from k(x) or to a constant field extension");
    c_con->add_option("--bundle", bundle, "bundle file")->required();
    auto* g_con = c_con->add_option_group("target");
    g_con->add_option("--target", target, "curve file of the extension of k(x)");
    g_con->add_option("--degree", ext_degree, "degree of the constant field extension");
    g_con->require_option(1);
    c_con->callback([&] {
        run = [&] {
            MatrixPair g = ws.bundle(bundle);
            if (!target.empty()) {
                NamedCurve t = curve_from_json(read_json_file(target));
                if (t.K->k() != g.K->k()) throw ParseError("target curve has a different constant field");
                ws.remember(t);
                return ws.bundle_json(conorm_from_base(g, t.K));
            }
            if (ext_degree < 1) throw ParseError("--degree must be positive");
            ConstantExtension E = constant_extension(g.K, static_cast<unsigned>(ext_degree));
            NamedCurve t;
            t.name = "curve-ext" + std::to_string(ext_degree);
            t.K = E.Kp;
            ws.remember(t);
            return ws.bundle_json(conorm(E, g));
        };
    });

    auto sub_cmd = [&](const std::string& name, const std::string& help, bool want_image) {
        auto* s = cmd(name, help);
        s->add_option("--bundle", bundle, "source bundle file")->required();
        s->add_option("--target", target, "target bundle file")->required();
        s->add_option("--matrix", matrix, "homomorphism (rows, target rank x source rank)")->required();
        s->callback([&, want_image] {
            run = [&, want_image] {
                MatrixPair g = ws.bundle(bundle), h = ws.bundle(target);
                if (g.K != h.K) throw ParseError("the two bundles live on different curves");
                EMat M = matrix_from_json(*g.K, json_arg(matrix));
                if (M.r != h.rank() || M.c != g.rank()) throw ParseError("--matrix has the wrong shape");
                if (!is_hom(g, h, M)) throw MathError("the matrix is not a homomorphism of lattice pairs");
                SubPair s = want_image ? image(g, M) : kernel(g, M);
                return json{{"bundle", ws.bundle_json(s.pair)}, {"embedding", matrix_to_json(*g.K, s.emb)}};
            };
        });
    };
    sub_cmd("image", "image of a homomorphism", true);
    sub_cmd("kernel", "kernel of a homomorphism", false);

    auto* c_ext = cmd("ext", "extension 0 -> sub -> E -> quot -> 0");
    c_ext->add_option("--sub", bundle, "sub bundle file")->required();
    c_ext->add_option("--quot", other, "quotient bundle file")->required();
    auto* g_ext = c_ext->add_option_group("class");
    g_ext->add_option("--phi", phi, "linear form on the dual basis of Ext^1 (default: first vector)");
    g_ext->add_option("--kappa", kappa, "class as an infinite repartition matrix (sub rank x quot rank)");
    g_ext->require_option(0, 1);
    c_ext->callback([&] {
        run = [&] {
            MatrixPair s = ws.bundle(bundle), q = ws.bundle(other);
            if (s.K != q.K) throw ParseError("the two bundles live on different curves");
            SerreContext ctx = SerreContext::make(s.K);
            Extension E;
            EMat kap;
            size_t dim = 0;
            if (!kappa.empty()) {
                kap = matrix_from_json(*s.K, json_arg(kappa));
                if (kap.r != s.rank() || kap.c != q.rank()) throw ParseError("--kappa has the wrong shape");
                E = extension_from_class(s, q, kap);
                dim = ext_dual_basis(s, q, ctx).dim();
            } else {
                SectionBasis D = ext_dual_basis(s, q, ctx);
                dim = D.dim();
                E = extension_from_form(s, q, form_arg(s.K->k(), phi, dim), ctx, &kap);
            }
            return json{{"ext_dim", dim},
                        {"bundle", ws.bundle_json(E.pair)},
                        {"iota", matrix_to_json(*s.K, E.iota)},
                        {"proj", matrix_to_json(*s.K, E.proj)},
                        {"kappa", matrix_to_json(*s.K, kap)},
                        {"infinite_repartition", true}};
        };
    });

    auto* c_iso = binary("isom", "isomorphism test", {});
    c_iso->add_option("--method", method, "general, indecomposable or monte-carlo")
        ->check(CLI::IsMember({"general", "indecomposable", "monte-carlo"}))
        ->capture_default_str();
    c_iso->add_option("--trials", trials, "Monte-Carlo trials")->capture_default_str();
    c_iso->add_option("--sample-size", sample, "Monte-Carlo sample set size (0: whole field)");
    c_iso->callback([&] {
        run = [&] {
            MatrixPair g = ws.bundle(bundle), h = ws.bundle(other);
            if (g.K != h.K) throw ParseError("the two bundles live on different curves");
            Rng rng(ws.seed);
            if (method == "general") return iso_json(ws, isom_general(g, h, rng), method);
            if (method == "indecomposable") return iso_json(ws, isom_indecomposable(g, h, rng), method);
            MonteCarloIsom mc(g, h);
            if (!mc.dims_match()) return iso_json(ws, IsomResult{std::nullopt, "dimension mismatch"}, method);
            uint64_t S = sample == 0 ? g.K->k()->q() : sample;
            if (S <= mc.s()) throw MathError("field too small; use deterministic path");
            for (uint64_t t = 0; t < trials; ++t) {
                IsomResult r = mc.trial(rng, S);
                if (r.found()) {
                    json j = iso_json(ws, r, method);
                    j["trials"] = t + 1;
                    return j;
                }
            }
            json j = iso_json(ws, IsomResult{std::nullopt, "inconclusive"}, method);
            j["trials"] = trials;
            return j;
        };
    });

    auto* c_split = cmd("split", "Krull-Schmidt decomposition");
    c_split->add_option("--bundle", bundle, "bundle file")->required();
    c_split->callback([&] {
        run = [&] {
            MatrixPair g = ws.bundle(bundle);
            Rng rng(ws.seed);
            SplitResult s = split_lattice(g, rng);
            json f = json::array();
            for (auto& F : s.factors)
                f.push_back(json{{"bundle", ws.bundle_json(F.bundle)},
                                 {"multiplicity", F.multiplicity},
                                 {"end_dim", F.end_dim},
                                 {"division_dim", F.division_dim},
                                 {"absolutely_indecomposable", F.absolutely_indecomposable()}});
            return json{{"factors", f}, {"isomorphism", matrix_to_json(*g.K, s.T)}, {"verified", s.verified}};
        };
    });

    auto* c_at = cmd("atiyah", "indecomposable bundle of given rank and degree on an elliptic curve");
    c_at->add_option("--rank", rank, "rank")->required();
    c_at->add_option("--deg", deg, "degree")->required();
    auto* g_at = c_at->add_option_group("determinant");
    g_at->add_option("--place", place, "degree-1 finite place P giving the degree-0 line bundle");
    g_at->add_option("--l0", l1, "degree-0 line bundle file");
    g_at->require_option(0, 1);
    c_at->callback([&] {
        run = [&] {
            const NamedCurve& c = ws.curve();
            EllipticContext E = EllipticContext::make(c.K);
            MatrixPair L0 = trivial_pair(c.K, 1);
            if (!place.empty()) {
                PlacePtr P = place_from_id(*c.K, place);
                if (P->infinite || P->deg != 1) throw ParseError("--place must be a finite place of degree 1");
                L0 = pic0_line(E, P);
            } else if (!l1.empty()) {
                L0 = ws.bundle(l1);
                if (L0.K != c.K) throw ParseError("--l0 lives on a different curve");
            }
            if (rank < 1) throw ParseError("--rank must be positive");
            MatrixPair g = atiyah_bundle(E, L0, rank, deg, ws.seed);
            return json{{"rank", rank}, {"deg", deg}, {"bundle", ws.bundle_json(g)}};
        };
    });

    auto* c_ws = cmd("weakly-stable", "weakly stable bundle balanced on a divisor");
    c_ws->add_option("--rank", rank, "rank")->required();
    c_ws->add_option("--deg", deg, "degree")->required();
    c_ws->add_option("--divisor", divisor, "divisor file or inline JSON")->required();
    c_ws->add_option("--l1", l1, "line bundle L1")->required();
    c_ws->add_option("--l2", l2, "line bundle L2")->required();
    c_ws->add_option("--lp", lp, "line bundle L'")->required();
    c_ws->add_option("--dual-bases", dual_bases, "per-step dual bases {\"<step>\": [vectors]}");
    c_ws->callback([&] {
        run = [&] {
            MatrixPair L1 = ws.bundle(l1), L2 = ws.bundle(l2), Lp = ws.bundle(lp);
            if (L1.K != L2.K || L1.K != Lp.K) throw ParseError("the line bundles live on different curves");
            const FieldPtr& K = L1.K;
            Divisor D = divisor_from_json(*K, json_arg(divisor));
            std::map<size_t, std::vector<EVec>> given;
            if (!dual_bases.empty()) {
                json j = json_arg(dual_bases);
                if (!j.is_object()) throw ParseError("--dual-bases must be an object keyed by step");
                for (auto& [k, v] : j.items()) {
                    std::vector<EVec> vs;
                    for (auto& e : v) vs.push_back(vec_from_json(*K, e));
                    given[std::stoul(k)] = vs;
                }
            }
            DualBasisHook hook = [&](size_t step, const MatrixPair&, const MatrixPair&) -> std::optional<std::vector<EVec>> {
                auto it = given.find(step);
                if (it == given.end()) return std::nullopt;
                return it->second;
            };
            SerreContext ctx = SerreContext::make(K);
            WeaklyStableResult r = weakly_stable_bundle(ctx, rank, deg, D, L1, L2, Lp, hook);
            json chain = json::array();
            for (auto& g : r.chain) chain.push_back(ws.bundle_json(g));
            return json{{"chain", chain}, {"bundle", ws.bundle_json(r.bundle())}, {"balanced", is_balanced(r.bundle(), D)}};
        };
    });

    auto* c_ag = cmd("ag-code", "evaluation code of the sections of a bundle on a divisor");
    c_ag->add_option("--bundle", bundle, "bundle file")->required();
    c_ag->add_option("--divisor", divisor, "divisor file or inline JSON")->required();
    c_ag->callback([&] {
        run = [&] {
            MatrixPair g = ws.bundle(bundle);
            Divisor D = divisor_from_json(*g.K, json_arg(divisor));
            CodeSpec s = ag_code_generator(g, D);
            return json{{"n", s.generator.c}, {"k", s.rank}, {"generator", fmatrix_to_json(s.generator)}};
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        json result = run();
        std::string text = result.dump() + "\n";
        if (ws.out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(ws.out_path);
            if (!out) throw ParseError("cannot write " + ws.out_path);
            out << text;
        }
        ws.log("done");
        return kExitOk;
    } catch (const ParseError& e) {
        std::cerr << "vbc: input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "vbc: input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const MathError& e) {
        std::cerr << "vbc: " << e.what() << "\n";
        return kExitMath;
    } catch (const std::exception& e) {
        std::cerr << "vbc: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
