#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "gdspec/families.hpp"
#include "gdspec/glvc.hpp"
#include "gdspec/jacobi.hpp"
#include "gdspec/markov.hpp"
#include "gdspec/positivity.hpp"
#include "gdspec/products.hpp"
#include "gdspec/serialization.hpp"

using namespace gdspec;

namespace {

// 0 success; 1 failed numeric assertion; 2 unusable request
int classify(const Error& e) {
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const UnknownGraph*>(&e) ||
        dynamic_cast<const UnsupportedFamily*>(&e) || dynamic_cast<const OutOfRange*>(&e) ||
        dynamic_cast<const DimensionMismatch*>(&e) || dynamic_cast<const DomainViolation*>(&e) ||
        dynamic_cast<const RowSumViolation*>(&e) || dynamic_cast<const NonIntegralShell*>(&e) ||
        dynamic_cast<const Disconnected*>(&e))
        return 2;
    return 1;
}

std::vector<double> parse_vector(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        auto comma = csv.find(',', pos);
        std::string tok = csv.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw ParseError("bad number '" + tok + "' in vector");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string exact_or_float(const std::optional<Rational>& r, double v) {
    return r ? rational_to_string(*r) : num(v);
}

void emit(const json& j) { std::printf("%s\n", j.dump(2).c_str()); }

// ---- spectrum ----

struct SpectrumOpts {
    std::string family;
    bool as_json = false;
};

int run_spectrum(const SpectrumOpts& o) {
    auto spec = parse_family_spec(o.family);
    auto t = spectral_table(intersection_array(spec));
    if (o.as_json) {
        json j = to_json(t);
        j["family"] = spec.to_string();
        j["array"] = t.ia.to_string();
        j["shells"] = t.shells.n;
        j["n"] = t.shells.total;
        emit(j);
        return 0;
    }
    std::printf("family: %s\n", spec.to_string().c_str());
    std::printf("array: %s\n", t.ia.to_string().c_str());
    std::printf("n = %lld, shells =", static_cast<long long>(t.shells.total));
    for (auto s : t.shells.n) std::printf(" %lld", static_cast<long long>(s));
    std::printf("\n%-16s %-6s coefficients\n", "lambda", "mult");
    for (std::size_t i = 0; i <= t.diameter(); ++i) {
        std::string lam = t.lambda_int[i] ? t.lambda_int[i]->str() : num(t.lambdas[i]);
        std::printf("%-16s %-6lld", lam.c_str(), static_cast<long long>(t.mults[i]));
        for (std::size_t m = 0; m <= t.diameter(); ++m) {
            if (!t.coeff_exact[i].empty())
                std::printf(" %s", rational_to_string(t.coeff_exact[i][m]).c_str());
            else
                std::printf(" %s", num(t.coeff(i, m)).c_str());
        }
        std::printf("\n");
    }
    return 0;
}

// ---- phi ----

struct PhiOpts {
    std::string family;
    bool closed = false;
    bool as_json = false;
};

int run_phi(const PhiOpts& o) {
    auto spec = parse_family_spec(o.family);
    auto t = spectral_table(intersection_array(spec));
    auto set = spectral_polynomials(t);
    std::optional<ClosedFormPhi> closed;
    if (o.closed) {
        closed = closed_form_phi(spec);
        if (!closed) throw UnsupportedFamily("no closed form for " + spec.to_string());
        for (std::size_t i = 0; i < set.entries.size(); ++i) {
            if (closed->set.entries[i].mult != set.entries[i].mult ||
                max_coeff_diff(closed->set.entries[i].poly, set.entries[i].poly) > 1e-9)
                throw SolverTolerance("closed form drifted from the recurrence");
        }
    }
    if (o.as_json) {
        json j = to_json(set);
        j["family"] = spec.to_string();
        if (closed) {
            j["closed_form_checked"] = true;
            j["conjectured"] = closed->conjectured;
        }
        emit(j);
        return 0;
    }
    std::printf("family: %s\n", spec.to_string().c_str());
    for (std::size_t i = 0; i < set.entries.size(); ++i) {
        std::string lam = t.lambda_int[i] ? t.lambda_int[i]->str() : num(t.lambdas[i]);
        std::printf("phi[%zu] (lambda = %s, mult %lld): %s\n", i, lam.c_str(),
                    static_cast<long long>(set.entries[i].mult),
                    poly_to_string(set.entries[i].poly).c_str());
    }
    if (closed)
        std::printf("closed form: match%s\n", closed->conjectured ? " (conjectured)" : "");
    return 0;
}

// ---- positivity ----

struct PositivityOpts {
    std::string family;
    std::uint64_t seed = 1;
    std::size_t samples = 200;
};

int run_positivity(const PositivityOpts& o) {
    auto spec = parse_family_spec(o.family);
    auto t = spectral_table(intersection_array(spec));
    auto rep = positivity_report(t, spectral_polynomials(t), o.seed, o.samples);
    json j = to_json(rep);
    j["family"] = spec.to_string();
    emit(j);
    return 0;
}

// ---- markov ----

struct MarkovOpts {
    std::string family;
    std::size_t dprime = 0; // 0: sweep all
    bool ctmc = false;
};

json markov_json(const FamilySpec& spec, const SpectralTable& t, std::size_t dp, bool ctmc) {
    auto sol = ctmc ? solve_ctmc(t, dp) : solve_dtmc(t, dp);
    json j;
    j["family"] = spec.to_string();
    j["dprime"] = dp;
    j["kind"] = ctmc ? "ctmc" : "dtmc";
    const char* value_key = ctmc ? "gap" : "nu_max";
    j[value_key] = sol.value;
    if (sol.value_exact) j[std::string(value_key) + "_exact"] = rational_to_string(*sol.value_exact);
    j["mu"] = sol.mu;
    if (sol.mu_exact) {
        std::vector<std::string> xs;
        for (const auto& r : *sol.mu_exact) xs.push_back(rational_to_string(r));
        j["mu_exact"] = xs;
    }
    j["active_rows"] = sol.active_rows;
    return j;
}

void markov_csv(const SpectralTable& t, bool ctmc) {
    std::printf("dprime,%s,mu,mu_over_shell\n", ctmc ? "gap" : "nu");
    for (std::size_t dp = 1; dp <= t.diameter(); ++dp) {
        auto sol = ctmc ? solve_ctmc(t, dp) : solve_dtmc(t, dp);
        std::string mu, rate;
        for (std::size_t k = 0; k < sol.mu.size(); ++k) {
            if (k) {
                mu += " ";
                rate += " ";
            }
            if (sol.mu_exact) {
                mu += rational_to_string((*sol.mu_exact)[k]);
                rate += rational_to_string((*sol.mu_exact)[k] / Rational(t.shells.n[k]));
            } else {
                mu += num(sol.mu[k]);
                rate += num(sol.mu[k] / static_cast<double>(t.shells.n[k]));
            }
        }
        std::printf("%zu,%s,%s,%s\n", dp, exact_or_float(sol.value_exact, sol.value).c_str(),
                    mu.c_str(), rate.c_str());
    }
}

int run_markov(const MarkovOpts& o) {
    auto spec = parse_family_spec(o.family);
    auto t = spectral_table(intersection_array(spec));
    if (o.dprime == 0) {
        std::printf("# %s %s\n", spec.to_string().c_str(), o.ctmc ? "ctmc" : "dtmc");
        markov_csv(t, o.ctmc);
        return 0;
    }
    emit(markov_json(spec, t, o.dprime, o.ctmc));
    return 0;
}

// ---- product ----

struct ProductOpts {
    std::vector<std::string> factors;
};

int run_product(const ProductOpts& o) {
    std::vector<SpectralPolynomialSet> sets;
    std::string name;
    for (const auto& f : o.factors) {
        auto spec = parse_family_spec(f);
        sets.push_back(spectral_polynomials(spectral_table(intersection_array(spec))));
        if (!name.empty()) name += " x ";
        name += spec.to_string();
    }
    auto ps = product_spectrum(std::move(sets));
    json j;
    j["product"] = name;
    j["candidate_count"] = ps.candidate_count;
    j["distinct_count"] = ps.distinct_count;
    j["phi"] = to_json(ps.combined)["phi"];
    j["total_mult"] = ps.combined.total_mult();
    emit(j);
    return 0;
}

// ---- glvc ----

struct GlvcOpts {
    std::string family;
    std::string f_csv;
    double mutation = -1.0; // negative: no mutation
    std::string x0_csv;
    double tend = 10.0;
    double dt = 0.01;
    std::size_t stride = 1;
};

GlvcSystem glvc_system(const GlvcOpts& o, const FamilySpec& spec, const SpectralTable& t,
                       const DistanceData& dist, std::vector<double>& f,
                       std::optional<std::vector<double>>& g) {
    f = parse_vector(o.f_csv);
    if (f.size() != t.diameter() + 1)
        throw ParseError("f needs " + std::to_string(t.diameter() + 1) + " entries for " +
                         spec.to_string());
    if (o.mutation >= 0.0) g = point_mutation_kernel(t.diameter(), o.mutation);
    return build_system(dist, f, g);
}

int run_glvc_jacobian(const GlvcOpts& o) {
    auto spec = parse_family_spec(o.family);
    auto t = spectral_table(intersection_array(spec));
    auto dist = all_pairs_distances(build_explicit(spec));
    std::vector<double> f;
    std::optional<std::vector<double>> g;
    auto sys = glvc_system(o, spec, t, dist, f, g);
    auto verdict = stability_verdict(sys, &t, &f, g ? &*g : nullptr);
    json j;
    j["family"] = spec.to_string();
    j["mutation"] = o.mutation >= 0.0 ? json(o.mutation) : json();
    j["eigenvalues"] = jacobian_spectrum(sys);
    j["max_eigenvalue"] = verdict.jacobian_eigen_max;
    j["max_eigenvalue_by_table"] = *verdict.matrix_route_eigen_max;
    j["stable"] = verdict.stable;
    emit(j);
    return 0;
}

int run_glvc_simulate(const GlvcOpts& o) {
    auto spec = parse_family_spec(o.family);
    auto t = spectral_table(intersection_array(spec));
    auto dist = all_pairs_distances(build_explicit(spec));
    std::vector<double> f;
    std::optional<std::vector<double>> g;
    auto sys = glvc_system(o, spec, t, dist, f, g);
    std::vector<double> x0 = sys.x_star;
    if (!o.x0_csv.empty()) {
        x0 = parse_vector(o.x0_csv);
        if (x0.size() != dist.n)
            throw ParseError("x0 needs " + std::to_string(dist.n) + " entries");
    }
    auto traj = integrate(sys, x0, o.tend, o.dt);
    std::printf("t");
    for (std::size_t i = 0; i < dist.n; ++i) std::printf(",x%zu", i + 1);
    std::printf("\n");
    for (std::size_t s = 0; s < traj.t.size(); s += o.stride) {
        std::printf("%s", num(traj.t[s]).c_str());
        for (double v : traj.x[s]) std::printf(",%s", num(v).c_str());
        std::printf("\n");
    }
    if ((traj.t.size() - 1) % o.stride != 0) {
        std::printf("%s", num(traj.t.back()).c_str());
        for (double v : traj.x.back()) std::printf(",%s", num(v).c_str());
        std::printf("\n");
    }
    return 0;
}

int run_glvc_stabilize(const GlvcOpts& o) {
    auto spec = parse_family_spec(o.family);
    auto t = spectral_table(intersection_array(spec));
    auto f = parse_vector(o.f_csv);
    if (f.size() != t.diameter() + 1)
        throw ParseError("f needs " + std::to_string(t.diameter() + 1) + " entries");
    auto rep = stabilizing_mutation(t, f);
    json j;
    j["family"] = spec.to_string();
    j["already_stable"] = rep.already_stable;
    j["mu_star"] = rep.mu_star;
    j["stable_at_half"] = rep.stable_at_half;
    j["max_eigen_at_mu_star"] = rep.max_eigen_at_mu_star;
    emit(j);
    return 0;
}

// ---- verify ----

struct VerifyOpts {
    std::string graph;
    int trials = 20;
    std::uint64_t seed = 1;
};

ExplicitGraph load_graph(const std::string& name) {
    try {
        return build_explicit(parse_family_spec(name));
    } catch (const ParseError&) {
        std::ifstream in(name);
        if (!in) throw ParseError("neither a family spec nor a readable file: " + name);
        return read_edge_list(in);
    }
}

int run_verify(const VerifyOpts& o) {
    auto g = load_graph(o.graph);
    auto dist = all_pairs_distances(g);
    auto rep = check_distance_regular(g, dist);
    if (!rep.array) {
        std::printf("FAIL %s: not distance-regular (shell-regular: %s", o.graph.c_str(),
                    rep.shell_regular ? "yes" : "no");
        if (rep.witness)
            std::printf(", witness pair %lld,%lld", static_cast<long long>((*rep.witness)[0]),
                        static_cast<long long>((*rep.witness)[1]));
        std::printf(")\n");
        return 1;
    }
    auto t = spectral_table(*rep.array);
    auto set = spectral_polynomials(t);
    std::printf("graph: %s, array %s, n = %lld\n", o.graph.c_str(), rep.array->to_string().c_str(),
                static_cast<long long>(t.shells.total));

    Rng rng(o.seed);
    double worst = 0.0;
    for (int trial = 0; trial < o.trials; ++trial) {
        auto f = random_competition_vector(rng, t.diameter());
        double norm = 0.0;
        for (double v : f) norm += v * v;
        norm = std::sqrt(norm);

        auto theory = eigenvalue_for_f(t, f);
        std::vector<double> expanded;
        for (std::size_t i = 0; i < theory.size(); ++i)
            for (std::int64_t m = 0; m < t.mults[i]; ++m) expanded.push_back(theory[i]);
        std::sort(expanded.begin(), expanded.end(), std::greater<double>());

        auto oracle = dense_sym_eigen(assemble_m(dist, f), false).values;
        double dev = 0.0;
        for (std::size_t i = 0; i < oracle.size(); ++i)
            dev = std::max(dev, std::abs(oracle[i] - expanded[i]));
        worst = std::max(worst, dev);
        if (dev > 1e-8 * norm) {
            std::printf("FAIL trial %d: spectrum deviates by %.3e (tolerance %.3e)\n", trial, dev,
                        1e-8 * norm);
            return 1;
        }
    }
    std::printf("ok: %d trials, %zu eigenvalue rows, worst deviation %.3e\n", o.trials,
                set.entries.size(), worst);
    return 0;
}

// ---- tables ----

int run_tables() {
    for (const char* s : {"hamming:8,2", "cubic:heawood", "cubic:pappus", "cubic:desargues",
                          "cubic:dodecahedral"}) {
        auto spec = parse_family_spec(s);
        auto t = spectral_table(intersection_array(spec));
        std::printf("# %s dtmc\n", spec.to_string().c_str());
        markov_csv(t, false);
        std::printf("\n");
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectra of distance-regular graphs and the optimization problems they carry"};
    app.require_subcommand(1);

    SpectrumOpts spectrum_opts;
    auto* spectrum = app.add_subcommand("spectrum", "eigenvalue and coefficient table");
    spectrum->add_option("--family", spectrum_opts.family, "family spec, e.g. cubic:petersen")
        ->required();
    spectrum->add_flag("--json", spectrum_opts.as_json, "emit JSON");

    PhiOpts phi_opts;
    auto* phi = app.add_subcommand("phi", "spectral polynomials");
    phi->add_option("--family", phi_opts.family, "family spec")->required();
    phi->add_flag("--closed-form", phi_opts.closed, "cross-check the closed form");
    phi->add_flag("--json", phi_opts.as_json, "emit JSON");

    PositivityOpts pos_opts;
    auto* pos = app.add_subcommand("positivity", "competition-domain positivity report");
    pos->add_option("--family", pos_opts.family, "family spec")->required();
    pos->add_option("--seed", pos_opts.seed, "rng seed");
    pos->add_option("--samples", pos_opts.samples, "random f samples");

    MarkovOpts markov_opts;
    auto* markov = app.add_subcommand("markov", "fastest-mixing step laws");
    markov->add_option("--family", markov_opts.family, "family spec")->required();
    markov->add_option("--dprime", markov_opts.dprime, "step budget; omit to sweep all");
    markov->add_flag("--ctmc", markov_opts.ctmc, "continuous-time variant");

    ProductOpts product_opts;
    auto* product = app.add_subcommand("product", "combined polynomials of a cartesian product");
    product->add_option("--factors", product_opts.factors, "factor family specs")
        ->required()
        ->expected(1, -1);

    GlvcOpts glvc_opts;
    auto* glvc = app.add_subcommand("glvc", "lotka-volterra competition on a graph");
    glvc->require_subcommand(1);
    auto add_common = [&](CLI::App* sub, bool needs_f) {
        sub->add_option("--family", glvc_opts.family, "family spec")->required();
        auto* fo = sub->add_option("--f", glvc_opts.f_csv, "competition function, comma separated");
        if (needs_f) fo->required();
    };
    auto* sim = glvc->add_subcommand("simulate", "integrate the dynamics");
    add_common(sim, true);
    sim->add_option("--mutation", glvc_opts.mutation, "point mutation rate");
    sim->add_option("--x0", glvc_opts.x0_csv, "start state, comma separated");
    sim->add_option("--tend", glvc_opts.tend, "horizon");
    sim->add_option("--dt", glvc_opts.dt, "step size");
    sim->add_option("--stride", glvc_opts.stride, "print every k-th step")
        ->check(CLI::PositiveNumber);
    auto* jac = glvc->add_subcommand("jacobian", "fixed-point spectrum and stability");
    add_common(jac, true);
    jac->add_option("--mutation", glvc_opts.mutation, "point mutation rate");
    auto* stab = glvc->add_subcommand("stabilize", "smallest stabilizing mutation rate");
    add_common(stab, true);

    VerifyOpts verify_opts;
    auto* verify = app.add_subcommand("verify", "dense-spectrum cross-check of the theory route");
    verify->add_option("--graph", verify_opts.graph, "family spec or edge-list file")->required();
    verify->add_option("--trials", verify_opts.trials, "random functions to test")
        ->check(CLI::PositiveNumber);
    verify->add_option("--seed", verify_opts.seed, "rng seed");

    auto* tables = app.add_subcommand("tables", "step-law tables for the worked examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (spectrum->parsed()) return run_spectrum(spectrum_opts);
        if (phi->parsed()) return run_phi(phi_opts);
        if (pos->parsed()) return run_positivity(pos_opts);
        if (markov->parsed()) return run_markov(markov_opts);
        if (product->parsed()) return run_product(product_opts);
        if (glvc->parsed()) {
            if (sim->parsed()) return run_glvc_simulate(glvc_opts);
            if (jac->parsed()) return run_glvc_jacobian(glvc_opts);
            if (stab->parsed()) return run_glvc_stabilize(glvc_opts);
        }
        if (verify->parsed()) return run_verify(verify_opts);
        if (tables->parsed()) return run_tables();
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return classify(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 2;
}
