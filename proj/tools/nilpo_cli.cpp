/*
   Copyright 2026 The nilpo Authors

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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include <nilpo/nilpo.hpp>

namespace {

using nilpo::io::json;

constexpr int kExitObstructed = 2;
constexpr int kExitInconclusive = 3;
constexpr int kExitMalformed = 64;
constexpr int kExitPrecondition = 65;
constexpr int kExitNumerical = 70;

struct Globals {
    std::uint64_t seed = 2026;
    double tol = nilpo::kDefaultTol;
    int quad = nilpo::kDefaultQuad;
    int budget = 3000;
    std::string out;
};

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw nilpo::InputError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw nilpo::InputError(path + ": " + e.what());
    }
}

// Inline JSON if the argument starts with '{', otherwise a file path.
json read_json_arg(const std::string& arg) {
    const auto first = arg.find_first_not_of(" \t\n");
    if (first != std::string::npos && arg[first] == '{') {
        try {
            return json::parse(arg);
        } catch (const json::parse_error& e) {
            throw nilpo::InputError(e.what());
        }
    }
    return read_json_file(arg);
}

nilpo::ComplexMatrix read_matrix(const std::string& path) {
    return nilpo::io::matrix_from_json(read_json_file(path));
}

void emit(const Globals& g, const json& j) {
    const std::string text = j.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out, std::ios::binary);
    if (!f) throw nilpo::InputError("cannot write " + g.out);
    f << text;
}

nilpo::OptConfig opt_config(const Globals& g, int degree_budget) {
    nilpo::OptConfig c;
    c.seed = g.seed;
    c.quad = g.quad;
    c.simplex_evals = g.budget;
    c.degree_budget = degree_budget;
    return c;
}

void check_globals(const Globals& g) {
    if (!(g.tol > 0.0)) throw nilpo::InputError("--tol must be positive");
    if (g.quad < 64) throw nilpo::InputError("--quad must be at least 64");
    if (g.budget < 1) throw nilpo::InputError("--budget must be positive");
}

int cmd_certify(const Globals& g, const std::string& path) {
    const auto t = read_matrix(path);
    nilpo::SearchConfig cfg;
    cfg.tol = g.tol;
    cfg.seed = g.seed;
    cfg.iterations = g.budget;
    const auto cert = nilpo::find_conjugation(t, cfg);
    json j = nilpo::io::certificate_to_json(cert);
    j["input"] = nilpo::io::matrix_to_json(t);
    j["tol"] = g.tol;
    emit(g, j);
    switch (cert.verdict) {
        case nilpo::Verdict::c_symmetric: return 0;
        case nilpo::Verdict::obstructed: return kExitObstructed;
        default: return kExitInconclusive;
    }
}

int cmd_destructor(const Globals& g, const std::string& path, double alpha, double beta) {
    const auto a = read_matrix(path);
    json j = nilpo::io::destructor_to_json(nilpo::destructor_witness(a, alpha, beta));
    j["input"] = nilpo::io::matrix_to_json(a);
    emit(g, j);
    return 0;
}

int cmd_tto(const Globals& g, const std::string& u_arg, const std::string& phi_arg) {
    const auto u = nilpo::io::blaschke_from_json(read_json_arg(u_arg));
    const auto phi = nilpo::io::symbol_from_json(read_json_arg(phi_arg));
    emit(g, nilpo::io::matrix_to_json(nilpo::tto_matrix(u, phi, g.quad)));
    return 0;
}

int cmd_synthesize(const Globals& g, const std::string& path, int degree_budget) {
    const auto n = read_matrix(path);
    json j = nilpo::io::synthesis_to_json(nilpo::synthesize_tto_for_nilpotent2(n, opt_config(g, degree_budget)));
    j["input"] = nilpo::io::matrix_to_json(n);
    j["seed"] = g.seed;
    emit(g, j);
    return j["converged"].get<bool>() ? 0 : kExitInconclusive;
}

int cmd_verify(const Globals& g, bool timings) {
    nilpo::suite::RunConfig cfg;
    cfg.seed = g.seed;
    cfg.tol = g.tol;
    cfg.quad = g.quad;
    cfg.budget = g.budget;
    const auto report = nilpo::suite::run_suite(cfg);
    emit(g, nilpo::suite::report_to_json(report, timings));
    for (const auto& e : report.entries)
        std::cerr << nilpo::suite::to_string(e.status) << "  " << e.name << "\n";
    return report.all_passed() ? 0 : 1;
}

int cmd_question1(const Globals& g, const std::string& path, std::size_t max_len, std::size_t terms,
                  std::size_t samples) {
    const auto t = read_matrix(path);
    const auto hit = nilpo::polynomial_obstruction_search(t, max_len, terms, samples, g.seed, g.tol);
    json j = {{"input", nilpo::io::matrix_to_json(t)},
              {"seed", g.seed},
              {"max_len", max_len},
              {"terms", terms},
              {"samples", samples},
              {"found", hit.has_value()},
              {"note", "exploratory search; no claim either way"}};
    if (hit) {
        j["polynomial"] = hit->polynomial.str();
        j["gap"] = hit->gap;
    }
    emit(g, j);
    return 0;
}

int cmd_question2(const Globals& g, const std::string& path, int pad, int degree_budget) {
    const auto n = read_matrix(path);
    if (pad < 1) throw nilpo::InputError("--pad must be positive");
    const nilpo::ComplexMatrix padded = nilpo::direct_sum(n, nilpo::ComplexMatrix::Zero(pad, pad));
    const auto cfg = opt_config(g, degree_budget);
    const auto base = nilpo::synthesize_tto_for_nilpotent2(n, cfg);
    const auto ext = nilpo::synthesize_tto_for_nilpotent2(padded, cfg);
    json j = {{"input", nilpo::io::matrix_to_json(n)},
              {"seed", g.seed},
              {"pad", pad},
              {"base", {{"equivalence_residual", base.equivalence_residual},
                        {"converged", base.converged},
                        {"u_total", nilpo::io::blaschke_to_json(base.u_total)}}},
              {"padded", {{"equivalence_residual", ext.equivalence_residual},
                          {"converged", ext.converged},
                          {"u_total", nilpo::io::blaschke_to_json(ext.u_total)}}},
              {"note", "experimental comparison; no claim is made"}};
    emit(g, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nilpo: complex symmetry certificates and truncated Toeplitz synthesis"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    Globals g;
    app.add_option("--seed", g.seed, "base seed for all randomness");
    app.add_option("--tol", g.tol, "decision tolerance");
    app.add_option("--quad", g.quad, "quadrature nodes on the circle");
    app.add_option("--budget", g.budget, "iterations or evaluations per optimizer start");
    app.add_option("--out", g.out, "write JSON here instead of stdout");

    std::string matrix, u_arg, phi_arg;
    double alpha = 1.0, beta = 2.0;
    int degree_budget = 0, pad = 1;
    bool timings = false;
    std::size_t max_len = 4, terms = 3, samples = 256;

    auto* certify = app.add_subcommand("certify", "certify or obstruct complex symmetry");
    certify->add_option("--matrix", matrix, "matrix JSON file")->required();
    auto* destructor = app.add_subcommand("destructor", "destructor certificate for A with A^2 != 0");
    destructor->add_option("--matrix", matrix, "matrix JSON file")->required();
    destructor->add_option("--alpha", alpha);
    destructor->add_option("--beta", beta);
    auto* tto = app.add_subcommand("tto", "truncated Toeplitz matrix on K_u");
    tto->add_option("--u", u_arg, "Blaschke JSON (inline or file)")->required();
    tto->add_option("--phi", phi_arg, "symbol JSON (inline or file)")->required();
    auto* synth = app.add_subcommand("synthesize", "analytic TTO model of a square-zero matrix");
    synth->add_option("--matrix", matrix, "matrix JSON file")->required();
    synth->add_option("--degree-budget", degree_budget, "symbol coefficients to optimize (0 = rank)");
    auto* verify = app.add_subcommand("verify-paper", "run the regression suite");
    verify->add_flag("--timings", timings, "include wall times (output is then not reproducible)");
    auto* q1 = app.add_subcommand("question1-search", "random polynomial obstruction search");
    q1->add_option("--matrix", matrix, "matrix JSON file")->required();
    q1->add_option("--max-len", max_len);
    q1->add_option("--terms", terms);
    q1->add_option("--samples", samples);
    auto* q2 = app.add_subcommand("question2-compare", "synthesize N and N + 0 and compare");
    q2->add_option("--matrix", matrix, "matrix JSON file")->required();
    q2->add_option("--pad", pad, "size of the zero summand");
    q2->add_option("--degree-budget", degree_budget);

    CLI11_PARSE(app, argc, argv);

    try {
        check_globals(g);
        if (certify->parsed()) return cmd_certify(g, matrix);
        if (destructor->parsed()) return cmd_destructor(g, matrix, alpha, beta);
        if (tto->parsed()) return cmd_tto(g, u_arg, phi_arg);
        if (synth->parsed()) return cmd_synthesize(g, matrix, degree_budget);
        if (verify->parsed()) return cmd_verify(g, timings);
        if (q1->parsed()) return cmd_question1(g, matrix, max_len, terms, samples);
        if (q2->parsed()) return cmd_question2(g, matrix, pad, degree_budget);
    } catch (const nilpo::InputError& e) {
        std::cerr << "nilpo: malformed input: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const json::exception& e) {
        std::cerr << "nilpo: malformed input: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const nilpo::PreconditionError& e) {
        std::cerr << "nilpo: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const nilpo::CapacityError& e) {
        std::cerr << "nilpo: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "nilpo: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
