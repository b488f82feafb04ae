// Copyright 2026 The Triortho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "triortho/codes.h"
#include "triortho/cost.h"
#include "triortho/distill.h"
#include "triortho/gf2.h"
#include "triortho/logical.h"
#include "triortho/simulator.h"

namespace triortho::cli {

using json = nlohmann::ordered_json;

void write_atomically(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw std::runtime_error("cannot write " + tmp.string());
        }
        f << content;
        f.flush();
        if (!f) {
            throw std::runtime_error("write to " + tmp.string() + " failed");
        }
    }
    fs::rename(tmp, target);
}

namespace {

// Bad input files, unparsable JSON and out-of-range parameters map to exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

uint64_t parse_seed(const std::string &s) {
    try {
        size_t used = 0;
        uint64_t v = std::stoull(s, &used, 0);
        if (used != s.size()) {
            throw std::invalid_argument(s);
        }
        return v;
    } catch (const std::exception &) {
        throw UsageError("seed must be an unsigned 64-bit integer, got '" + s + "'");
    }
}

std::string read_text(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot read " + path);
    }
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

struct CodeSource {
    std::string file;
    std::string builtin;
    size_t level = 3;

    void add_to(CLI::App *sub) {
        sub->add_option("--file", file, "matrix file (rows of 0/1, '#' comments)");
        sub->add_option("--builtin", builtin, "built-in matrix: 15-1-3 (the default)");
    }

    TriorthogonalMatrix matrix() const {
        if (!file.empty() && !builtin.empty()) {
            throw UsageError("give at most one of --file or --builtin");
        }
        if (file.empty()) {
            if (!builtin.empty() && builtin != "15-1-3") {
                throw UsageError("unknown built-in '" + builtin + "' (available: 15-1-3)");
            }
            return builtin_15_1_3();
        }
        BitMatrix m;
        try {
            m = read_matrix_file(file);
        } catch (const std::exception &e) {
            throw UsageError(e.what());
        }
        return TriorthogonalMatrix::verify(std::move(m), level);
    }
};

std::string label_string(const std::vector<bool> &bits) {
    std::string s;
    for (bool b : bits) {
        s += b ? '1' : '0';
    }
    return s;
}

std::vector<bool> label_from_index(uint64_t index, size_t k) {
    std::vector<bool> bits(k);
    for (size_t j = 0; j < k; j++) {
        bits[j] = (index >> (k - 1 - j)) & 1;
    }
    return bits;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

json interval_json(const Interval &i) { return json::array({i.low, i.high}); }

json matrix_rows(const BitMatrix &m) {
    json rows = json::array();
    for (size_t i = 0; i < m.rows(); i++) {
        rows.push_back(m.row(i).str());
    }
    return rows;
}

/// Logical single-qubit input states offered by the Hadamard commands.
SparseState logical_input(const std::string &name, size_t k) {
    if (k != 1) {
        throw UsageError("the Hadamard commands need a code with k = 1");
    }
    const double r = 1 / std::sqrt(2.0);
    auto zero = BitVector::from_string("0");
    auto one = BitVector::from_string("1");
    if (name == "0") return SparseState::from_terms(1, {{zero, {1, 0}}});
    if (name == "1") return SparseState::from_terms(1, {{one, {1, 0}}});
    if (name == "+") return SparseState::from_terms(1, {{zero, {r, 0}}, {one, {r, 0}}});
    if (name == "-") return SparseState::from_terms(1, {{zero, {r, 0}}, {one, {-r, 0}}});
    if (name == "psi") return SparseState::from_terms(1, {{zero, {0.6, 0}}, {one, {0, 0.8}}});
    throw UsageError("--input must be one of 0, 1, +, -, psi");
}

// Per-run seed: a fixed mix of the base seed and the run index.
uint64_t run_seed(uint64_t seed, uint64_t run) {
    uint64_t z = seed + 0x9E3779B97F4A7C15ull * (run + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

ErrorModel read_error_model(const std::string &path) {
    json j;
    try {
        j = json::parse(read_text(path));
        ErrorModel m;
        m.p = j.at("p").get<double>();
        auto w = j.at("class_weights").get<std::vector<double>>();
        if (w.size() != kErrorClasses) {
            throw UsageError("class_weights must have 7 entries");
        }
        std::copy(w.begin(), w.end(), m.class_weights.begin());
        m.validate();
        return m;
    } catch (const UsageError &) {
        throw;
    } catch (const std::exception &e) {
        throw UsageError("bad error model " + path + ": " + e.what());
    }
}

struct Common {
    std::string format = "text";
    std::string output;
    std::string seed_text = "0x5EED";

    bool as_json() const { return format == "json"; }
    uint64_t seed() const { return parse_seed(seed_text); }
};

void add_common(CLI::App *sub, Common &c, bool seeded) {
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--output,-o", c.output, "write the primary output to this file");
    if (seeded) {
        sub->add_option("--seed", c.seed_text, "64-bit seed (decimal or 0x hex)");
    }
}

}  // namespace

int dispatch(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Toolkit for triorthogonal codes: construction, transversal CCZ checks, "
                 "logical Hadamard, Toffoli distillation and T-cost estimates.",
                 "triortho"};
    app.require_subcommand(1);
    Common common;
    CodeSource source;

    auto *check = app.add_subcommand("check-matrix", "check that a binary matrix is orthogonal up to --level");
    check->add_option("--file", source.file, "matrix file")->required();
    check->add_option("--level", source.level, "orthogonality level (>= 2)");
    add_common(check, common, false);

    auto *build = app.add_subcommand("build-code", "build the CSS code of a triorthogonal matrix");
    source.add_to(build);
    bool skip_distances = false;
    build->add_flag("--no-distances", skip_distances, "skip the exhaustive distance search");
    add_common(build, common, false);

    auto *search = app.add_subcommand("search", "randomized search for a triorthogonal matrix");
    SearchOptions sopt;
    search->add_option("--n", sopt.n, "columns")->required();
    search->add_option("--k", sopt.k, "odd rows");
    search->add_option("--m-even", sopt.m_even, "even rows")->required();
    search->add_option("--budget", sopt.budget, "number of trials");
    search->add_flag("--cover", sopt.require_full_cover, "require every column covered by an even row");
    add_common(search, common, true);

    auto *ccz = app.add_subcommand("verify-ccz", "check transversal CCZ phases on all logical basis labels");
    source.add_to(ccz);
    add_common(ccz, common, false);

    auto *had = app.add_subcommand("simulate-hadamard", "run the logical Hadamard with Steane correction");
    source.add_to(had);
    std::string input = "psi";
    uint64_t runs = 1;
    had->add_option("--input", input, "logical input: 0, 1, +, -, psi");
    had->add_option("--runs", runs, "independent runs");
    add_common(had, common, true);

    auto *inject = app.add_subcommand("inject-faults", "run the logical Hadamard with injected faults");
    source.add_to(inject);
    std::vector<std::string> faults;
    bool sweep = false;
    size_t weight = 1;
    bool z_faults = false;
    inject->add_option("--fault", faults, "fault like X@cnot_data[3] (repeatable)");
    inject->add_option("--input", input, "logical input: 0, 1, +, -, psi");
    inject->add_flag("--sweep", sweep, "exhaustive fault-tolerance sweep instead of one run");
    inject->add_option("--weight", weight, "sweep: maximum number of faults");
    inject->add_flag("--z-faults", z_faults, "sweep: include Z faults");
    add_common(inject, common, true);

    auto *distill = app.add_subcommand("distill", "Monte Carlo of Toffoli distillation with Z faults");
    source.add_to(distill);
    std::string model_path;
    double p_uniform = -1;
    uint64_t trials = 100000;
    unsigned threads = 1;
    std::string trials_csv;
    distill->add_option("--model", model_path, "error model JSON {p, class_weights[7]}");
    distill->add_option("--p", p_uniform, "uniform error model with this p");
    distill->add_option("--trials", trials, "number of trials");
    distill->add_option("--threads", threads, "worker threads");
    distill->add_option("--trials-csv", trials_csv, "write one CSV row per trial with faults");
    add_common(distill, common, true);

    auto *curve = app.add_subcommand("cost-curve", "T-count of Toffoli distillation stacks");
    std::string menu_path;
    CostQuery cq;
    int min_exp = 6;
    int max_exp = 20;
    double single_target = -1;
    std::string top_family;
    curve->add_option("--menu", menu_path, "protocol menu JSON (default: built-in menu)");
    curve->add_option("--physical", cq.physical_t_error, "physical T error");
    curve->add_option("--depth", cq.max_depth, "maximum stack depth");
    curve->add_option("--min-exp", min_exp, "loosest target 10^-min_exp");
    curve->add_option("--max-exp", max_exp, "tightest target 10^-max_exp");
    curve->add_option("--target", single_target, "optimize a single target instead of a curve");
    curve->add_option("--top-family", top_family, "with --target: require this family on top");
    curve->add_option("--threads", threads, "worker threads");
    add_common(curve, common, false);

    for (auto *sub : app.get_subcommands([](CLI::App *) { return true; })) {
        sub->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        err << app.help();
        return kUsageError;
    }

    std::ostringstream body;
    int code = kOk;
    try {
        if (check->parsed()) {
            if (source.level < 2) {
                throw UsageError("--level must be at least 2");
            }
            BitMatrix m;
            try {
                m = read_matrix_file(source.file);
            } catch (const std::exception &e) {
                throw UsageError(e.what());
            }
            auto v = check_orthogonality(m, source.level);
            if (common.as_json()) {
                json j;
                j["pass"] = v.pass;
                j["level"] = source.level;
                j["rows"] = m.rows();
                j["cols"] = m.cols();
                j["violation"] = v.violation;
                body << j.dump() << '\n';
            } else if (v.pass) {
                body << "PASS level=" << source.level << '\n';
            } else {
                body << "FAIL level=" << source.level << " violation=(";
                for (size_t i = 0; i < v.violation.size(); i++) {
                    body << (i ? "," : "") << v.violation[i];
                }
                body << ")\n";
            }
            code = v.pass ? kOk : kVerificationFailed;
        } else if (build->parsed()) {
            auto code_obj = build_code(source.matrix());
            if (!skip_distances) {
                fill_distances(code_obj);
            }
            json j;
            j["n"] = code_obj.n;
            j["k"] = code_obj.k;
            j["level"] = code_obj.level;
            j["x_stabilizers"] = code_obj.x_stabilizers.rows();
            j["z_stabilizers"] = code_obj.z_stabilizers.rows();
            j["gauge_pairs"] = code_obj.gauge_pairs.size();
            j["d_x"] = code_obj.d_x ? json(*code_obj.d_x) : json(nullptr);
            j["d_z"] = code_obj.d_z ? json(*code_obj.d_z) : json(nullptr);
            j["distance"] = code_obj.distance() ? json(*code_obj.distance()) : json(nullptr);
            if (common.as_json()) {
                j["x_stabilizer_rows"] = matrix_rows(code_obj.x_stabilizers);
                j["z_stabilizer_rows"] = matrix_rows(code_obj.z_stabilizers);
                json lx = json::array();
                for (const auto &v : code_obj.logical_x) lx.push_back(v.str());
                j["logical"] = lx;
                body << j.dump() << '\n';
            } else {
                for (const auto &[key, value] : j.items()) {
                    body << key << '=' << (value.is_null() ? "-" : value.dump()) << '\n';
                }
                body << "# x stabilizers\n" << code_obj.x_stabilizers.str();
                body << "# z stabilizers\n" << code_obj.z_stabilizers.str();
                body << "# logical operators\n";
                for (const auto &v : code_obj.logical_x) body << v.str() << '\n';
            }
        } else if (search->parsed()) {
            sopt.seed = common.seed();
            SearchResult r;
            try {
                r = search_triorthogonal(sopt);
            } catch (const std::invalid_argument &e) {
                throw UsageError(e.what());
            }
            if (common.as_json()) {
                json j;
                j["seed"] = sopt.seed;
                j["n"] = sopt.n;
                j["k"] = sopt.k;
                j["m_even"] = sopt.m_even;
                j["budget"] = sopt.budget;
                j["trials_used"] = r.trials_used;
                j["found"] = r.matrix.has_value();
                j["matrix"] = r.matrix ? matrix_rows(r.matrix->matrix()) : json(nullptr);
                body << j.dump() << '\n';
            } else if (r.matrix) {
                body << format_search_result(*r.matrix, sopt, r.trials_used);
            } else {
                body << "# seed=" << sopt.seed << " budget=" << sopt.budget << " trials_used=" << r.trials_used
                     << "\n# no triorthogonal matrix found\n";
            }
            code = r.matrix ? kOk : kVerificationFailed;
        } else if (ccz->parsed()) {
            auto code_obj = build_code(source.matrix());
            size_t k = code_obj.k;
            if (3 * k > 12) {
                throw UsageError("verify-ccz enumerates 2^(3k) labels; k must be at most 4");
            }
            json results = json::array();
            bool all_ok = true;
            for (uint64_t idx = 0; idx < (uint64_t{1} << (3 * k)); idx++) {
                auto a = label_from_index(idx >> (2 * k), k);
                auto b = label_from_index((idx >> k) & ((uint64_t{1} << k) - 1), k);
                auto c = label_from_index(idx & ((uint64_t{1} << k) - 1), k);
                auto v = transversal_ccz_phase_check(code_obj, a, b, c);
                all_ok &= v.ok();
                if (common.as_json()) {
                    json r;
                    r["a"] = label_string(a);
                    r["b"] = label_string(b);
                    r["c"] = label_string(c);
                    r["phase"] = v.phase;
                    r["expected"] = v.expected;
                    r["uniform"] = v.uniform;
                    r["terms"] = v.terms;
                    results.push_back(r);
                } else {
                    body << '(' << label_string(a) << ',' << label_string(b) << ',' << label_string(c) << ") -> "
                         << (v.uniform ? (v.phase > 0 ? "+1" : "-1") : "mixed")
                         << (v.ok() ? "" : "  MISMATCH") << '\n';
                }
            }
            if (common.as_json()) {
                json j;
                j["n"] = code_obj.n;
                j["k"] = k;
                j["pass"] = all_ok;
                j["results"] = results;
                body << j.dump() << '\n';
            }
            code = all_ok ? kOk : kVerificationFailed;
        } else if (had->parsed()) {
            uint64_t seed = common.seed();
            auto tm = source.matrix();
            SteaneProcedure proc(build_code(tm));
            auto logical = logical_input(input, proc.code().k);
            SparseState data = encode(proc.code(), logical);
            SparseState ideal = proc.ideal_hadamard_image(data);
            json header;
            header["command"] = "simulate-hadamard";
            header["seed"] = seed;
            header["input"] = input;
            header["runs"] = runs;
            body << header.dump() << '\n';
            bool all_ok = true;
            for (uint64_t run = 0; run < runs; run++) {
                auto rnd = Randomness::seeded(run_seed(seed, run));
                auto result = proc.logical_hadamard(data, {}, rnd, false);
                all_ok &= result.report.decode_success &&
                          states_equal_up_to_global_phase(result.state, ideal, 1e-10);
                body << result.report.to_json() << '\n';
            }
            code = all_ok ? kOk : kVerificationFailed;
        } else if (inject->parsed()) {
            uint64_t seed = common.seed();
            auto tm = source.matrix();
            auto code_obj = build_code(tm);
            json header;
            header["command"] = "inject-faults";
            header["seed"] = seed;
            if (sweep) {
                SweepOptions opt;
                opt.weight_limit = weight;
                opt.include_z_faults = z_faults;
                opt.seeds = {seed};
                auto rep = fault_tolerance_sweep(code_obj, opt);
                header["mode"] = "sweep";
                header["weight"] = weight;
                header["z_faults"] = z_faults;
                body << header.dump() << '\n';
                json s;
                s["fault_sets_checked"] = rep.fault_sets_checked;
                s["runs"] = rep.runs;
                json cex = json::array();
                for (const auto &c : rep.counterexamples) {
                    json cj;
                    json fl = json::array();
                    for (const auto &f : c.faults) fl.push_back(f.str());
                    cj["faults"] = fl;
                    cj["seed"] = c.seed;
                    cj["reason"] = c.reason;
                    cex.push_back(cj);
                }
                s["counterexamples"] = cex;
                body << s.dump() << '\n';
                code = rep.counterexamples.empty() ? kOk : kVerificationFailed;
            } else {
                std::vector<FaultSpec> specs;
                json fl = json::array();
                for (const auto &f : faults) {
                    try {
                        specs.push_back(parse_fault_spec(f));
                    } catch (const std::invalid_argument &e) {
                        throw UsageError(e.what());
                    }
                    if (specs.back().qubit >= code_obj.n) {
                        throw UsageError("fault qubit out of range in '" + f + "'");
                    }
                    fl.push_back(specs.back().str());
                }
                SteaneProcedure proc(code_obj);
                auto data = encode(proc.code(), logical_input(input, proc.code().k));
                header["mode"] = "single";
                header["input"] = input;
                header["faults"] = fl;
                body << header.dump() << '\n';
                auto rnd = Randomness::seeded(seed);
                auto result = proc.logical_hadamard(data, specs, rnd, false);
                body << result.report.to_json() << '\n';
                code = result.report.decode_success ? kOk : kVerificationFailed;
            }
        } else if (distill->parsed()) {
            uint64_t seed = common.seed();
            auto tm = source.matrix();
            ErrorModel model;
            if (!model_path.empty() && p_uniform >= 0) {
                throw UsageError("give only one of --model or --p");
            }
            if (!model_path.empty()) {
                model = read_error_model(model_path);
            } else if (p_uniform >= 0) {
                model = ErrorModel::uniform(p_uniform);
                try {
                    model.validate();
                } catch (const std::invalid_argument &e) {
                    throw UsageError(e.what());
                }
            } else {
                throw UsageError("give --model or --p");
            }
            if (trials == 0) {
                throw UsageError("--trials must be positive");
            }
            MonteCarloStats stats;
            if (!trials_csv.empty()) {
                std::ostringstream csv;
                csv << "# seed=" << seed << " trials=" << trials << '\n';
                csv << "trial,accepted,harmful,faults\n";
                stats = monte_carlo(tm, model, trials, seed, [&](uint64_t t, const DistillOutcome &o) {
                    csv << t << ',' << o.accepted << ',' << (o.accepted && o.harmful()) << ',';
                    for (size_t i = 0; i < o.fault_sites.size(); i++) {
                        csv << (i ? ";" : "") << o.fault_sites[i].site << ':' << o.fault_sites[i].error_class;
                    }
                    csv << '\n';
                });
                write_atomically(trials_csv, csv.str());
            } else {
                stats = monte_carlo(tm, model, trials, seed, threads);
            }
            auto coeff = enumerate_order2(tm, model);
            json j;
            j["seed"] = seed;
            j["p"] = model.p;
            j["class_weights"] = model.class_weights;
            j["trials"] = stats.trials;
            j["accepted"] = stats.accepted;
            j["failures"] = stats.failures;
            j["acceptance_rate"] = stats.acceptance_rate;
            j["error_rate"] = stats.error_rate;
            j["acceptance_wilson"] = interval_json(stats.acceptance_wilson);
            j["error_wilson"] = interval_json(stats.error_wilson);
            json o2;
            o2["order1_total"] = coeff.order1_total;
            o2["order2_pairs_total"] = coeff.order2_pairs_total;
            o2["identical_class_pairs"] = coeff.identical_class_pairs;
            o2["harmful_site_pairs"] = coeff.harmful_site_pairs;
            o2["order2_coefficient"] = coeff.order2_coefficient;
            o2["predicted_failure"] = coeff.predicted_failure(model.p);
            j["leading_order"] = o2;
            if (common.as_json()) {
                body << j.dump() << '\n';
            } else {
                body << "# seed=" << seed << '\n';
                for (const auto &[key, value] : j.items()) {
                    if (key != "seed") body << key << '=' << value.dump() << '\n';
                }
            }
        } else if (curve->parsed()) {
            cq.menu = menu_path.empty() ? default_menu() : [&] {
                try {
                    return parse_menu_json(read_text(menu_path));
                } catch (const std::invalid_argument &e) {
                    throw UsageError(e.what());
                }
            }();
            if (single_target > 0) {
                cq.target_error = single_target;
                if (!top_family.empty()) {
                    cq.top_family = top_family;
                }
                try {
                    cq.validate();
                } catch (const std::invalid_argument &e) {
                    throw UsageError(e.what());
                }
                CostResult r;
                try {
                    r = optimize_stack(cq);
                } catch (const InfeasibleTarget &e) {
                    body << (common.as_json() ? json{{"feasible", false}, {"reason", e.what()}}.dump() + "\n"
                                              : std::string("infeasible: ") + e.what() + "\n");
                    code = kVerificationFailed;
                    r.stack.clear();
                }
                if (code == kOk) {
                    json j;
                    j["feasible"] = true;
                    j["target_error"] = cq.target_error;
                    j["physical_t_error"] = cq.physical_t_error;
                    j["expected_t_count"] = r.expected_t_count;
                    j["achieved_error"] = r.achieved_error;
                    json levels = json::array();
                    for (const auto &l : r.stack) {
                        levels.push_back({{"protocol", l.protocol.name},
                                          {"k", l.protocol.k},
                                          {"input_error", l.input_error},
                                          {"output_error", l.output_error},
                                          {"success_prob", l.success_prob},
                                          {"cost", l.cost}});
                    }
                    j["stack"] = levels;
                    if (common.as_json()) {
                        body << j.dump() << '\n';
                    } else {
                        body << "expected_t_count=" << format_double(r.expected_t_count) << '\n'
                             << "achieved_error=" << format_double(r.achieved_error) << '\n'
                             << "stack=" << r.describe() << '\n';
                    }
                }
            } else {
                if (min_exp < 1 || max_exp < min_exp) {
                    throw UsageError("need 1 <= --min-exp <= --max-exp");
                }
                std::vector<double> grid;
                for (int e = min_exp; e <= max_exp; e++) {
                    grid.push_back(std::pow(10.0, -e));
                }
                cq.target_error = grid.front();
                try {
                    cq.validate();
                } catch (const std::invalid_argument &e) {
                    throw UsageError(e.what());
                }
                auto rows = cost_curve(cq, grid, threads);
                if (common.as_json()) {
                    json arr = json::array();
                    auto opt = [](const auto &v) { return v ? json(*v) : json(nullptr); };
                    for (const auto &r : rows) {
                        arr.push_back({{"target_error", r.target_error},
                                       {"jones", opt(r.jones)},
                                       {"jones_double", opt(r.jones_double)},
                                       {"triortho_k_opt", opt(r.triortho)},
                                       {"k_star", opt(r.k_star)}});
                    }
                    body << arr.dump() << '\n';
                } else {
                    body << cost_curve_csv(rows);
                }
            }
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const EnumerationGuardError &e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::invalid_argument &e) {
        // Matrix verification failures land here.
        err << "error: " << e.what() << '\n';
        return kVerificationFailed;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kVerificationFailed;
    }

    if (!common.output.empty()) {
        try {
            write_atomically(common.output, body.str());
        } catch (const std::exception &e) {
            err << "error: " << e.what() << '\n';
            return kUsageError;
        }
    } else {
        out << body.str();
    }
    return code;
}

}  // namespace triortho::cli
