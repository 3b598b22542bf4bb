// Batch front end: reads JSON inputs, dispatches to the library's exact decision
// procedures, and emits machine-readable reports (JSON on stdout, human summary
// and timing on stderr). Exit codes: 0 pass, 1 verdict failure or operation
// error, 2 input error.

#include <chrono>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "phodge/json_io.hpp"
#include "phodge/schur.hpp"
#include "phodge/verify.hpp"

namespace io = phodge::io;
using phodge::Error;
using io::json;

namespace {

struct ExitWith {
    int code;
};

void emit(const json& report) { std::cout << io::dump_report(report); }

// Input phase: malformed files, flags, or schemas are the caller's problem.
template <class F>
auto load_inputs(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        emit(io::error_to_json(e));
        std::cerr << "input error (" << e.name() << "): " << e.what() << "\n";
        throw ExitWith{2};
    }
}

// Operation phase: library errors pass through under their stable names.
template <class F>
auto run_op(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        emit(io::error_to_json(e));
        std::cerr << e.name() << ": " << e.what() << "\n";
        throw ExitWith{1};
    }
}

phodge::Partition parse_shape(const std::string& csv) {
    return phodge::Partition::parse(csv);
}

json with_ambient(json report, const std::shared_ptr<const phodge::AlgebraQ>& ambient) {
    if (ambient->degree() > 1) report["E"] = io::ambient_to_json(*ambient);
    return report;
}

// --- handlers (each returns the process exit code) -----------------------------------

int handle_schur_matrix(const std::string& shape_csv, const std::string& matrix_path) {
    const auto [u, m, ambient] = load_inputs([&] {
        const json doc = io::load_json_file(matrix_path);
        auto E = io::ambient_algebra(doc);
        return std::make_tuple(parse_shape(shape_csv), io::matrix_from_json(doc, E), E);
    });
    const auto result = run_op([&, &u = u, &m = m] {
        if (!m.is_square())
            throw phodge::DimensionMismatch("the input matrix must be square");
        phodge::SchurSpace sp(u, static_cast<int>(m.rows()));
        if (sp.dim() == 0)
            throw phodge::EmptySchur("functor vanishes: the shape has more rows than the rank");
        return schur_matrix(m, sp);
    });
    emit(with_ambient(io::matrix_to_json(result), ambient));
    std::cerr << "schur-matrix: " << result.rows() << "x" << result.cols() << " result\n";
    return 0;
}

int handle_class_tensor(const std::string& left_path, const std::string& right_path) {
    const auto [a, b] = load_inputs([&] {
        return std::make_pair(io::classdata_from_json(io::load_json_file(left_path)),
                              io::classdata_from_json(io::load_json_file(right_path)));
    });
    const auto result = run_op([&, &a = a, &b = b] { return class_tensor(a, b); });
    emit(io::classdata_to_json(result));
    std::cerr << "class tensor: rank " << result.rank() << " result\n";
    return 0;
}

int handle_class_schur(const std::string& shape_csv, const std::string& path) {
    const auto [u, a] = load_inputs([&] {
        return std::make_pair(parse_shape(shape_csv),
                              io::classdata_from_json(io::load_json_file(path)));
    });
    const auto result = run_op([&, &u = u, &a = a] { return class_schur(a, u); });
    emit(io::classdata_to_json(result));
    std::cerr << "class schur: rank " << result.rank() << " result\n";
    return 0;
}

int handle_class_check(const std::string& path) {
    const auto a = load_inputs([&] { return io::classdata_from_json(io::load_json_file(path)); });
    const bool principal = run_op([&] {
        return a.flavor() == phodge::Flavor::HodgeTate ? is_hodge_tate(a) : is_de_rham(a);
    });
    json out = json::object();
    out["hodge_tate"] = a.flavor() == phodge::Flavor::HodgeTate ? json(principal) : json(nullptr);
    out["de_rham"] = a.flavor() == phodge::Flavor::DeRham ? json(principal) : json(nullptr);
    out["rank"] = a.rank();
    json weights = json::array();
    for (const auto& w : a.weights()) weights.push_back(io::elem_to_json(w));
    out["weights"] = std::move(weights);
    const auto ambient = a.blocks().front().weight.parent();
    emit(with_ambient(std::move(out), ambient));
    std::cerr << "class check: " << flavor_name(a.flavor()) << " integrality "
              << (principal ? "holds" : "fails") << "\n";
    return principal ? 0 : 1;
}

int handle_twist_solve(const std::string& mode, const std::string& shape_csv,
                       const std::vector<std::string>& files) {
    if (mode == "tensor") {
        const auto [a, b] = load_inputs([&] {
            if (files.size() != 2)
                throw phodge::ParseError("tensor mode takes exactly two weight-system files");
            return std::make_pair(io::weight_system_from_json(io::load_json_file(files[0])),
                                  io::weight_system_from_json(io::load_json_file(files[1])));
        });
        const auto sol = run_op([&, &a = a, &b = b] { return tensor_twist_solve(a, b); });
        emit(io::tensor_solve_to_json(sol));
        std::cerr << "twist-solve tensor: " << (sol.ok() ? "solution found" : "no solution")
                  << "\n";
        return sol.ok() ? 0 : 1;
    }
    if (mode == "schur") {
        const auto [u, a] = load_inputs([&] {
            if (files.size() != 1)
                throw phodge::ParseError("schur mode takes exactly one weight-system file");
            if (shape_csv.empty()) throw phodge::ParseError("schur mode needs --shape");
            return std::make_pair(parse_shape(shape_csv),
                                  io::weight_system_from_json(io::load_json_file(files[0])));
        });
        const auto sol = run_op([&, &u = u, &a = a] { return schur_twist_solve(a, u); });
        emit(io::schur_solve_to_json(sol));
        std::cerr << "twist-solve schur: " << (sol.ok() ? "solution found" : "no solution")
                  << "\n";
        return sol.ok() ? 0 : 1;
    }
    return load_inputs([&]() -> int {
        throw phodge::ParseError("unknown mode \"" + mode + "\" (expected tensor or schur)");
    });
}

int handle_pst_validate(const std::string& path) {
    const auto d = load_inputs([&] { return io::module_from_json(io::load_json_file(path)); });
    const auto rep = validate(d);
    emit(io::validation_to_json(rep));
    std::cerr << "pst validate: " << rep.summary() << "\n";
    return rep.ok() ? 0 : 1;
}

int handle_pst_check(const std::string& path) {
    const auto d = load_inputs([&] { return io::module_from_json(io::load_json_file(path)); });
    const auto [semistable, crystalline] = run_op([&] {
        const bool sst = is_semistable(d);
        return std::make_pair(sst, sst && d.nmat.is_zero());
    });
    json out = json::object();
    out["semistable"] = semistable;
    out["crystalline"] = crystalline;
    emit(out);
    std::cerr << "pst check: semistable=" << (semistable ? "true" : "false")
              << " crystalline=" << (crystalline ? "true" : "false") << "\n";
    return semistable ? 0 : 1;
}

int handle_pst_twist_solve(const std::string& mode, const std::string& shape_csv,
                           const std::vector<std::string>& files) {
    if (mode == "tensor") {
        const auto [a, b] = load_inputs([&] {
            if (files.size() != 2)
                throw phodge::ParseError("tensor mode takes exactly two module files");
            return std::make_pair(io::module_from_json(io::load_json_file(files[0])),
                                  io::module_from_json(io::load_json_file(files[1])));
        });
        const auto result = run_op([&, &a = a, &b = b] { return pipeline_sst_tensor(a, b); });
        emit(io::pipeline_to_json(result));
        bool all = true;
        for (bool s : result.twist_semistable) all = all && s;
        std::cerr << "pst twist-solve tensor: twists "
                  << (all ? "semistable" : "NOT semistable") << "\n";
        return all ? 0 : 1;
    }
    if (mode == "schur") {
        const auto [u, d] = load_inputs([&] {
            if (files.size() != 1)
                throw phodge::ParseError("schur mode takes exactly one module file");
            if (shape_csv.empty()) throw phodge::ParseError("schur mode needs --shape");
            return std::make_pair(parse_shape(shape_csv),
                                  io::module_from_json(io::load_json_file(files[0])));
        });
        const auto result = run_op([&, &u = u, &d = d] { return pipeline_sst_schur(d, u); });
        emit(io::pipeline_to_json(result));
        bool all = true;
        for (bool s : result.twist_semistable) all = all && s;
        std::cerr << "pst twist-solve schur: twist "
                  << (all ? "semistable" : "NOT semistable") << "\n";
        return all ? 0 : 1;
    }
    return load_inputs([&]() -> int {
        throw phodge::ParseError("unknown mode \"" + mode + "\" (expected tensor or schur)");
    });
}

int handle_verify(const std::string& suite, std::uint64_t seed, int count,
                  const std::string& shape_csv, int rank, const std::string& prime) {
    const auto opt = load_inputs([&] {
        if (!phodge::is_suite(suite)) {
            std::string known;
            for (const auto& n : phodge::suite_names()) {
                if (!known.empty()) known += ", ";
                known += n;
            }
            throw phodge::ParseError("unknown suite \"" + suite + "\" (known: " + known + ")");
        }
        phodge::SuiteOptions o;
        o.seed = seed;
        o.count = count;
        if (!shape_csv.empty()) o.shape = parse_shape(shape_csv);
        if (rank >= 0) o.rank = rank;
        o.prime = phodge::parse_rational(prime);
        return o;
    });
    const auto report = run_op([&] { return run_suite(suite, opt); });

    json out = json::object();
    out["command"] = "verify";
    out["suite"] = report.suite;
    out["seed"] = report.options.seed;
    out["count"] = report.options.count;
    out["shape"] =
        report.options.shape ? io::partition_to_json(*report.options.shape) : json(nullptr);
    out["rank"] = report.options.rank ? json(*report.options.rank) : json(nullptr);
    out["prime"] = io::rational_to_json(report.options.prime);
    json verdicts = json::array();
    for (const auto& v : report.verdicts) {
        json jv = json::object();
        jv["name"] = v.name;
        jv["pass"] = v.pass;
        jv["detail"] = v.detail;
        verdicts.push_back(std::move(jv));
    }
    out["verdicts"] = std::move(verdicts);
    out["pass"] = report.pass();
    emit(out);

    for (const auto& v : report.verdicts)
        std::cerr << (v.pass ? "PASS " : "FAIL ") << v.name << " — " << v.detail << "\n";
    std::cerr << "verify " << report.suite << ": " << (report.pass() ? "pass" : "FAIL") << "\n";
    return report.pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact weight calculus and twisted-module decision procedures"};
    app.require_subcommand(1);
    std::function<int()> action;

    // schur-matrix --shape 2,1 --matrix m.json
    {
        auto* cmd = app.add_subcommand("schur-matrix",
                                       "matrix induced on the functor space by a square matrix");
        auto shape = std::make_shared<std::string>();
        auto matrix = std::make_shared<std::string>();
        cmd->add_option("--shape", *shape, "partition, comma separated (e.g. 2,1)")->required();
        cmd->add_option("--matrix", *matrix, "JSON matrix file")->required();
        cmd->callback([&action, shape, matrix] {
            action = [shape, matrix] { return handle_schur_matrix(*shape, *matrix); };
        });
    }

    // class tensor|schur|check
    {
        auto* cls = app.add_subcommand("class", "operations on classification data");
        cls->require_subcommand(1);

        auto* tns = cls->add_subcommand("tensor", "tensor product of two classifications");
        auto ta = std::make_shared<std::string>(), tb = std::make_shared<std::string>();
        tns->add_option("left", *ta, "JSON classification file")->required();
        tns->add_option("right", *tb, "JSON classification file")->required();
        tns->callback([&action, ta, tb] {
            action = [ta, tb] { return handle_class_tensor(*ta, *tb); };
        });

        auto* sch = cls->add_subcommand("schur", "functor image of a classification");
        auto su = std::make_shared<std::string>(), sa = std::make_shared<std::string>();
        sch->add_option("--shape", *su, "partition, comma separated")->required();
        sch->add_option("input", *sa, "JSON classification file")->required();
        sch->callback([&action, su, sa] {
            action = [su, sa] { return handle_class_schur(*su, *sa); };
        });

        auto* chk = cls->add_subcommand("check", "integrality report for a classification");
        auto ca = std::make_shared<std::string>();
        chk->add_option("input", *ca, "JSON classification file")->required();
        chk->callback([&action, ca] { action = [ca] { return handle_class_check(*ca); }; });
    }

    // twist-solve --mode tensor|schur [--shape u] files...
    {
        auto* cmd = app.add_subcommand("twist-solve",
                                       "find a character weight normalizing weight systems");
        auto mode = std::make_shared<std::string>();
        auto shape = std::make_shared<std::string>();
        auto files = std::make_shared<std::vector<std::string>>();
        cmd->add_option("--mode", *mode, "tensor or schur")->required();
        cmd->add_option("--shape", *shape, "partition (schur mode)");
        cmd->add_option("files", *files, "JSON weight-system files")->required();
        cmd->callback([&action, mode, shape, files] {
            action = [mode, shape, files] { return handle_twist_solve(*mode, *shape, *files); };
        });
    }

    // pst validate|check|twist-solve
    {
        auto* pst = app.add_subcommand("pst", "operations on twisted semilinear modules");
        pst->require_subcommand(1);

        auto* val = pst->add_subcommand("validate", "structural validation report");
        auto vm = std::make_shared<std::string>();
        val->add_option("module", *vm, "JSON module file")->required();
        val->callback([&action, vm] { action = [vm] { return handle_pst_validate(*vm); }; });

        auto* chk = pst->add_subcommand("check", "semistability and crystallinity verdicts");
        auto cm = std::make_shared<std::string>();
        chk->add_option("module", *cm, "JSON module file")->required();
        chk->callback([&action, cm] { action = [cm] { return handle_pst_check(*cm); }; });

        auto* tws = pst->add_subcommand(
            "twist-solve", "recover the inertia character and verify the twisted modules");
        auto mode = std::make_shared<std::string>();
        auto shape = std::make_shared<std::string>();
        auto files = std::make_shared<std::vector<std::string>>();
        tws->add_option("--mode", *mode, "tensor or schur")->required();
        tws->add_option("--shape", *shape, "partition (schur mode)");
        tws->add_option("files", *files, "JSON module files")->required();
        tws->callback([&action, mode, shape, files] {
            action = [mode, shape, files] {
                return handle_pst_twist_solve(*mode, *shape, *files);
            };
        });
    }

    // verify <suite> [--seed n] [--count n] [--shape u] [--rank d] [--prime p]
    {
        auto* cmd = app.add_subcommand("verify", "run a bundled self-verification suite");
        auto suite = std::make_shared<std::string>();
        auto seed = std::make_shared<std::uint64_t>(0);
        auto count = std::make_shared<int>(0);
        auto shape = std::make_shared<std::string>();
        auto rank = std::make_shared<int>(-1);
        auto prime = std::make_shared<std::string>("2");
        cmd->add_option("suite", *suite,
                        "ht-tensor | ht-schur | sst-tensor | sst-schur | counterexample")
            ->required();
        cmd->add_option("--seed", *seed, "PRNG seed (default 0)");
        cmd->add_option("--count", *count, "instances to run (0 = suite default)");
        cmd->add_option("--shape", *shape, "partition override");
        cmd->add_option("--rank", *rank, "rank override");
        cmd->add_option("--prime", *prime, "modulus parameter (default 2)");
        cmd->callback([&action, suite, seed, count, shape, rank, prime] {
            action = [suite, seed, count, shape, rank, prime] {
                return handle_verify(*suite, *seed, *count, *shape, *rank, *prime);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e); // prints CLI11's message
        return code == 0 ? 0 : 2;     // 0 covers --help/--version
    }

    const auto start = std::chrono::steady_clock::now();
    int code = 0;
    try {
        code = action ? action() : 2;
    } catch (const ExitWith& w) {
        code = w.code;
    } catch (const Error& e) { // safety net: no library error escapes as a crash
        emit(io::error_to_json(e));
        std::cerr << e.name() << ": " << e.what() << "\n";
        code = 1;
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::cerr << "elapsed " << ms << " ms\n";
    return code;
}
