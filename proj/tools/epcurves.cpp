// epcurves: classify integer matrices defining Endo-Pajitnov manifolds.
//
// exit codes: 0 report produced, 1 input error, 2 internal consistency failure.

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include "CLI11.hpp"
#include "epcurves/cli/generate.hpp"
#include "epcurves/cli/matrix_io.hpp"
#include "epcurves/cli/report.hpp"

namespace {

using namespace epc;
using namespace epc::cli;

struct Outcome {
    int code = 0;
    std::string error;
    Classification result;
};

Outcome classify_file(const std::string& path, const ClassifyOptions& opt) {
    Outcome o;
    try {
        o.result = classify(parse_matrix_file(path), opt, path);
    } catch (const InputError& e) {
        o.code = 1;
        o.error = e.what();
    } catch (const std::exception& e) {
        o.code = 2;
        o.error = e.what();
    }
    return o;
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError(path + ": cannot write file");
    out << text;
}

int run_classify(const std::vector<std::string>& files, const ClassifyOptions& opt, const std::string& json_path,
                 unsigned jobs) {
    std::vector<Outcome> results(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < files.size();) results[i] = classify_file(files[i], opt);
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(files.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    int code = 0;
    Json all = Json::array();
    for (std::size_t i = 0; i < files.size(); ++i) {
        const Outcome& o = results[i];
        if (o.code) {
            std::cerr << "epcurves: " << (o.code == 1 ? "input error: " : "internal error: ") << o.error << "\n";
            code = std::max(code, o.code);
            all.push_back({{"schema", kSchemaVersion}, {"input", {{"source", files[i]}}}, {"error", o.error}});
            continue;
        }
        if (json_path != "-") std::cout << summary(o.result) << (i + 1 < files.size() ? "\n" : "");
        all.push_back(o.result.report);
    }
    if (!json_path.empty()) write_text(json_path, (files.size() == 1 ? all[0] : all).dump(2) + "\n");
    return code;
}

int run_verify(const std::string& file, const ClassifyOptions& opt) {
    const IntMatrix m = parse_matrix_file(file);
    AdmissibilityReport rep = verify_admissible(m);
    if (!rep.admissible()) throw InputError(file + ": matrix not admissible (" + reason_code(rep.reason) + ")");
    GeometryOptions go;
    go.tol_relations = opt.tol_relations;
    go.tol_identities = opt.tol_identities;
    go.samples = opt.samples;
    go.seed = opt.seed;
    const auto checks = with_precision(opt.precision, [&]<class Real>() {
        return run_geometry_checks(build_ep_data<Real>(m, rep), go);
    });
    std::size_t failed = 0;
    for (const auto& c : checks) {
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  deviation " << c.deviation << "  tolerance "
                  << c.tolerance << "\n";
        failed += c.passed ? 0 : 1;
    }
    std::cout << checks.size() - failed << "/" << checks.size() << " geometry checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classify integer matrices defining Endo-Pajitnov manifolds"};
    app.require_subcommand(1);

    ClassifyOptions opt;
    std::vector<std::string> files;
    std::string json_path;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* classify_cmd = app.add_subcommand("classify", "run the full classification pipeline");
    classify_cmd->add_option("files", files, "matrix files (text or JSON)")->required()->check(CLI::ExistingFile);
    classify_cmd->add_option("--precision", opt.precision, "working precision in bits (max 512)")->capture_default_str();
    classify_cmd->add_option("--tol", opt.tol_relations, "tolerance for relation checks")->capture_default_str();
    classify_cmd->add_option("--tol-identities", opt.tol_identities, "tolerance for algebraic identities")
        ->capture_default_str();
    classify_cmd->add_option("--seed", opt.seed, "seed for sampled checks")->capture_default_str();
    classify_cmd->add_option("--samples", opt.samples, "samples for the form-invariance checks")->capture_default_str();
    classify_cmd->add_option("--json", json_path, "write the structured report to PATH ('-' for stdout)");
    classify_cmd->add_option("--jobs", jobs, "parallel workers for several files")->capture_default_str();
    classify_cmd->add_flag("--permutation-search", opt.permutation_search, "also look for permuted block splits");

    auto* gen = app.add_subcommand("generate", "generate matrix files");
    gen->require_subcommand(1);
    std::string poly, out, nfile, pfile, infile;
    std::uint64_t seed = 0;
    int steps = 0;
    auto* gc = gen->add_subcommand("companion", "companion matrix of a monic polynomial with constant term -1");
    gc->add_option("--poly", poly, "polynomial, e.g. \"x^5 - x - 1\"")->required();
    gc->add_option("-o,--output", out, "output file")->required();
    auto* gb = gen->add_subcommand("block", "block-diagonal matrix diag(N, P)");
    gb->add_option("--n", nfile, "N block file")->required()->check(CLI::ExistingFile);
    gb->add_option("--p", pfile, "P block file")->required()->check(CLI::ExistingFile);
    gb->add_option("-o,--output", out, "output file")->required();
    auto* gj = gen->add_subcommand("conjugate", "U M U^-1 for a seeded random unimodular U");
    gj->add_option("--in", infile, "input matrix file")->required()->check(CLI::ExistingFile);
    gj->add_option("--seed", seed, "random seed")->required();
    gj->add_option("--steps", steps, "number of elementary operations")->required();
    gj->add_option("-o,--output", out, "output file")->required();

    std::string verify_file;
    auto* verify_cmd = app.add_subcommand("verify", "geometry checks only");
    verify_cmd->add_option("file", verify_file, "matrix file")->required()->check(CLI::ExistingFile);
    verify_cmd->add_option("--samples", opt.samples, "sampled (point, tangent) pairs")->capture_default_str();
    verify_cmd->add_option("--precision", opt.precision, "working precision in bits (max 512)")->capture_default_str();
    verify_cmd->add_option("--tol", opt.tol_relations, "tolerance for relation checks")->capture_default_str();
    verify_cmd->add_option("--seed", opt.seed, "seed for sampled checks")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (opt.precision == 0 || precision_tier(opt.precision) == 0)
            throw InputError("--precision must be between 1 and 512 bits");
        if (*classify_cmd) return run_classify(files, opt, json_path, jobs);
        if (*verify_cmd) return run_verify(verify_file, opt);
        if (*gc) write_matrix_file(generate_companion(parse_poly(poly)), out);
        if (*gb) write_matrix_file(block_diagonal(parse_matrix_file(nfile), parse_matrix_file(pfile)), out);
        if (*gj) write_matrix_file(conjugate(parse_matrix_file(infile), seed, steps).matrix, out);
        return 0;
    } catch (const InputError& e) {
        std::cerr << "epcurves: input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "epcurves: internal error: " << e.what() << "\n";
        return 2;
    }
}
