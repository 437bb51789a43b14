// Command-line front end. Talks to the engine exclusively through the C API
// in partsep.h; every command emits a single JSON document on stdout wrapping
// a run manifest and the result, so re-running with the same parameters
// reproduces the numerical payload byte for byte.

#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "partsep.h"

namespace {

using nlohmann::json;

constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

struct CliError {
    int exit_code;
    std::string message;
};

[[noreturn]] void throw_status(partsep_status status) {
    std::string message = partsep_status_name(status);
    const char* detail = partsep_last_error();
    if (detail && *detail) message += std::string(": ") + detail;
    const bool usage = status == PARTSEP_ERROR_INVALID_ARGUMENT ||
                       status == PARTSEP_ERROR_PARSE ||
                       status == PARTSEP_ERROR_VALIDATION;
    throw CliError{usage ? kExitUsage : kExitComputation, message};
}

void check(partsep_status status) {
    if (status != PARTSEP_OK) throw_status(status);
}

/* Takes ownership of an engine buffer and parses it. */
json take_json(char* buffer) {
    json doc = json::parse(buffer);
    partsep_buffer_free(buffer);
    return doc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CliError{kExitUsage, "cannot open file: " + path};
    std::ostringstream oss;
    oss << in.rdbuf();
    return oss.str();
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buffer[32];
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buffer;
}

json manifest(const std::string& command, json parameters, std::vector<std::uint64_t> seeds) {
    json m;
    m["command"] = command;
    m["parameters"] = std::move(parameters);
    m["seeds"] = std::move(seeds);
    m["version"] = partsep_version();
    m["timestamp"] = utc_timestamp();
    return m;
}

void emit(const json& manifest_doc, const json& result, const std::string& out_path) {
    json doc;
    doc["manifest"] = manifest_doc;
    doc["result"] = result;
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw CliError{kExitUsage, "cannot write file: " + out_path};
        out << text;
    }
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw CliError{kExitUsage, "cannot write file: " + out_path};
        out << text;
    }
}

struct CoeffsHandle {
    partsep_coeffs* ptr = nullptr;
    ~CoeffsHandle() { partsep_coeffs_free(ptr); }
};

struct ModelHandle {
    partsep_model* ptr = nullptr;
    ~ModelHandle() { partsep_model_free(ptr); }
};

std::vector<int32_t> parse_subset(const std::string& text) {
    std::vector<int32_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw CliError{kExitUsage, "partition must be a comma-separated index list"};
        }
    }
    if (out.empty()) throw CliError{kExitUsage, "empty partition list"};
    return out;
}

std::string angles_document(const std::string& path, bool degrees) {
    json doc = json::parse(read_file(path), nullptr, false);
    if (doc.is_discarded()) throw CliError{kExitUsage, "malformed angle file: " + path};
    if (degrees && doc.contains("angles")) {
        constexpr double to_rad = 3.14159265358979323846 / 180.0;
        for (auto& row : doc["angles"])
            for (auto& a : row) a = a.get<double>() * to_rad;
    }
    return doc.dump();
}

int run(int argc, char** argv) {
    CLI::App app{"Alternating Bell-type inequalities for partial separability: "
                 "generation, exact hybrid hidden-variable bounds, GHZ violations, "
                 "simulation and certification"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "Write the output document to FILE instead of stdout");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate an alternating coefficient tensor");
    int gen_n = 0;
    std::string gen_variant = "plus";
    std::string gen_format = "json";
    gen->add_option("--n", gen_n, "Particle count")->required();
    gen->add_option("--variant", gen_variant, "Sign sequence: plus or minus")
        ->check(CLI::IsMember({"plus", "minus"}));
    gen->add_option("--format", gen_format, "Output format")
        ->check(CLI::IsMember({"json", "csv"}));

    // bound
    auto* bound = app.add_subcommand("bound", "Exact hybrid hidden-variable bound");
    int bound_n = 0;
    std::string bound_variant = "plus";
    std::string bound_partition = "all";
    std::string bound_tensor_file;
    bound->add_option("--n", bound_n, "Particle count (alternating tensor)");
    bound->add_option("--variant", bound_variant, "Sign sequence: plus or minus")
        ->check(CLI::IsMember({"plus", "minus"}));
    bound->add_option("--tensor-file", bound_tensor_file,
                      "Coefficient tensor document (overrides --n/--variant)");
    bound->add_option("--partition", bound_partition,
                      "\"all\" or a comma-separated cluster, e.g. 1,2");

    // mu
    auto* mu = app.add_subcommand("mu", "Enumerate the binomial sign-condition solutions");
    int mu_n = 0, mu_p = 0;
    mu->add_option("--n", mu_n, "Sequence length")->required();
    mu->add_option("--p", mu_p, "Block size")->required();

    // minimax
    auto* minimax = app.add_subcommand("minimax", "Full minimax over all sign tensors (n <= 4)");
    int minimax_n = 0;
    minimax->add_option("--n", minimax_n, "Particle count")->required();

    // violate
    auto* violate = app.add_subcommand("violate", "Quantum violation on the GHZ state");
    int violate_n = 0;
    std::string violate_variant = "plus";
    int violate_ghz_sign = 1;
    std::string violate_angles = "optimal";
    std::uint64_t violate_seed = 1;
    int violate_restarts = 20;
    bool violate_degrees = false;
    violate->add_option("--n", violate_n, "Particle count")->required();
    violate->add_option("--variant", violate_variant, "Sign sequence: plus or minus")
        ->check(CLI::IsMember({"plus", "minus"}));
    violate->add_option("--ghz-sign", violate_ghz_sign, "GHZ superposition sign (+1 or -1)");
    violate->add_option("--angles", violate_angles,
                        "\"optimal\", \"optimize\", or an angle document file");
    violate->add_option("--seed", violate_seed, "Seed for --angles optimize");
    violate->add_option("--restarts", violate_restarts, "Restarts for --angles optimize");
    violate->add_flag("--degrees", violate_degrees, "Angle file is in degrees");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Sample measurement counts");
    std::string simulate_model_file;
    int simulate_ghz_n = 0;
    int simulate_ghz_sign = 1;
    std::string simulate_variant = "plus";
    std::string simulate_angles = "optimal";
    std::uint64_t simulate_shots = 0, simulate_seed = 1;
    std::string counts_out;
    bool simulate_degrees = false;
    simulate->add_option("--model", simulate_model_file, "Hidden-variable model document");
    simulate->add_option("--ghz", simulate_ghz_n, "Sample a GHZ state of this size instead");
    simulate->add_option("--ghz-sign", simulate_ghz_sign, "GHZ superposition sign");
    simulate->add_option("--variant", simulate_variant,
                         "Variant whose optimal angles to use for --ghz")
        ->check(CLI::IsMember({"plus", "minus"}));
    simulate->add_option("--angles", simulate_angles,
                         "\"optimal\" or an angle document file (--ghz only)");
    simulate->add_option("--shots", simulate_shots, "Shots per setting")->required();
    simulate->add_option("--seed", simulate_seed, "Sampling seed");
    simulate->add_option("--counts-out", counts_out,
                         "Also write the bare counts document to FILE");
    simulate->add_flag("--degrees", simulate_degrees, "Angle file is in degrees");

    // certify
    auto* certify = app.add_subcommand("certify", "Certify full entanglement from counts");
    std::string certify_file;
    certify->add_option("counts", certify_file, "Counts document file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    if (gen->parsed()) {
        CoeffsHandle coeffs;
        check(partsep_coeffs_alternating(gen_n, gen_variant.c_str(), &coeffs.ptr));
        json params{{"n", gen_n}, {"variant", gen_variant}, {"format", gen_format}};
        if (gen_format == "csv") {
            char* csv = nullptr;
            check(partsep_coeffs_to_csv(coeffs.ptr, &csv));
            std::string table(csv);
            partsep_buffer_free(csv);
            // The manifest rides along as a comment line; the data rows are
            // the reproducible payload.
            emit_text("# manifest: " + manifest("gen", params, {}).dump() + "\n" + table,
                      out_path);
            return 0;
        }
        char* buffer = nullptr;
        check(partsep_coeffs_to_json(coeffs.ptr, &buffer));
        emit(manifest("gen", params, {}), take_json(buffer), out_path);
        return 0;
    }

    if (bound->parsed()) {
        CoeffsHandle coeffs;
        json params{{"partition", bound_partition}};
        if (!bound_tensor_file.empty()) {
            check(partsep_coeffs_from_json(read_file(bound_tensor_file).c_str(), &coeffs.ptr));
            params["tensor_file"] = bound_tensor_file;
        } else {
            if (bound_n <= 0)
                throw CliError{kExitUsage, "bound needs --n or --tensor-file"};
            check(partsep_coeffs_alternating(bound_n, bound_variant.c_str(), &coeffs.ptr));
            params["n"] = bound_n;
            params["variant"] = bound_variant;
        }
        char* buffer = nullptr;
        if (bound_partition == "all") {
            check(partsep_bound_report_all(coeffs.ptr, &buffer));
        } else {
            const auto subset = parse_subset(bound_partition);
            check(partsep_bound_report(coeffs.ptr, subset.data(), subset.size(), &buffer));
        }
        emit(manifest("bound", params, {}), take_json(buffer), out_path);
        return 0;
    }

    if (mu->parsed()) {
        char* buffer = nullptr;
        check(partsep_mu_report(mu_n, mu_p, &buffer));
        emit(manifest("mu", json{{"n", mu_n}, {"p", mu_p}}, {}), take_json(buffer), out_path);
        return 0;
    }

    if (minimax->parsed()) {
        char* buffer = nullptr;
        check(partsep_minimax_report(minimax_n, &buffer));
        emit(manifest("minimax", json{{"n", minimax_n}}, {}), take_json(buffer), out_path);
        return 0;
    }

    if (violate->parsed()) {
        json params{{"n", violate_n},
                    {"variant", violate_variant},
                    {"ghz_sign", violate_ghz_sign},
                    {"angles", violate_angles},
                    {"seed", violate_seed},
                    {"restarts", violate_restarts}};
        char* buffer = nullptr;
        if (violate_angles == "optimal") {
            check(partsep_violation_report(violate_n, violate_variant.c_str(),
                                           violate_ghz_sign, nullptr, &buffer));
        } else if (violate_angles == "optimize") {
            check(partsep_violation_optimize_report(violate_n, violate_variant.c_str(),
                                                    violate_ghz_sign, violate_restarts,
                                                    violate_seed, &buffer));
        } else {
            const std::string doc = angles_document(violate_angles, violate_degrees);
            check(partsep_violation_report(violate_n, violate_variant.c_str(),
                                           violate_ghz_sign, doc.c_str(), &buffer));
        }
        emit(manifest("violate", params, {violate_seed}), take_json(buffer), out_path);
        return 0;
    }

    if (simulate->parsed()) {
        if (simulate_shots == 0) throw CliError{kExitUsage, "--shots must be >= 1"};
        json params{{"shots", simulate_shots}, {"seed", simulate_seed}};
        char* buffer = nullptr;
        if (!simulate_model_file.empty()) {
            params["model"] = simulate_model_file;
            ModelHandle model;
            check(partsep_model_from_json(read_file(simulate_model_file).c_str(), &model.ptr));
            check(partsep_simulate_model(model.ptr, simulate_shots, simulate_seed, &buffer));
        } else if (simulate_ghz_n > 0) {
            params["ghz"] = simulate_ghz_n;
            params["ghz_sign"] = simulate_ghz_sign;
            params["variant"] = simulate_variant;
            params["angles"] = simulate_angles;
            std::string doc;
            const char* angles_arg = nullptr;
            if (simulate_angles != "optimal") {
                doc = angles_document(simulate_angles, simulate_degrees);
                angles_arg = doc.c_str();
            }
            check(partsep_simulate_ghz(simulate_ghz_n, simulate_ghz_sign,
                                       simulate_variant.c_str(), angles_arg,
                                       simulate_shots, simulate_seed, &buffer));
        } else {
            throw CliError{kExitUsage, "simulate needs --model FILE or --ghz N"};
        }
        json result = take_json(buffer);
        if (!counts_out.empty()) {
            std::ofstream out(counts_out, std::ios::binary);
            if (!out) throw CliError{kExitUsage, "cannot write file: " + counts_out};
            out << result["counts"].dump(2) << "\n";
        }
        emit(manifest("simulate", params, {simulate_seed}), result, out_path);
        return 0;
    }

    if (certify->parsed()) {
        char* buffer = nullptr;
        check(partsep_certify(read_file(certify_file).c_str(), &buffer));
        json result = take_json(buffer);
        emit(manifest("certify", json{{"counts", certify_file}}, {}), result, out_path);
        // Human-readable verdict on stderr; the document on stdout is the output.
        if (result["violation"].get<bool>()) {
            std::cerr << "violates partial separability: bound "
                      << result["bound_partial"] << ", max z "
                      << (result.contains("max_z") ? result["max_z"].dump() : "inf")
                      << "\n";
        } else {
            std::cerr << "no violation of partial separability detected\n";
        }
        return 0;
    }

    throw CliError{kExitUsage, "no subcommand given"};
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitComputation;
    }
}
