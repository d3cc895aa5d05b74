// Command-line front end. Subcommands:
//   exp, rt, car, primitive  - exact computations on one input file
//   reduce KIND FILE         - run a reduction, print its certificate
//   bounds --n N             - closed-form bound catalog
//   gen FAMILY ...           - write a seeded corpus to a directory
//   verify THEOREM ...       - run a verification corpus, print a report
// Exit codes: 0 success, 1 property failure, 2 input error, 3 cap exceeded.
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "primsync/io.hpp"

using namespace primsync;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitCapExceeded = 3;

struct CapFlags {
    std::int64_t letter_cap = kDefaultLetterCap;
    std::uint64_t product_cap = kDefaultProductCap;
};

int cmd_exp(const std::string& path, std::uint64_t cap) {
    const auto outcome = exponent(load_matrixset(path), cap);
    std::cout << exponent_outcome_to_json(outcome).dump(2) << "\n";
    return outcome.status == ExponentStatus::kCapExceeded ? kExitCapExceeded : kExitOk;
}

int cmd_rt(const std::string& path) {
    const auto result = reset_threshold(load_automaton(path));
    json j;
    if (result) {
        j["rt"] = result->threshold;
        j["witness"] = word_to_json(result->witness);
    } else {
        j["status"] = "not_synchronizing";
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_car(const std::string& path) {
    const auto result = careful_threshold(load_automaton(path));
    json j;
    if (result) {
        j["car"] = result->threshold;
        j["witness"] = word_to_json(result->witness);
    } else {
        j["status"] = "not_carefully_synchronizing";
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_primitive(const std::string& path, bool with_partition_test, std::uint64_t cap) {
    const MatrixSet set = load_matrixset(path);
    const auto primitive = is_primitive(set, cap);
    json j;
    if (!primitive.has_value()) {
        j["status"] = "cap_exceeded";
        std::cout << j.dump(2) << "\n";
        return kExitCapExceeded;
    }
    j["primitive"] = *primitive;
    if (with_partition_test) {
        const auto cert = pv_partition_test(set);
        if (cert) {
            j["partition"] = partition_to_json(cert->partition);
            json perms = json::array();
            for (const auto& p : cert->perms) perms.push_back(json(p));
            j["part_permutations"] = std::move(perms);
        } else {
            j["partition"] = nullptr;
        }
        j["agreement"] = *primitive == !cert.has_value();
    }
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_reduce(const std::string& kind, const std::string& path, const CapFlags& caps) {
    ReductionCertificate cert;
    if (kind == "m2pa") {
        cert = certify_matrixset_to_partial(load_matrixset(path), caps.letter_cap);
    } else if (kind == "pa2m") {
        cert = certify_partial_to_matrixset(load_automaton(path), caps.product_cap);
    } else if (kind == "sandwich") {
        cert = sandwich_decomposition(load_matrixset(path), caps.letter_cap, caps.product_cap)
                   .certificate;
    } else if (kind == "sink2nz") {
        cert = certify_sink_to_nz(load_automaton(path), caps.product_cap);
    } else if (kind == "classc2nz") {
        const PartialAutomaton a = load_automaton(path);
        const auto partition = class_c_partition(a);
        if (!partition) throw NotClassCError();
        cert = certify_classc_to_nz(a, *partition, caps.product_cap);
    } else if (kind == "nz2classc") {
        cert = certify_nz_to_classc(load_matrixset(path), caps.letter_cap, caps.product_cap);
    } else if (kind == "ts2euler") {
        cert = certify_totalsupport_to_eulerian(load_matrixset(path), caps.letter_cap,
                                                caps.product_cap);
    } else {
        throw InputError("unknown reduction kind: " + kind
                         + " (expected m2pa, pa2m, sandwich, sink2nz, classc2nz, nz2classc or "
                           "ts2euler)");
    }
    std::cout << certificate_to_json(cert).dump(2) << "\n";
    return cert.all_pass() ? kExitOk : kExitPropertyFailure;
}

int cmd_bounds(int n, bool as_json) {
    if (as_json) {
        std::cout << bound_catalog_to_json(n).dump(2) << "\n";
        return kExitOk;
    }
    std::printf("%-16s %-18s %s\n", "name", "formula", "value");
    for (const auto& entry : bound_catalog(n)) {
        std::printf("%-16s %-18s %s\n", entry.name.c_str(), entry.formula.c_str(),
                    entry.value.get_str().c_str());
    }
    return kExitOk;
}

int cmd_gen(const CorpusSpec& spec, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto instances = generate_corpus(spec);
    json manifest;
    manifest["family"] = corpus_family_name(spec.family);
    manifest["n"] = spec.n;
    manifest["count"] = spec.count;
    manifest["seed"] = spec.seed;
    json files = json::array();
    for (std::size_t i = 0; i < instances.size(); ++i) {
        char suffix[32];
        std::snprintf(suffix, sizeof suffix, "_%04zu", i);
        std::string name = std::string(corpus_family_name(spec.family)) + suffix;
        std::string path;
        if (const auto* set = std::get_if<MatrixSet>(&instances[i])) {
            path = out_dir + "/" + name + ".json";
            write_file(path, matrixset_to_json(*set).dump(2) + "\n");
        } else {
            path = out_dir + "/" + name + ".paut";
            write_file(path, automaton_to_paut(std::get<PartialAutomaton>(instances[i])));
        }
        files.push_back(path);
    }
    manifest["files"] = std::move(files);
    std::cout << manifest.dump(2) << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& theorem, const VerifyOptions& opt, bool as_csv,
               bool include_timing, const std::string& out_path) {
    const auto id = theorem_from_name(theorem);
    if (!id) {
        std::string names;
        for (const auto& [unused, name] : theorem_names()) {
            if (!names.empty()) names += ", ";
            names += name;
        }
        throw InputError("unknown theorem: " + theorem + " (expected one of " + names + ")");
    }
    const auto report = run_verification(*id, opt);
    const std::string payload = as_csv
                                    ? verification_report_to_csv(report)
                                    : verification_report_to_json(report, include_timing).dump(2)
                                          + "\n";
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        write_file(out_path, payload);
    }
    std::cerr << report.theorem << ": " << report.passed << "/" << report.attempted << " passed, "
              << report.failed << " failed, " << report.rejected << " rejected\n";
    if (report.failed > 0) return kExitPropertyFailure;
    if (report.rejected > 0) return kExitCapExceeded;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exponents of boolean matrix sets and synchronization thresholds"};
    app.require_subcommand(1);

    CapFlags caps;

    // exp
    std::string exp_file;
    auto* exp_cmd = app.add_subcommand("exp", "exponent and witness of a matrix set");
    exp_cmd->add_option("file", exp_file, "matrix set (.json)")->required();
    exp_cmd->add_option("--cap", caps.product_cap, "max distinct products explored");

    // rt
    std::string rt_file;
    auto* rt_cmd = app.add_subcommand("rt", "reset threshold of a complete automaton");
    rt_cmd->add_option("file", rt_file, "automaton (.paut)")->required();

    // car
    std::string car_file;
    auto* car_cmd = app.add_subcommand("car", "careful synchronization threshold");
    car_cmd->add_option("file", car_file, "automaton (.paut)")->required();

    // primitive
    std::string primitive_file;
    bool with_pv = false;
    auto* primitive_cmd = app.add_subcommand("primitive", "primitivity of a matrix set");
    primitive_cmd->add_option("file", primitive_file, "matrix set (.json)")->required();
    primitive_cmd->add_flag("--pv", with_pv,
                            "also run the partition test (requires an irreducible NZ set)");
    primitive_cmd->add_option("--cap", caps.product_cap, "max distinct products explored");

    // reduce
    std::string reduce_kind, reduce_file;
    auto* reduce_cmd = app.add_subcommand("reduce", "run a reduction and print its certificate");
    reduce_cmd->add_option("kind", reduce_kind,
                           "m2pa | pa2m | sandwich | sink2nz | classc2nz | nz2classc | ts2euler")
        ->required();
    reduce_cmd->add_option("file", reduce_file, "input (.json or .paut by kind)")->required();
    reduce_cmd->add_option("--letter-cap", caps.letter_cap, "selection-function cap per matrix");
    reduce_cmd->add_option("--cap", caps.product_cap, "max distinct products explored");

    // bounds
    int bounds_n = 0;
    bool bounds_json = false;
    auto* bounds_cmd = app.add_subcommand("bounds", "closed-form bound catalog at n");
    bounds_cmd->add_option("--n", bounds_n, "dimension / state count")->required();
    bounds_cmd->add_flag("--json", bounds_json, "print JSON instead of the table");

    // gen
    std::string gen_family, gen_out;
    CorpusSpec gen_spec;
    auto* gen_cmd = app.add_subcommand("gen", "write a seeded corpus to a directory");
    gen_cmd->add_option("family", gen_family,
                        "random-nz-set | random-partial-aut | random-sink-aut | "
                        "random-total-support-set | cerny | cerny-plus-identity")
        ->required();
    gen_cmd->add_option("--n", gen_spec.n, "dimension / state count")->required();
    gen_cmd->add_option("--count", gen_spec.count, "instances to generate")->required();
    gen_cmd->add_option("--seed", gen_spec.seed, "stream seed");
    gen_cmd->add_option("--out", gen_out, "output directory")->required();
    gen_cmd->add_option("--density", gen_spec.density, "entry / defined-transition density");
    gen_cmd->add_option("--alphabet", gen_spec.alphabet_size, "matrices per set / letters");
    gen_cmd->add_option("--permutations", gen_spec.num_permutations,
                        "summed permutations per total-support matrix");

    // verify
    std::string verify_theorem, verify_out;
    VerifyOptions verify_opt;
    bool verify_csv = false, verify_json = false, no_timestamp = false;
    auto* verify_cmd = app.add_subcommand("verify", "run a verification corpus");
    verify_cmd->add_option("theorem", verify_theorem, "theorem id (see README)")->required();
    verify_cmd->add_option("--n", verify_opt.max_n, "maximum instance size");
    verify_cmd->add_option("--samples", verify_opt.samples, "corpus size");
    verify_cmd->add_option("--seed", verify_opt.seed, "corpus seed");
    verify_cmd->add_flag("--json", verify_json, "JSON report (default)");
    verify_cmd->add_flag("--csv", verify_csv, "CSV report instead of JSON");
    verify_cmd->add_flag("--no-timestamp", no_timestamp, "omit wall-clock timing from the report");
    verify_cmd->add_option("--out", verify_out, "write the report to a file instead of stdout");
    verify_cmd->add_option("--letter-cap", verify_opt.letter_cap, "selection-function cap");
    verify_cmd->add_option("--cap", verify_opt.product_cap, "max distinct products explored");

    CLI11_PARSE(app, argc, argv);

    try {
        if (exp_cmd->parsed()) return cmd_exp(exp_file, caps.product_cap);
        if (rt_cmd->parsed()) return cmd_rt(rt_file);
        if (car_cmd->parsed()) return cmd_car(car_file);
        if (primitive_cmd->parsed()) {
            return cmd_primitive(primitive_file, with_pv, caps.product_cap);
        }
        if (reduce_cmd->parsed()) return cmd_reduce(reduce_kind, reduce_file, caps);
        if (bounds_cmd->parsed()) return cmd_bounds(bounds_n, bounds_json);
        if (gen_cmd->parsed()) {
            const auto family = corpus_family_from_name(gen_family);
            if (!family) throw InputError("unknown corpus family: " + gen_family);
            gen_spec.family = *family;
            return cmd_gen(gen_spec, gen_out);
        }
        if (verify_cmd->parsed()) {
            (void)verify_json;
            return cmd_verify(verify_theorem, verify_opt, verify_csv, !no_timestamp, verify_out);
        }
    } catch (const CapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCapExceeded;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPropertyFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
