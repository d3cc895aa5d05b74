// File formats and JSON serialization.
//
// Matrix sets: {"n": <int>, "matrices": [[[0|1, ...], ...], ...]} with
// row-major entries; non-square or non-0/1 data is rejected.
//
// Automata (.paut): line 1 is "n k" (states, letters), followed by k lines
// of n whitespace-separated tokens; a token is a 0-based target state or "-"
// for an undefined transition.
#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "primsync/automata.hpp"
#include "primsync/boolmat.hpp"
#include "primsync/bounds.hpp"
#include "primsync/errors.hpp"
#include "primsync/primitivity.hpp"
#include "primsync/reductions.hpp"
#include "primsync/verify.hpp"

namespace primsync {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Matrix sets.

inline json matrixset_to_json(const MatrixSet& s) {
    json matrices = json::array();
    for (const auto& m : s.matrices) {
        json rows = json::array();
        for (int i = 0; i < m.dim(); ++i) {
            json row = json::array();
            for (int j = 0; j < m.dim(); ++j) row.push_back(m.get(i, j) ? 1 : 0);
            rows.push_back(std::move(row));
        }
        matrices.push_back(std::move(rows));
    }
    return json{{"n", s.n}, {"matrices", std::move(matrices)}};
}

inline MatrixSet matrixset_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("matrices")) {
        throw InputError("matrix set JSON needs fields 'n' and 'matrices'");
    }
    if (!j["n"].is_number_integer()) throw InputError("'n' must be an integer");
    const int n = j["n"].get<int>();
    if (!j["matrices"].is_array() || j["matrices"].empty()) {
        throw InputError("'matrices' must be a nonempty array");
    }
    std::vector<BoolMatrix> matrices;
    for (const auto& rows : j["matrices"]) {
        if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n)) {
            throw InputError("matrix is not square of dimension n");
        }
        std::vector<std::vector<int>> entries;
        for (const auto& row : rows) {
            if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
                throw InputError("matrix is not square of dimension n");
            }
            std::vector<int> r;
            for (const auto& v : row) {
                if (!v.is_number_integer()) throw InputError("matrix entry is not 0 or 1");
                r.push_back(v.get<int>());
            }
            entries.push_back(std::move(r));
        }
        matrices.push_back(BoolMatrix::from_entries(entries));
    }
    return MatrixSet(std::move(matrices));
}

// ---------------------------------------------------------------------------
// Automata.

inline std::string automaton_to_paut(const PartialAutomaton& a) {
    std::ostringstream out;
    out << a.num_states() << ' ' << a.num_letters() << '\n';
    for (int l = 0; l < a.num_letters(); ++l) {
        for (int q = 0; q < a.num_states(); ++q) {
            if (q > 0) out << ' ';
            const int target = a.target(q, l);
            if (target == kUndefined) {
                out << '-';
            } else {
                out << target;
            }
        }
        out << '\n';
    }
    return out.str();
}

inline PartialAutomaton automaton_from_paut(const std::string& text) {
    std::istringstream in(text);
    int n = 0, k = 0;
    if (!(in >> n >> k)) throw InputError("bad header line, expected 'n k'");
    if (n < 1 || k < 1) throw InputError("state and letter counts must be positive");
    std::vector<std::vector<int>> letters(static_cast<std::size_t>(k),
                                          std::vector<int>(static_cast<std::size_t>(n)));
    for (int l = 0; l < k; ++l) {
        for (int q = 0; q < n; ++q) {
            std::string token;
            if (!(in >> token)) throw InputError("truncated transition table");
            if (token == "-") {
                letters[static_cast<std::size_t>(l)][static_cast<std::size_t>(q)] = kUndefined;
            } else {
                try {
                    letters[static_cast<std::size_t>(l)][static_cast<std::size_t>(q)] =
                        std::stoi(token);
                } catch (const std::exception&) {
                    throw InputError("bad transition token: " + token);
                }
            }
        }
    }
    std::string trailing;
    if (in >> trailing) throw InputError("trailing data after transition table");
    return PartialAutomaton(n, std::move(letters));
}

// ---------------------------------------------------------------------------
// Files.

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + path);
    out << content;
}

inline MatrixSet load_matrixset(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw InputError(std::string("bad JSON: ") + e.what());
    }
    return matrixset_from_json(j);
}

inline PartialAutomaton load_automaton(const std::string& path) {
    return automaton_from_paut(read_file(path));
}

// ---------------------------------------------------------------------------
// Results.

inline json word_to_json(const Word& w) {
    return json(w);
}

inline json exponent_outcome_to_json(const ExponentOutcome& outcome) {
    json j;
    j["products_explored"] = outcome.products_explored;
    switch (outcome.status) {
        case ExponentStatus::kFound:
            j["exponent"] = outcome.result->exponent;
            j["witness"] = word_to_json(outcome.result->witness);
            break;
        case ExponentStatus::kNotPrimitive:
            j["status"] = "not_primitive";
            break;
        case ExponentStatus::kCapExceeded:
            j["status"] = "cap_exceeded";
            break;
    }
    if (outcome.status == ExponentStatus::kFound) j["status"] = "found";
    return j;
}

inline json partition_to_json(const Partition& p) {
    json parts = json::array();
    for (const auto& part : p.parts) parts.push_back(json(part));
    return parts;
}

inline json certificate_to_json(const ReductionCertificate& cert) {
    json j;
    j["kind"] = reduction_kind_name(cert.kind);
    j["source_stats"] = json(cert.source_stats);
    j["target_stats"] = json(cert.target_stats);
    json witnesses;
    witnesses["words"] = json::object();
    for (const auto& [name, word] : cert.witnesses.words) {
        witnesses["words"][name] = word_to_json(word);
    }
    witnesses["partitions"] = json::object();
    for (const auto& [name, partition] : cert.witnesses.partitions) {
        witnesses["partitions"][name] = partition_to_json(partition);
    }
    witnesses["sequences"] = json::object();
    for (const auto& [name, seq] : cert.witnesses.sequences) {
        witnesses["sequences"][name] = json(seq);
    }
    j["witnesses"] = std::move(witnesses);
    json inequalities = json::array();
    for (const auto& ineq : cert.inequalities_checked) {
        inequalities.push_back(json{{"name", ineq.name},
                                    {"lhs", ineq.lhs},
                                    {"relation", ineq.relation},
                                    {"rhs", ineq.rhs},
                                    {"pass", ineq.pass}});
    }
    j["inequalities_checked"] = std::move(inequalities);
    j["all_pass"] = cert.all_pass();
    return j;
}

/// Catalog values serialize as decimal strings; some do not fit in 64 bits.
inline json bound_catalog_to_json(int n) {
    json j;
    j["n"] = n;
    json entries = json::object();
    for (const auto& entry : bound_catalog(n)) {
        entries[entry.name] = json{{"formula", entry.formula}, {"value", entry.value.get_str()}};
    }
    j["bounds"] = std::move(entries);
    return j;
}

/// include_timing = false drops the wall-clock field so reruns of the same
/// seeded command produce byte-identical reports.
inline json verification_report_to_json(const VerificationReport& report,
                                        bool include_timing = true) {
    json j;
    j["theorem"] = report.theorem;
    j["attempted"] = report.attempted;
    j["passed"] = report.passed;
    j["failed"] = report.failed;
    j["rejected"] = report.rejected;
    j["ok"] = report.ok();
    if (include_timing) j["wall_seconds"] = report.wall_seconds;
    json instances = json::array();
    for (const auto& rec : report.instances) {
        instances.push_back(json{{"index", rec.index},
                                 {"n", rec.n},
                                 {"status", rec.status},
                                 {"detail", rec.detail}});
    }
    j["instances"] = std::move(instances);
    return j;
}

/// Fixed columns: theorem,index,n,status,detail. The detail field is quoted.
inline std::string verification_report_to_csv(const VerificationReport& report) {
    std::ostringstream out;
    out << "theorem,index,n,status,detail\n";
    auto quote = [](const std::string& s) {
        std::string quoted = "\"";
        for (char c : s) {
            if (c == '"') quoted += '"';
            quoted += c;
        }
        quoted += '"';
        return quoted;
    };
    for (const auto& rec : report.instances) {
        out << report.theorem << ',' << rec.index << ',' << rec.n << ',' << rec.status << ','
            << quote(rec.detail) << '\n';
    }
    return out.str();
}

inline json lemma3_report_to_json(const Lemma3Report& report) {
    json j;
    j["n"] = report.n;
    j["partial_family_exhaustive"] = report.partial_family_exhaustive;
    j["checks"] = report.checks;
    j["passed"] = report.passed();
    json violations = json::array();
    for (const auto& v : report.violations) {
        violations.push_back(json{{"family", v.family},
                                  {"k", v.k},
                                  {"j", v.j},
                                  {"part_sizes", json(v.part_sizes)},
                                  {"detail", v.detail}});
    }
    j["violations"] = std::move(violations);
    return j;
}

}  // namespace primsync
