// Command-line front end: validate algebra files, search for
// representations, export CNF, run the chain construction, print tables.
// Exit codes: 0 success/found, 1 negative result, 2 input error,
// 3 resource limit.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "relrep/relrep.hpp"

namespace {

using nlohmann::json;

constexpr int kExitFound = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitLimit = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json violation_json(const relrep::FiniteAlgebra& alg, const relrep::LawViolation& v) {
    json names = json::array();
    for (int idx : v.witness) names.push_back(alg.elements[idx]);
    return json{{"law", relrep::law_name(v.law)}, {"witness", names}};
}

json representation_json(const relrep::Representation& rep) {
    json images = json::object();
    for (int a = 0; a < rep.algebra.size(); ++a) {
        json pairs = json::array();
        for (auto [x, y] : rep.model.members[rep.assignment[a]].rel.pairs())
            pairs.push_back(json::array({x, y}));
        images[rep.algebra.elements[a]] = pairs;
    }
    return json{{"base_size", rep.model.base_size}, {"images", images}};
}

void print_representation(std::ostream& os, const relrep::Representation& rep) {
    for (int a = 0; a < rep.algebra.size(); ++a)
        os << rep.algebra.elements[a] << " -> "
           << rep.model.members[rep.assignment[a]].rel.to_string() << "\n";
}

int cmd_validate(const std::string& file, bool as_json) {
    auto spec = relrep::parse_algebra(slurp(file));
    auto violations = relrep::necessary_laws(spec.algebra);
    if (as_json) {
        json out{{"command", "validate"},
                 {"file", file},
                 {"ok", violations.empty()},
                 {"violations", json::array()}};
        for (const auto& v : violations) out["violations"].push_back(violation_json(spec.algebra, v));
        std::cout << out.dump(2) << "\n";
    } else if (violations.empty()) {
        std::cout << "ok\n";
    } else {
        for (const auto& v : violations) {
            std::cout << "violation: " << relrep::law_name(v.law) << " at (";
            for (std::size_t i = 0; i < v.witness.size(); ++i)
                std::cout << (i ? "," : "") << spec.algebra.elements[v.witness[i]];
            std::cout << ")\n";
        }
    }
    return violations.empty() ? kExitFound : kExitNegative;
}

int outcome_exit(relrep::SearchOutcome::Kind kind) {
    switch (kind) {
        case relrep::SearchOutcome::Kind::Found: return kExitFound;
        case relrep::SearchOutcome::Kind::ExhaustedNone: return kExitNegative;
        case relrep::SearchOutcome::Kind::LimitReached: return kExitLimit;
    }
    return kExitInput;
}

int cmd_search_single(const relrep::FiniteAlgebra& alg, int size,
                      const relrep::SearchOptions& options, bool as_json) {
    auto outcome = relrep::search(relrep::SearchProblem{alg, size, options});
    if (as_json) {
        json out{{"command", "search"},
                 {"base_size", size},
                 {"outcome", relrep::outcome_name(outcome.kind)},
                 {"nodes", outcome.nodes_explored}};
        if (outcome.representation) out["representation"] = representation_json(*outcome.representation);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "size " << size << ": " << relrep::outcome_name(outcome.kind)
                  << " (nodes " << outcome.nodes_explored << ")\n";
        if (outcome.representation) print_representation(std::cout, *outcome.representation);
    }
    return outcome_exit(outcome.kind);
}

int cmd_search_max(const relrep::FiniteAlgebra& alg, int max_size,
                   const relrep::SearchOptions& options, bool as_json) {
    auto report = relrep::nonrep_certificate(alg, max_size, options);
    if (as_json) {
        json sizes = json::array();
        for (const auto& s : report.sizes) {
            json entry{{"base_size", s.base_size},
                       {"method", s.method == relrep::NonRepReport::Method::Exhaustive
                                      ? "exhaustive"
                                      : "search-complete"},
                       {"outcome", relrep::outcome_name(s.outcome.kind)},
                       {"nodes", s.outcome.nodes_explored}};
            if (s.outcome.representation)
                entry["representation"] = representation_json(*s.outcome.representation);
            sizes.push_back(entry);
        }
        json out{{"command", "search"},
                 {"max_size", max_size},
                 {"sizes", sizes},
                 {"verdict", relrep::verdict_name(report.verdict)}};
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& s : report.sizes) {
            std::cout << "size " << s.base_size << ": "
                      << (s.outcome.kind == relrep::SearchOutcome::Kind::ExhaustedNone
                              ? "none"
                              : relrep::outcome_name(s.outcome.kind))
                      << " ("
                      << (s.method == relrep::NonRepReport::Method::Exhaustive
                              ? "exhaustive"
                              : "search")
                      << ", nodes " << s.outcome.nodes_explored << ")\n";
            if (s.outcome.representation)
                print_representation(std::cout, *s.outcome.representation);
        }
        std::cout << "verdict: " << relrep::verdict_name(report.verdict) << "\n";
    }
    switch (report.verdict) {
        case relrep::NonRepReport::Verdict::Representable: return kExitFound;
        case relrep::NonRepReport::Verdict::CertifiedNone: return kExitNegative;
        case relrep::NonRepReport::Verdict::Inconclusive: return kExitLimit;
    }
    return kExitInput;
}

int cmd_search_dimacs(const relrep::FiniteAlgebra& alg, int size, const std::string& path,
                      bool as_json) {
    auto inst = relrep::encode_cnf(alg, size);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    relrep::write_dimacs(out, inst);
    if (as_json) {
        std::cout << json{{"command", "search"},
                          {"dimacs", path},
                          {"base_size", size},
                          {"variables", inst.variable_count},
                          {"clauses", inst.clauses.size()}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "wrote " << path << ": " << inst.variable_count << " variables, "
                  << inst.clauses.size() << " clauses\n";
    }
    return kExitFound;
}

int cmd_search_decode(const relrep::FiniteAlgebra& alg, int size,
                      const std::string& assignment_path, bool as_json) {
    auto inst = relrep::encode_cnf(alg, size);
    std::ifstream in(assignment_path);
    if (!in) throw std::runtime_error("cannot read file: " + assignment_path);
    auto literals = relrep::read_assignment(in);
    relrep::Representation rep;
    try {
        rep = relrep::decode_cnf(inst, literals, alg, size);
    } catch (const relrep::integrity_error& e) {
        if (as_json)
            std::cout << json{{"command", "search"},
                              {"decode", assignment_path},
                              {"valid", false},
                              {"error", e.what()}}
                             .dump(2)
                      << "\n";
        else
            std::cout << "invalid assignment: " << e.what() << "\n";
        return kExitNegative;
    }
    auto report = relrep::check_representation(rep);
    if (as_json) {
        json out{{"command", "search"},
                 {"decode", assignment_path},
                 {"valid", report.ok()},
                 {"representation", representation_json(rep)}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (report.ok() ? "valid representation\n" : "decode failed verification\n");
        print_representation(std::cout, rep);
    }
    return report.ok() ? kExitFound : kExitNegative;
}

template <class Model>
int run_chain_command(const Model& model, int depth, const std::string& out_path,
                      bool as_json) {
    auto result = relrep::run_chain(model, depth);
    if (auto* cert = std::get_if<relrep::ChainCertificate<Model>>(&result)) {
        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) throw std::runtime_error("cannot write file: " + out_path);
            relrep::write_certificate(out, *cert);
        }
        if (as_json) {
            json points = json::array();
            for (const auto& p : cert->chain) points.push_back(relrep::point_to_string(p));
            json out{{"command", "chain"},
                     {"outcome", "certificate"},
                     {"depth", cert->length()},
                     {"y", relrep::point_to_string(cert->y)},
                     {"points", points},
                     {"memberships", cert->memberships.size()}};
            if (!out_path.empty()) out["file"] = out_path;
            std::cout << out.dump(2) << "\n";
        } else if (out_path.empty()) {
            relrep::write_certificate(std::cout, *cert);
        } else {
            std::cout << "wrote certificate of length " << cert->length() << " to "
                      << out_path << "\n";
        }
        return kExitFound;
    }
    const auto& fail = std::get<relrep::ChainFailure<Model>>(result);
    const char* stage = fail.stage == relrep::ChainFailure<Model>::Stage::Start ? "start"
                        : fail.stage == relrep::ChainFailure<Model>::Stage::Extend
                            ? "extend"
                            : "verify";
    if (as_json) {
        json out{{"command", "chain"},
                 {"outcome", "failure"},
                 {"stage", stage},
                 {"message", fail.message}};
        if (fail.hypothesis) out["hypothesis"] = relrep::hypothesis_name(*fail.hypothesis);
        if (fail.pair)
            out["pair"] = json::array({relrep::point_to_string(fail.pair->first),
                                       relrep::point_to_string(fail.pair->second)});
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "chain failed at " << stage << " stage";
        if (fail.hypothesis) {
            std::cout << ": " << relrep::hypothesis_name(*fail.hypothesis) << " ("
                      << relrep::hypothesis_equation(*fail.hypothesis) << ") fails";
            if (fail.pair)
                std::cout << " at (" << relrep::point_to_string(fail.pair->first) << ","
                          << relrep::point_to_string(fail.pair->second) << ")";
        }
        std::cout << "\n" << fail.message << "\n";
    }
    return kExitNegative;
}

int cmd_tables(const std::string& model, const std::string& closure_file, bool as_json) {
    relrep::FiniteAlgebra alg;
    if (!closure_file.empty()) {
        auto parsed = relrep::parse_model_file(slurp(closure_file));
        auto closed = relrep::generate_closure(parsed.relations);
        alg = relrep::extract_tables(closed);
    } else if (model == "qsymbolic") {
        alg = relrep::point_algebra();
    } else {
        throw std::runtime_error("tables: pass --model qsymbolic or --closure <file>");
    }
    if (as_json) {
        json out{{"command", "tables"},
                 {"elements", alg.elements},
                 {"comp", alg.comp},
                 {"meet", alg.meet},
                 {"text", relrep::print_algebra(alg)}};
        std::cout << out.dump(2) << "\n";
    } else {
        relrep::print_algebra(std::cout, alg);
    }
    return kExitFound;
}

std::uint64_t node_limit_default() {
    if (const char* env = std::getenv("RELREP_NODE_LIMIT")) {
        char* end = nullptr;
        unsigned long long value = std::strtoull(env, &end, 10);
        if (!end || *end != '\0' || value == 0)
            throw std::runtime_error("RELREP_NODE_LIMIT must be a positive integer");
        return value;
    }
    return relrep::SearchOptions{}.node_limit;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite relation algebras: representation search and chain proofs"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable output");

    auto* validate = app.add_subcommand("validate", "check an algebra file against the laws");
    std::string validate_file;
    validate->add_option("file", validate_file, "algebra file")->required();

    auto* search_cmd = app.add_subcommand("search", "look for a representation");
    std::string search_file;
    int search_size = 0;
    int search_max_size = 0;
    std::string dimacs_path;
    std::string decode_path;
    bool deterministic = true;
    bool symmetry = false;
    std::uint64_t node_limit = 0;
    search_cmd->add_option("file", search_file, "algebra file")->required();
    auto* size_opt = search_cmd->add_option("--size", search_size, "base size to try");
    auto* max_opt =
        search_cmd->add_option("--max-size", search_max_size, "certify sizes 1..N");
    search_cmd->add_option("--dimacs", dimacs_path, "write CNF here instead of searching");
    search_cmd->add_option("--decode", decode_path,
                           "verify a solver assignment file against --size");
    search_cmd->add_flag("--deterministic,!--no-deterministic", deterministic,
                         "sequential fixed-order traversal (default on)");
    search_cmd->add_flag("--symmetry", symmetry, "accept only orbit-minimal witnesses");
    search_cmd->add_option("--node-limit", node_limit, "decision budget");
    size_opt->excludes(max_opt);

    auto* chain_cmd = app.add_subcommand("chain", "run the chain construction");
    std::string chain_model = "qsymbolic";
    int depth = 0;
    std::string chain_out;
    chain_cmd->add_option("--model", chain_model, "qsymbolic or a model file")->required();
    chain_cmd->add_option("--depth", depth, "chain length to build")->required();
    chain_cmd->add_option("--out", chain_out, "write the certificate here");

    auto* tables_cmd = app.add_subcommand("tables", "print an algebra in file grammar");
    std::string tables_model;
    std::string closure_file;
    auto* model_opt =
        tables_cmd->add_option("--model", tables_model, "qsymbolic");
    auto* closure_opt =
        tables_cmd->add_option("--closure", closure_file, "seed relations file to close");
    model_opt->excludes(closure_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (*validate) return cmd_validate(validate_file, as_json);
        if (*search_cmd) {
            auto spec = relrep::parse_algebra(slurp(search_file));
            relrep::SearchOptions options;
            options.deterministic = deterministic;
            options.symmetry_pruning = symmetry;
            options.node_limit = node_limit ? node_limit : node_limit_default();
            if (!dimacs_path.empty()) {
                if (search_size < 1)
                    throw std::runtime_error("--dimacs requires --size");
                return cmd_search_dimacs(spec.algebra, search_size, dimacs_path, as_json);
            }
            if (!decode_path.empty()) {
                if (search_size < 1)
                    throw std::runtime_error("--decode requires --size");
                return cmd_search_decode(spec.algebra, search_size, decode_path, as_json);
            }
            if (search_max_size > 0)
                return cmd_search_max(spec.algebra, search_max_size, options, as_json);
            if (search_size < 1)
                throw std::runtime_error("search: pass --size or --max-size");
            return cmd_search_single(spec.algebra, search_size, options, as_json);
        }
        if (*chain_cmd) {
            if (depth < 1) throw std::runtime_error("chain: depth must be >= 1");
            if (chain_model == "qsymbolic") {
                relrep::SymbolicTriple sym{relrep::BasisSet::none(), relrep::BasisSet::eq(),
                                           relrep::BasisSet::lt()};
                return run_chain_command(sym, depth, chain_out, as_json);
            }
            auto parsed = relrep::parse_model_file(slurp(chain_model));
            auto triple = relrep::triple_from_model_file(parsed);
            return run_chain_command(triple, depth, chain_out, as_json);
        }
        if (*tables_cmd) return cmd_tables(tables_model, closure_file, as_json);
    } catch (const relrep::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
