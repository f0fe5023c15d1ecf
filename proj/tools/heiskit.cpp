// Batch command-line front end: parse a GSPEC instance file, run
// constructions, predicates, decompositions and verifications, and emit
// deterministic reports (text or canonical JSON).
//
// Exit codes: 0 success / property holds, 1 definite negative, 2 input
// error, 3 enumeration bound exceeded.

#include "heiskit/gspec.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iostream>

namespace {

struct Sub {
    CLI::App* cmd = nullptr;
    heiskit::CommandKind kind{};
    std::string spec_path, name, file, out;
    bool json = false;
    bool needs_spec = false;
    int sections = 3;
    unsigned seed = 1;
};

std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw heiskit::input_error("cannot open spec file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"heiskit: exact computations with generalized Heisenberg groups, "
                 "Mumford maps and symplectic self-dualities over finite abelian groups"};
    app.require_subcommand(1);

    std::int64_t bound = -1;
    app.add_option("--bound", bound, "enumeration bound (elements); overrides HEISKIT_BOUND");

    std::vector<std::shared_ptr<Sub>> subs;
    auto make = [&](const std::string& name, heiskit::CommandKind kind,
                    const std::string& desc) {
        auto s = std::make_shared<Sub>();
        s->cmd = app.add_subcommand(name, desc);
        s->cmd->fallthrough();
        s->kind = kind;
        s->cmd->add_flag("--json", s->json, "emit a canonical JSON report");
        subs.push_back(s);
        return s;
    };
    auto with_spec_name = [](const std::shared_ptr<Sub>& s, bool required_name = true) {
        s->needs_spec = true;
        s->cmd->add_option("spec", s->spec_path, "GSPEC instance file")->required();
        auto* n = s->cmd->add_option("name", s->name, "declaration name");
        if (required_name) n->required();
    };

    with_spec_name(make("analyze-form", heiskit::CommandKind::analyze_form,
                        "classify a declared bilinear form"));
    with_spec_name(make("heisenberg-build", heiskit::CommandKind::heisenberg_build,
                        "build a declared Heisenberg group and print its shape"));
    with_spec_name(make("heisenberg-report", heiskit::CommandKind::heisenberg_report,
                        "center, derived subgroup, Mumford and reflexivity report"));
    {
        auto s = make("table-export", heiskit::CommandKind::table_export,
                      "export the Cayley table of a declared Heisenberg group");
        with_spec_name(s);
        s->cmd->add_option("--out", s->out, "write the table to a file");
    }
    {
        auto s = make("table-import", heiskit::CommandKind::table_import,
                      "validate a Cayley table file");
        s->cmd->add_option("file", s->file, "Cayley table file")->required();
    }
    for (auto [cname, ckind, cdesc] :
         {std::tuple{std::string("recognize"), heiskit::CommandKind::recognize,
                     std::string("run the generalized-Heisenberg recognition algorithm")},
          std::tuple{std::string("cocycle-check"), heiskit::CommandKind::cocycle_check,
                     std::string("verify the section cocycle identities on a class-2 table")}}) {
        auto s = make(cname, ckind, cdesc);
        s->cmd->add_option("spec", s->spec_path, "GSPEC instance file (with a table name)");
        s->cmd->add_option("name", s->name, "declared table name");
        s->cmd->add_option("--file", s->file, "Cayley table file instead of a declared table");
        if (ckind == heiskit::CommandKind::cocycle_check) {
            s->cmd->add_option("--sections", s->sections, "number of random sections to try");
            s->cmd->add_option("--seed", s->seed, "seed for the random sections");
        }
    }
    with_spec_name(make("symplectic-decompose", heiskit::CommandKind::symplectic_decompose,
                        "decompose a declared symplectic self-duality"));
    with_spec_name(make("duality-roundtrip", heiskit::CommandKind::duality_roundtrip,
                        "build the Mumford group of a duality and verify the round trip"));
    {
        auto s = make("verify-suite", heiskit::CommandKind::verify_suite,
                      "run every declaration through its verification checks");
        s->needs_spec = true;
        s->cmd->add_option("spec", s->spec_path, "GSPEC instance file")->required();
    }

    CLI11_PARSE(app, argc, argv);

    if (bound < 0) {
        if (const char* env = std::getenv("HEISKIT_BOUND")) bound = std::atoll(env);
    }
    if (bound > 0) {
        try {
            heiskit::set_enumeration_bound(bound);
        } catch (const heiskit::error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    for (auto& s : subs) {
        if (!s->cmd->parsed()) continue;
        try {
            heiskit::InstanceSpec spec;
            if (!s->spec_path.empty()) {
                std::string text = read_file(s->spec_path);
                std::filesystem::path dir = std::filesystem::path(s->spec_path).parent_path();
                spec = heiskit::parse_spec(text, dir.empty() ? "." : dir.string());
            } else if (s->needs_spec ||
                       ((s->kind == heiskit::CommandKind::recognize ||
                         s->kind == heiskit::CommandKind::cocycle_check) &&
                        s->file.empty())) {
                throw heiskit::input_error("a GSPEC file (or --file) is required");
            }
            heiskit::CommandRequest req{s->kind, s->name,     s->file, s->out,
                                        s->json, s->sections, s->seed};
            heiskit::CommandResult res = heiskit::run_command(spec, req);
            std::cout << res.text;
            return res.exit_code;
        } catch (const heiskit::bound_error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 3;
        } catch (const heiskit::error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }
    return 2;
}
