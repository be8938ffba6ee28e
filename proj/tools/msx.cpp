#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "msx/script.hpp"

namespace {

std::optional<std::uint64_t> env_seed() {
    const char* s = std::getenv("MSX_SEED");
    if (!s || !*s) return std::nullopt;
    return std::strtoull(s, nullptr, 10);
}

int run_file(const std::string& path, bool as_json) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open " << path << "\n";
        return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    msx::Script sc = msx::parse(buf.str());
    msx::RunResult res = msx::run(sc, env_seed());
    if (as_json)
        std::cout << res.document.dump(2) << "\n";
    else
        std::cout << res.text;
    return res.verify_ok ? 0 : 1;
}

int run_verify(const std::string& suite, const msx::SuiteParams& params, bool as_json) {
    msx::SuiteReport rep = msx::run_suite(suite, params);
    if (as_json) {
        msx::Json j;
        j["suite"] = rep.id;
        j["n"] = params.n;
        j["k"] = params.k;
        j["m"] = params.m;
        j["trials"] = params.trials;
        j["seed"] = std::to_string(params.seed);
        j["pass"] = rep.pass;
        j["detail"] = rep.detail;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "verify " << rep.id << "(n=" << params.n << ", k=" << params.k
                  << "): " << (rep.pass ? "PASS" : "FAIL") << " (" << rep.detail << ")\n";
    }
    return rep.pass ? 0 : 1;
}

int repl(bool as_json) {
    std::string source;
    std::string line;
    std::cout << "msx> " << std::flush;
    while (std::getline(std::cin, line)) {
        if (line == "quit" || line == "exit") break;
        if (!line.empty()) {
            try {
                // Re-run the accumulated script so bindings persist; print
                // only what the new line emits.
                std::string next = source + line + "\n";
                msx::Script sc = msx::parse(next);
                msx::RunResult res = msx::run(sc, env_seed());
                source = next;
                msx::Script tail = msx::parse(line.empty() ? "" : line);
                bool wants_output = false;
                for (const auto& st : tail.statements)
                    wants_output |= (st.kind == msx::StmtKind::Emit ||
                                     st.kind == msx::StmtKind::Verify);
                if (wants_output) {
                    if (as_json)
                        std::cout << res.document.dump(2) << "\n";
                    else
                        std::cout << res.text;
                }
            } catch (const msx::Error& e) {
                std::cout << "error: " << e.what() << "\n";
            }
        }
        std::cout << "msx> " << std::flush;
    }
    std::cout << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact symbolic engine for multiphase-space and frame-bundle geometry"};
    app.require_subcommand(1);

    bool json_out = false, text_out = false;
    app.add_flag("--json", json_out, "emit JSON");
    app.add_flag("--text", text_out, "emit plain text");

    std::string script_path;
    CLI::App* cmd_run = app.add_subcommand("run", "execute a .msx script");
    cmd_run->add_option("file", script_path, "script file")->required();

    std::string suite;
    msx::SuiteParams params;
    if (auto s = env_seed()) params.seed = *s;
    CLI::App* cmd_verify = app.add_subcommand("verify", "run a verification suite");
    cmd_verify->add_option("--suite", suite, "suite id")->required();
    cmd_verify->add_option("--n", params.n, "base dimension");
    cmd_verify->add_option("--k", params.k, "fiber dimension");
    cmd_verify->add_option("--m", params.m, "form degree parameter");
    cmd_verify->add_option("--trials", params.trials, "number of random trials");
    cmd_verify->add_option("--seed", params.seed, "random seed");

    CLI::App* cmd_repl = app.add_subcommand("repl", "interactive prompt");

    CLI11_PARSE(app, argc, argv);
    bool as_json = json_out || !text_out;  // JSON is the default

    try {
        if (cmd_run->parsed()) return run_file(script_path, as_json);
        if (cmd_verify->parsed()) return run_verify(suite, params, as_json);
        if (cmd_repl->parsed()) return repl(as_json);
    } catch (const msx::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
