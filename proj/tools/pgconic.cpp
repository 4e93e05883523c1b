/*
   Copyright 2026 The pgconic Authors

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

// pgconic: verify, rank and export for the passant/internal-point system.
//
// Exit codes: 0 all checks passed, 1 a check failed, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "pgconic/alist.hpp"
#include "pgconic/suite.hpp"

namespace {

using nlohmann::ordered_json;
using namespace pgconic;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::uint64_t q = 0;
    std::string suite = "all";
    std::string format = "text";
    std::string export_kind = "alist";
    std::string out;
    unsigned threads = 1;
    std::uint64_t max_heavy_q = 13;
};

std::filesystem::path default_dir() {
    if (const char* d = std::getenv("PGCONIC_OUT_DIR"); d != nullptr && *d != '\0') return d;
    return ".";
}

void require_valid_q(std::uint64_t q) {
    if (auto why = invalid_q_reason(q)) throw UsageError(*why);
}

std::vector<std::string> selected_suites(const Options& o) {
    if (o.suite == "all") return suite_names();
    return {o.suite};
}

ordered_json check_json(const CheckResult& c) {
    return {{"name", c.name}, {"ok", c.ok}, {"cases", c.cases}, {"failures", c.failures}};
}

ordered_json rank_json(Workspace& ws) {
    const auto& sys = ws.incidence();
    const auto rank = sys.A().rank();
    const auto dim = sys.size() - rank;
    return {{"N", sys.size()},
            {"rank", rank},
            {"null_dimension", dim},
            {"expected", expected_null_dimension(ws.q())},
            {"pass", dim == expected_null_dimension(ws.q())}};
}

/// Deterministic report body; timings are returned separately.
ordered_json build_report(Workspace& ws, const std::vector<SuiteOutcome>& outcomes, ordered_json& timings) {
    ordered_json rep;
    rep["schema_version"] = kReportSchemaVersion;
    rep["tool"] = "pgconic";
    rep["version"] = kToolVersion;
    rep["q"] = ws.q();
    const Field& f = ws.plane().field();
    rep["field"] = {{"modulus", f.modulus_string()}, {"primitive", f.to_string(f.primitive())}};
    bool all_ok = true;
    ordered_json suites = ordered_json::array();
    for (const auto& o : outcomes) {
        ordered_json s{{"name", o.suite}, {"ok", o.ok()}, {"notes", o.notes}};
        s["checks"] = ordered_json::array();
        for (const auto& c : o.checks) s["checks"].push_back(check_json(c));
        suites.push_back(s);
        timings[o.suite] = o.seconds;
        all_ok = all_ok && o.ok();
    }
    rep["ok"] = all_ok;
    rep["suites"] = suites;
    rep["rank"] = rank_json(ws);

    if (ws.q() <= kMaxGroupQ) {
        ordered_json classes = ordered_json::array();
        for (const auto& c : ws.partition().classes) {
            classes.push_back({{"label", c.label()}, {"size", c.size()}, {"t_value", f.to_string(c.t_value)}});
        }
        rep["classes"] = classes;
    }
    if (ws.parity) {
        rep["parity"] = {{"configurations", ws.parity->configurations}, {"patterns", ws.parity->patterns}};
    }
    if (ws.patterns) {
        const auto& z = ws.algebra();
        const Field& bf = *z.field();
        ordered_json blocks = ordered_json::array();
        for (const auto& b : ws.blocks()) {
            ordered_json coeffs = ordered_json::object();
            for (std::size_t i = 0; i < z.dim(); ++i) coeffs[z.label(i)] = bf.to_string(b.coeffs[i]);
            ordered_json jb{{"label", b.label}, {"family", to_string(b.family)}, {"principal", b.principal}};
            jb["ideal_dimension"] = b.ideal_dim ? ordered_json(*b.ideal_dim) : ordered_json(nullptr);
            jb["coefficients"] = coeffs;
            blocks.push_back(jb);
        }
        rep["blocks"] = {{"field", {{"order", bf.order()}, {"modulus", bf.modulus_string()}}}, {"idempotents", blocks}};
        ordered_json unconstrained = ordered_json::array();
        for (const auto& e : ws.patterns->entries) {
            if (!e.asserted) unconstrained.push_back({{"block", e.block}, {"class", e.cls}, {"value", e.value}});
        }
        rep["blocks"]["unconstrained_entries"] = unconstrained;
    }
    if (ws.module) {
        ordered_json rows = ordered_json::array();
        for (const auto& r : ws.module->rows) {
            rows.push_back({{"block", r.label},
                            {"module_dim", r.module_dim},
                            {"kernel_dim", r.kernel_dim},
                            {"image_dim", r.image_dim},
                            {"mu2_image_dim", r.mu2_dim}});
        }
        rep["projections"] = rows;
    }
    if (ws.decomposition) {
        ordered_json m = ordered_json::object();
        for (const auto& x : ws.decomposition->multiplicities) {
            m[x.label] = x.determinate ? ordered_json(static_cast<std::int64_t>(x.value)) : ordered_json("sign-dependent");
        }
        rep["characters"] = {{"multiplicities", m},
                             {"residual_degree", ws.decomposition->residual},
                             {"pi_pi", ws.decomposition->self_inner},
                             {"stabilizer_orbits", ws.decomposition->stabilizer_orbits}};
    }
    return rep;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    os << content;
    if (!os) throw std::runtime_error("cannot write " + p.string());
}

std::vector<SuiteOutcome> run_selected(Workspace& ws, const Options& o) {
    std::vector<SuiteOutcome> outcomes;
    for (const auto& name : selected_suites(o)) {
        if (name != "geometry" && ws.q() > kMaxGroupQ) {
            throw UsageError("suite " + name + " needs q <= " + std::to_string(kMaxGroupQ));
        }
        outcomes.push_back(run_suite(ws, name));
    }
    return outcomes;
}

SuiteConfig config_of(const Options& o) {
    SuiteConfig cfg;
    cfg.threads = o.threads;
    cfg.max_heavy_q = o.max_heavy_q;
    return cfg;
}

std::string full_report(Workspace& ws, const std::vector<SuiteOutcome>& outcomes) {
    ordered_json timings = ordered_json::object();
    ordered_json rep = build_report(ws, outcomes, timings);
    rep["timings_seconds"] = timings;
    return rep.dump(2) + "\n";
}

int cmd_verify(const Options& o) {
    require_valid_q(o.q);
    Workspace ws(o.q, config_of(o));
    const auto outcomes = run_selected(ws, o);
    const std::string report = full_report(ws, outcomes);
    if (!o.out.empty()) write_file(o.out, report);

    std::string first_failure;
    for (const auto& s : outcomes) {
        for (const auto& c : s.checks) {
            if (!c.ok && first_failure.empty()) first_failure = s.suite + "/" + c.name;
        }
    }
    if (o.format == "json") {
        std::cout << report;
    } else {
        std::cout << "q=" << o.q << "\n";
        for (const auto& s : outcomes) {
            std::cout << s.suite << ": " << (s.ok() ? "ok" : "FAILED") << "\n";
            for (const auto& c : s.checks) std::cout << "  " << c.summary() << "\n";
            for (const auto& n : s.notes) std::cout << "  note: " << n << "\n";
        }
        std::cout << (first_failure.empty() ? "PASS" : "FAIL: " + first_failure) << "\n";
    }
    return first_failure.empty() ? kExitOk : kExitFail;
}

int cmd_rank(const Options& o) {
    require_valid_q(o.q);
    const IncidenceSystem sys(make_plane(o.q));
    const auto rank = sys.A().rank();
    const auto dim = sys.size() - rank;
    const bool pass = dim == expected_null_dimension(o.q);
    if (o.format == "json") {
        std::cout << ordered_json{{"q", o.q}, {"N", sys.size()}, {"rank", rank}, {"dim", dim}, {"pass", pass}}.dump()
                  << "\n";
    } else {
        std::cout << "N=" << sys.size() << " rank=" << rank << " dim=" << dim << (pass ? " PASS" : " FAIL") << "\n";
    }
    return pass ? kExitOk : kExitFail;
}

int cmd_export(const Options& o) {
    require_valid_q(o.q);
    std::filesystem::path out = o.out;
    const std::string ext = o.export_kind == "json" ? "json" : o.export_kind;
    if (out.empty()) out = default_dir() / ("A_q" + std::to_string(o.q) + "." + ext);
    int code = kExitOk;
    if (o.export_kind == "alist") {
        write_file(out, to_alist(IncidenceSystem(make_plane(o.q)).A()));
    } else if (o.export_kind == "csv") {
        std::ostringstream os;
        write_csv(os, IncidenceSystem(make_plane(o.q)).A());
        write_file(out, os.str());
    } else {
        Workspace ws(o.q, config_of(o));
        Options all = o;
        if (o.q > kMaxGroupQ) all.suite = "geometry";
        const auto outcomes = run_selected(ws, all);
        for (const auto& s : outcomes) code = s.ok() ? code : kExitFail;
        write_file(out, full_report(ws, outcomes));
    }
    std::cout << out.string() << "\n";
    return code;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--q", o.q, "odd prime power")->required();
    sub->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1U, 256U));
    sub->add_option("--max-heavy-q", o.max_heavy_q, "largest q for |H|x|H| eliminations")->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", o.out, "output path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Incidence of passant lines and internal points of a conic in PG(2,q)"};
    app.require_subcommand(1);
    Options o;
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");

    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_common(verify, o);
    verify->add_option("--suite", o.suite, "suite to run")->check(CLI::IsMember(suites));
    auto* rank = app.add_subcommand("rank", "2-rank and null dimension of A");
    add_common(rank, o);
    auto* exp = app.add_subcommand("export", "write A or the full report");
    add_common(exp, o);
    exp->add_option("--export", o.export_kind, "export format")->check(CLI::IsMember({"alist", "csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*verify) return cmd_verify(o);
        if (*rank) return cmd_rank(o);
        return cmd_export(o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
}
