// hgm: command-line front end (analyze, sweep, verify).

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hgm/hgm.hpp"

namespace {

using nlohmann::json;
using namespace hgm;

constexpr int exit_verify_failed = 1;
constexpr int exit_input = 2;
constexpr int exit_resource = 3;

Limits resolve_limits(const std::string& max_norm) {
    Limits lim = limits_from_env();
    if (!max_norm.empty()) {
        try {
            lim.max_norm = Int(max_norm);
        } catch (const std::exception&) {
            throw domain_error("--max-norm is not an integer: " + max_norm);
        }
        if (lim.max_norm <= 0) throw domain_error("--max-norm must be positive");
    }
    return lim;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

struct SweepRow {
    std::string a, tame, normalized, verdict, hash;
    json to_json() const {
        return {{"a", a}, {"tame", tame}, {"normalized", normalized}, {"verdict", verdict}, {"generator_hash", hash}};
    }
    std::string csv() const {
        return csv_escape(a) + "," + tame + "," + csv_escape(normalized) + "," + csv_escape(verdict) + "," + hash;
    }
};

std::optional<SweepRow> sweep_row(const BaseField& K, unsigned p, const Int& v, const Limits& lim) {
    KElem a = k_int(K, v);
    if (a.is_zero() || pth_root(a, p, lim)) return std::nullopt;
    SweepRow row;
    row.a = a.str();
    try {
        auto r = analyze(K, p, a, lim);
        row.tame = r.tameness.tame ? "true" : "false";
        row.normalized = r.tameness.tame ? r.tameness.normalized->str() : "";
        row.verdict = r.verdict();
        if (r.certificate && r.certificate->generator) {
            if (!r.verification || !r.verification->ok) row.verdict = "verification-failed";
            row.hash = hex64(fnv1a(generator_text(*r.certificate->generator)));
        }
    } catch (const resource_error& e) {
        row.verdict = std::string("resource-error: ") + e.what();
    } catch (const domain_error& e) {
        row.verdict = std::string("unsupported: ") + e.what();
    }
    return row;
}

void write_checkpoint(const std::string& path, const json& state) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write checkpoint " + tmp);
        f << state.dump(2) << "\n";
        if (!f) throw std::runtime_error("cannot write checkpoint " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

struct SweepOptions {
    std::string base = "Q";
    unsigned p = 3;
    std::string from = "2", to = "200";
    std::string format = "csv";
    std::string checkpoint;
    unsigned threads = 0;
    long stop_after = -1;
};

int run_sweep(const SweepOptions& o, const Limits& lim) {
    BaseField K = parse_base(o.base);
    if (o.p < 3 || !is_prime(Int(o.p))) throw domain_error("p must be an odd prime");
    if (K.discriminant() % Int(o.p) == 0) throw domain_error("p ramifies in " + K.name());
    if (o.format != "csv" && o.format != "json") throw domain_error("sweep format must be csv or json");
    Int from(o.from), to(o.to);

    json state = {{"schema_version", report_schema_version}, {"base", K.name()}, {"p", o.p},
                  {"from", from.str()}, {"to", to.str()}, {"next", from.str()}, {"rows", 0}};
    bool resumed = false;
    if (!o.checkpoint.empty() && std::filesystem::exists(o.checkpoint)) {
        std::ifstream f(o.checkpoint);
        json saved;
        try {
            saved = json::parse(f);
        } catch (const json::exception& e) {
            throw domain_error("checkpoint " + o.checkpoint + " is not valid JSON");
        }
        for (const char* key : {"schema_version", "base", "p", "from", "to"})
            if (!saved.contains(key) || saved[key] != state[key])
                throw domain_error(std::string("checkpoint does not match this sweep (field '") + key + "')");
        state = saved;
        resumed = true;
    }
    Int next(state["next"].get<std::string>());

    if (!resumed && o.format == "csv") std::cout << "a,tame,normalized,verdict,generator_hash\n" << std::flush;

    unsigned threads = o.threads ? o.threads : std::max(1u, std::thread::hardware_concurrency());
    const long batch = 8L * threads;
    long done = 0;
    while (next <= to) {
        long n = batch;
        if (Int(n) > to - next + 1) n = static_cast<long>(to - next + 1);
        if (o.stop_after >= 0) n = std::min(n, o.stop_after - done);
        if (n <= 0) break;
        std::vector<std::optional<SweepRow>> rows(static_cast<std::size_t>(n));
        // strided slices per worker; rows are written back in order of a
        std::vector<std::thread> pool;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (long i = t; i < n; i += threads) {
                    try {
                        rows[static_cast<std::size_t>(i)] = sweep_row(K, o.p, next + i, lim);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
        long written = 0;
        for (const auto& r : rows) {
            if (!r) continue;
            std::cout << (o.format == "csv" ? r->csv() : r->to_json().dump()) << "\n";
            ++written;
        }
        std::cout << std::flush;
        next += n;
        done += n;
        state["next"] = next.str();
        state["rows"] = state["rows"].get<long>() + written;
        if (!o.checkpoint.empty()) write_checkpoint(o.checkpoint, state);
    }
    return 0;
}

int run_analyze(const std::string& base, unsigned p, const std::string& a_text, const std::string& format,
                const Limits& lim) {
    BaseField K = parse_base(base);
    KElem a = parse_k_elem(K, a_text);
    auto r = analyze(K, p, a, lim);
    if (format == "json") {
        std::cout << to_json(r).dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "base,p,a,tame,normalized,verdict,generator\n"
                  << K.name() << "," << p << "," << csv_escape(a.str()) << ","
                  << (r.tameness.tame ? "true" : "false") << ","
                  << csv_escape(r.tameness.tame ? r.tameness.normalized->str() : "") << "," << r.verdict() << ","
                  << csv_escape(r.certificate && r.certificate->generator ? generator_text(*r.certificate->generator)
                                                                         : "")
                  << "\n";
    } else if (format == "text") {
        std::cout << to_text(r);
    } else {
        throw domain_error("format must be json, text or csv");
    }
    return r.exit_code();
}

int run_verify(const std::string& path, const Limits& lim) {
    std::ifstream f(path);
    if (!f) throw domain_error("cannot open report " + path);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception&) {
        throw schema_error("report " + path + " is not valid JSON");
    }
    auto check = verify_report(j, lim);
    if (check.ok) {
        std::cout << "PASS " << path << "\n";
        return 0;
    }
    std::cout << "FAIL " << path << "\n";
    for (const auto& s : check.problems) std::cout << "  " << s << "\n";
    return exit_verify_failed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Freeness of rings of integers over Hopf orders for tame radical extensions"};
    app.require_subcommand(1);
    std::string max_norm;
    app.add_option("--max-norm", max_norm, "bound on norms to factor (overrides HGM_MAX_NORM)");

    std::string base = "Q", a_text, format = "text";
    unsigned p = 3;
    auto* an = app.add_subcommand("analyze", "analyze one extension K(a^(1/p))");
    an->add_option("--base", base, "Q or Qsqrt<d> with d < 0 squarefree");
    an->add_option("--p", p, "odd prime degree")->required();
    an->add_option("--a", a_text, "radicand, e.g. 10 or 3+2*w")->required();
    an->add_option("--format", format, "json, text or csv")->check(CLI::IsMember({"json", "text", "csv"}));
    an->add_option("--max-norm", max_norm, "bound on norms to factor");

    SweepOptions so;
    auto* sw = app.add_subcommand("sweep", "analyze every integer radicand in a range");
    sw->add_option("--base", so.base, "Q or Qsqrt<d>");
    sw->add_option("--p", so.p, "odd prime degree")->required();
    sw->add_option("--from", so.from, "first radicand");
    sw->add_option("--to", so.to, "last radicand");
    sw->add_option("--format", so.format, "csv or json (one object per line)")
        ->check(CLI::IsMember({"csv", "json"}));
    sw->add_option("--checkpoint", so.checkpoint, "checkpoint file for resuming");
    sw->add_option("--threads", so.threads, "worker threads (default: hardware concurrency)");
    sw->add_option("--stop-after", so.stop_after, "stop after this many radicands")->group("");
    sw->add_option("--max-norm", max_norm, "bound on norms to factor");

    std::string report_path;
    auto* ve = app.add_subcommand("verify", "re-verify a JSON report");
    ve->add_option("report", report_path, "report file")->required();
    ve->add_option("--max-norm", max_norm, "bound on norms to factor");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_input;
    }

    try {
        Limits lim = resolve_limits(max_norm);
        if (*an) return run_analyze(base, p, a_text, format, lim);
        if (*sw) return run_sweep(so, lim);
        return run_verify(report_path, lim);
    } catch (const resource_error& e) {
        std::cerr << "hgm: resource bound exceeded: " << e.what() << "\n";
        return exit_resource;
    } catch (const schema_error& e) {
        std::cerr << "hgm: schema error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::logic_error& e) {  // domain, precondition and argument errors
        std::cerr << "hgm: " << e.what() << "\n";
        return exit_input;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "hgm: malformed report: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "hgm: " << e.what() << "\n";
        return exit_input;
    }
}
