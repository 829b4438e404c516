#pragma once

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

#include "hgm/dedekind.hpp"
#include "hgm/freeness.hpp"

namespace hgm {

inline constexpr int report_schema_version = 1;

// Malformed or out-of-date report files.
class schema_error : public domain_error {
public:
    using domain_error::domain_error;
};

// "Q" or "Qsqrt<d>" with d < 0 squarefree.
inline BaseField parse_base(const std::string& s) {
    if (s == "Q") return BaseField::rationals();
    static const std::regex re(R"(Qsqrt(-?\d{1,18}))");
    std::smatch m;
    if (!std::regex_match(s, m, re)) throw domain_error("base field must be Q or Qsqrt<d>, got '" + s + "'");
    std::int64_t d = std::stoll(m[1].str());
    return BaseField::imaginary_quadratic(d);
}

// "x", "x+y*w", "y*w", "w", "-3-w", ... with integer x, y.
inline KElem parse_k_elem(const BaseField& K, std::string s) {
    std::string t;
    for (char ch : s)
        if (ch != ' ') t += ch;
    static const std::regex term_re(R"(([+-]?)(\d*)(\*?w)?)");
    if (t.empty()) throw domain_error("empty radicand");
    Int x = 0, y = 0;
    std::size_t pos = 0;
    bool any = false;
    while (pos < t.size()) {
        std::size_t next = t.find_first_of("+-", pos + 1);
        std::string term = t.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        std::smatch m;
        if (!std::regex_match(term, m, term_re) || (m[2].str().empty() && !m[3].matched) ||
            (m[3].matched && m[3].str() == "*w" && m[2].str().empty()))
            throw domain_error("cannot parse radicand term '" + term + "' in '" + s + "'");
        Int c = m[2].str().empty() ? Int(1) : Int(m[2].str());
        if (m[1].str() == "-") c = -c;
        if (m[3].matched) {
            if (K.is_rational()) throw domain_error("w is not defined over Q");
            y += c;
        } else {
            x += c;
        }
        any = true;
        pos = next == std::string::npos ? t.size() : next;
    }
    if (!any) throw domain_error("cannot parse radicand '" + s + "'");
    return KElem(K, Rat(x), Rat(y));
}

// Limits from HGM_MAX_NORM when set, otherwise the defaults.
inline Limits limits_from_env() {
    Limits lim;
    if (const char* v = std::getenv("HGM_MAX_NORM"); v && *v) {
        try {
            lim.max_norm = Int(std::string(v));
        } catch (const std::exception&) {
            throw domain_error(std::string("HGM_MAX_NORM is not an integer: ") + v);
        }
        if (lim.max_norm <= 0) throw domain_error("HGM_MAX_NORM must be positive");
    }
    return lim;
}

struct RamificationRow {
    PrimeIdeal prime;
    int valuation = 0;
    std::string type;
};

struct LocalData {
    LocalIntegralBasis basis;
    LElem generator;
    std::optional<int> generation_valuation;
};

struct AnalysisReport {
    BaseField field = BaseField::rationals();
    unsigned p = 0;
    KElem a;
    TamenessVerdict tameness;
    std::optional<RadicandContext> ctx;  // over the normalized radicand
    std::vector<RamificationRow> ramification;
    std::optional<AssociatedIdeals> associated;
    std::vector<LocalData> local;
    std::optional<FreenessCertificate> certificate;
    std::optional<VerificationResult> verification;
    std::vector<MaximalityWitness> dedekind;
    double elapsed_ms = 0;

    std::string verdict() const {
        if (!tameness.tame) return "wild";
        return to_string(certificate->verdict);
    }

    int exit_code() const {
        if (!tameness.tame) return 20;
        if (certificate->verdict != Verdict::free) return 10;
        return verification && verification->ok ? 0 : 1;
    }
};

// x = sum x_j a^j as "(n_0 + n_1*a + ...)/d" with a standing for alpha.
inline std::string generator_text(const LElem& x) {
    Int d = 1;
    for (const auto& c : x.coords) d = lcm(d, c.denominator());
    std::string s;
    for (std::size_t j = 0; j < x.size(); ++j) {
        KElem c = Rat(d) * x[j];
        if (c.is_zero()) continue;
        std::string mono = j == 0 ? "" : j == 1 ? "a" : "a^" + std::to_string(j);
        std::string cs = c.str();
        bool neg = false;
        if (c.y() == 0 && c.x() < 0) {
            neg = true;
            cs = to_string(-c.x());
        } else if (c.x() != 0 && c.y() != 0) {
            cs = "(" + cs + ")";
        }
        std::string term;
        if (mono.empty()) term = cs;
        else if (cs == "1") term = mono;
        else term = cs + "*" + mono;
        if (s.empty()) s = neg ? "-" + term : term;
        else s += (neg ? " - " : " + ") + term;
    }
    if (s.empty()) return "0";
    return d == 1 ? s : "(" + s + ")/" + d.str();
}

inline AnalysisReport analyze(const BaseField& K, unsigned p, const KElem& a, const Limits& lim = {}) {
    auto t0 = std::chrono::steady_clock::now();
    AnalysisReport r;
    r.field = K;
    r.p = p;
    r.a = a;
    r.tameness = tameness_test(K, p, a, lim);
    if (r.tameness.tame) {
        r.ctx.emplace(K, p, *r.tameness.normalized, lim);
        const auto& ctx = *r.ctx;
        for (const auto& P : ctx.relevant_primes()) {
            RamificationRow row{P, ctx.valuation_of_a(P), ""};
            row.type = ctx.above_p(P) ? "tame-above-p" : to_string(ramification_type(ctx, P));
            r.ramification.push_back(row);
            LocalData ld{local_basis(ctx, P), local_generator(ctx, P), std::nullopt};
            ld.generation_valuation = local_generation_valuation(ctx, P, ld.generator);
            r.local.push_back(std::move(ld));
        }
        r.associated = associated_ideals(ctx);
        r.certificate = criterion_check(ctx);
        if (r.certificate->generator) r.verification = verify_generator(ctx, *r.certificate->generator);
        if (K.is_rational()) {
            Int an = num(ctx.a().x());
            std::vector<Int> qs;
            for (const auto& P : ctx.relevant_primes()) qs.push_back(P.q);
            for (const auto& q : qs) r.dedekind.push_back(dedekind_maximality_oracle(q, p, an));
        }
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

// JSON encoding. Rationals are {"num": "...", "den": "..."} decimal strings.
namespace json_io {

using nlohmann::json;

inline json rat(const Rat& r) { return {{"num", num(r).str()}, {"den", den(r).str()}}; }

inline Rat rat_from(const json& j) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den") || !j["num"].is_string() ||
        !j["den"].is_string())
        throw schema_error("expected a rational {num, den}");
    try {
        Int n(j["num"].get<std::string>()), d(j["den"].get<std::string>());
        if (d <= 0) throw schema_error("rational with non-positive denominator");
        return Rat(n, d);
    } catch (const schema_error&) {
        throw;
    } catch (const std::exception&) {
        throw schema_error("rational with non-integer parts");
    }
}

inline json kelem(const KElem& x) { return {{"x", rat(x.x())}, {"y", rat(x.y())}, {"text", x.str()}}; }

inline KElem kelem_from(const BaseField& K, const json& j) {
    if (!j.is_object() || !j.contains("x") || !j.contains("y")) throw schema_error("expected a base field element");
    return KElem(K, rat_from(j["x"]), rat_from(j["y"]));
}

inline json lelem(const LElem& u) {
    json out = json::array();
    for (const auto& c : u.coords) out.push_back(kelem(c));
    return out;
}

inline LElem lelem_from(const BaseField& K, const json& j) {
    if (!j.is_array()) throw schema_error("expected an array of coordinates");
    LElem u;
    for (const auto& c : j) u.coords.push_back(kelem_from(K, c));
    return u;
}

inline json ideal(const KIdeal& I) {
    json rows = json::array();
    for (const auto& row : I.lattice().hnf_rows()) {
        json r = json::array();
        for (const auto& v : row) r.push_back(v.str());
        rows.push_back(r);
    }
    return {{"denominator", I.lattice().denominator().str()}, {"hnf", rows}, {"text", I.str()}};
}

inline json prime(const PrimeIdeal& P) {
    return {{"q", P.q.str()}, {"pi", kelem(P.pi)}, {"f", P.residue_degree}, {"e", P.ramification}, {"text", P.str()}};
}

inline json form(const QuadForm& f) { return {{"a", f.a.str()}, {"b", f.b.str()}, {"c", f.c.str()}}; }

inline json poly(const fq::Poly& f) {
    json out = json::array();
    for (auto c : f) out.push_back(c);
    return out;
}

inline fq::Poly poly_from(const json& j) {
    if (!j.is_array()) throw schema_error("expected a polynomial coefficient array");
    fq::Poly f;
    for (const auto& c : j) {
        if (!c.is_number_integer()) throw schema_error("polynomial coefficient is not an integer");
        f.push_back(c.get<std::int64_t>());
    }
    return f;
}

inline json witness(const MaximalityWitness& w) {
    return {{"q", w.q.str()}, {"f_mod_q", poly(w.f_mod_q)}, {"g", poly(w.g)}, {"h", poly(w.h)},
            {"F_mod_q", poly(w.F_mod_q)}, {"gcd", poly(w.gcd_poly)}, {"verdict", w.verdict()}};
}

}  // namespace json_io

inline nlohmann::json to_json(const AnalysisReport& r) {
    using namespace json_io;
    json j;
    j["schema_version"] = report_schema_version;
    j["input"] = {{"base", r.field.name()}, {"p", r.p}, {"a", kelem(r.a)}};
    json tam = {{"tame", r.tameness.tame}, {"witness", r.tameness.witness}};
    if (r.tameness.tame) {
        tam["ell"] = r.tameness.ell;
        tam["c"] = kelem(*r.tameness.c);
        tam["normalized"] = kelem(*r.tameness.normalized);
    }
    if (r.tameness.wild_prime) tam["wild_prime"] = prime(*r.tameness.wild_prime);
    j["tameness"] = tam;
    j["verdict"] = r.verdict();
    if (!r.tameness.tame) {
        j["timing"] = {{"analyze_ms", r.elapsed_ms}};
        return j;
    }
    json ram = json::array();
    for (const auto& row : r.ramification)
        ram.push_back({{"prime", prime(row.prime)}, {"valuation", row.valuation}, {"type", row.type}});
    j["ramification"] = ram;

    const auto& ai = *r.associated;
    json assoc = json::array();
    for (unsigned k = 0; k < r.p; ++k) {
        json fac = json::array();
        for (const auto& [P, row] : ai.exponents)
            if (row[k] > 0) fac.push_back({{"prime", P.str()}, {"exponent", row[k]}});
        assoc.push_back({{"j", k}, {"ideal", ideal(ai.b[k])}, {"factorization", fac},
                         {"class_of_inverse", form(r.certificate->classes.classes[k])},
                         {"principal", static_cast<bool>(r.certificate->classes.principal[k])}});
    }
    j["associated_ideals"] = assoc;

    json loc = json::array();
    for (const auto& ld : r.local) {
        json basis = json::array();
        for (const auto& e : ld.basis.basis) basis.push_back(lelem(e));
        json entry = {{"prime", prime(ld.basis.prime)}, {"basis", basis}, {"generator", lelem(ld.generator)},
                      {"generator_text", generator_text(ld.generator)}};
        if (ld.basis.uniformizer) entry["uniformizer"] = kelem(*ld.basis.uniformizer);
        if (!ld.basis.r.empty()) entry["r"] = ld.basis.r;
        entry["generation_valuation"] = ld.generation_valuation ? json(*ld.generation_valuation) : json(nullptr);
        loc.push_back(entry);
    }
    j["local"] = loc;

    const auto& cert = *r.certificate;
    json fr = {{"verdict", to_string(cert.verdict)}, {"transcript", cert.transcript}};
    if (!cert.b.empty()) {
        json b = json::array();
        for (const auto& x : cert.b) b.push_back(kelem(x));
        fr["b"] = b;
    }
    if (!cert.units.empty()) {
        json u = json::array();
        for (const auto& x : cert.units) u.push_back(kelem(x));
        fr["units"] = u;
    }
    if (cert.obstruction_index) {
        fr["obstruction"] = {{"j", *cert.obstruction_index}, {"class", form(*cert.obstruction_class)},
                             {"ideal", ideal(ai.b[*cert.obstruction_index])}};
    }
    if (cert.generator) {
        fr["generator"] = lelem(*cert.generator);
        fr["generator_text"] = generator_text(*cert.generator);
    }
    j["freeness"] = fr;

    if (r.verification) {
        json ev = json::array();
        for (const auto& e : r.verification->primes)
            ev.push_back({{"prime", e.prime.str()},
                          {"valuation", e.valuation ? json(*e.valuation) : json(nullptr)},
                          {"ok", e.ok}});
        j["verification"] = {{"ok", r.verification->ok}, {"method", r.verification->method},
                             {"detail", r.verification->detail}, {"primes", ev}};
    }
    if (!r.dedekind.empty()) {
        json dk = json::array();
        for (const auto& w : r.dedekind) dk.push_back(witness(w));
        j["dedekind"] = dk;
    }
    j["timing"] = {{"analyze_ms", r.elapsed_ms}};
    return j;
}

inline std::string to_text(const AnalysisReport& r) {
    std::string s;
    s += "field      " + r.field.name() + ", p = " + std::to_string(r.p) + ", a = " + r.a.str() + "\n";
    s += "tameness   " + r.tameness.witness + "\n";
    if (!r.tameness.tame) return s + "verdict    wild\n";
    s += "normalized a' = " + r.tameness.normalized->str() + " (ell = " + std::to_string(r.tameness.ell) +
         ", c = " + r.tameness.c->str() + ")\n";
    for (const auto& row : r.ramification)
        s += "prime      " + row.prime.str() + "  v(a') = " + std::to_string(row.valuation) + "  " + row.type + "\n";
    for (unsigned k = 0; k < r.p; ++k)
        s += "b_" + std::to_string(k) + "        " + r.associated->b[k].str() +
             (r.certificate->classes.principal[k] ? "  principal" : "  non-principal, class " +
                                                                    r.certificate->classes.classes[k].str()) +
             "\n";
    s += "verdict    " + r.verdict() + "\n";
    if (r.certificate->generator) s += "generator  " + generator_text(*r.certificate->generator) + "\n";
    if (r.certificate->obstruction_index)
        s += "obstruction at j = " + std::to_string(*r.certificate->obstruction_index) + "\n";
    if (r.verification) s += "verified   " + std::string(r.verification->ok ? "yes" : "NO") + " (" +
                             r.verification->detail + ")\n";
    return s;
}

struct ReportCheck {
    bool ok = false;
    std::vector<std::string> problems;
};

/* Re-derive everything from the echoed input and compare with the stored
 * report; independently re-run verify_generator on the stored generator and
 * recheck the stored Dedekind transcripts.
 */
inline ReportCheck verify_report(const nlohmann::json& j, const Limits& lim = {}) {
    using namespace json_io;
    if (!j.is_object() || !j.contains("schema_version")) throw schema_error("missing schema_version");
    if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != report_schema_version)
        throw schema_error("unsupported schema_version " + j["schema_version"].dump() + " (expected " +
                           std::to_string(report_schema_version) + ")");
    for (const char* key : {"input", "tameness", "verdict"})
        if (!j.contains(key)) throw schema_error(std::string("missing field '") + key + "'");
    const auto& in = j["input"];
    if (!in.contains("base") || !in["base"].is_string() || !in.contains("p") || !in["p"].is_number_unsigned() ||
        !in.contains("a"))
        throw schema_error("malformed input block");
    BaseField K = parse_base(in["base"].get<std::string>());
    unsigned p = in["p"].get<unsigned>();
    KElem a = kelem_from(K, in["a"]);

    ReportCheck out;
    auto fresh = to_json(analyze(K, p, a, lim));
    json stored = j, recomputed = fresh;
    stored.erase("timing");
    recomputed.erase("timing");
    if (stored != recomputed) {
        for (auto it = recomputed.begin(); it != recomputed.end(); ++it)
            if (!stored.contains(it.key()) || stored[it.key()] != it.value())
                out.problems.push_back("field '" + it.key() + "' differs from the recomputed report");
        for (auto it = stored.begin(); it != stored.end(); ++it)
            if (!recomputed.contains(it.key())) out.problems.push_back("unexpected field '" + it.key() + "'");
    }

    if (j.contains("freeness") && j["freeness"].contains("generator")) {
        RadicandContext ctx(K, p, kelem_from(K, j["tameness"]["normalized"]), lim);
        LElem x = lelem_from(K, j["freeness"]["generator"]);
        if (x.size() != p) out.problems.push_back("stored generator has the wrong length");
        else if (!verify_generator(ctx, x).ok) out.problems.push_back("stored generator does not generate O_L");
    }
    if (j.contains("dedekind")) {
        for (const auto& w : j["dedekind"]) {
            MaximalityWitness mw;
            try {
                mw.q = Int(w.at("q").get<std::string>());
            } catch (const std::exception&) {
                throw schema_error("malformed Dedekind witness");
            }
            mw.p = p;
            mw.a = num(kelem_from(K, j["tameness"]["normalized"]).x());
            mw.f_mod_q = poly_from(w.at("f_mod_q"));
            mw.g = poly_from(w.at("g"));
            mw.h = poly_from(w.at("h"));
            mw.F_mod_q = poly_from(w.at("F_mod_q"));
            mw.gcd_poly = poly_from(w.at("gcd"));
            mw.maximal = w.at("verdict") == "maximal-at-q";
            bool good = false;
            try {
                good = recheck(mw);
            } catch (const std::exception&) {
                good = false;
            }
            if (!good) out.problems.push_back("Dedekind transcript at q = " + mw.q.str() + " does not recheck");
        }
    }
    out.ok = out.problems.empty();
    return out;
}

// 64-bit FNV-1a, used to fingerprint generator shapes in sweeps.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace hgm
