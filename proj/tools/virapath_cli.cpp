// Command-line front end: character computation, path enumeration, move
// orbit tracing, and the verification suites, with deterministic
// text/JSON/CSV output.

#include "virapath/characters.hpp"
#include "virapath/particle_moves.hpp"
#include "virapath/suites.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace virapath;
using ordered_json = nlohmann::ordered_json;

constexpr int kPass = 0;
constexpr int kFalsified = 1;
constexpr int kUsage = 2;
constexpr int kResourceCap = 3;

enum class Method { bosonic, fermionic, paths, all };
enum class Format { text, json, csv };

struct RunConfig {
    long long p = 0;
    long long pp = 0;
    long long r = 1;
    long long s = 1;
    std::optional<long long> L;
    ExactRational trunc{0};
    Method method = Method::all;
    Format format = Format::text;
    std::optional<int> parallelism;
    long long l_cap = 64;
};

/// Threads for the acceptance preset: the VIRAPATH_THREADS environment
/// variable wins over --parallelism, which wins over the hardware count.
int effective_threads(const RunConfig& c) {
    if (std::getenv("VIRAPATH_THREADS") != nullptr) return default_thread_count();
    if (c.parallelism) return *c.parallelism;
    return default_thread_count();
}

std::string model_label(const RunConfig& c) {
    return "(" + std::to_string(c.p) + "," + std::to_string(c.pp) + ")";
}

ordered_json series_json(const QSeries& s) { return ordered_json::parse(s.to_json()); }

ordered_json diff_json(const QSeries::Diff& d) {
    ordered_json j;
    j["exponent"] = rational_to_fraction_string(d.exponent);
    j["lhs"] = d.lhs.str();
    j["rhs"] = d.rhs.str();
    return j;
}

std::string diff_text(const QSeries::Diff& d) {
    return "first difference at q^" + rational_to_string(d.exponent) + ": " +
           d.lhs.str() + " vs " + d.rhs.str();
}

/// Sum of the graded path series over all lengths, stopping once the
/// minimum degree has exceeded the bound for two consecutive lengths of
/// each parity. Sets `capped` when l_cap lengths were exhausted first.
QSeries char_path_sum(const ModelParams& m, long long r, const ExactRational& N,
                      long long l_cap, bool& capped) {
    QSeries total = QSeries::zero(TruncBound(N));
    int miss[2] = {0, 0};
    for (long long L = 0; L <= l_cap && (miss[0] < 2 || miss[1] < 2); ++L) {
        const auto base = min_degree(m, L, r);
        if (!base || *base > N) {
            ++miss[L % 2];
            continue;
        }
        miss[L % 2] = 0;
        total += char_paths(m, L, r, N);
    }
    capped = miss[0] < 2 || miss[1] < 2;
    return total;
}

// ---------------------------------------------------------------- char --

int cmd_char(const RunConfig& c) {
    const ModelParams m(c.p, c.pp);
    if (c.trunc < 0) throw std::domain_error("char: truncation must be >= 0");
    if (c.s != 1 && c.method != Method::bosonic)
        throw std::domain_error("char: only the closed-form series supports s != 1");
    const ExactRational& N = c.trunc;
    const bool all = c.method == Method::all;

    std::vector<std::pair<std::string, QSeries>> series;
    bool capped = false;
    if (all || c.method == Method::bosonic)
        series.emplace_back("bosonic", char_bosonic(m, c.r, c.s, N));
    if (all || c.method == Method::fermionic)
        series.emplace_back("fermionic", char_fermionic(m, c.r, N));
    if (all || c.method == Method::paths)
        series.emplace_back("paths", char_path_sum(m, c.r, N, c.l_cap, capped));

    std::optional<QSeries::Diff> diff;
    std::string pair_label;
    if (all)
        for (std::size_t i = 1; i < series.size() && !diff; ++i) {
            diff = QSeries::first_diff(series[0].second, series[i].second, N);
            if (diff) pair_label = series[0].first + " vs " + series[i].first;
        }

    switch (c.format) {
        case Format::text:
            if (!all) {
                std::cout << series[0].second.to_text() << "\n";
            } else {
                for (const auto& [name, s] : series)
                    std::cout << name << ": " << s.to_text() << "\n";
                if (diff)
                    std::cout << "agreement: FAIL (" << pair_label << ") "
                              << diff_text(*diff) << "\n";
                else if (capped)
                    std::cout << "agreement: INCONCLUSIVE (length cap " << c.l_cap
                              << " reached)\n";
                else
                    std::cout << "agreement: PASS up to q^" << rational_to_string(N)
                              << "\n";
            }
            break;
        case Format::json: {
            ordered_json root;
            root["p"] = c.p;
            root["pp"] = c.pp;
            root["r"] = c.r;
            root["s"] = c.s;
            root["trunc"] = rational_to_fraction_string(N);
            root["series"] = ordered_json::object();
            for (const auto& [name, s] : series) root["series"][name] = series_json(s);
            if (all) {
                root["agree"] = !diff && !capped;
                if (diff) root["first_diff"] = diff_json(*diff);
                if (capped) root["l_cap_hit"] = true;
            }
            std::cout << root.dump() << "\n";
            break;
        }
        case Format::csv:
            std::cout << "method,exponent,coefficient\n";
            for (const auto& [name, s] : series)
                for (const auto& [e, coeff] : s.terms())
                    std::cout << name << "," << rational_to_fraction_string(e) << ","
                              << coeff.str() << "\n";
            break;
    }
    if (diff) return kFalsified;
    if (capped) return kResourceCap;
    return kPass;
}

// ----------------------------------------------------------- enumerate --

int cmd_enumerate(const RunConfig& c, const ExactRational& max_degree) {
    const ModelParams m(c.p, c.pp);
    const std::vector<RiggedPath> paths = enumerate_paths(m, *c.L, c.r, max_degree);
    switch (c.format) {
        case Format::text:
            for (const RiggedPath& P : paths)
                std::cout << path_to_text(P)
                          << "  degree=" << rational_to_string(path_degree(m, P)) << "\n";
            break;
        case Format::json: {
            ordered_json rows = ordered_json::array();
            for (const RiggedPath& P : paths) {
                ordered_json row = ordered_json::parse(path_to_json(P));
                row["degree"] = rational_to_fraction_string(path_degree(m, P));
                rows.push_back(std::move(row));
            }
            std::cout << rows.dump() << "\n";
            break;
        }
        case Format::csv:
            std::cout << "r_seq,sigma_seq,degree\n";
            for (const RiggedPath& P : paths) {
                std::string rcell, scell;
                for (auto it = P.r.rbegin(); it != P.r.rend(); ++it)
                    rcell += (rcell.empty() ? "" : " ") + std::to_string(*it);
                for (auto it = P.sigma.rbegin(); it != P.sigma.rend(); ++it)
                    scell += (scell.empty() ? "" : " ") + std::to_string(*it);
                std::cout << rcell << "," << scell << ","
                          << rational_to_fraction_string(path_degree(m, P)) << "\n";
            }
            break;
    }
    return kPass;
}

// -------------------------------------------------------------- verify --

struct CaseVerdict {
    std::string label;
    VerifyResult v;
};

int emit_verdicts(const std::vector<CaseVerdict>& cases, Format format) {
    bool falsified = false, capped = false;
    for (const CaseVerdict& cv : cases) {
        if (cv.v.ok) continue;
        if (cv.v.l_cap_hit) capped = true;
        else falsified = true;
    }
    if (format == Format::json) {
        ordered_json rows = ordered_json::array();
        for (const CaseVerdict& cv : cases) {
            ordered_json row;
            row["case"] = cv.label;
            row["ok"] = cv.v.ok;
            row["first_diff"] = cv.v.diff ? diff_json(*cv.v.diff) : ordered_json();
            row["detail"] = cv.v.detail;
            row["l_cap_hit"] = cv.v.l_cap_hit;
            rows.push_back(std::move(row));
        }
        std::cout << rows.dump() << "\n";
    } else {
        for (const CaseVerdict& cv : cases) {
            if (cv.v.ok) {
                std::cout << cv.label << ": PASS\n";
            } else if (cv.v.l_cap_hit) {
                std::cout << cv.label << ": CAPPED — " << cv.v.detail << "\n";
            } else {
                std::cout << cv.label << ": FAIL";
                if (!cv.v.detail.empty()) std::cout << " — " << cv.v.detail;
                if (cv.v.diff) std::cout << " — " << diff_text(*cv.v.diff);
                std::cout << "\n";
            }
        }
        std::cout << cases.size() << " case" << (cases.size() == 1 ? "" : "s")
                  << " verified: "
                  << (falsified ? "FAILURES PRESENT"
                                : capped ? "INCONCLUSIVE (length cap reached)"
                                         : "all passed")
                  << "\n";
    }
    if (falsified) return kFalsified;
    if (capped) return kResourceCap;
    return kPass;
}

std::vector<long long> sweep(std::optional<long long> chosen, long long lo, long long hi) {
    if (chosen) return {*chosen};
    std::vector<long long> out;
    for (long long v = lo; v <= hi; ++v) out.push_back(v);
    return out;
}

int verify_main_cmd(const RunConfig& c, std::optional<long long> rsel,
                    const std::optional<ExactRational>& trunc) {
    const ModelParams m(c.p, c.pp);
    std::vector<CaseVerdict> cases;
    for (long long r : sweep(rsel, 1, c.p - 1)) {
        const ExactRational N = trunc ? *trunc : conformal_dim(m, r, 1) + 24;
        cases.push_back({"main " + model_label(c) + " r=" + std::to_string(r) +
                             " up to q^" + rational_to_string(N),
                         verify_main_theorem(m, r, N, c.l_cap)});
    }
    return emit_verdicts(cases, c.format);
}

int verify_recurrence_cmd(const RunConfig& c, std::optional<long long> rsel,
                          const std::optional<ExactRational>& trunc, bool path_side) {
    const ModelParams m(c.p, c.pp);
    std::vector<CaseVerdict> cases;
    for (long long r : sweep(rsel, 1, c.p - 1)) {
        const ExactRational N = trunc ? *trunc : conformal_dim(m, r, 1) + 24;
        for (long long L : sweep(c.L, 0, 12)) {
            const std::string label = std::string(path_side ? "path-rec " : "char-rec ") +
                                      model_label(c) + " r=" + std::to_string(r) +
                                      " L=" + std::to_string(L);
            cases.push_back({label, path_side ? verify_path_recurrence(m, r, L, N)
                                              : verify_char_recurrence(m, r, L, N)});
        }
    }
    return emit_verdicts(cases, c.format);
}

int verify_gauss_cmd(const RunConfig& c, std::optional<long long> lsel,
                     std::optional<long long> musel,
                     const std::optional<ExactRational>& trunc) {
    const ExactRational N = trunc ? *trunc : ExactRational(20);
    std::vector<CaseVerdict> cases;
    for (long long l : sweep(lsel, 0, 3))
        for (long long mu : sweep(musel, -3, 5))
            cases.push_back({"gauss l=" + std::to_string(l) + " mu=" + std::to_string(mu),
                             verify_gauss_identity(l, mu, N)});
    return emit_verdicts(cases, c.format);
}

int verify_fk_cmd(const RunConfig& c, std::optional<long long> ksel,
                  std::optional<long long> musel,
                  const std::optional<ExactRational>& trunc) {
    const ExactRational N = trunc ? *trunc : ExactRational(16);
    std::vector<CaseVerdict> cases;
    for (long long k : sweep(ksel, 1, 3))
        for (long long mu : sweep(musel, -3, 4))
            cases.push_back({"fk k=" + std::to_string(k) + " mu=" + std::to_string(mu),
                             verify_fk_identity(k, mu, N)});
    return emit_verdicts(cases, c.format);
}

int emit_property_run(const CriterionResult& res, const std::string& name, Format format) {
    if (format == Format::json) {
        ordered_json root;
        root["suite"] = name;
        root["ok"] = res.pass;
        root["instances"] = res.instances;
        root["failure_total"] = res.failure_total;
        root["failures"] = res.failures;
        std::cout << root.dump() << "\n";
    } else {
        std::cout << name << ": checked " << res.instances << " instances\n";
        for (const std::string& f : res.failures) std::cout << "    " << f << "\n";
        std::cout << name << ": " << (res.pass ? "PASS" : "FAIL (" +
                                      std::to_string(res.failure_total) + " failed)")
                  << "\n";
    }
    return res.pass ? kPass : kFalsified;
}

// --------------------------------------------------------------- orbit --

std::string particle_annotation(const ModelParams& m, const RiggedPath& P) {
    std::ostringstream os;
    try {
        const std::vector<Block> blocks = find_blocks(m, P);
        const Partition lam = rigging(m, P);
        os << "m(P)=" << lam.size() << "  lambda=(";
        for (std::size_t i = 0; i < lam.size(); ++i) os << (i ? "," : "") << lam[i];
        os << ")";
        if (!blocks.empty()) {
            os << "  blocks=";
            for (std::size_t i = 0; i < blocks.size(); ++i)
                os << (i ? "," : "") << "[" << blocks[i].min << ".." << blocks[i].max
                   << "]x" << blocks[i].particles;
        }
    } catch (const std::exception& e) {
        os << "particles undefined — " << e.what();
    }
    return os.str();
}

std::vector<std::pair<long long, int>> parse_move_word(const std::string& word) {
    std::vector<std::pair<long long, int>> out;
    std::stringstream ss(word);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw std::invalid_argument("orbit: empty move token");
        int dir = +1;
        std::size_t pos = 0;
        if (tok[0] == '+' || tok[0] == '-') {
            dir = tok[0] == '-' ? -1 : +1;
            pos = 1;
        }
        std::size_t used = 0;
        long long j = 0;
        try {
            j = std::stoll(tok.substr(pos), &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("orbit: bad move token '" + tok + "'");
        }
        if (used != tok.size() - pos || j < 1)
            throw std::invalid_argument("orbit: bad move token '" + tok + "'");
        out.emplace_back(j, dir);
    }
    return out;
}

int cmd_orbit(const RunConfig& c, const std::string& path_str, const std::string& word) {
    const ModelParams m(c.p, c.pp);
    RiggedPath P = path_from_text(path_str);
    const AdmissibilityReport adm = path_admissible(m, P);
    if (!adm.ok) {
        std::cerr << "error: path not admissible at " << model_label(c) << ": "
                  << adm.violation << "\n";
        return kUsage;
    }
    const auto moves = parse_move_word(word);

    if (c.format == Format::json) {
        ordered_json root;
        root["p"] = c.p;
        root["pp"] = c.pp;
        ordered_json start = ordered_json::parse(path_to_json(P));
        start["degree"] = rational_to_fraction_string(path_degree(m, P));
        root["start"] = std::move(start);
        try {
            const Partition lam = rigging(m, P);
            root["m"] = lam.size();
            root["lambda"] = lam;
            ordered_json bl = ordered_json::array();
            for (const Block& b : find_blocks(m, P)) {
                ordered_json one;
                one["min"] = b.min;
                one["max"] = b.max;
                one["particles"] = b.particles;
                bl.push_back(std::move(one));
            }
            root["blocks"] = std::move(bl);
        } catch (const std::exception& e) {
            root["particles_undefined"] = e.what();
        }
        ordered_json trace = ordered_json::array();
        for (std::size_t k = 0; k < moves.size(); ++k) {
            const auto [j, dir] = moves[k];
            ordered_json step;
            step["move"] = (dir > 0 ? "+" : "-") + std::to_string(j);
            std::optional<RiggedPath> next;
            try {
                next = apply_move(m, P, j, dir);
            } catch (const std::exception& e) {
                step["defined"] = false;
                step["error"] = e.what();
                trace.push_back(std::move(step));
                break;
            }
            if (!next) {
                step["defined"] = false;
                trace.push_back(std::move(step));
                break;
            }
            P = *next;
            step["defined"] = true;
            ordered_json pj = ordered_json::parse(path_to_json(P));
            pj["degree"] = rational_to_fraction_string(path_degree(m, P));
            step["path"] = std::move(pj);
            trace.push_back(std::move(step));
        }
        root["trace"] = std::move(trace);
        std::cout << root.dump() << "\n";
        return kPass;
    }

    std::cout << "start: " << path_to_text(P)
              << "  degree=" << rational_to_string(path_degree(m, P)) << "\n"
              << "  " << particle_annotation(m, P) << "\n";
    for (std::size_t k = 0; k < moves.size(); ++k) {
        const auto [j, dir] = moves[k];
        const std::string head = "move " + std::to_string(k + 1) + " (" +
                                 (dir > 0 ? "+" : "-") + std::to_string(j) + ")";
        std::optional<RiggedPath> next;
        try {
            next = apply_move(m, P, j, dir);
        } catch (const std::exception& e) {
            std::cout << head << ": UNDEFINED — " << e.what() << "\n";
            break;
        }
        if (!next) {
            std::cout << "move " << k + 1 << ": UNDEFINED\n";
            break;
        }
        P = *next;
        std::cout << head << ": " << path_to_text(P)
                  << "  degree=" << rational_to_string(path_degree(m, P)) << "\n"
                  << "  " << particle_annotation(m, P) << "\n";
    }
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact rigged-path enumeration and Virasoro character toolkit"};
    app.require_subcommand(0, 1);

    RunConfig cfg;
    bool seed_suite = false;
    std::string trunc_str, maxdeg_str, path_str, apply_str;
    std::optional<long long> rsel, lsel, ksel, musel;

    const std::map<std::string, Method> method_names{{"bosonic", Method::bosonic},
                                                     {"fermionic", Method::fermionic},
                                                     {"paths", Method::paths},
                                                     {"all", Method::all}};
    const std::map<std::string, Format> format_names{
        {"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};

    app.add_flag("--seed-suite", seed_suite,
                 "run the full acceptance matrix and exit");
    app.add_option("--parallelism", cfg.parallelism,
                   "worker threads for the acceptance matrix "
                   "(VIRAPATH_THREADS overrides)");

    auto add_model = [&](CLI::App* sub, bool required) {
        auto* po = sub->add_option("--p", cfg.p, "smaller modulus p");
        auto* ppo = sub->add_option("--pp", cfg.pp, "larger modulus p'");
        if (required) {
            po->required();
            ppo->required();
        }
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "output format")
            ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
    };

    CLI::App* c_char = app.add_subcommand("char", "print character series");
    add_model(c_char, true);
    c_char->add_option("--r", cfg.r, "Kac label r");
    c_char->add_option("--s", cfg.s, "Kac label s (closed form only)");
    c_char->add_option("--trunc", trunc_str, "truncation exponent, integer or num/den")
        ->required();
    c_char->add_option("--method", cfg.method, "series construction")
        ->transform(CLI::CheckedTransformer(method_names, CLI::ignore_case));
    c_char->add_option("--l-cap", cfg.l_cap, "length cap for the path sum");
    add_format(c_char);

    CLI::App* c_enum = app.add_subcommand("enumerate", "list admissible rigged paths");
    add_model(c_enum, true);
    c_enum->add_option("--r", cfg.r, "top height r_L");
    c_enum->add_option("--L", cfg.L, "path length")->required();
    c_enum->add_option("--max-degree", maxdeg_str, "degree ceiling, integer or num/den")
        ->required();
    add_format(c_enum);

    CLI::App* c_verify = app.add_subcommand("verify", "run verification suites");
    c_verify->require_subcommand(1);
    CLI::App* v_main = c_verify->add_subcommand("main", "path sums vs closed characters");
    CLI::App* v_crec = c_verify->add_subcommand("char-rec", "partial-character recurrence");
    CLI::App* v_prec = c_verify->add_subcommand("path-rec", "path-series recurrence");
    CLI::App* v_gauss = c_verify->add_subcommand("gauss", "binomial partition identity");
    CLI::App* v_fk = c_verify->add_subcommand("fk", "multi-sum telescoping identity");
    CLI::App* v_moves = c_verify->add_subcommand("moves", "particle move laws");
    CLI::App* v_bij = c_verify->add_subcommand("bijection", "particle decomposition");
    for (CLI::App* sub : {v_main, v_crec, v_prec}) {
        add_model(sub, true);
        sub->add_option("--r", rsel, "restrict to one Kac label r");
        sub->add_option("--trunc", trunc_str, "truncation exponent (default: Delta+24)");
        add_format(sub);
    }
    v_main->add_option("--l-cap", cfg.l_cap, "length cap for the path sum");
    for (CLI::App* sub : {v_crec, v_prec})
        sub->add_option("--L", cfg.L, "restrict to one length (default: 0..12)");
    for (CLI::App* sub : {v_gauss, v_fk}) {
        sub->add_option("--mu", musel, "shift parameter");
        sub->add_option("--trunc", trunc_str, "truncation exponent");
        add_format(sub);
    }
    v_gauss->add_option("--l", ksel, "binomial order (default: 0..3)");
    v_fk->add_option("--k", ksel, "sum depth (default: 1..3)");
    for (CLI::App* sub : {v_moves, v_bij}) {
        add_model(sub, true);
        sub->add_option("--r", rsel, "restrict to one Kac label r");
        sub->add_option("--L", cfg.L, "restrict to one length (default: 0..6)");
        sub->add_option("--max-degree", maxdeg_str,
                        "degree ceiling (default: Delta+10 per r)");
        add_format(sub);
    }

    CLI::App* c_orbit = app.add_subcommand("orbit", "trace particle moves on a path");
    add_model(c_orbit, true);
    c_orbit->add_option("--path", path_str, "path as r_L,...,r_0;s_{L-1},...,s_0")
        ->required();
    c_orbit->add_option("--apply", apply_str, "move word, e.g. +1,+1,-2");
    add_format(c_orbit);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        std::optional<ExactRational> trunc;
        if (!trunc_str.empty()) trunc = parse_rational(trunc_str);
        std::optional<ExactRational> maxdeg;
        if (!maxdeg_str.empty()) maxdeg = parse_rational(maxdeg_str);

        if (seed_suite) {
            const bool ok = run_acceptance(std::cout, effective_threads(cfg));
            return ok ? kPass : kFalsified;
        }
        if (cfg.format == Format::csv && !c_char->parsed() && !c_enum->parsed())
            throw std::invalid_argument(
                "csv output is only available for char and enumerate");
        if (c_char->parsed()) {
            cfg.trunc = *trunc;
            return cmd_char(cfg);
        }
        if (c_enum->parsed()) return cmd_enumerate(cfg, *maxdeg);
        if (v_main->parsed()) return verify_main_cmd(cfg, rsel, trunc);
        if (v_crec->parsed()) return verify_recurrence_cmd(cfg, rsel, trunc, false);
        if (v_prec->parsed()) return verify_recurrence_cmd(cfg, rsel, trunc, true);
        if (v_gauss->parsed()) return verify_gauss_cmd(cfg, ksel, musel, trunc);
        if (v_fk->parsed()) return verify_fk_cmd(cfg, ksel, musel, trunc);
        if (v_moves->parsed())
            return emit_property_run(
                move_laws_suite(ModelParams(cfg.p, cfg.pp), rsel, cfg.L, maxdeg),
                "moves", cfg.format);
        if (v_bij->parsed())
            return emit_property_run(
                bijection_suite(ModelParams(cfg.p, cfg.pp), rsel, cfg.L, maxdeg),
                "bijection", cfg.format);
        if (c_orbit->parsed()) return cmd_orbit(cfg, path_str, apply_str);

        std::cout << app.help();
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFalsified;
    }
}
