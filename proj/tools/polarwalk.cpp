// Command-line surface: analysis, approximation, primitives, generator
// builds, verification, emission, and the correlation checks. Every
// subcommand prints one JSON report; exit codes are 0 (ran), 2 (usage),
// 3 (resource cap), 4 (file I/O).

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "polarwalk/config.hpp"
#include "polarwalk/correlation.hpp"
#include "polarwalk/errors.hpp"
#include "polarwalk/f2poly.hpp"
#include "polarwalk/family.hpp"
#include "polarwalk/fracprg.hpp"
#include "polarwalk/generators.hpp"
#include "polarwalk/io.hpp"
#include "polarwalk/seeding.hpp"
#include "polarwalk/spectral.hpp"
#include "polarwalk/taylor.hpp"
#include "polarwalk/walk.hpp"

namespace {

using namespace polarwalk;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;
constexpr int kExitIo = 4;

struct GlobalOptions {
    std::string seed_hex = "0";
    std::string out_path;
    Caps caps = Caps::from_env();
    Constants constants;
    std::uint64_t master() const { return parse_seed_hex(seed_hex); }
};

void write_output(const GlobalOptions& global, const json& payload) {
    const std::string text = payload.dump(2) + "\n";
    if (global.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(global.out_path);
    if (!out) throw IoError("cannot open output file '" + global.out_path + "'");
    out << text;
}

json report_json(const ExperimentReport& report) { return report.to_json(true); }

json metrics_json(const LevelMetrics& metrics) {
    char argmax_hex[16];
    std::snprintf(argmax_hex, sizeof(argmax_hex), "%x", metrics.argmax);
    return json{{"k", metrics.k},
                {"l1", metrics.l1},
                {"mk", metrics.mk},
                {"unsigned_sum", metrics.unsigned_sum},
                {"argmax_hex", argmax_hex},
                {"mode", metrics.exact ? "exact" : "sampled"}};
}

// "kwise:n=4,t=2" | "smallbias:n=8,delta=0.0625" | "raw:n=8" |
// "prg:mode=f2,n=8,d=2,eps=0.3" | "prg:mode=levelk,n=8,k=3,b=1,eps=0.25"
std::unique_ptr<SeededGenerator> parse_generator_descriptor(const std::string& descriptor,
                                                            const GlobalOptions& global) {
    const std::size_t colon = descriptor.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("generator descriptor must be '<kind>:<args>'");
    const std::string kind = descriptor.substr(0, colon);
    std::map<std::string, std::string> kv;
    std::string body = descriptor.substr(colon + 1);
    std::size_t pos = 0;
    while (pos < body.size()) {
        std::size_t comma = body.find(',', pos);
        if (comma == std::string::npos) comma = body.size();
        const std::string item = body.substr(pos, comma - pos);
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad descriptor item '" + item + "'");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
        pos = comma + 1;
    }
    auto get_int = [&](const std::string& key) {
        if (!kv.count(key)) throw std::invalid_argument("descriptor missing '" + key + "'");
        return std::stoi(kv.at(key));
    };
    auto get_double = [&](const std::string& key) {
        if (!kv.count(key)) throw std::invalid_argument("descriptor missing '" + key + "'");
        return std::stod(kv.at(key));
    };
    if (kind == "kwise") return kwise_generator(get_int("n"), get_int("t"), global.caps);
    if (kind == "smallbias")
        return smallbias_generator(get_int("n"), get_double("delta"), global.caps);
    if (kind == "raw") return raw_seed_generator(get_int("n"));
    if (kind == "prg") {
        const std::string mode = kv.count("mode") ? kv.at("mode") : "";
        if (mode == "levelk")
            return std::make_unique<ComposedPRG>(build_prg_levelk(
                get_int("n"), get_int("k"), get_double("b"), get_double("eps"), global.constants,
                global.caps));
        if (mode == "uptok")
            return std::make_unique<ComposedPRG>(build_prg_uptok(
                get_int("n"), get_int("k"), get_double("b"), get_double("eps"), global.constants,
                global.caps));
        if (mode == "f2")
            return std::make_unique<ComposedPRG>(build_prg_f2(
                get_int("n"), get_int("d"), get_double("eps"), global.constants, global.caps));
        throw std::invalid_argument("prg descriptor needs mode=levelk|uptok|f2");
    }
    throw std::invalid_argument("unknown generator kind '" + kind + "'");
}

json ledger_json(const WalkLedger& ledger) {
    return json{{"steps", ledger.steps},
                {"seed_len", ledger.seed_len},
                {"target_eps", ledger.target_eps},
                {"per_step_eps", ledger.per_step_eps},
                {"step_error_total", ledger.step_error_total},
                {"polarization_residual", ledger.polarization_residual},
                {"inner_c", ledger.inner_c},
                {"inner_p", ledger.inner_p},
                {"level_k", ledger.level_k},
                {"configured_b", ledger.configured_b},
                {"analytic_b", ledger.analytic_b},
                {"admissible_range", ledger.admissible_range},
                {"step_constant", ledger.step_constant}};
}

ComposedPRG build_prg_from_flags(const std::string& mode, int n, int k, double b, int d, double eps,
                                 const GlobalOptions& global) {
    if (mode == "levelk") return build_prg_levelk(n, k, b, eps, global.constants, global.caps);
    if (mode == "uptok") return build_prg_uptok(n, k, b, eps, global.constants, global.caps);
    if (mode == "f2") return build_prg_f2(n, d, eps, global.constants, global.caps);
    throw std::invalid_argument("mode must be levelk, uptok, or f2");
}

FractionalPRG build_fprg_from_flags(const std::string& kind, int n, int k, double b, double eps,
                                    const GlobalOptions& global) {
    if (kind == "mk") return build_fracprg_mk(n, k, b, eps, global.caps, global.constants);
    if (kind == "l1") return build_fracprg_l1(n, k, b, eps, global.caps, global.constants);
    throw std::invalid_argument("kind must be mk or l1");
}

double measure_b_from_family(const FunctionFamily& family, int k, const GlobalOptions& global,
                             std::string* provenance) {
    ClassMetricsOptions options;
    options.mode = ClosureMode::restriction_closure;
    options.caps = global.caps;
    options.sample_seed = global.master();
    const LevelMetrics metrics = class_metrics(family, k, options);
    *provenance = std::string("measured:") + family.descriptor() +
                  (metrics.exact ? " (exact closure)" : " (sampled closure, lower bound)");
    return std::max(1.0, std::pow(metrics.mk, 1.0 / k));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polarizing-walk generator toolkit"};
    app.set_config("--config");
    app.fallthrough();  // global flags may follow the subcommand
    GlobalOptions global;
    app.add_option("--seed-hex", global.seed_hex, "master seed (hex)")->capture_default_str();
    app.add_option("--out", global.out_path, "write the JSON report here instead of stdout");
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (default: hardware)");
    app.add_option("--max-n", global.caps.max_n, "exhaustive-table cap");
    app.add_option("--max-seed-bits", global.caps.max_seed_bits, "exact seed-enumeration cap");
    app.add_option("--c-steps", global.constants.walk_step_constant, "walk step-count constant");
    app.add_option("--budget-split", global.constants.budget_split, "error split constant");
    app.add_option("--delta-const", global.constants.per_step_error_constant,
                   "per-step error constant");
    app.add_option("--level-const", global.constants.f2_level_constant, "level recipe constant");
    app.add_option("--base-const", global.constants.f2_base_constant, "base recipe constant");
    app.require_subcommand(1);

    // ---- analyze ----------------------------------------------------------
    auto* analyze = app.add_subcommand("analyze", "level metrics of one function");
    std::string analyze_fn;
    int analyze_k = -1;
    analyze->add_option("--fn", analyze_fn, "function file (truth table or polynomial)")->required();
    analyze->add_option("--k", analyze_k, "single level (default: all)");

    // ---- approx ------------------------------------------------------------
    auto* approx = app.add_subcommand("approx", "uniform low-degree approximation checks");
    std::string approx_mode = "lp";
    std::string approx_family;
    int approx_k = 2;
    double approx_c = 0.25;
    double approx_eps = 0.1;
    double approx_tol = 1e-3;
    approx->add_option("--mode", approx_mode, "lp | taylor | cheby | ck-search")
        ->check(CLI::IsMember({"lp", "taylor", "cheby", "ck-search"}));
    approx->add_option("--family", approx_family, "family descriptor")->required();
    approx->add_option("--k", approx_k, "degree bound (approximants have degree < k)");
    approx->add_option("--c", approx_c, "cube radius");
    approx->add_option("--eps", approx_eps, "target error for ck-search");
    approx->add_option("--tol", approx_tol, "search tolerance");

    // ---- primitives ---------------------------------------------------------
    auto* primitives = app.add_subcommand("primitives", "seeded sign primitives");
    std::string prim_kind = "kwise";
    int prim_n = 8;
    int prim_t = 2;
    double prim_delta = 0.0625;
    bool prim_audit = false;
    int prim_max_set = 0;
    std::int64_t prim_samples = 0;
    primitives->add_option("--kind", prim_kind, "kwise | smallbias")
        ->check(CLI::IsMember({"kwise", "smallbias"}));
    primitives->add_option("--n", prim_n, "outputs")->required();
    primitives->add_option("--t", prim_t, "independence degree");
    primitives->add_option("--delta", prim_delta, "parity bias target");
    primitives->add_flag("--audit", prim_audit, "run the parity audit");
    primitives->add_option("--max-set-size", prim_max_set, "audit set size (default t or n)");
    primitives->add_option("--samples", prim_samples, "sample the audit instead of enumerating");

    // ---- fprg / verify-fprg --------------------------------------------------
    auto* fprg_cmd = app.add_subcommand("fprg", "build a fractional generator");
    std::string fprg_kind = "mk";
    int fprg_n = 8, fprg_k = 3;
    double fprg_b = 1.0, fprg_eps = 0.1;
    fprg_cmd->add_option("--kind", fprg_kind, "mk | l1")->check(CLI::IsMember({"mk", "l1"}));
    fprg_cmd->add_option("--n", fprg_n)->required();
    fprg_cmd->add_option("--k", fprg_k)->required();
    fprg_cmd->add_option("--b", fprg_b);
    fprg_cmd->add_option("--eps", fprg_eps)->required();

    auto* verify_fprg = app.add_subcommand("verify-fprg", "fooling error of a fractional generator");
    std::string vf_kind = "mk", vf_family;
    int vf_n = 8, vf_k = 3;
    double vf_b = 1.0, vf_eps = 0.1;
    bool vf_exact = false;
    std::int64_t vf_samples = 0;
    bool vf_measure_b = false;
    verify_fprg->add_option("--kind", vf_kind)->check(CLI::IsMember({"mk", "l1"}));
    verify_fprg->add_option("--n", vf_n)->required();
    verify_fprg->add_option("--k", vf_k)->required();
    verify_fprg->add_option("--b", vf_b);
    verify_fprg->add_option("--eps", vf_eps)->required();
    verify_fprg->add_option("--family", vf_family)->required();
    verify_fprg->add_flag("--exact", vf_exact, "full seed enumeration");
    verify_fprg->add_option("--samples", vf_samples, "sampled verification");
    verify_fprg->add_flag("--b-from-family", vf_measure_b,
                          "measure b from the family's closure metrics");

    // ---- prg / verify-prg ------------------------------------------------------
    auto* prg_cmd = app.add_subcommand("prg", "build a composed generator");
    std::string prg_mode = "levelk";
    int prg_n = 8, prg_k = 3, prg_d = 2;
    double prg_b = 1.0, prg_eps = 0.25;
    prg_cmd->add_option("--mode", prg_mode)->check(CLI::IsMember({"levelk", "uptok", "f2"}));
    prg_cmd->add_option("--n", prg_n)->required();
    prg_cmd->add_option("--k", prg_k);
    prg_cmd->add_option("--b", prg_b);
    prg_cmd->add_option("--d", prg_d);
    prg_cmd->add_option("--eps", prg_eps)->required();

    auto* verify_prg = app.add_subcommand("verify-prg", "fooling error of a composed generator");
    std::string vp_mode = "levelk", vp_family;
    int vp_n = 8, vp_k = 3, vp_d = 2;
    double vp_b = 1.0, vp_eps = 0.25;
    bool vp_exact = false;
    std::int64_t vp_samples = 0;
    verify_prg->add_option("--mode", vp_mode)->check(CLI::IsMember({"levelk", "uptok", "f2"}));
    verify_prg->add_option("--n", vp_n)->required();
    verify_prg->add_option("--k", vp_k);
    verify_prg->add_option("--b", vp_b);
    verify_prg->add_option("--d", vp_d);
    verify_prg->add_option("--eps", vp_eps)->required();
    verify_prg->add_option("--family", vp_family)->required();
    verify_prg->add_flag("--exact", vp_exact);
    verify_prg->add_option("--samples", vp_samples);

    // ---- emit ---------------------------------------------------------------
    auto* emit = app.add_subcommand("emit", "stream generator outputs as 0/1 lines");
    std::string emit_gen;
    std::int64_t emit_count = 0;
    bool emit_raw = false;
    emit->add_option("--gen", emit_gen, "generator descriptor")->required();
    emit->add_option("--count", emit_count, "number of output vectors")->required();
    emit->add_flag("--raw-seeds", emit_raw,
                   "use the counter itself as the seed (hand-checkable); default derives "
                   "per-vector seeds from the master seed");

    // ---- corr ---------------------------------------------------------------
    auto* corr = app.add_subcommand("corr", "covariance harness checks");
    std::string corr_check = "fact62";
    int corr_n = 4, corr_k = 2, corr_count = 50;
    std::string corr_fn;
    corr->add_option("--check", corr_check, "fact62 | fact63 | fact64 | lemma61")
        ->check(CLI::IsMember({"fact62", "fact63", "fact64", "lemma61"}));
    corr->add_option("--n", corr_n)->required();
    corr->add_option("--k", corr_k);
    corr->add_option("--count", corr_count, "random functions to draw");
    corr->add_option("--fn", corr_fn, "explicit function file");

    // ---- prop51 ----------------------------------------------------------------
    auto* prop51 = app.add_subcommand("prop51", "level-mass bound over a polynomial family");
    int p51_n = 8, p51_d = 2, p51_k = 2;
    std::int64_t p51_sample = 0, p51_budget = 1 << 16;
    prop51->add_option("--n", p51_n)->required();
    prop51->add_option("--d", p51_d)->required();
    prop51->add_option("--k", p51_k)->required();
    prop51->add_option("--sample", p51_sample, "sampled family size");
    prop51->add_option("--budget", p51_budget, "enumeration budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    if (threads > 0) {
        const std::string value = std::to_string(threads);
        setenv("POLARWALK_THREADS", value.c_str(), 1);
    }

    const auto started = std::chrono::steady_clock::now();
    auto elapsed_ms = [&started]() {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    };

    try {
        if (*analyze) {
            const FunctionInput input = parse_function_input(analyze_fn, global.caps);
            const TruthTable table = input_truth_table(input, global.caps);
            const FourierExpansion fe = wht_forward(table, global.caps);
            json payload;
            payload["name"] = "analyze";
            payload["config"] = {{"fn", analyze_fn}, {"n", table.n}, {"k", analyze_k}};
            if (analyze_k >= 0) {
                payload["metrics"] = metrics_json(level_abs_sum(fe, analyze_k, global.caps));
            } else {
                payload["metrics"] = json::array();
                for (const LevelMetrics& metrics : all_level_metrics(fe, global.caps))
                    payload["metrics"].push_back(metrics_json(metrics));
            }
            payload["wall_ms"] = elapsed_ms();
            write_output(global, payload);
            return kExitOk;
        }

        if (*approx) {
            const FunctionFamily family = parse_family_descriptor(approx_family, global.caps);
            json payload;
            payload["name"] = "approx";
            payload["config"] = {{"mode", approx_mode}, {"family", approx_family},
                                 {"k", approx_k},       {"c", approx_c},
                                 {"eps", approx_eps},   {"tol", approx_tol}};
            if (approx_mode == "lp") {
                double worst = 0.0;
                std::size_t worst_member = 0;
                for (std::size_t i = 0; i < family.size(); ++i) {
                    const double eps =
                        best_lowdeg_approx(family.member_expansion(i, global.caps), approx_k,
                                           approx_c, global.caps)
                            .eps_lp;
                    if (eps > worst) {
                        worst = eps;
                        worst_member = i;
                    }
                }
                ClassMetricsOptions metrics_options;
                metrics_options.mode = ClosureMode::restriction_closure;
                metrics_options.caps = global.caps;
                metrics_options.sample_seed = global.master();
                const LevelMetrics mk = class_metrics(family, approx_k, metrics_options);
                payload["result"] = {{"eps_lp", worst},
                                     {"worst_member", worst_member},
                                     {"mk_value", mk.mk},
                                     {"mk_exact", mk.exact},
                                     {"taylor_bound",
                                      std::pow(approx_c / (1.0 - approx_c), approx_k) * mk.mk},
                                     {"cheby_lower", std::pow(approx_c / 2.0, approx_k) * mk.mk}};
            } else if (approx_mode == "taylor") {
                ClassMetricsOptions metrics_options;
                metrics_options.mode = ClosureMode::restriction_closure;
                metrics_options.caps = global.caps;
                metrics_options.sample_seed = global.master();
                const LevelMetrics mk = class_metrics(family, approx_k, metrics_options);
                ExperimentReport worst;
                double worst_margin = -1e300;
                for (std::size_t i = 0; i < family.size(); ++i) {
                    ExperimentReport report = taylor_tail_check(
                        family.member_expansion(i, global.caps), approx_k, approx_c, mk.mk,
                        ProbeOptions{}, global.caps);
                    const double margin = report.quantities["lhs"].get<double>() -
                                          report.quantities["rhs"].get<double>();
                    if (margin > worst_margin) {
                        worst_margin = margin;
                        worst = std::move(report);
                    }
                }
                worst.wall_ms = elapsed_ms();
                payload["result"] = report_json(worst);
            } else if (approx_mode == "cheby") {
                ExperimentReport report = cheby_lower_check(family, approx_k, approx_c, global.caps);
                report.wall_ms = elapsed_ms();
                payload["result"] = report_json(report);
            } else {
                payload["result"] = {
                    {"c_k", c_k_search(family, approx_k, approx_eps, approx_tol, global.caps)}};
            }
            payload["wall_ms"] = elapsed_ms();
            write_output(global, payload);
            return kExitOk;
        }

        if (*primitives) {
            std::unique_ptr<SeededGenerator> gen =
                prim_kind == "kwise" ? kwise_generator(prim_n, prim_t, global.caps)
                                     : smallbias_generator(prim_n, prim_delta, global.caps);
            json payload;
            payload["name"] = "primitives";
            payload["config"] = {{"kind", prim_kind}, {"n", prim_n},
                                 {"t", prim_t},       {"delta", prim_delta}};
            payload["generator"] = {{"kind", gen->kind()}, {"seed_len", gen->seed_len()}};
            if (prim_kind == "smallbias")
                payload["generator"]["seed_regime"] =
                    "powering construction: 2*ceil(log2(n/delta)) bits, a log-n regime rather "
                    "than the log-log-n optimum";
            if (prim_audit) {
                BiasAuditOptions audit_options;
                if (prim_samples > 0) {
                    audit_options.exact = false;
                    audit_options.samples = prim_samples;
                    audit_options.seed = global.master();
                }
                const int set_size =
                    prim_max_set > 0 ? prim_max_set : (prim_kind == "kwise" ? prim_t : prim_n);
                const BiasAuditResult audit = bias_audit(*gen, set_size, audit_options, global.caps);
                payload["audit"] = {{"max_bias", audit.max_bias},
                                    {"max_numerator", audit.max_numerator},
                                    {"denominator", audit.denominator},
                                    {"witness_hex", audit.witness},
                                    {"exact", audit.exact},
                                    {"sets_checked", audit.sets_checked}};
            }
            payload["wall_ms"] = elapsed_ms();
            write_output(global, payload);
            return kExitOk;
        }

        if (*fprg_cmd) {
            const FractionalPRG fprg =
                build_fprg_from_flags(fprg_kind, fprg_n, fprg_k, fprg_b, fprg_eps, global);
            json payload;
            payload["name"] = "fprg";
            payload["config"] = {{"kind", fprg_kind}, {"n", fprg_n}, {"k", fprg_k},
                                 {"b", fprg_b},       {"eps", fprg_eps}};
            payload["generator"] = {{"base", fprg.base->kind()},
                                    {"c", fprg.c},
                                    {"noticeability", fprg.noticeability},
                                    {"seed_len", fprg.seed_len()},
                                    {"eps_target", fprg.eps_target},
                                    {"tail_budget",
                                     std::pow(fprg.c / (1.0 - fprg.c) * fprg.b, fprg.k)}};
            payload["wall_ms"] = elapsed_ms();
            write_output(global, payload);
            return kExitOk;
        }

        if (*verify_fprg) {
            const FunctionFamily family = parse_family_descriptor(vf_family, global.caps);
            double b = vf_b;
            std::string provenance = "analytic";
            if (vf_measure_b) b = measure_b_from_family(family, vf_k, global, &provenance);
            FractionalPRG fprg = build_fprg_from_flags(vf_kind, vf_n, vf_k, b, vf_eps, global);
            fprg.b_provenance = provenance;
            FoolingOptions options;
            if (!vf_exact) {
                options.exact = false;
                options.samples = vf_samples > 0 ? vf_samples : (1 << 16);
                options.seed = global.master();
            }
            ExperimentReport report = fooling_error(fprg, family, options, global.caps);
            report.wall_ms = elapsed_ms();
            write_output(global, report_json(report));
            return kExitOk;
        }

        if (*prg_cmd) {
            const ComposedPRG prg =
                build_prg_from_flags(prg_mode, prg_n, prg_k, prg_b, prg_d, prg_eps, global);
            json payload;
            payload["name"] = "prg";
            payload["config"] = {{"mode", prg_mode}, {"n", prg_n}, {"k", prg_k},
                                 {"b", prg_b},       {"d", prg_d}, {"eps", prg_eps}};
            payload["generator"] = {{"kind", prg.kind()}, {"seed_len", prg.seed_len()}};
            payload["ledger"] = ledger_json(prg.ledger());
            payload["wall_ms"] = elapsed_ms();
            write_output(global, payload);
            return kExitOk;
        }

        if (*verify_prg) {
            const ComposedPRG prg =
                build_prg_from_flags(vp_mode, vp_n, vp_k, vp_b, vp_d, vp_eps, global);
            const FunctionFamily family = parse_family_descriptor(vp_family, global.caps);
            PrgFoolingOptions options;
            if (!vp_exact) {
                options.exact = false;
                options.samples = vp_samples > 0 ? vp_samples : 1000000;
                options.seed = global.master();
            }
            ExperimentReport report =
                prg_fooling_error(prg, vp_eps, family, options, global.caps);
            report.config["ledger"] = ledger_json(prg.ledger());
            report.wall_ms = elapsed_ms();
            write_output(global, report_json(report));
            return kExitOk;
        }

        if (*emit) {
            if (emit_count <= 0) throw std::invalid_argument("count must be positive");
            const std::unique_ptr<SeededGenerator> gen =
                parse_generator_descriptor(emit_gen, global);
            std::ostream* out = &std::cout;
            std::ofstream file;
            if (!global.out_path.empty()) {
                file.open(global.out_path);
                if (!file) throw IoError("cannot open output file '" + global.out_path + "'");
                out = &file;
            }
            std::vector<std::int8_t> signs(static_cast<std::size_t>(gen->n()));
            std::string line(static_cast<std::size_t>(gen->n()), '0');
            const bool derive = !emit_raw;
            for (std::int64_t v = 0; v < emit_count; ++v) {
                std::unique_ptr<SeedStream> stream;
                if (derive)
                    stream = std::make_unique<CounterSeedStream>(global.master(),
                                                                 static_cast<std::uint64_t>(v));
                else
                    stream = std::make_unique<IntSeedStream>(static_cast<std::uint64_t>(v));
                gen->sample_signs(*stream, signs);
                for (int i = 0; i < gen->n(); ++i)
                    line[static_cast<std::size_t>(i)] = signs[static_cast<std::size_t>(i)] == -1 ? '1' : '0';
                (*out) << line << "\n";
            }
            return kExitOk;
        }

        if (*corr) {
            json payload;
            payload["name"] = "corr";
            payload["config"] = {{"check", corr_check}, {"n", corr_n}, {"k", corr_k}};
            if (corr_check == "fact62") {
                payload["result"] = report_json(fact62_check(corr_n));
            } else if (corr_check == "fact64") {
                payload["result"] = report_json(fact64_check(corr_n, corr_k));
            } else if (corr_check == "fact63") {
                json results = json::array();
                int failures = 0;
                for (int i = 0; i < corr_count; ++i) {
                    const ZeroOneFunction f = random_zero_one(
                        corr_n * corr_k, derive_seed(global.master(), static_cast<std::uint64_t>(i)),
                        global.caps);
                    const ExperimentReport report = fact63_check(f, corr_k, global.caps);
                    if (!report.passed()) ++failures;
                    if (i < 3) results.push_back(report_json(report));
                }
                payload["result"] = {{"functions", corr_count},
                                     {"failures", failures},
                                     {"samples", results}};
            } else {
                std::vector<ZeroOneFunction> members;
                if (!corr_fn.empty()) {
                    const TruthTable table =
                        input_truth_table(parse_function_input(corr_fn, global.caps), global.caps);
                    std::vector<std::uint8_t> vals(table.size());
                    for (std::size_t m = 0; m < table.size(); ++m)
                        vals[m] = table.values[m] == -1 ? 1 : 0;
                    members.emplace_back(table.n, std::move(vals));
                } else {
                    for (int i = 0; i < corr_count; ++i)
                        members.push_back(random_zero_one(
                            corr_n * corr_k,
                            derive_seed(global.master(), static_cast<std::uint64_t>(i)), global.caps));
                }
                Lemma61Options options;
                options.range_constant = global.constants.corr_range_constant;
                options.bound_constant = global.constants.corr_bound_constant;
                options.caps = global.caps;
                payload["result"] = report_json(lemma61_harness(members, corr_n, corr_k, options));
            }
            payload["wall_ms"] = elapsed_ms();
            write_output(global, payload);
            return kExitOk;
        }

        if (*prop51) {
            const FunctionFamily family =
                p51_sample > 0
                    ? family_f2_sampled(p51_n, p51_d, static_cast<std::size_t>(p51_sample),
                                        global.master(), global.caps)
                    : family_f2(p51_n, p51_d, p51_budget, global.caps);
            ExperimentReport report = prop51_check(p51_n, p51_d, p51_k, family, global.caps);
            report.wall_ms = elapsed_ms();
            write_output(global, report_json(report));
            return kExitOk;
        }
    } catch (const ResourceError& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitResource;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
