/*
 * s1lab command line front end.
 *
 * Subcommands map one-to-one onto library entry points:
 *   params       parameter derivation and feasibility audit (JSON)
 *   scan         windowed extreme-value search, writes report.json + grid.csv
 *   smooth-check smoothed-average identity residual (JSON)
 *   moments      moment integrals and bound checks on a W grid (JSON)
 *   zeros        zero ordinates in a range (CSV)
 *
 * All JSON goes to stdout with a schema_version field; CSV uses a header
 * row, '.' decimals, LF line endings.  Errors print to stderr and exit 2.
 */
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "s1lab/dirichlet.hpp"
#include "s1lab/errors.hpp"
#include "s1lab/grid.hpp"
#include "s1lab/moments.hpp"
#include "s1lab/parallel.hpp"
#include "s1lab/search.hpp"
#include "s1lab/settings.hpp"
#include "s1lab/smoothing.hpp"
#include "s1lab/zeta.hpp"

namespace {

using nlohmann::ordered_json;

constexpr double k_pi = 3.14159265358979323846;

ordered_json flags_json(const s1lab::search::ConditionFlags& f) {
    return {{"k_at_least_2", f.k_at_least_2},
            {"mtau_lt_eps_tenth_log_T", f.mtau},
            {"klogk_sq_lt_exp_4tau_fifth", f.klogk},
            {"e3ktau_lt_sqrt_H", f.e3ktau},
            {"delta_lt_1_60", f.delta},
            {"all", f.all()}};
}

ordered_json params_json(const s1lab::search::SearchParams& p) {
    return {{"schema_version", 1},
            {"eps", p.eps},
            {"T", p.T},
            {"log_T", p.log_T},
            {"H", p.H},
            {"log_H", p.log_H},
            {"tau", p.tau},
            {"k", p.k},
            {"m", p.m},
            {"M", p.M},
            {"bound_B", p.bound_B},
            {"delta", p.delta},
            {"flags", flags_json(p.flags)},
            {"feasible_log_T", p.feasible_log_T}};
}

void emit(const ordered_json& j) { std::printf("%s\n", j.dump(2).c_str()); }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"prime-sum guided search for extreme values of the integral "
                 "of the zeta argument"};
    app.require_subcommand(1);

    int threads = 0;
    std::string cache_dir;
    unsigned long long seed = 0;
    double tolerance = 1e-9;
    app.add_option("--threads", threads, "worker threads, 0 = hardware");
    app.add_option("--cache-dir", cache_dir, "directory for on-disk tables");
    app.add_option("--seed", seed, "seed for randomized drivers");
    app.add_option("--tolerance", tolerance,
                   "relative tolerance of the strip quadrature");

    auto* c_params = app.add_subcommand(
        "params", "derive search parameters and audit feasibility");
    double p_T = 0.0, p_eps = 1e-4;
    c_params->add_option("--T", p_T, "height T")->required();
    c_params->add_option("--eps", p_eps, "epsilon in (0, 1/1000)")->required();

    auto* c_scan = app.add_subcommand(
        "scan", "search [T-H, T+2H] for extreme values and write a report");
    double s_T = 0.0, s_H = 0.0, s_tau = 0.0, s_dt = 0.0, s_eps = 1e-4;
    bool s_refine = false;
    std::string s_out;
    int s_moments_k = 0;
    double s_M = 0.0;
    c_scan->add_option("--T", s_T, "window center height")->required();
    c_scan->add_option("--H", s_H, "window half-width parameter")->required();
    c_scan->add_option("--tau", s_tau, "prime cutoff parameter")->required();
    c_scan->add_option("--dt", s_dt, "grid spacing, at most pi/(4 tau)")
        ->required();
    c_scan->add_flag("--refine", s_refine, "polish incumbents to dt/100");
    c_scan->add_option("--eps", s_eps, "epsilon for the audit block");
    c_scan->add_option("--moments-k", s_moments_k,
                       "also run the moments stage at this k (0 = off)");
    c_scan->add_option("--M", s_M,
                       "threshold for the certification stage (0 = derive)");
    c_scan->add_option("--out", s_out, "output directory")->required();

    auto* c_smooth = app.add_subcommand(
        "smooth-check", "residual of the smoothed-average identity");
    double m_t = 0.0, m_tau = 0.0, m_H = 0.0;
    c_smooth->add_option("--t", m_t, "window start height")->required();
    c_smooth->add_option("--tau", m_tau, "kernel parameter")->required();
    c_smooth->add_option("--H", m_H, "window length")->required();

    auto* c_moments = app.add_subcommand(
        "moments", "moment integrals of W over [T, T+H] and bound checks");
    double mo_T = 0.0, mo_H = 0.0, mo_tau = 0.0, mo_M = 0.0;
    std::int64_t mo_k = 1;
    c_moments->add_option("--T", mo_T, "window start height")->required();
    c_moments->add_option("--H", mo_H, "window length")->required();
    c_moments->add_option("--tau", mo_tau, "prime cutoff parameter")->required();
    c_moments->add_option("--k", mo_k, "moment order, 1..12")->required();
    c_moments->add_option("--M", mo_M,
                          "also certify at this threshold (0 = off)");

    auto* c_zeros =
        app.add_subcommand("zeros", "zero ordinates in (lo, hi] as CSV");
    double z_lo = 0.0, z_hi = 0.0;
    c_zeros->add_option("--lo", z_lo, "lower ordinate bound")->required();
    c_zeros->add_option("--hi", z_hi, "upper ordinate bound")->required();

    CLI11_PARSE(app, argc, argv);

    s1lab::set_max_threads(threads);
    s1lab::settings().cache_dir = cache_dir;
    s1lab::settings().seed = seed;
    s1lab::settings().strip_rel_tol = tolerance;

    try {
        if (c_params->parsed()) {
            emit(params_json(s1lab::search::derive_params(p_T, p_eps)));
        } else if (c_scan->parsed()) {
            s1lab::search::RunConfig cfg;
            cfg.T = s_T;
            cfg.H = s_H;
            cfg.tau = s_tau;
            cfg.grid_dt = s_dt;
            cfg.refine = s_refine;
            cfg.eps = s_eps;
            cfg.moments_k = s_moments_k;
            cfg.lemma5_M = s_M;
            cfg.out_dir = s_out;
            auto art = s1lab::search::run_report(cfg);
            emit(ordered_json{{"schema_version", 1},
                              {"report", art.report_path},
                              {"grid", art.csv_path}});
        } else if (c_smooth->parsed()) {
            s1lab::smoothing::FejerParams fp{m_tau, m_H, m_t};
            auto r = s1lab::smoothing::lemma1_identity_check(fp);
            emit(ordered_json{
                {"schema_version", 1},
                {"t", m_t},
                {"tau", m_tau},
                {"H", m_H},
                {"lhs", r.lhs},
                {"rhs_sum", r.rhs_sum},
                {"rhs_pole", r.rhs_pole},
                {"rhs_constant", r.rhs_constant},
                {"residual", r.residual},
                {"tail_bound", r.tail_bound},
                {"quadrature_error", r.quadrature_error},
                {"within_tail_bound", std::fabs(r.residual) <= r.tail_bound}});
        } else if (c_moments->parsed()) {
            auto table = s1lab::dirichlet::build_table(mo_tau);
            auto panels = static_cast<std::int64_t>(
                2.0 * std::ceil(2.0 * mo_H * mo_tau / k_pi));
            double dt = mo_H / static_cast<double>(panels);
            auto g = s1lab::dirichlet::w_grid(mo_T, dt, panels + 1, table);
            auto r = s1lab::moments::moment_report(g, mo_k, mo_tau, mo_T, mo_H);
            ordered_json out{{"schema_version", 1},
                             {"T", r.T},
                             {"H", r.H},
                             {"k", r.k},
                             {"m", r.m},
                             {"tau", mo_tau},
                             {"grid_dt", dt},
                             {"even_moment", r.even_moment},
                             {"odd_moment", r.odd_moment},
                             {"lemma4_lower", r.lemma4_lower},
                             {"lemma4_odd_bound", r.lemma4_odd_bound},
                             {"quadrature_error", r.quadrature_error},
                             {"r_moment", 0.0},
                             {"r_moment_regime", "rh-verified-zero"}};
            if (mo_M > 0.0) {
                auto v = s1lab::moments::lemma5_certify(g, mo_k, mo_M, mo_T,
                                                        mo_H, 0.0);
                out["lemma5"] = {
                    {"M", v.M},
                    {"even_lower_ok", v.even_lower_ok},
                    {"odd_upper_ok", v.odd_upper_ok},
                    {"r_upper_ok", v.r_upper_ok},
                    {"conclusion_available", v.conclusion_available}};
            }
            emit(out);
        } else if (c_zeros->parsed()) {
            auto ords = s1lab::zeta::zero_ordinates(z_lo, z_hi);
            auto base = s1lab::zeta::zero_count(z_lo);
            std::printf("index,ordinate\n");
            for (std::size_t i = 0; i < ords.size(); ++i)
                std::printf("%lld,%.17g\n",
                            static_cast<long long>(base) +
                                static_cast<long long>(i) + 1,
                            ords[i]);
        }
    } catch (const std::exception& ex) {
        std::fprintf(stderr, "error: %s\n", ex.what());
        return 2;
    }
    return 0;
}
