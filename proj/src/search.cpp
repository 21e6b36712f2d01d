#include "s1lab/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <utility>
#include <vector>

#include "json.hpp"

#include "s1lab/argument.hpp"
#include "s1lab/dirichlet.hpp"
#include "s1lab/grid.hpp"
#include "s1lab/moments.hpp"
#include "s1lab/parallel.hpp"

namespace s1lab::search {

namespace {

constexpr double k_pi = 3.14159265358979323846;
constexpr double k_nan = std::numeric_limits<double>::quiet_NaN();
constexpr double k_inf = std::numeric_limits<double>::infinity();

// Fixed S1 tolerance for scans; tight enough that probe ordering is stable,
// loose enough to keep dense sweeps affordable.
constexpr double k_scan_rel_tol = 1e-7;

// e^e, the smallest height with log log T > 1.
const double k_min_t = std::exp(std::exp(1.0));

double eval_s1(double t) {
    return argument::detail::s1_strip_at(t, 40.0, k_scan_rel_tol).s1_value;
}

void check_eps(double eps) {
    if (!std::isfinite(eps) || !(eps > 0.0) || !(eps < 1e-3))
        throw domain_error("search: eps must lie strictly inside (0, 1/1000)");
}

ConditionFlags audit_flags(double log_T, double tau, double log_H,
                           std::int64_t k, std::int64_t m, double eps,
                           double delta) {
    ConditionFlags f{};
    f.k_at_least_2 = k >= 2;
    f.mtau = static_cast<double>(m) * tau < eps / 10.0 * log_T;
    // (2 k log k)^2 < e^{4 tau/5}, compared as logs so huge tau cannot
    // overflow; k = 1 gives log 0 = -inf, true like the direct form.
    f.klogk = k >= 1 &&
              2.0 * std::log(2.0 * static_cast<double>(k) *
                             std::log(static_cast<double>(k))) < 0.8 * tau;
    f.e3ktau = 3.0 * static_cast<double>(k) * tau < 0.5 * log_H;
    f.delta = delta < 1.0 / 60.0;
    return f;
}

SearchParams derive_at(double log_T, double eps, double t_value) {
    SearchParams p{};
    p.eps = eps;
    p.T = t_value;
    p.log_T = log_T;
    p.log_H = (27.0 / 82.0 + eps) * log_T;
    p.H = std::exp(p.log_H);
    double loglog_T = std::log(log_T);
    p.tau = 2.0 * std::log(p.log_H);
    double k_real = eps * eps / 1000.0 * std::pow(log_T, 2.0 / 3.0) /
                    std::pow(loglog_T, 4.0 / 3.0);
    p.k = static_cast<std::int64_t>(std::floor(k_real));
    p.m = 2 * p.k + 1;
    p.M = p.k >= 2 ? std::sqrt(static_cast<double>(p.k)) /
                         (30.0 * std::log(static_cast<double>(p.k)))
                   : k_nan;
    p.bound_B = eps / (4000.0 * k_pi) * std::cbrt(log_T) /
                std::pow(loglog_T, 5.0 / 3.0);
    p.delta = 500.0 * std::pow(static_cast<double>(p.k), 1.5) * loglog_T *
              loglog_T / (eps * eps * eps * log_T);
    p.flags = audit_flags(log_T, p.tau, p.log_H, p.k, p.m, eps, p.delta);
    p.feasible_log_T = feasible_log_t(eps);
    return p;
}

} // namespace

double feasible_log_t(double eps) {
    check_eps(eps);
    auto all_ok = [eps](double y) {
        SearchParams q{};
        q.log_H = (27.0 / 82.0 + eps) * y;
        q.tau = 2.0 * std::log(q.log_H);
        double loglog = std::log(y);
        double k_real = eps * eps / 1000.0 * std::pow(y, 2.0 / 3.0) /
                        std::pow(loglog, 4.0 / 3.0);
        auto k = static_cast<std::int64_t>(std::floor(k_real));
        double delta = 500.0 * std::pow(static_cast<double>(k), 1.5) * loglog *
                       loglog / (eps * eps * eps * y);
        return audit_flags(y, q.tau, q.log_H, k, 2 * k + 1, eps, delta).all();
    };
    double lo = 3.0, hi = 1e26;
    if (all_ok(lo)) return lo;
    if (!all_ok(hi)) return k_inf;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        (all_ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

SearchParams derive_params_log(double log_T, double eps) {
    check_eps(eps);
    if (!std::isfinite(log_T) || !(log_T > std::exp(1.0)) || log_T > 1e30)
        throw domain_error("derive_params_log: log T must lie in (e, 1e30]");
    double t_value = log_T > 709.0 ? k_inf : std::exp(log_T);
    return derive_at(log_T, eps, t_value);
}

SearchParams derive_params(double T, double eps) {
    check_eps(eps);
    if (!std::isfinite(T) || !(T > k_min_t))
        throw domain_error("derive_params: T must exceed e^e");
    return derive_at(std::log(T), eps, T);
}

namespace {

struct Best {
    double value = -k_inf;
    double at = k_nan;
};

// Evaluates S1 at every point, in index-chunked parallel, and folds the
// running extremes in index order (deterministic for any worker count).
void probe(const std::vector<double>& pts, Best& top, Best& bottom,
           std::int64_t& evals) {
    std::vector<double> vals(pts.size());
    std::exception_ptr failure;
    std::mutex guard;
    parallel_for_chunks(
        static_cast<std::int64_t>(pts.size()), 16,
        [&](std::int64_t begin, std::int64_t end) {
            try {
                for (std::int64_t i = begin; i < end; ++i)
                    vals[static_cast<std::size_t>(i)] =
                        eval_s1(pts[static_cast<std::size_t>(i)]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(guard);
                if (!failure) failure = std::current_exception();
            }
        });
    if (failure) std::rethrow_exception(failure);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (vals[i] > top.value) top = {vals[i], pts[i]};
        if (-vals[i] > bottom.value) bottom = {-vals[i], pts[i]};
    }
    evals += static_cast<std::int64_t>(pts.size());
}

// Hill climb on sign*S1 at shrinking steps down to grid_dt/100; purely
// additive, so it can only improve the incumbent.
int polish(Best& best, double sign, double t_lo, double t_hi,
           double start_step, double min_step, std::int64_t& evals) {
    int rounds = 0;
    double step = start_step;
    while (step >= min_step && rounds < 60) {
        ++rounds;
        bool moved = false;
        for (double cand : {best.at - step, best.at + step}) {
            if (cand < t_lo || cand > t_hi) continue;
            double v = sign * eval_s1(cand);
            ++evals;
            if (v > best.value) {
                best = {v, cand};
                moved = true;
            }
        }
        if (!moved) step *= 0.5;
    }
    return rounds;
}

} // namespace

ExtremeValueCertificate scan(double T, double H, double tau, double grid_dt,
                             bool refine, double eps) {
    check_eps(eps);
    if (!std::isfinite(T) || !std::isfinite(H) || !(H > 0.0))
        throw domain_error("scan: need finite T and H > 0");
    if (!(T > k_min_t))
        throw domain_error("scan: T must exceed e^e");
    if (T - H < 0.0 || T + 2.0 * H > 1e6)
        throw domain_error("scan: window [T-H, T+2H] must lie inside [0, 1e6]");
    if (!std::isfinite(tau) || !(tau > 0.0))
        throw domain_error("scan: tau must be positive");
    if (!std::isfinite(grid_dt) || !(grid_dt > 0.0) ||
        grid_dt > k_pi / (4.0 * tau) * (1.0 + 1e-9))
        throw domain_error("scan: grid_dt must lie in (0, pi/(4 tau)]");

    double t_lo = T - H, t_hi = T + 2.0 * H;
    auto table = dirichlet::build_table(tau);
    auto panels =
        static_cast<std::int64_t>(std::floor(3.0 * H / grid_dt - 1e-9));
    GridFunction w = dirichlet::w_grid(t_lo, grid_dt, panels + 1, table);

    // Stage 1: top and bottom swings of W. Plateau edges count once; a
    // constant W yields no candidates and the sweep below carries the scan.
    std::vector<std::pair<double, std::int64_t>> highs, lows;
    for (std::int64_t i = 1; i + 1 < w.size(); ++i) {
        double v = w.values[static_cast<std::size_t>(i)];
        double a = w.values[static_cast<std::size_t>(i - 1)];
        double b = w.values[static_cast<std::size_t>(i + 1)];
        if (v > a && v >= b) highs.emplace_back(v, i);
        if (v < a && v <= b) lows.emplace_back(v, i);
    }
    auto by_value_desc = [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first > y.first : x.second < y.second;
    };
    auto by_value_asc = [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first < y.first : x.second < y.second;
    };
    std::sort(highs.begin(), highs.end(), by_value_desc);
    std::sort(lows.begin(), lows.end(), by_value_asc);
    if (highs.size() > 5) highs.resize(5);
    if (lows.size() > 5) lows.resize(5);

    std::vector<double> centers;
    for (const auto& [v, i] : highs) centers.push_back(w.node(i));
    for (const auto& [v, i] : lows) centers.push_back(w.node(i));

    // Stage 2 probe set: a uniform S1 sweep at 10 grid_dt plus fine local
    // lattices (grid_dt/10) around each candidate, all anchored at t_lo so
    // halving grid_dt refines every lattice in place.
    std::vector<double> pts;
    double sweep_dt = 10.0 * grid_dt;
    for (std::int64_t j = 0;; ++j) {
        double t = t_lo + sweep_dt * static_cast<double>(j);
        if (t > t_hi + 1e-12) break;
        pts.push_back(std::min(t, t_hi));
    }
    if (pts.empty() || pts.back() < t_hi - 1e-12) pts.push_back(t_hi);

    double local_dt = grid_dt / 10.0;
    double widen = refine ? 4.0 * grid_dt : 0.0;
    for (double c : centers) {
        double a = std::max(t_lo, c - 2.0 / tau - widen);
        double b = std::min(t_hi, c + 2.0 / tau + widen);
        auto j_lo = static_cast<std::int64_t>(std::ceil((a - t_lo) / local_dt - 1e-12));
        auto j_hi = static_cast<std::int64_t>(std::floor((b - t_lo) / local_dt + 1e-12));
        for (std::int64_t j = j_lo; j <= j_hi; ++j)
            pts.push_back(t_lo + local_dt * static_cast<double>(j));
    }

    Best top, bottom;
    std::int64_t evals = 0;
    probe(pts, top, bottom, evals);

    int rounds = 0;
    if (refine) {
        rounds += polish(top, 1.0, t_lo, t_hi, local_dt / 2.0,
                         grid_dt / 100.0, evals);
        rounds += polish(bottom, -1.0, t_lo, t_hi, local_dt / 2.0,
                         grid_dt / 100.0, evals);
    }

    SearchParams audit = derive_params(T, eps);

    ExtremeValueCertificate cert{};
    cert.t_lo = t_lo;
    cert.t_hi = t_hi;
    cert.sup_s1 = top.value;
    cert.t_plus = top.at;
    cert.inf_s1 = -bottom.value;
    cert.t_minus = bottom.at;
    cert.bound_b = audit.bound_B;
    cert.passes_omega_check =
        cert.sup_s1 >= cert.bound_b && -cert.inf_s1 >= cert.bound_b;
    cert.trace = {grid_dt, sweep_dt, local_dt,
                  static_cast<int>(centers.size()), rounds, evals};
    return cert;
}

namespace {

nlohmann::ordered_json flags_json(const ConditionFlags& f) {
    return {{"k_at_least_2", f.k_at_least_2},
            {"mtau_lt_eps_tenth_log_T", f.mtau},
            {"klogk_sq_lt_exp_4tau_fifth", f.klogk},
            {"e3ktau_lt_sqrt_H", f.e3ktau},
            {"delta_lt_1_60", f.delta},
            {"all", f.all()}};
}

nlohmann::ordered_json params_json(const SearchParams& p) {
    return {{"eps", p.eps},
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

std::string iso_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

RunArtifacts run_report(const RunConfig& cfg) {
    if (cfg.out_dir.empty())
        throw domain_error("run_report: out_dir must not be empty");

    ExtremeValueCertificate cert =
        scan(cfg.T, cfg.H, cfg.tau, cfg.grid_dt, cfg.refine, cfg.eps);
    SearchParams audit = derive_params(cfg.T, cfg.eps);

    auto table = dirichlet::build_table(cfg.tau);
    double t_lo = cfg.T - cfg.H;
    auto panels = static_cast<std::int64_t>(
        std::floor(3.0 * cfg.H / cfg.grid_dt - 1e-9));
    GridFunction w = dirichlet::w_grid(t_lo, cfg.grid_dt, panels + 1, table);

    std::vector<double> s1v(static_cast<std::size_t>(w.size()));
    {
        std::exception_ptr failure;
        std::mutex guard;
        parallel_for_chunks(w.size(), 16, [&](std::int64_t b, std::int64_t e) {
            try {
                for (std::int64_t i = b; i < e; ++i)
                    s1v[static_cast<std::size_t>(i)] = eval_s1(w.node(i));
            } catch (...) {
                std::lock_guard<std::mutex> lock(guard);
                if (!failure) failure = std::current_exception();
            }
        });
        if (failure) std::rethrow_exception(failure);
    }

    nlohmann::ordered_json report;
    report["schema_version"] = 1;
    report["generated_at"] = iso_now();
    report["config"] = {{"T", cfg.T},       {"H", cfg.H},
                        {"tau", cfg.tau},   {"grid_dt", cfg.grid_dt},
                        {"refine", cfg.refine}, {"eps", cfg.eps},
                        {"moments_k", cfg.moments_k},
                        {"lemma5_M", cfg.lemma5_M}};
    report["versions"] = {{"s1lab", "0.1.0"}};
    report["parameter_audit"] = params_json(audit);
    report["certificate"] = {
        {"t_lo", cert.t_lo},
        {"t_hi", cert.t_hi},
        {"sup_s1", cert.sup_s1},
        {"t_plus", cert.t_plus},
        {"inf_s1", cert.inf_s1},
        {"t_minus", cert.t_minus},
        {"bound_B", cert.bound_b},
        {"passes_omega_check", cert.passes_omega_check},
        {"trace",
         {{"grid_dt", cert.trace.grid_dt},
          {"sweep_dt", cert.trace.sweep_dt},
          {"local_dt", cert.trace.local_dt},
          {"candidates", cert.trace.candidates},
          {"refine_rounds", cert.trace.refine_rounds},
          {"s1_evaluations", cert.trace.s1_evaluations}}}};
    report["error_budget"] = {
        {"s1_rel_tol", k_scan_rel_tol},
        {"w_grid_summation", "compensated, chunk layout fixed by n"},
        {"csv_number_format", "%.17g"}};
    report["grid"] = {{"rows", w.size()},
                      {"t0", w.t0},
                      {"dt", w.dt},
                      {"file", "grid.csv"}};

    if (cfg.moments_k >= 1) {
        auto mp = static_cast<std::int64_t>(
            2.0 * std::ceil(2.0 * cfg.H * cfg.tau / k_pi));
        double dtm = cfg.H / static_cast<double>(mp);
        GridFunction gm = dirichlet::w_grid(cfg.T, dtm, mp + 1, table);
        moments::MomentReport mr =
            moments::moment_report(gm, cfg.moments_k, cfg.tau, cfg.T, cfg.H);
        double m_used = cfg.lemma5_M;
        bool m_derived = !(m_used > 0.0);
        if (m_derived)
            m_used = std::max(
                0.9 * std::pow(mr.even_moment / cfg.H,
                               1.0 / (2.0 * cfg.moments_k)),
                1e-12);
        moments::Lemma5Verdict verdict = moments::lemma5_certify(
            gm, cfg.moments_k, m_used, cfg.T, cfg.H, 0.0);
        report["moments"] = {
            {"k", mr.k},
            {"m", mr.m},
            {"grid_dt", dtm},
            {"even_moment", mr.even_moment},
            {"odd_moment", mr.odd_moment},
            {"lemma4_lower", mr.lemma4_lower},
            {"lemma4_odd_bound", mr.lemma4_odd_bound},
            {"quadrature_error", mr.quadrature_error},
            {"r_moment", 0.0},
            {"r_moment_regime", "rh-verified-zero"},
            {"lemma5",
             {{"M", verdict.M},
              {"M_derived_from_even_moment", m_derived},
              {"even_lower_ok", verdict.even_lower_ok},
              {"odd_upper_ok", verdict.odd_upper_ok},
              {"r_upper_ok", verdict.r_upper_ok},
              {"conclusion_available", verdict.conclusion_available}}}};
    } else {
        report["moments"] = nullptr;
    }

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec)
        throw std::runtime_error("run_report: cannot create directory " +
                                 cfg.out_dir + ": " + ec.message());

    std::string csv_path = (fs::path(cfg.out_dir) / "grid.csv").string();
    {
        std::ofstream out(csv_path, std::ios::binary);
        out << "t,w,s1\n";
        char line[128];
        for (std::int64_t i = 0; i < w.size(); ++i) {
            std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", w.node(i),
                          w.values[static_cast<std::size_t>(i)],
                          s1v[static_cast<std::size_t>(i)]);
            out << line;
        }
        if (!out)
            throw std::runtime_error("run_report: cannot write " + csv_path);
    }

    std::string report_path = (fs::path(cfg.out_dir) / "report.json").string();
    {
        std::ofstream out(report_path, std::ios::binary);
        out << report.dump(2) << "\n";
        if (!out)
            throw std::runtime_error("run_report: cannot write " + report_path);
    }
    return {report_path, csv_path};
}

} // namespace s1lab::search
