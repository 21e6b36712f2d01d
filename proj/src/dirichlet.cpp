#include "s1lab/dirichlet.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "s1lab/errors.hpp"
#include "s1lab/parallel.hpp"
#include "s1lab/settings.hpp"

namespace s1lab::dirichlet {
namespace {

constexpr long double k_two_pi_l = 6.283185307179586476925286766559005768L;

// One sieve segment; small enough to stay cache-friendly.
constexpr std::int64_t k_segment = std::int64_t{1} << 21;

// Hard ceiling on the sieve range.  e^tau beyond this would need gigabytes
// for the prime list alone, far past what any caller here can use.
constexpr double k_sieve_budget = 2.5e8;

// Grid evaluation re-anchors every recurrence from an 80-bit phase at this
// period; the drift accumulated over one block stays below 1e-10.
constexpr std::int64_t k_renorm_period = std::int64_t{1} << 14;

void kadd(double& acc, double& comp, double term) {
    double y = term - comp;
    double u = acc + y;
    comp = (u - acc) - y;
    acc = u;
}

std::vector<std::int64_t> sieve_primes(std::int64_t limit) {
    std::vector<std::int64_t> primes;
    if (limit < 2) return primes;

    auto root = static_cast<std::int64_t>(std::sqrt(static_cast<double>(limit)));
    while ((root + 1) * (root + 1) <= limit) ++root;
    while (root > 1 && root * root > limit) --root;

    std::vector<std::uint8_t> small(static_cast<std::size_t>(root) + 1, 1);
    std::vector<std::int64_t> base;
    for (std::int64_t i = 2; i <= root; ++i) {
        if (!small[static_cast<std::size_t>(i)]) continue;
        base.push_back(i);
        for (std::int64_t j = i * i; j <= root; j += i)
            small[static_cast<std::size_t>(j)] = 0;
    }

    primes = base;
    std::vector<std::uint8_t> mark;
    for (std::int64_t lo = root + 1; lo <= limit; lo += k_segment) {
        std::int64_t hi = std::min(limit, lo + k_segment - 1);
        mark.assign(static_cast<std::size_t>(hi - lo + 1), 1);
        for (std::int64_t p : base) {
            std::int64_t start = ((lo + p - 1) / p) * p;
            for (std::int64_t j = start; j <= hi; j += p)
                mark[static_cast<std::size_t>(j - lo)] = 0;
        }
        for (std::int64_t j = lo; j <= hi; ++j)
            if (mark[static_cast<std::size_t>(j - lo)]) primes.push_back(j);
    }
    return primes;
}

// Expands the prime list into all prime powers <= limit, ascending in n.
std::vector<PrimePower> expand_powers(const std::vector<std::int64_t>& primes,
                                      std::int64_t limit) {
    std::vector<PrimePower> pows;
    pows.reserve(primes.size() + 64);
    for (std::int64_t p : primes) {
        double lambda = std::log(static_cast<double>(p));
        for (std::int64_t n = p;;) {
            pows.push_back({n, lambda});
            if (n > limit / p) break;
            n *= p;
        }
    }
    std::sort(pows.begin(), pows.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });
    return pows;
}

std::string cache_path(double tau) {
    char name[64];
    std::snprintf(name, sizeof(name), "primepow_%.9f.txt", tau);
    return settings().cache_dir + "/" + name;
}

// Cache layout: a header line "s1lab-primepow 1 <tau> <count>", then one
// "n p" pair per line in ascending n.  Lambda(n) is recomputed as log(p) on
// load, so a cached table is bit-identical to a freshly sieved one.
bool load_cached_pairs(const std::string& path, double tau, std::int64_t limit,
                       std::vector<std::pair<std::int64_t, std::int64_t>>& pairs) {
    std::FILE* f = std::fopen(path.c_str(), "r");
    if (!f) return false;

    char magic[32];
    int version = 0;
    double file_tau = 0.0;
    std::int64_t count = -1;
    bool ok = std::fscanf(f, "%31s %d %lf %" SCNd64, magic, &version, &file_tau,
                          &count) == 4 &&
              std::strcmp(magic, "s1lab-primepow") == 0 && version == 1 &&
              file_tau == tau && count >= 0 && count < (std::int64_t{1} << 32);
    if (ok) {
        pairs.clear();
        pairs.reserve(static_cast<std::size_t>(count));
        std::int64_t prev = 1;
        for (std::int64_t i = 0; i < count && ok; ++i) {
            std::int64_t n = 0, p = 0;
            ok = std::fscanf(f, "%" SCNd64 " %" SCNd64, &n, &p) == 2 &&
                 n > prev && n <= limit && p >= 2 && p <= n;
            if (ok) {
                std::int64_t m = n;
                while (m > 1 && m % p == 0) m /= p;
                ok = (m == 1);
            }
            if (ok) {
                pairs.emplace_back(n, p);
                prev = n;
            }
        }
    }
    std::fclose(f);
    return ok;
}

void store_cached_pairs(const std::string& path, double tau,
                        const std::vector<std::int64_t>& primes,
                        const std::vector<PrimePower>& pows) {
    std::string tmp = path + ".tmp";
    std::FILE* f = std::fopen(tmp.c_str(), "w");
    if (!f) return;
    std::fprintf(f, "s1lab-primepow 1 %.17g %zu\n", tau, pows.size());
    for (const PrimePower& pp : pows) {
        std::int64_t p = pp.n;
        if (!std::binary_search(primes.begin(), primes.end(), p)) {
            // Proper power: the base is the smallest divisor, at most sqrt(n).
            for (p = 2; pp.n % p != 0; ++p) {}
        }
        std::fprintf(f, "%" PRId64 " %" PRId64 "\n", pp.n, p);
    }
    bool ok = std::fflush(f) == 0;
    std::fclose(f);
    if (ok) {
        std::error_code ec;
        std::filesystem::rename(tmp, path, ec);
        if (ec) std::filesystem::remove(tmp, ec);
    } else {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
    }
}

void attach_weights(PrimePowerTable& table) {
    double tau = table.tau;
    table.prime_log.reserve(table.primes.size());
    table.prime_weight.reserve(table.primes.size());
    for (std::int64_t p : table.primes) {
        long double lp = logl(static_cast<long double>(p));
        auto lpd = static_cast<double>(lp);
        table.prime_log.push_back(lp);
        table.prime_weight.push_back((1.0 - lpd / tau) /
                                     (std::sqrt(static_cast<double>(p)) * lpd));
    }
    table.power_log.reserve(table.prime_powers.size());
    table.power_weight.reserve(table.prime_powers.size());
    for (const PrimePower& pp : table.prime_powers) {
        long double ln = logl(static_cast<long double>(pp.n));
        auto lnd = static_cast<double>(ln);
        table.power_log.push_back(ln);
        table.power_weight.push_back(pp.lambda / (std::sqrt(static_cast<double>(pp.n)) *
                                                  lnd * lnd) *
                                     (1.0 - lnd / tau));
    }
}

}  // namespace

PrimePowerTable build_table(double tau) {
    if (!(tau > 0.0) || !(tau <= 30.0))
        throw domain_error("build_table needs 0 < tau <= 30");
    double limit_real = std::exp(tau);
    if (limit_real > k_sieve_budget)
        throw resource_error("build_table: e^tau exceeds the sieve budget of 2.5e8");
    auto limit = static_cast<std::int64_t>(std::floor(limit_real));

    PrimePowerTable table;
    table.tau = tau;

    bool cached = false;
    std::string path;
    if (!settings().cache_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(settings().cache_dir, ec);
        path = cache_path(tau);
        std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
        if (load_cached_pairs(path, tau, limit, pairs)) {
            table.prime_powers.reserve(pairs.size());
            for (auto [n, p] : pairs) {
                table.prime_powers.push_back({n, std::log(static_cast<double>(p))});
                if (n == p) table.primes.push_back(p);
            }
            cached = true;
        }
    }

    if (!cached) {
        table.primes = sieve_primes(limit);
        table.prime_powers = expand_powers(table.primes, limit);
        if (!path.empty())
            store_cached_pairs(path, tau, table.primes, table.prime_powers);
    }

    attach_weights(table);
    return table;
}

double w_point(double t, const PrimePowerTable& table) {
    if (!std::isfinite(t)) throw domain_error("w_point needs finite t");
    const auto tl = static_cast<long double>(t);
    double acc = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < table.primes.size(); ++i) {
        long double ph = fmodl(tl * table.prime_log[i], k_two_pi_l);
        kadd(acc, comp, table.prime_weight[i] * static_cast<double>(cosl(ph)));
    }
    return acc;
}

double full_lambda_sum(double t, const PrimePowerTable& table) {
    if (!std::isfinite(t)) throw domain_error("full_lambda_sum needs finite t");
    const auto tl = static_cast<long double>(t);
    double acc = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < table.prime_powers.size(); ++i) {
        long double ph = fmodl(tl * table.power_log[i], k_two_pi_l);
        kadd(acc, comp, table.power_weight[i] * static_cast<double>(cosl(ph)));
    }
    return (2.0 / table.tau) * acc;
}

GridFunction w_grid(double t0, double dt, std::int64_t n,
                    const PrimePowerTable& table) {
    if (!std::isfinite(t0) || !(dt > 0.0) || !std::isfinite(dt) || n < 1)
        throw domain_error("w_grid needs finite t0, dt > 0 and n >= 1");
    if (!std::isfinite(t0 + static_cast<double>(n) * dt))
        throw domain_error("w_grid: grid end overflows");
    if (static_cast<double>(n) * static_cast<double>(table.primes.size()) > 1e11)
        throw resource_error("w_grid budget exceeded: n * #primes > 1e11");

    GridFunction g;
    g.t0 = t0;
    g.dt = dt;
    g.values.assign(static_cast<std::size_t>(n), 0.0);

    const std::size_t np = table.primes.size();
    parallel_for_chunks(n, k_renorm_period, [&](std::int64_t i0, std::int64_t i1) {
        const auto m = static_cast<std::size_t>(i1 - i0);
        std::vector<double> acc(m, 0.0), comp(m, 0.0);
        const long double tstart =
            static_cast<long double>(t0) +
            static_cast<long double>(i0) * static_cast<long double>(dt);
        for (std::size_t k = 0; k < np; ++k) {
            const long double lp = table.prime_log[k];
            const double w = table.prime_weight[k];
            long double ph0 = fmodl(tstart * lp, k_two_pi_l);
            long double dph = fmodl(static_cast<long double>(dt) * lp, k_two_pi_l);
            auto c = static_cast<double>(cosl(ph0));
            auto s = static_cast<double>(sinl(ph0));
            const auto dc = static_cast<double>(cosl(dph));
            const auto ds = static_cast<double>(sinl(dph));
            for (std::size_t j = 0; j < m; ++j) {
                kadd(acc[j], comp[j], w * c);
                double cn = c * dc - s * ds;
                s = c * ds + s * dc;
                c = cn;
            }
        }
        std::copy(acc.begin(), acc.end(),
                  g.values.begin() + static_cast<std::ptrdiff_t>(i0));
    });
    return g;
}

}  // namespace s1lab::dirichlet
