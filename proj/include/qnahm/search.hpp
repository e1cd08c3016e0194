#pragma once

#include <atomic>
#include <thread>

#include "eta.hpp"
#include "nahm.hpp"

namespace qnahm {

/* Grid scan for candidate modular vectors: every B with entries p/q,
 * q <= denominator_bound, lo <= p/q <= hi is evaluated at f_{A,B,0},
 * peeled, and tested for eventual periodicity. Periodicity is a necessary
 * condition only, so hits are candidates, never verdicts. */
struct SearchConfig {
    long long denominator_bound = 4;
    Rational range_lo = rat(-1);
    Rational range_hi = rat(1);
    long long order = 160;      // scaled units of the evaluation lattice
    long long window = 0;       // 0: derived from order
    long long max_period = 60;
    long long tail_skip = 10;
    unsigned jobs = 1;

    long long effective_window() const { return window > 0 ? window : order - 10; }

    void validate() const
    {
        if (order < effective_window() + 10)
            throw Error("search order must cover the recognition window");
        if (effective_window() - tail_skip < 2 * max_period)
            throw WindowTooSmall("window leaves fewer than two periods after the tail skip");
    }
};

struct SearchCandidate {
    RatVector B;
    long long period = 0;
    std::vector<Rational> pattern;  // one period of peeled exponents
    std::optional<Rational> fitted_C;
    std::optional<EtaQuotientSpec> spec;
};

namespace detail {

inline std::vector<Rational> grid_values(const SearchConfig &cfg)
{
    std::vector<Rational> vals;
    for (long long den = 1; den <= cfg.denominator_bound; ++den) {
        for (long long num = ceil_to_ll(cfg.range_lo * rat_ll(den));
             num <= floor_to_ll(cfg.range_hi * rat_ll(den)); ++num) {
            Rational v = rat_ll(num) / rat_ll(den);
            if (std::find(vals.begin(), vals.end(), v) == vals.end())
                vals.push_back(v);
        }
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

} // namespace detail

/* All candidates over the grid, sorted by period then lexicographically by B. */
inline std::vector<SearchCandidate> scan_vectors(const RatMatrix &A, const SearchConfig &cfg)
{
    if (!is_positive_definite(A))
        throw NotPositiveDefinite("search matrix must be positive definite");
    cfg.validate();
    std::size_t r = A.size();
    std::vector<Rational> vals = detail::grid_values(cfg);
    std::vector<RatVector> grid;
    RatVector cur(r, Rational(0));
    std::function<void(std::size_t)> build = [&](std::size_t i) {
        if (i == r) {
            grid.push_back(cur);
            return;
        }
        for (const auto &v : vals) {
            cur[i] = v;
            build(i + 1);
        }
    };
    build(0);

    /* The evaluation lattice depends only on A and the grid denominators. */
    long long d = 1;
    for (std::size_t i = 0; i < r; ++i) {
        d = lcm_ll(d, denominator_of(A[i][i] / 2));
        for (std::size_t j = i + 1; j < r; ++j)
            d = lcm_ll(d, denominator_of(A[i][j]));
    }
    for (const auto &v : vals)
        d = lcm_ll(d, denominator_of(v));

    std::vector<std::optional<SearchCandidate>> hits(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t g = next.fetch_add(1); g < grid.size(); g = next.fetch_add(1)) {
            const RatVector &B = grid[g];
            NahmTriple t{A, B, Rational(0)};
            QSeries f = eval_nahm(t, rat_ll(cfg.order) / rat_ll(d)).rescaled(d);
            ProductExponents pe = recognize_product(f, cfg.effective_window());
            std::optional<long long> p;
            try {
                p = find_period(pe, cfg.max_period, cfg.tail_skip);
            } catch (const WindowTooSmall &) {
                p = std::nullopt;
            }
            if (!p)
                continue;
            SearchCandidate c;
            c.B = B;
            c.period = *p;
            long long start = ((cfg.tail_skip + *p) / *p) * *p;
            for (long long a = 0; a < *p; ++a)
                c.pattern.push_back(pe.entries[static_cast<std::size_t>(start + a)]);
            if (auto fit = fit_C(pe, *p, cfg.tail_skip)) {
                c.spec = fit->first;
                c.fitted_C = fit->second;
            }
            hits[g] = std::move(c);
        }
    };
    if (cfg.jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < cfg.jobs; ++t)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }

    std::vector<SearchCandidate> out;
    for (auto &h : hits)
        if (h)
            out.push_back(std::move(*h));
    std::stable_sort(out.begin(), out.end(), [](const SearchCandidate &a, const SearchCandidate &b) {
        if (a.period != b.period)
            return a.period < b.period;
        for (std::size_t i = 0; i < a.B.size(); ++i)
            if (a.B[i] != b.B[i])
                return a.B[i] < b.B[i];
        return false;
    });
    return out;
}

} // namespace qnahm
