/* Command-line workbench: exact evaluation of Nahm-type sums, the lift and
 * dual operators, the identity catalog, product recognition, and the grid
 * search for candidate modular vectors.
 *
 * Exit codes: 0 success / all pass, 1 verification failure, 2 input error,
 * 3 mathematical precondition failure. */

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "qnahm/io.hpp"
#include "qnahm/registry.hpp"
#include "qnahm/search.hpp"

using namespace qnahm;

namespace {

constexpr const char *kOrderEnv = "QNAHM_DEFAULT_ORDER";

std::optional<long long> env_order()
{
    const char *s = std::getenv(kOrderEnv);
    if (!s || !*s)
        return std::nullopt;
    char *end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    if (end == s || *end || v <= 0)
        throw ParseError(std::string("bad ") + kOrderEnv + ": " + s);
    return v;
}

int run_eval(const std::string &path, long long order, long long base_scale)
{
    NahmTriple t = load_triple(path);
    if (order < 0)
        throw ParseError("order must be nonnegative");
    QSeries f = eval_nahm(t, rat_ll(order));
    if (base_scale > 1)
        f = f.rescaled(lcm_ll(f.scale(), base_scale));
    std::string line = series_listing(f);
    if (!line.empty())
        std::cout << line << "\n";
    return 0;
}

void print_report(const VerifyReport &r, bool with_name)
{
    if (with_name)
        std::cout << r.name << ": ";
    if (r.pass) {
        std::cout << "PASS order=" << r.order << "\n";
    } else {
        std::cout << "FAIL order=" << r.order << " exponent=" << to_string(*r.mismatch_exponent)
                  << " lhs=" << r.lhs_coeff << " rhs=" << r.rhs_coeff << "\n";
    }
}

int run_verify(const std::string &name, std::optional<long long> order)
{
    const IdentityEntry *e = find_entry(name);
    if (!e)
        throw ParseError("unknown registry key: " + name);
    VerifyReport r = verify(*e, order ? order : env_order());
    print_report(r, false);
    return r.pass ? 0 : 1;
}

int run_verify_all(unsigned jobs, std::optional<long long> order)
{
    auto reports = verify_all(jobs, order ? order : env_order());
    bool all = true;
    for (const auto &r : reports) {
        print_report(r, true);
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

std::string pattern_string(const std::vector<Rational> &pattern)
{
    std::string s = "[";
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        if (i)
            s += ",";
        s += to_string(pattern[i]);
    }
    return s + "]";
}

int run_recognize(const std::string &triple_path, const std::string &key,
                  const std::string &side, long long window, long long max_period,
                  long long tail_skip, std::optional<long long> order)
{
    QSeries f;
    if (!triple_path.empty()) {
        NahmTriple t = load_triple(triple_path);
        long long d = 1;
        for (std::size_t i = 0; i < t.rank(); ++i) {
            d = lcm_ll(d, denominator_of(t.A[i][i] / 2));
            d = lcm_ll(d, denominator_of(t.B[i]));
            for (std::size_t j = i + 1; j < t.rank(); ++j)
                d = lcm_ll(d, denominator_of(t.A[i][j]));
        }
        long long n = order.value_or(env_order().value_or(window + 12));
        f = eval_nahm(t, rat_ll(n) / rat_ll(d)).rescaled(d);
    } else {
        const IdentityEntry *e = find_entry(key);
        if (!e)
            throw ParseError("unknown registry key: " + key);
        long long n =
            order ? *order : env_order().value_or(std::max(e->default_order, window + 12));
        Rational ord = rat_ll(n) / rat_ll(e->scale);
        f = (side == "rhs" ? e->rhs : e->lhs)(ord);
    }
    long long avail = f.hi() - std::max(f.lo(), 0LL) - 1;
    ProductExponents pe = recognize_product(f, std::min(window, avail));
    auto p = find_period(pe, max_period, tail_skip);
    if (!p) {
        std::cout << "no period ≤ " << max_period << "\n";
        return 0;
    }
    std::vector<Rational> pattern;
    long long start = ((tail_skip + *p) / *p) * *p;
    for (long long a = 0; a < *p; ++a)
        pattern.push_back(pe.entries[static_cast<std::size_t>(start + a)]);
    std::cout << "period=" << *p << " pattern=" << pattern_string(pattern);
    if (auto fit = fit_C(pe, *p, tail_skip))
        std::cout << " C=" << to_string(fit->second);
    std::cout << "\n";
    return 0;
}

int run_search(const std::string &path, long long denom, const std::vector<std::string> &range,
               long long order, long long window, long long max_period, long long tail_skip,
               unsigned jobs)
{
    NahmTriple t = load_triple(path);
    SearchConfig cfg;
    cfg.denominator_bound = denom;
    cfg.range_lo = parse_rational(range.at(0));
    cfg.range_hi = parse_rational(range.at(1));
    cfg.order = order;
    cfg.window = window;
    cfg.max_period = max_period;
    cfg.tail_skip = tail_skip;
    cfg.jobs = jobs;
    auto out = scan_vectors(t.A, cfg);
    for (const auto &c : out) {
        std::cout << "B=(";
        for (std::size_t i = 0; i < c.B.size(); ++i)
            std::cout << to_string(c.B[i]) << (i + 1 < c.B.size() ? "," : "");
        std::cout << ") period=" << c.period << " pattern=" << pattern_string(c.pattern)
                  << " C=" << (c.fitted_C ? to_string(*c.fitted_C) : "none") << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"exact q-series workbench for Nahm-type sums"};
    app.require_subcommand(1);

    std::string triple_path, key, side = "lhs";
    std::vector<std::string> range = {"-1", "1"};
    long long order_ll = -1, base_scale = 1, window = 0, max_period = 60, tail_skip = 10;
    long long denom = 4;
    unsigned jobs = 1;

    auto *eval = app.add_subcommand("eval", "evaluate a Nahm sum from a triple file");
    eval->add_option("--triple", triple_path)->required();
    eval->add_option("--order", order_ll);
    eval->add_option("--base-scale", base_scale);

    auto *lift = app.add_subcommand("lift", "lift a rank-2 triple to rank 3");
    lift->add_option("--triple", triple_path)->required();

    auto *dualc = app.add_subcommand("dual", "dual of a triple");
    dualc->add_option("--triple", triple_path)->required();

    auto *ver = app.add_subcommand("verify", "verify one registry identity");
    ver->add_option("--name", key)->required();
    ver->add_option("--order", order_ll);

    auto *verall = app.add_subcommand("verify-all", "verify every registry identity");
    verall->add_option("--jobs", jobs);
    verall->add_option("--order", order_ll);

    auto *rec = app.add_subcommand("recognize", "peel a series into product exponents");
    rec->add_option("--triple", triple_path);
    rec->add_option("--name", key);
    rec->add_option("--side", side)->check(CLI::IsMember({"lhs", "rhs"}));
    rec->add_option("--window", window);
    rec->add_option("--max-period", max_period);
    rec->add_option("--tail-skip", tail_skip);
    rec->add_option("--order", order_ll);

    auto *regc = app.add_subcommand("registry", "list the identity catalog as JSON records");

    auto *sch = app.add_subcommand("search", "scan candidate B vectors for a matrix");
    sch->add_option("--matrix", triple_path)->required();
    sch->add_option("--denominator-bound", denom);
    sch->add_option("--range", range)->expected(2);
    sch->add_option("--order", order_ll);
    sch->add_option("--window", window);
    sch->add_option("--max-period", max_period);
    sch->add_option("--tail-skip", tail_skip);
    sch->add_option("--jobs", jobs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help and friends
        app.exit(e);
        return 2;
    }

    try {
        std::optional<long long> order =
            order_ll >= 0 ? std::optional<long long>(order_ll) : std::nullopt;
        if (eval->parsed())
            return run_eval(triple_path, order.value_or(env_order().value_or(40)), base_scale);
        if (lift->parsed()) {
            std::cout << triple_to_json(lift2to3(load_triple(triple_path)));
            return 0;
        }
        if (dualc->parsed()) {
            std::cout << triple_to_json(dual(load_triple(triple_path)));
            return 0;
        }
        if (regc->parsed()) {
            for (const auto &e : registry()) {
                nlohmann::ordered_json j;
                j["name"] = e.name;
                j["note"] = e.note;
                j["default_order"] = e.default_order;
                j["scale"] = e.scale;
                j["diagnostic"] = e.diagnostic;
                std::cout << j.dump() << "\n";
            }
            return 0;
        }
        if (ver->parsed())
            return run_verify(key, order);
        if (verall->parsed())
            return run_verify_all(jobs, order);
        if (rec->parsed()) {
            if (triple_path.empty() == key.empty())
                throw ParseError("recognize needs exactly one of --triple or --name");
            if (window <= 0)
                window = 240;
            return run_recognize(triple_path, key, side, window, max_period, tail_skip, order);
        }
        if (sch->parsed())
            return run_search(triple_path, denom, range,
                              order.value_or(env_order().value_or(160)), window, max_period,
                              tail_skip, jobs);
    } catch (const ParseError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
