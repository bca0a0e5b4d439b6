// kummer: exact L-functions and ranks of y^2 = x(x^2 + t^{2d} x - 4 t^{2d}) over F_q(t).
//
// Exit codes: 0 ok, 1 usage, 2 field budget exceeded, 3 internal inconsistency.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "kummer.hpp"

namespace {

using namespace kummer;
using io::json;

enum class Format { text, json, csv };

struct Common {
    std::optional<u64> budget;
    unsigned jobs = default_jobs();
    std::string generator = "primary";
    std::string format = "text";

    LOptions options() const {
        LOptions o;
        if (budget)
            o.field.budget = *budget;
        o.field.generator = generator == "alternate" ? generator_choice::alternate : generator_choice::primary;
        o.jobs = jobs;
        return o;
    }
    Format fmt() const { return format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text; }
};

void add_common(CLI::App *cmd, Common &c) {
    cmd->add_option("--budget", c.budget, "largest field size Q built in memory (default 2^24, env KUMMER_LFUN_BUDGET)")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--generator", c.generator, "field generator choice")
        ->check(CLI::IsMember({"primary", "alternate"}));
    cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
}

void check_q(u64 q) {
    const auto [p, k] = arith::prime_power(q);
    if (p == 2)
        throw std::invalid_argument("q must be a power of an odd prime");
    (void)k;
}

void print_json(const json &j) { std::cout << j.dump(2) << '\n'; }

int cmd_lfun(u64 q, u64 d, unsigned m_max, const Common &c) {
    check_q(q);
    const LPolynomial L = l_polynomial(q, d, c.options());
    const u64 rank = analytic_rank(L);
    std::vector<std::pair<bigint, i64>> oracle;
    if (m_max > 0) {
        const auto logs = log_coefficients(L.coeffs, m_max);
        for (unsigned m = 1; m <= m_max; ++m)
            oracle.emplace_back(logs[m - 1], log_l_coefficient(q, L.d_prime, m, c.jobs, c.options().field.budget));
    }
    bool oracle_ok = true;
    for (const auto &[a, b] : oracle)
        oracle_ok = oracle_ok && a == b;
    switch (c.fmt()) {
    case Format::json: {
        json j = io::to_json(L);
        if (!oracle.empty()) {
            json rows = json::array();
            for (std::size_t i = 0; i < oracle.size(); ++i)
                rows.push_back({{"m", i + 1}, {"from_L", io::big_to_json(oracle[i].first)}, {"point_count", oracle[i].second}});
            j["oracle"] = rows;
        }
        print_json(j);
        break;
    }
    case Format::csv:
        std::cout << "power,coefficient\n";
        for (std::size_t i = 0; i < L.coeffs.size(); ++i)
            std::cout << i << ',' << L.coeffs[i] << '\n';
        break;
    case Format::text:
        std::cout << "q = " << q << ", d = " << d;
        if (L.d_prime != d)
            std::cout << " (normalized d'=" << L.d_prime << ")";
        std::cout << "\nL(T) = " << io::render_poly(L.coeffs) << "\ncoefficients: [";
        for (std::size_t i = 0; i < L.coeffs.size(); ++i)
            std::cout << (i ? ", " : "") << L.coeffs[i];
        std::cout << "]\nfactors:\n  1 - " << q << "T\n";
        for (const auto &f : L.factors)
            std::cout << "  " << io::factor_string(f) << "    n = " << f.representative << ", |n| = " << f.length
                      << ", e = " << f.stratum << '\n';
        std::cout << "rank = " << rank << '\n';
        for (std::size_t i = 0; i < oracle.size(); ++i)
            std::cout << "c_" << i + 1 << ": from L " << oracle[i].first << ", from point counts " << oracle[i].second
                      << (oracle[i].first == oracle[i].second ? "" : "  MISMATCH") << '\n';
        break;
    }
    if (!oracle_ok)
        std::cerr << "inconsistency: log-coefficients disagree with point counts\n";
    return oracle_ok ? 0 : 3;
}

int cmd_rank(u64 q, u64 d, const Common &c) {
    check_q(q);
    const auto nd = normalize(q, d);
    const u64 rank = mw_rank(q, d, c.options());
    const auto ss = is_supersingular(q, 2 * nd.d_prime);
    std::optional<SupersingularRank> ssr;
    if (ss.supersingular) {
        ssr = supersingular_rank(q, d);
        if (ssr->discrepancy)
            std::cerr << "discrepancy: " << ssr->note << '\n';
    }
    if (c.fmt() == Format::json) {
        json j = {{"q", q}, {"d", d}, {"d_prime", nd.d_prime}, {"rank", rank}, {"supersingular", ss.supersingular}};
        if (ssr) {
            j["witness"] = ssr->witness;
            j["supersingular_rank"] = ssr->rank;
            j["I_q_2d"] = ssr->i_q_2d.str();
            j["discrepancy"] = ssr->discrepancy ? json(ssr->note) : json(nullptr);
        }
        print_json(j);
        return 0;
    }
    std::cout << "q = " << q << ", d = " << d;
    if (nd.d_prime != d)
        std::cout << " (normalized d'=" << nd.d_prime << ")";
    std::cout << "\nrank = " << rank << '\n';
    if (ssr)
        std::cout << "2d' supersingular (q^" << ssr->witness << " = -1 mod " << 2 * nd.d_prime
                  << "), orbit count rank = " << ssr->rank << ", I_q(2d') = " << ssr->i_q_2d << '\n';
    return 0;
}

int cmd_verify(u64 q, u64 d_max, unsigned m_max, const Common &c) {
    check_q(q);
    const auto report = verify::full_suite(q, d_max, m_max, c.options());
    if (c.fmt() == Format::json) {
        print_json(io::to_json(report));
    } else if (c.fmt() == Format::csv) {
        std::cout << "suite,check,passed,detail\n";
        for (const auto &r : report)
            std::cout << r.suite << ',' << io::csv_field(r.name) << ',' << (r.passed ? 1 : 0) << ','
                      << io::csv_field(r.detail) << '\n';
    } else {
        for (const auto &r : report)
            std::cout << (r.passed ? "PASS " : "FAIL ") << r.suite << ": " << r.name
                      << (r.detail.empty() ? "" : "  (" + r.detail + ")") << '\n';
    }
    return verify::all_passed(report) ? 0 : 3;
}

int cmd_scan(u64 q, u64 x, const Common &c) {
    check_q(q);
    const auto res = average_rank_scan(q, x, c.options());
    for (const auto &r : res.rows)
        if (r.discrepancy)
            std::cerr << "discrepancy: " << *r.discrepancy << '\n';
    switch (c.fmt()) {
    case Format::json:
        print_json(io::to_json(res));
        break;
    case Format::csv:
        std::cout << io::scan_csv(res);
        break;
    case Format::text:
        std::cout << "d\td'\tmethod\trank\tdegL\tss\tavg\n";
        for (std::size_t i = 0; i < res.rows.size(); ++i) {
            const auto &r = res.rows[i];
            std::cout << r.d << '\t' << r.d_prime << '\t' << to_string(r.method) << '\t'
                      << (r.rank ? std::to_string(*r.rank) : "?") << '\t' << r.deg_l << '\t'
                      << (r.supersingular ? 1 : 0) << '\t' << res.running_average[i];
            if (!r.unknown_reason.empty())
                std::cout << '\t' << r.unknown_reason;
            std::cout << '\n';
        }
        std::cout << "unknown: " << res.unknown << '\n';
        break;
    }
    return 0;
}

int cmd_sequences(u64 q, unsigned n_max, const Common &c) {
    check_q(q);
    const auto rows = rank_sequences(q, n_max, c.options());
    for (const auto &r : rows)
        for (const auto &note : r.notes)
            std::cerr << "discrepancy: " << note << '\n';
    if (c.fmt() == Format::json) {
        json out = json::array();
        for (const auto &r : rows)
            out.push_back(io::to_json(r));
        print_json(out);
        return 0;
    }
    const char sep = c.fmt() == Format::csv ? ',' : '\t';
    std::cout << "n" << sep << "d_even" << sep << "witness" << sep << "I_q(d_even)" << sep << "bound" << sep
              << "verdict" << sep << "d_odd" << sep << "witness" << sep << "I_q(2d_odd)" << sep << "bound" << sep
              << "verdict" << sep << "rank(d_even)" << '\n';
    for (const auto &r : rows) {
        auto w = [](const Supersingularity &s) { return s.witness ? std::to_string(*s.witness) : std::string("-"); };
        std::cout << r.n << sep << r.d_even << sep << w(r.even_ss) << sep << r.i_even << sep << r.bound_even << sep
                  << to_string(r.verdict_even) << sep << r.d_odd << sep << w(r.odd2_ss) << sep << r.i_odd2 << sep
                  << r.bound_odd << sep << to_string(r.verdict_odd) << sep
                  << (r.rho_even ? std::to_string(*r.rho_even) : "?") << '\n';
    }
    return 0;
}

int cmd_find_ell(u64 p, u64 bound, const Common &c) {
    const auto ells = find_ell(p, bound);
    if (c.fmt() == Format::json) {
        print_json({{"p", p}, {"bound", bound}, {"ell", ells}});
        return 0;
    }
    for (std::size_t i = 0; i < ells.size(); ++i)
        std::cout << (i ? (c.fmt() == Format::csv ? "," : ", ") : "") << ells[i];
    std::cout << '\n';
    return 0;
}

int cmd_construct(u64 p, u64 R, const Common &c) {
    const auto con = exact_rank_construction(p, R, c.options());
    if (c.fmt() == Format::json) {
        print_json(io::to_json(con));
    } else {
        std::cout << "p = " << p << ", R = " << R << ": d = " << con.d;
        if (con.ell)
            std::cout << " = " << con.ell << "^" << con.r;
        std::cout << "\nI_p(2d) = " << con.i_q_2d << ", supersingular-path rank = " << con.supersingular_path_rank
                  << ", analytic rank = " << (con.analytic ? std::to_string(*con.analytic) : "(over budget)")
                  << "\ncertified: " << (con.certified ? "yes" : "no") << '\n';
    }
    return con.certified ? 0 : 3;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Exact L-functions and ranks for the Kummer family E_d over F_q(t)"};
    app.require_subcommand(1);

    u64 q = 3, d = 1, x = 10, p = 3, bound = 140, R = 1, d_max = 5;
    unsigned m_max = 4, n_max = 3;
    Common common;

    auto *lfun = app.add_subcommand("lfun", "L-polynomial, factorization by orbit, rank");
    lfun->add_option("--q", q, "field size")->required();
    lfun->add_option("--d", d, "Kummer degree")->required()->check(CLI::PositiveNumber);
    unsigned lfun_m_max = 0;
    lfun->add_option("--m-max", lfun_m_max, "compare log-coefficients c_1..c_m with point counts");
    add_common(lfun, common);

    auto *rank = app.add_subcommand("rank", "Mordell-Weil rank");
    rank->add_option("--q", q, "field size")->required();
    rank->add_option("--d", d, "Kummer degree")->required()->check(CLI::PositiveNumber);
    add_common(rank, common);

    auto *ver = app.add_subcommand("verify", "character-sum identities, point-count oracle and census");
    ver->add_option("--q", q, "field size")->required();
    ver->add_option("--d-max", d_max, "largest d for the oracle and census")->check(CLI::PositiveNumber);
    ver->add_option("--m-max", m_max, "oracle depth")->check(CLI::PositiveNumber);
    add_common(ver, common);

    auto *scan = app.add_subcommand("scan", "ranks for d = 1..x with running averages");
    scan->add_option("--q", q, "field size")->required();
    scan->add_option("--x", x, "largest d")->required()->check(CLI::PositiveNumber);
    add_common(scan, common);

    auto *seq = app.add_subcommand("sequences", "d = q^n + 1 and d = sum (-q)^i with bound checks");
    seq->add_option("--q", q, "field size")->required();
    seq->add_option("--n-max", n_max, "largest n")->required()->check(CLI::Range(1u, 12u));
    add_common(seq, common);

    auto *fe = app.add_subcommand("find-ell", "primes l with p generating (Z/l^2)^x");
    fe->add_option("--p", p, "odd prime")->required();
    fe->add_option("--bound", bound, "search bound")->required();
    add_common(fe, common);

    auto *con = app.add_subcommand("construct", "d with prescribed odd rank over F_p(t)");
    con->add_option("--p", p, "odd prime")->required();
    con->add_option("--rank", R, "odd target rank")->required();
    add_common(con, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (*lfun)
            return cmd_lfun(q, d, lfun_m_max, common);
        if (*rank)
            return cmd_rank(q, d, common);
        if (*ver)
            return cmd_verify(q, d_max, m_max, common);
        if (*scan)
            return cmd_scan(q, x, common);
        if (*seq)
            return cmd_sequences(q, n_max, common);
        if (*fe)
            return cmd_find_ell(p, bound, common);
        if (*con)
            return cmd_construct(p, R, common);
    } catch (const budget_error &e) {
        std::cerr << "budget: " << e.what() << '\n';
        return 2;
    } catch (const inconsistency_error &e) {
        std::cerr << "inconsistency: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument &e) {
        std::cerr << "usage: " << e.what() << '\n';
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
