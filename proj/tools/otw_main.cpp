// Command-line driver: build the algebra, run the exact verification suite,
// decompose the standard module, and export the block-diagonalization data.
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "otw/decomp.hpp"
#include "otw/export_io.hpp"
#include "otw/odd_graph.hpp"
#include "otw/orbit_basis.hpp"
#include "otw/scheme.hpp"
#include "otw/spectral.hpp"
#include "otw/verify.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCheckFailed = 1;

struct Pipeline {
    otw::GraphContext ctx;
    otw::TypeIndexSet types;
    otw::DistanceMatrices dm;
    otw::DualIdempotents dual;
    otw::OrbitBasis ob;
};

Pipeline build_pipeline(int m) {
    Pipeline p;
    p.ctx = otw::enum_vertices(m);
    p.types = otw::enum_valid_types(m);
    p.dm = otw::build_distance_matrices(p.ctx);
    p.dual = otw::build_dual_idempotents(p.ctx, p.dm);
    p.ob = otw::build_orbit_basis(p.ctx, p.types);
    return p;
}

int resolve_threads(std::optional<int> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("OTW_THREADS")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (...) {
            return 1;
        }
    }
    return 1;
}

struct Timer {
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                             start)
            .count();
    }
};

void print_check(const otw::CheckResult& res, double secs) {
    std::cout << (res.ok ? "PASS" : "FAIL") << "  " << res.name << "  ("
              << secs << " s)";
    if (!res.detail.empty()) std::cout << "  " << res.detail;
    std::cout << '\n';
}

const std::set<std::string> kCheckNames{"dims",       "prop35", "centralizer",
                                        "generation", "lemma51", "blockdiag",
                                        "all"};

int run_verify(int m, std::vector<std::string> checks, int threads) {
    (void)threads;  // checks run sequentially; results are order-independent
    if (checks.empty()) checks = {"all"};
    bool want_all = false;
    for (const auto& c : checks)
        if (c == "all") want_all = true;
    auto selected = [&](const std::string& name) {
        if (want_all) return true;
        for (const auto& c : checks)
            if (c == name) return true;
        return false;
    };
    if (!want_all)
        for (const auto& c : checks)
            if (!kCheckNames.count(c)) {
                std::cerr << "unknown check '" << c << "'\n";
                return kExitUsage;
            }
    if (selected("blockdiag") && !want_all && m < 3) {
        std::cerr << "blockdiag requires m >= 3\n";
        return kExitUsage;
    }

    bool all_ok = true;
    auto record = [&](const otw::CheckResult& res, const Timer& t) {
        print_check(res, t.seconds());
        all_ok = all_ok && res.ok;
    };

    if (selected("dims")) {
        Timer t;
        otw::CheckResult res{"dims"};
        const long long got = otw::enum_valid_types(m).size();
        const long long expect = otw::binomial(m + 4, 4);
        res.detail = "dim T = " + std::to_string(got);
        if (got != expect)
            res.fail("expected C(m+4,4) = " + std::to_string(expect));
        record(res, t);
    }

    std::optional<Pipeline> pipe;
    auto pipeline = [&]() -> Pipeline& {
        if (!pipe) pipe = build_pipeline(m);
        return *pipe;
    };

    if (selected("prop35")) {
        Timer t;
        auto& p = pipeline();
        record(otw::verify_prop35(p.ctx, p.dm, p.dual, p.ob), t);
    }
    if (selected("centralizer")) {
        Timer t;
        auto& p = pipeline();
        otw::CheckResult res = otw::verify_centralizer(p.ctx, p.ob);
        if (m <= 2) {
            const otw::CheckResult oracle = otw::stabilizer_orbit_oracle(p.ctx);
            if (!oracle.ok) res.fail(oracle.detail);
        }
        record(res, t);
    }
    if (selected("generation")) {
        Timer t;
        auto& p = pipeline();
        const otw::StructureConstants sc = otw::structure_constants(p.ob, p.ctx);
        record(otw::verify_generation(p.ctx, p.dm, p.dual, p.ob, sc), t);
    }
    if (selected("lemma51")) {
        Timer t;
        auto& p = pipeline();
        record(otw::verify_lemma51(p.ctx, p.dm, p.dual, p.ob), t);
    }
    if (selected("blockdiag")) {
        if (m < 3) {
            std::cout << "SKIP  blockdiag  (requires m >= 3)\n";
        } else {
            Timer t;
            auto& p = pipeline();
            otw::CheckResult res{"blockdiag"};
            try {
                const otw::SpectralData sd = otw::build_spectral(p.dm);
                const otw::Decomposition dec =
                    otw::decompose(p.ctx, p.dm, p.dual, p.ob, sd);
                const otw::BlockStructureResult bs =
                    otw::verify_block_structure(dec, p.ob);
                if (!bs.ok) res.fail(bs.detail);
                if (bs.center_dimension !=
                    static_cast<long long>(dec.upsilon.pairs.size()))
                    res.fail("center dimension mismatch");
                if (!dec.report.multiplicity_crosscheck_ok)
                    res.fail("eigenvalue multiplicity cross-check failed");
                std::string sizes, mults;
                for (std::size_t i = 0; i < dec.report.pairs.size(); ++i) {
                    sizes += (sizes.empty() ? "" : ",") +
                             std::to_string(dec.report.pairs[i].second + 1);
                    mults += (mults.empty() ? "" : ",") +
                             std::to_string(dec.report.multiplicities[i]);
                }
                res.detail = "block sizes (" + sizes + "), multiplicities (" +
                             mults + ")";
            } catch (const std::exception& ex) {
                res.fail(ex.what());
            }
            record(res, t);
        }
    }
    return all_ok ? 0 : kExitCheckFailed;
}

int run_build(int m) {
    const Timer t;
    const Pipeline p = build_pipeline(m);
    long long nnz = 0;
    for (const auto& mat : p.ob.mats) nnz += mat.nnz();
    std::cout << "m = " << m << '\n'
              << "vertices      " << p.ctx.vertex_count << '\n'
              << "dim T         " << p.types.size() << '\n'
              << "orbit support " << nnz << " (= |X|^2)\n"
              << "built in " << t.seconds() << " s\n";
    return 0;
}

int run_decompose(int m, bool do_export, const std::string& out_dir,
                  const std::string& format) {
    const Timer t;
    const Pipeline p = build_pipeline(m);
    const otw::SpectralData sd = otw::build_spectral(p.dm);
    if (sd.valid_orderings.size() > 1)
        std::cerr << "warning: " << sd.valid_orderings.size()
                  << " valid Q-polynomial orderings; using the "
                     "lexicographically smallest eigenvalue sequence\n";
    const otw::Decomposition dec = otw::decompose(p.ctx, p.dm, p.dual, p.ob, sd);
    const otw::BlockStructureResult bs = otw::verify_block_structure(dec, p.ob);
    if (!bs.ok) {
        std::cerr << "block structure verification failed: " << bs.detail
                  << '\n';
        return kExitCheckFailed;
    }

    std::cout << "m = " << m << ", |X| = " << p.ctx.vertex_count
              << ", dim T = " << dec.report.dim_t << '\n';
    std::cout << "eigenvalues (Q-order):";
    for (long long e : sd.eigenvalues) std::cout << ' ' << e;
    std::cout << '\n';
    std::cout << "mu  d  block  multiplicity\n";
    for (std::size_t i = 0; i < dec.report.pairs.size(); ++i)
        std::cout << dec.report.pairs[i].first << "   "
                  << dec.report.pairs[i].second << "  "
                  << dec.report.pairs[i].second + 1 << "      "
                  << dec.report.multiplicities[i] << '\n';
    std::cout << "center dimension " << bs.center_dimension << '\n';

    if (do_export) {
        const otw::StructureConstants sc = otw::structure_constants(p.ob, p.ctx);
        const auto paths = otw::write_export_bundle(
            out_dir, otw::parse_format(format), p.ctx, sd, p.ob, sc, dec, bs);
        std::cout << "bundle written to " << out_dir << '\n';
    }
    std::cout << "done in " << t.seconds() << " s\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Terwilliger algebra of the Odd graph: exact construction, "
                 "verification and block-diagonalization"};
    app.require_subcommand(1);

    int m = 0;
    std::vector<std::string> checks;
    std::string out_dir = "otw-export";
    std::string format = "csv";
    std::optional<int> threads_flag;

    auto add_common = [&](CLI::App* cmd, int cap) {
        cmd->add_option("-m", m, "parameter m of O_{m+1}")
            ->required()
            ->check(CLI::Range(1, cap));
        cmd->add_option("--threads", threads_flag,
                        "worker threads (default: OTW_THREADS or 1)");
    };

    CLI::App* build = app.add_subcommand("build", "construct the algebra");
    add_common(build, 6);
    CLI::App* verify = app.add_subcommand("verify", "run exact checks");
    add_common(verify, 6);
    verify->add_option("--check", checks,
                       "dims|prop35|centralizer|generation|lemma51|blockdiag|all");
    CLI::App* decompose =
        app.add_subcommand("decompose", "decompose the standard module");
    add_common(decompose, 5);
    CLI::App* exp = app.add_subcommand("export", "write the data bundle");
    add_common(exp, 5);
    exp->add_option("--out", out_dir, "output directory");
    exp->add_option("--format", format, "flat-table format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    const int threads = resolve_threads(threads_flag);
    try {
        if (build->parsed()) return run_build(m);
        if (verify->parsed()) return run_verify(m, checks, threads);
        if (decompose->parsed()) {
            if (m < 3) {
                std::cerr << "decompose requires 3 <= m <= 5\n";
                return kExitUsage;
            }
            return run_decompose(m, false, out_dir, format);
        }
        if (exp->parsed()) {
            if (m < 3) {
                std::cerr << "export requires 3 <= m <= 5\n";
                return kExitUsage;
            }
            return run_decompose(m, true, out_dir, format);
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return kExitCheckFailed;
    }
    return 0;
}
