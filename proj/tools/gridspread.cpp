#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gridspread/bounds.hpp"
#include "gridspread/construct.hpp"
#include "gridspread/core.hpp"
#include "gridspread/gridio.hpp"
#include "gridspread/metrics.hpp"
#include "gridspread/oracle.hpp"

namespace {

using namespace gridspread;

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string fmt_distance(double v, const Norm& p) {
    if (p.integral()) return std::to_string(std::llround(v));
    return fmt_double(v);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
    out << data;
    if (!out) throw ValidationError("failed writing '" + path + "'");
}

unsigned resolve_threads(const std::optional<unsigned>& flag) {
    if (flag) {
        if (*flag < 1) throw ValidationError("--threads must be a positive integer");
        return *flag;
    }
    if (const char* env = std::getenv("GRIDSPREAD_THREADS")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw ValidationError("GRIDSPREAD_THREADS must be a positive integer");
        return static_cast<unsigned>(v);
    }
    return 1;
}

struct ConstructArgs {
    std::uint64_t n = 0;
    std::uint64_t d = 2;
    std::string method = "auto";
    std::string out;
};

int run_construct(const ConstructArgs& args) {
    const GridSpec spec(args.n, args.d);
    const Construction c = args.method == "auto"
                               ? construct_auto(spec)
                               : construct_with_method(spec, parse_method(args.method));
    const std::string doc = serialize(c.pair);
    std::string plan;
    plan += "method=" + std::string(method_name(c.plan.method)) + "\n";
    plan += "k=" + std::to_string(c.plan.k) + "\n";
    plan += "guarantee=" + std::to_string(c.plan.guarantee) + "\n";
    if (args.out.empty()) {
        std::cerr << plan;
        std::cout << doc;
    } else {
        write_file(args.out, doc);
        std::cout << plan;
    }
    return 0;
}

struct VerifyArgs {
    std::string in;
    std::string p;
    std::string algorithm = "pruned";
    std::optional<unsigned> threads;
};

int run_verify(const VerifyArgs& args) {
    const Norm norm = Norm::parse(args.p);
    const unsigned threads = resolve_threads(args.threads);
    const PairDocument doc = parse_pair_document(read_file(args.in));
    VerifyReport report;
    if (args.algorithm == "pruned")
        report = min_combined_pruned(doc.pair, norm, threads);
    else if (args.algorithm == "naive")
        report = min_combined_naive(doc.pair, norm, threads);
    else
        throw ValidationError("unknown algorithm '" + args.algorithm + "'");
    std::cout << "min_combined=" << fmt_distance(report.min_combined, norm) << "\n";
    std::cout << "witness=" << doc.tokens[report.witness.first] << ","
              << doc.tokens[report.witness.second] << "\n";
    return 0;
}

struct BoundsArgs {
    std::uint64_t n = 0;
    std::uint64_t d = 2;
    std::string p = "inf";
};

int run_bounds(const BoundsArgs& args) {
    const Norm norm = Norm::parse(args.p);
    if (args.d < 2) throw ValidationError("dimension d must be at least 2");
    const BoundsReport r = bounds_report(args.n, static_cast<std::uint32_t>(args.d), norm);
    std::cout << "lower=" << r.lower << "\n";
    if (norm.infinite())
        std::cout << "upper=" << r.upper_linf << "\n";
    else
        std::cout << "upper=" << fmt_double(r.upper) << "\n";
    std::cout << "ratio=" << (r.ratio_defined ? fmt_double(r.ratio) : "undefined") << "\n";
    return 0;
}

struct OracleArgs {
    std::uint64_t n = 0;
    std::uint64_t d = 2;
    std::string p;
    bool count = false;
    std::optional<double> threshold;
    std::string out;
    std::string enumeration = "pruned";
    std::optional<unsigned> threads;
};

int run_oracle(const OracleArgs& args) {
    const GridSpec spec(args.n, args.d);
    const Norm norm = Norm::parse(args.p);
    OracleOptions opts;
    opts.threads = resolve_threads(args.threads);
    if (args.enumeration == "plain")
        opts.enumeration = Enumeration::plain;
    else if (args.enumeration == "pruned")
        opts.enumeration = Enumeration::pruned;
    else
        throw ValidationError("unknown enumeration mode '" + args.enumeration + "'");

    if (args.count) {
        if (!args.threshold) throw ValidationError("--count requires --threshold");
        if (!args.out.empty()) throw ValidationError("--out applies to optimum mode only");
        std::cout << "count=" << count_solutions(spec, norm, *args.threshold, opts) << "\n";
        return 0;
    }
    const OracleResult result = exact_optimum(spec, norm, opts);
    std::cout << "optimum=" << fmt_distance(result.optimum, norm) << "\n";
    if (!args.out.empty()) write_file(args.out, serialize(result.best_pair));
    return 0;
}

struct RenderArgs {
    std::string in;
    std::string format;
    std::string out;
    std::optional<std::uint64_t> k;
};

int run_render(const RenderArgs& args) {
    const PairDocument doc = parse_pair_document(read_file(args.in));
    const std::string text = render(doc, parse_render_format(args.format), args.k);
    if (args.out.empty())
        std::cout << text;
    else
        write_file(args.out, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"maximin combined-distance grid arrangements: construct, verify, bound, solve"};
    app.require_subcommand(1);

    ConstructArgs cons;
    CLI::App* c_cons = app.add_subcommand(
        "construct", "build an arrangement pair with a proven distance guarantee");
    c_cons->add_option("--n", cons.n, "grid side length")->required();
    c_cons->add_option("--d", cons.d, "grid dimension (default 2)");
    c_cons->add_option("--method", cons.method, "auto|special|general|identity (default auto)");
    c_cons->add_option("--out", cons.out, "write the pair document here instead of stdout");

    VerifyArgs ver;
    CLI::App* c_ver =
        app.add_subcommand("verify", "measure the exact minimum combined distance of a pair");
    c_ver->add_option("--in", ver.in, "pair document to verify")->required();
    c_ver->add_option("--p", ver.p, "norm: a positive integer or 'inf'")->required();
    c_ver->add_option("--algorithm", ver.algorithm, "pruned|naive (default pruned)");
    c_ver->add_option("--threads", ver.threads, "worker count (default $GRIDSPREAD_THREADS or 1)");

    BoundsArgs bnd;
    CLI::App* c_bnd =
        app.add_subcommand("bounds", "print the theoretical lower/upper bounds for an instance");
    c_bnd->add_option("--n", bnd.n, "grid side length")->required();
    c_bnd->add_option("--d", bnd.d, "grid dimension (default 2)");
    c_bnd->add_option("--p", bnd.p, "norm: a positive integer or 'inf' (default inf)");

    OracleArgs ora;
    CLI::App* c_ora = app.add_subcommand(
        "oracle", "exhaustively solve or count tiny instances (at most 9 cells)");
    c_ora->add_option("--n", ora.n, "grid side length")->required();
    c_ora->add_option("--d", ora.d, "grid dimension (default 2)");
    c_ora->add_option("--p", ora.p, "norm: a positive integer or 'inf'")->required();
    CLI::Option* count_flag =
        c_ora->add_flag("--count", ora.count, "count arrangements meeting --threshold");
    c_ora->add_option("--threshold", ora.threshold, "minimum combined distance to count")
        ->needs(count_flag);
    c_ora->add_option("--out", ora.out, "write the best pair document here");
    c_ora->add_option("--enumeration", ora.enumeration, "pruned|plain (default pruned)");
    c_ora->add_option("--threads", ora.threads, "worker count (default $GRIDSPREAD_THREADS or 1)");

    RenderArgs ren;
    CLI::App* c_ren = app.add_subcommand("render", "render a pair document as text or svg");
    c_ren->add_option("--in", ren.in, "pair document to render")->required();
    c_ren->add_option("--format", ren.format, "text|svg")->required();
    c_ren->add_option("--out", ren.out, "write here instead of stdout");
    c_ren->add_option("--k", ren.k, "color cells by residues mod k (svg)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (c_cons->parsed()) return run_construct(cons);
        if (c_ver->parsed()) return run_verify(ver);
        if (c_bnd->parsed()) return run_bounds(bnd);
        if (c_ora->parsed()) return run_oracle(ora);
        if (c_ren->parsed()) return run_render(ren);
        return 1;
    } catch (const gridspread::SizeRefusal& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const gridspread::InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    } catch (const gridspread::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
