#include "hplp/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "hplp/analysis.hpp"
#include "hplp/error.hpp"
#include "hplp/explanations.hpp"
#include "hplp/json_io.hpp"
#include "hplp/parser.hpp"
#include "hplp/printer.hpp"
#include "hplp/sampler.hpp"

namespace hplp::cli {

namespace {

struct Config {
    std::string command;
    std::string program_path;
    std::string query;
    bool exact = false;
    bool mc = false;
    std::size_t samples = 10000;
    std::uint64_t seed = 1;
    std::string epsilon = "1e-7";
    std::size_t max_depth = 0;  // 0: mode default
    int workers = 0;
    std::string format = "json";
    bool force = false;
    std::size_t unfold_depth = kDefaultUnfoldDepth;
};

bool read_file(const std::string& path, std::string& text) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
    return true;
}

void print(std::ostream& out, const Config& cfg, const Json& json, const std::string& text) {
    if (cfg.format == "text")
        out << text;
    else
        out << json.dump(2) << "\n";
}

void print_diagnostics(std::ostream& err, const std::string& path, const Report& report) {
    for (const auto& d : report.diagnostics)
        err << path << ":" << d.location.line << ":" << d.location.col << ": " << to_string(d.severity) << " "
            << to_string(d.rule) << ": " << d.message << "\n";
}

int load(const Config& cfg, Program& program, std::ostream& err) {
    std::string text;
    if (!read_file(cfg.program_path, text)) {
        err << "hplp: cannot open " << cfg.program_path << "\n";
        return kNoInput;
    }
    try {
        program = parse_program(text);
    } catch (const ParseError& e) {
        err << cfg.program_path << ": " << e.what() << "\n";
        return kDataError;
    }
    return kOk;
}

int do_check(const Config& cfg, std::ostream& out, std::ostream& err) {
    Program program;
    if (int rc = load(cfg, program, err)) return rc;
    Report report = validate(program, cfg.unfold_depth);
    print(out, cfg, to_json(report), to_text(report));
    switch (report.verdict) {
        case Verdict::WellDefined: return kOk;
        case Verdict::IllDefined: return kIllDefined;
        case Verdict::Unverified: return kUnverified;
    }
    return kOk;
}

int do_ast(const Config& cfg, std::ostream& out, std::ostream& err) {
    Program program;
    if (int rc = load(cfg, program, err)) return rc;
    if (cfg.format == "text")
        out << to_text(program);
    else
        out << to_json(program).dump(2) << "\n";
    return kOk;
}

int do_query(const Config& cfg, std::ostream& out, std::ostream& err) {
    Program program;
    if (int rc = load(cfg, program, err)) return rc;
    std::vector<Literal> query;
    try {
        query = parse_query(cfg.query);
    } catch (const ParseError& e) {
        err << "query: " << e.what() << "\n";
        return kDataError;
    }

    Report report = validate(program, cfg.unfold_depth);
    print_diagnostics(err, cfg.program_path, report);
    if (report.verdict == Verdict::IllDefined) {
        if (report.has_rule(Rule::ContIndex)) {
            err << "hplp: program indexes on continuous values; it has no defined answer\n";
            return kIllDefined;
        }
        if (!cfg.force) {
            err << "hplp: program is ill-defined (use --force to run anyway)\n";
            return kIllDefined;
        }
    } else if (report.verdict == Verdict::Unverified && !cfg.force) {
        err << "hplp: well-definedness could not be verified (use --force to run anyway)\n";
        return kUnverified;
    }
    QueryCheck qc = check_query(program, query);
    if (!qc.ground_instantiable && !cfg.force) {
        err << "hplp: query is not ground-instantiable: " << qc.reason << " (use --force to run anyway)\n";
        return kIllDefined;
    }

    try {
        if (cfg.exact) {
            ExactOptions opts;
            opts.epsilon = parse_rational(cfg.epsilon);
            if (opts.epsilon <= 0) {
                err << "hplp: --epsilon must be positive\n";
                return kUsage;
            }
            if (cfg.max_depth) opts.max_depth = cfg.max_depth;
            if (opts.initial_depth > opts.max_depth) opts.initial_depth = opts.max_depth;
            ProbabilityBound b = exact_query(program, query, opts);
            print(out, cfg, to_json(b), to_text(b));
        } else {
            SamplerOptions opts;
            opts.samples = cfg.samples;
            opts.seed = cfg.seed;
            if (cfg.max_depth) opts.depth_bound = cfg.max_depth;
            opts.workers = cfg.workers;
            Estimate e = estimate(program, query, opts);
            for (const auto& w : e.warnings) err << "hplp: warning: " << w << "\n";
            print(out, cfg, to_json(e), to_text(e));
        }
    } catch (const Error& e) {
        err << "hplp: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return kInferenceError;
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    if (const char* env = std::getenv("HPLP_SEED")) {
        try {
            std::size_t used = 0;
            cfg.seed = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            err << "hplp: HPLP_SEED is not an unsigned integer: " << env << "\n";
            return kUsage;
        }
    }

    CLI::App app{"Hybrid probabilistic logic programs: validation and inference", "hplp"};
    app.require_subcommand(1);
    auto formats = CLI::IsMember({"json", "text"});

    auto* check = app.add_subcommand("check", "Validate a program and print its report");
    check->add_option("program", cfg.program_path, "Program file")->required();
    check->add_option("--format", cfg.format, "Output format")->check(formats);
    check->add_option("--unfold-depth", cfg.unfold_depth, "Unfolding depth for the exclusivity check");

    auto* query = app.add_subcommand("query", "Compute the probability of a query");
    query->add_option("program", cfg.program_path, "Program file")->required();
    query->add_option("query", cfg.query, "Query, e.g. \"p(a), \\+ q\"")->required();
    auto* exact = query->add_flag("--exact", cfg.exact, "Exact inference by explanation enumeration");
    auto* mc = query->add_flag("--mc", cfg.mc, "Monte Carlo estimation");
    exact->excludes(mc);
    query->add_option("--samples", cfg.samples, "Number of samples")->check(CLI::PositiveNumber);
    query->add_option("--seed", cfg.seed, "Random seed (default: $HPLP_SEED or 1)");
    query->add_option("--epsilon", cfg.epsilon, "Width of the exact bound, as a rational");
    query->add_option("--max-depth", cfg.max_depth, "Resolution depth bound")->check(CLI::PositiveNumber);
    query->add_option("--workers", cfg.workers, "Sampler threads (0: all)")->check(CLI::NonNegativeNumber);
    query->add_option("--format", cfg.format, "Output format")->check(formats);
    query->add_flag("--force", cfg.force, "Run inference despite validation errors");
    query->add_option("--unfold-depth", cfg.unfold_depth, "Unfolding depth for the exclusivity check");

    auto* ast = app.add_subcommand("ast", "Print the parsed program");
    ast->add_option("program", cfg.program_path, "Program file")->required();
    ast->add_option("--format", cfg.format, "Output format")->check(formats);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(rev);
        if (query->parsed() && cfg.exact == cfg.mc)
            throw CLI::ValidationError("query", "exactly one of --exact or --mc is required");
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    if (check->parsed()) return do_check(cfg, out, err);
    if (query->parsed()) {
        if (cfg.exact) {
            try {
                if (parse_rational(cfg.epsilon) <= 0) throw Error(ErrorKind::InvalidArgument, "not positive");
            } catch (const std::exception&) {
                err << "hplp: --epsilon must be a positive rational: " << cfg.epsilon << "\n";
                return kUsage;
            }
        }
        return do_query(cfg, out, err);
    }
    return do_ast(cfg, out, err);
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    return run(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace hplp::cli
