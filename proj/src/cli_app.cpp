#include "circuitarray/cli_app.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "circuitarray/conjectures.hpp"
#include "circuitarray/grid.hpp"
#include "circuitarray/resistance.hpp"
#include "json.hpp"

namespace circuitarray {

namespace {

namespace fs = std::filesystem;

fs::path output_dir(const std::string& flagValue) {
    if (!flagValue.empty()) return flagValue;
    if (const char* env = std::getenv("CIRCUITARRAY_OUT_DIR")) return env;
    return ".";
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string render_table(const CircuitArrayTable& table, const std::string& format) {
    if (format == "md") return table_to_markdown(table);
    if (format == "json") return table_to_json(table);
    if (format == "csv") return table_to_csv(table);
    throw CLI::ValidationError("--format", "format must be json, csv or md");
}

CircuitArrayTable build_variant(const std::string& variant, int maxJ, int maxRow,
                                bool useGridOracle) {
    if (variant == "c")
        return useGridOracle ? build_numeric_array_via_grid(maxJ) : build_numeric_array(maxJ);
    if (variant == "cx") return build_cx_array(maxJ);
    if (variant == "cm") return build_cm_array(maxRow, maxJ);
    throw CLI::ValidationError("variant", "variant must be c, cx or cm");
}

int cmd_array(const std::string& variant, int maxJ, int maxRow, const std::string& format,
              const std::string& outPath, bool useGridOracle) {
    CircuitArrayTable table = build_variant(variant, maxJ, maxRow, useGridOracle);
    std::string rendered = render_table(table, format);
    if (outPath.empty()) {
        std::cout << rendered;
    } else {
        write_file(outPath, rendered);
        std::cout << "wrote " << outPath << "\n";
    }
    return 0;
}

int cmd_reduce(int n, int times, bool withTails, const std::vector<std::string>& assigns,
               const std::string& outPath) {
    if (times < 0 || n < times + 1) {
        std::cerr << "error: an n-grid admits at most n-1 reductions (n=" << n
                  << ", times=" << times << ")\n";
        return 2;
    }
    GridLabeling g = make_all_one_grid(n);
    std::array<RationalFunction, 3> tails = {RationalFunction::constant({}, 0),
                                             RationalFunction::constant({}, 0),
                                             RationalFunction::constant({}, 0)};
    for (int i = 0; i < times; ++i) {
        if (withTails) {
            ReductionWithTails rt = reduce_with_tails(g);
            g = std::move(rt.child);
            tails = std::move(rt.tails);
        } else {
            g = reduce_grid(g);
        }
    }
    std::map<std::string, Rational> assignment;
    for (const std::string& a : assigns) {
        auto eq = a.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: --assign expects VAR=VALUE\n";
            return 2;
        }
        assignment[a.substr(0, eq)] = parse_rational(a.substr(eq + 1));
    }
    std::string body = grid_to_json(g);
    if (withTails) {
        nlohmann::json j = nlohmann::json::parse(body);
        nlohmann::json t = nlohmann::json::array();
        for (const auto& tail : tails) t.push_back(to_string(tail.constant_value()));
        j["tails"] = std::move(t);
        body = j.dump(2);
    }
    if (!assignment.empty()) {
        // Evaluated view appended for convenience when an assignment is given.
        nlohmann::json j = nlohmann::json::parse(body);
        for (auto& e : j["edges"]) {
            EdgeAddress addr{e["r"].get<int>(), e["d"].get<int>(),
                             side_from_letter(e["side"].get<std::string>()[0])};
            e["evaluated"] =
                to_string(substitute(g.label(addr.row, addr.diagonal, addr.side), assignment));
        }
        body = j.dump(2);
    }
    if (outPath.empty()) {
        std::cout << body << "\n";
    } else {
        write_file(outPath, body);
        std::cout << "wrote " << outPath << "\n";
    }
    return 0;
}

int cmd_recur(const std::string& inputPath, unsigned maxOrder, unsigned kMax) {
    std::vector<Rational> terms = read_sequence_file(inputPath);
    ExactSequence seq{terms, 0};
    unsigned effOrder = terms.size() >= 4
                            ? std::min<unsigned>(maxOrder,
                                                 static_cast<unsigned>((terms.size() - 2) / 2))
                            : 0;
    if (effOrder < 1) {
        std::cerr << "inconclusive: need at least 4 terms (have " << terms.size() << ")\n";
        return 3;
    }
    auto op = minimal_annihilator(seq, effOrder);
    if (!op) {
        std::cerr << "inconclusive: no annihilator of order <= " << effOrder << " over "
                  << terms.size() << " terms\n";
        return 3;
    }
    auto fac = powers_of_nine_factorization(*op, kMax);
    std::cout << "annihilator: " << op->to_string() << "\n";
    std::cout << "factored:    " << fac.to_string() << "\n";
    std::cout << "order:       " << op->degree() << "\n";
    std::cout << "verified:    annihilates all " << terms.size()
              << " terms (including the held-out tail)\n";
    return 0;
}

int cmd_audit(int cMax, unsigned maxOrder, unsigned kMax, bool extended, bool useGridOracle,
              const std::string& outFlag) {
    AuditOptions opts;
    opts.cMax = cMax;
    opts.maxOrder = maxOrder;
    opts.kMax = kMax;
    opts.extended = extended;
    opts.useGridOracle = useGridOracle;
    AuditResult result = run_audit(opts);
    fs::path dir = output_dir(outFlag);
    write_file(dir / "verdict.json", result.verdictJson);
    write_file(dir / "ledger.md", result.ledgerMarkdown);
    std::cout << "checks: " << result.report.checks.size()
              << "  pass: " << result.report.count(CheckStatus::Pass)
              << "  fail: " << result.report.count(CheckStatus::Fail)
              << "  reference-discrepancy: "
              << result.report.count(CheckStatus::ReferenceDiscrepancy)
              << "  inconclusive: " << result.report.count(CheckStatus::Inconclusive) << "\n";
    std::cout << "wrote " << (dir / "verdict.json").string() << " and "
              << (dir / "ledger.md").string() << "\n";
    return 0;
}

int cmd_tables(const std::string& outFlag) {
    fs::path dir = output_dir(outFlag);
    struct Spec {
        const char* variant;
        int maxJ;
        int maxRow;
    };
    for (const Spec& s : {Spec{"c", 4, -1}, Spec{"cx", 4, -1}, Spec{"cm", 4, 3}}) {
        CircuitArrayTable table = build_variant(s.variant, s.maxJ, s.maxRow, false);
        for (const char* fmt : {"md", "json", "csv"}) {
            fs::path p = dir / (std::string("table_") + s.variant + "." + fmt);
            write_file(p, render_table(table, fmt));
            std::cout << "wrote " << p.string() << "\n";
        }
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"exact circuit arrays of triangular resistor grids: build the numeric, "
                 "one-variable and multivariable arrays, reduce grids, mine linear recurrences, "
                 "and audit the built-in reference material"};
    app.require_subcommand(1);

    // array
    std::string variant, format = "md", outPath;
    int maxJ = 4, maxRow = 3;
    bool useGridOracle = false;
    CLI::App* array = app.add_subcommand("array", "build a circuit array and emit it");
    array->add_option("variant", variant, "c (numeric), cx (one-variable) or cm (multivariable)")
        ->required();
    array->add_option("--max-j", maxJ, "last column")->check(CLI::PositiveNumber);
    array->add_option("--max-row", maxRow, "row cap for the multivariable array (at most 3)");
    array->add_option("--format", format, "json, csv or md");
    array->add_option("--out", outPath, "output file (default: stdout)");
    array->add_flag("--use-grid-oracle", useGridOracle,
                    "build the numeric array by actual grid reduction");

    // reduce
    int n = 3, times = 1;
    bool withTails = false;
    std::vector<std::string> assigns;
    std::string reduceOut;
    CLI::App* reduce = app.add_subcommand("reduce", "row-reduce an all-one n-grid");
    reduce->add_option("--n", n, "grid size")->required()->check(CLI::PositiveNumber);
    reduce->add_option("--times", times, "number of reductions")->required();
    reduce->add_flag("--with-tails", withTails, "include the discarded corner tails");
    reduce->add_option("--assign", assigns, "VAR=VALUE evaluation of the labels (repeatable)");
    reduce->add_option("--out", reduceOut, "output file (default: stdout)");

    // recur
    std::string seqPath;
    unsigned maxOrder = 12, kMax = 8;
    CLI::App* recur = app.add_subcommand("recur", "mine the minimal annihilator of a sequence file");
    recur->add_option("input", seqPath, "file with one rational term per line")->required();
    recur->add_option("--max-order", maxOrder, "largest recurrence order tried");
    recur->add_option("--k-max", kMax, "largest k for (E-9^k) factors");

    // audit
    int cMax = 3;
    unsigned auditOrder = 12, auditKMax = 8;
    bool extended = false, auditGrid = false;
    std::string auditOut;
    CLI::App* audit = app.add_subcommand(
        "audit", "verify closed forms, factor structure and the nine-power conjectures");
    audit->add_option("--c-max", cMax, "covers rows up to 2(c-1)+1")->check(CLI::PositiveNumber);
    audit->add_option("--max-order", auditOrder, "largest recurrence order tried");
    audit->add_option("--k-max", auditKMax, "largest k for (E-9^k) factors");
    audit->add_flag("--extended", extended, "also mine rows 6-7 of the one-variable array");
    audit->add_flag("--use-grid-oracle", auditGrid, "cross-check against actual grid reduction");
    audit->add_option("--out", auditOut, "output directory (default: CIRCUITARRAY_OUT_DIR or .)");

    // tables
    std::string tablesOut;
    CLI::App* tables = app.add_subcommand("tables", "regenerate all golden table files");
    tables->add_option("--out", tablesOut, "output directory (default: CIRCUITARRAY_OUT_DIR or .)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*array) return cmd_array(variant, maxJ, maxRow, format, outPath, useGridOracle);
        if (*reduce) return cmd_reduce(n, times, withTails, assigns, reduceOut);
        if (*recur) return cmd_recur(seqPath, maxOrder, kMax);
        if (*audit) return cmd_audit(cMax, auditOrder, auditKMax, extended, auditGrid, auditOut);
        if (*tables) return cmd_tables(tablesOut);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace circuitarray
