#pragma once

// Command-line front end, written as a library so the whole surface is
// testable in-process: job parsing with a canonical round-trip text form,
// execution, and deterministic JSON/CSV emission.
//
// Exit codes:
//   0  success / all checks passed
//   1  at least one verification check failed
//   2  usage error (bad flags, malformed specs, out-of-domain parameters)
//   3  a quadrature estimate did not converge
//
// Output contract (schema_version "1"):
//   JSON: {schema_version, job, results:[{id, inputs, value, error_estimate,
//         flags}]}.  Rationals are serialized as "num/den" strings, floats as
//         decimals with 17 significant digits; non-finite floats are emitted
//         as the strings "inf" / "-inf" / "nan".
//   CSV:  fixed per-command column order (see csv_columns_help); identical
//         jobs produce byte-identical files.

#include "lpsteiner/bodyspec.hpp"
#include "lpsteiner/steiner.hpp"
#include "lpsteiner/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace lpsteiner {

enum ExitCode : int {
    exit_ok = 0,
    exit_check_fail = 1,
    exit_usage = 2,
    exit_unconverged = 3,
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct JobSpec {
    std::string command;             // coeff | asa | steiner | series | verify | sweep
    std::string body;                // canonical catalog spec (body commands)
    int n = 0;                       // explicit dimension (coeff, sweep)
    std::string p;                   // canonical "num/den" | "inf" | "-inf"
    std::string s = "0/1";           // second index of the two-index surface area
    int m = -1;                      // restrict to one coefficient row; -1 = all
    int k_lo = 0, k_hi = 0;          // inclusive degree range
    std::vector<double> t;           // parallel-body offsets
    int kmax = 0;                    // series truncation; 0 = auto (60 in 2D, 40 in 3D)
    double tol = 0.0;                // quadrature tolerance; 0 = module default
    std::string route = "boundary";  // steiner route: boundary | sphere
    std::string suite = "all";       // verify suite
    std::string family;              // sweep family: rounded-cube | lr-ball
    std::vector<double> l;           // rounded-cube sweep parameters
    double r = 4.0;                  // lr-ball exponent
    int levels = 5;                  // lr-ball sweep quadrature levels
    std::string format = "json";     // json | csv
    std::string out;                 // output path; empty = stdout
};

inline const char* csv_columns_help() {
    return "CSV columns (fixed order):\n"
           "  coeff:   n,p,k,coefficient\n"
           "  asa:     body,p,s,value,error_estimate,flags\n"
           "  steiner: quantity,m,k,value,error_estimate,flags\n"
           "  series:  kind,index,value,error_estimate,flags\n"
           "  verify:  id,inputs,status,expected,computed,tolerance,mode,provenance,note\n"
           "  sweep:   id,inputs,status,expected,computed,tolerance,mode,provenance,note\n";
}

namespace detail {

inline int parse_int_strict(const std::string& s, const std::string& what) {
    if (s.empty()) throw UsageError("empty " + what);
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size())
        throw UsageError("bad integer '" + s + "' for " + what);
    return static_cast<int>(v);
}

inline std::pair<int, int> parse_k_range(const std::string& s) {
    std::size_t pos = s.find("..");
    int lo, hi;
    if (pos == std::string::npos) {
        lo = hi = parse_int_strict(s, "--k");
    } else {
        lo = parse_int_strict(s.substr(0, pos), "--k low end");
        hi = parse_int_strict(s.substr(pos + 2), "--k high end");
    }
    if (lo < 0 || hi < lo) throw UsageError("--k range must satisfy 0 <= lo <= hi");
    return {lo, hi};
}

inline std::string format_k_range(int lo, int hi) {
    return std::to_string(lo) + ".." + std::to_string(hi);
}

inline std::string format_number_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += fmt17(v[i]);
    }
    return s;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

// A float rendered as a JSON value: bare decimal, or a quoted string for the
// non-finite cases JSON itself cannot represent.
inline std::string json_number(double v) {
    if (!std::isfinite(v)) return "\"" + fmt17(v) + "\"";
    return fmt17(v);
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

struct ResultRow {
    std::string id, inputs;
    bool exact = false;      // value_text is an exact rational "num/den"
    std::string value_text;  // rational string, or fmt17 decimal
    double error_estimate = 0.0;
    std::vector<std::string> flags;
};

struct CommandOutput {
    std::vector<ResultRow> rows;
    std::string csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    std::string human;  // optional human-readable summary
    int exit_code = exit_ok;
};

inline std::string render_json(const std::string& job_line,
                               const std::vector<ResultRow>& rows) {
    std::ostringstream os;
    os << "{\n  \"schema_version\": \"1\",\n  \"job\": \"" << json_escape(job_line)
       << "\",\n  \"results\": [";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ResultRow& r = rows[i];
        os << (i ? ",\n" : "\n") << "    {\"id\": \"" << json_escape(r.id)
           << "\", \"inputs\": \"" << json_escape(r.inputs) << "\", \"value\": "
           << (r.exact ? "\"" + json_escape(r.value_text) + "\"" : r.value_text)
           << ", \"error_estimate\": " << json_number(r.error_estimate)
           << ", \"flags\": [";
        for (std::size_t f = 0; f < r.flags.size(); ++f)
            os << (f ? ", " : "") << "\"" << json_escape(r.flags[f]) << "\"";
        os << "]}";
    }
    os << "\n  ]\n}\n";
    return os.str();
}

inline std::string render_csv(const CommandOutput& co) {
    std::ostringstream os;
    os << co.csv_header << "\n";
    for (const std::vector<std::string>& row : co.csv_rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << csv_field(row[i]);
        os << "\n";
    }
    return os.str();
}

inline std::string join_flags(const std::vector<std::string>& flags) {
    std::string s;
    for (std::size_t i = 0; i < flags.size(); ++i) {
        if (i) s += ";";
        s += flags[i];
    }
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Canonical text form of a job: parse_job(format_job(j)) reproduces j, and
// format is idempotent.  Only the flags meaningful for the command appear,
// in a fixed order, with all values canonicalized.

inline std::string format_job(const JobSpec& j) {
    std::ostringstream os;
    os << j.command;
    auto flag = [&os](const char* name, const std::string& v) {
        os << " --" << name << " " << v;
    };
    if (j.command == "coeff") {
        flag("n", std::to_string(j.n));
        flag("p", j.p);
        flag("k", detail::format_k_range(j.k_lo, j.k_hi));
    } else if (j.command == "asa") {
        flag("body", j.body);
        flag("p", j.p);
        flag("s", j.s);
    } else if (j.command == "steiner") {
        flag("body", j.body);
        flag("p", j.p);
        if (j.m >= 0) flag("m", std::to_string(j.m));
        flag("k", detail::format_k_range(j.k_lo, j.k_hi));
        flag("route", j.route);
    } else if (j.command == "series") {
        flag("body", j.body);
        flag("p", j.p);
        flag("t", detail::format_number_list(j.t));
        if (j.kmax > 0) flag("kmax", std::to_string(j.kmax));
    } else if (j.command == "verify") {
        flag("suite", j.suite);
    } else if (j.command == "sweep") {
        flag("family", j.family);
        flag("n", std::to_string(j.n));
        flag("p", j.p);
        if (j.family == "rounded-cube") {
            flag("l", detail::format_number_list(j.l));
            flag("k", detail::format_k_range(j.k_lo, j.k_hi));
        } else {
            flag("r", fmt17(j.r));
            flag("levels", std::to_string(j.levels));
        }
    }
    if (j.tol > 0.0) flag("tol", fmt17(j.tol));
    flag("format", j.format);
    if (!j.out.empty()) flag("out", j.out);
    return os.str();
}

// Parse an argument vector (without the program name).  Returns nullopt when
// the invocation only asked for help (the text has been written to help_out);
// throws UsageError on anything malformed.
inline std::optional<JobSpec> parse_job(const std::vector<std::string>& args,
                                        std::ostream& help_out) {
    JobSpec j;
    std::string k_range;

    CLI::App app{
        "Expansion coefficients, surface-area functionals, series, and "
        "verification suites for convex bodies"};
    app.require_subcommand(1);
    app.footer(std::string(body_spec_help()) + "\n" + csv_columns_help() +
               "\nEnvironment: LPSTEINER_THREADS caps the quadrature worker count.");

    auto add_common = [&](CLI::App* c, bool with_tol) {
        c->add_option("--format", j.format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        c->add_option("--out", j.out, "output file path (default: stdout)");
        if (with_tol)
            c->add_option("--tol", j.tol, "quadrature tolerance override")
                ->check(CLI::PositiveNumber);
    };

    CLI::App* coeff = app.add_subcommand(
        "coeff", "Exact expansion coefficients of the unit ball (closed binomial form)");
    coeff->add_option("--n", j.n, "dimension")->required()->check(CLI::Range(2, 12));
    coeff->add_option("--p", j.p, "parameter: rational a/b, integer, or inf/-inf")
        ->required();
    coeff->add_option("--k", k_range, "degree or range lo..hi")->required();
    add_common(coeff, false);

    CLI::App* asa = app.add_subcommand(
        "asa", "Surface-area functional of a body (two-index variant via --s)");
    asa->add_option("--body", j.body, "body spec (see footer)")->required();
    asa->add_option("--p", j.p, "parameter")->required();
    asa->add_option("--s", j.s, "second index (rational; 0 = plain functional)");
    add_common(asa, true);

    CLI::App* steiner = app.add_subcommand(
        "steiner", "Coefficient table: rows W(m,k) (or Z on the sphere route) "
                   "plus assembled V(k) (or U)");
    steiner->add_option("--body", j.body, "body spec")->required();
    steiner->add_option("--p", j.p, "parameter")->required();
    steiner->add_option("--m", j.m, "restrict to one m row")->check(CLI::Range(0, 96));
    steiner->add_option("--k", k_range, "degree or range lo..hi")->required();
    steiner->add_option("--route", j.route, "integration route")
        ->check(CLI::IsMember({"boundary", "sphere"}));
    add_common(steiner, true);

    CLI::App* series = app.add_subcommand(
        "series", "Truncated expansion vs direct evaluation of the parallel body");
    series->add_option("--body", j.body, "body spec")->required();
    series->add_option("--p", j.p, "parameter")->required();
    series->add_option("--t", j.t, "offsets t >= 0 (comma separated)")
        ->required()
        ->delimiter(',');
    series->add_option("--kmax", j.kmax, "truncation order (0 = auto)")
        ->check(CLI::Range(0, 96));
    add_common(series, true);

    CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
    {
        std::vector<std::string> suites = verify_suite_names();
        suites.push_back("all");
        verify->add_option("--suite", j.suite, "suite name")
            ->check(CLI::IsMember(suites));
    }
    add_common(verify, false);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "Parameter sweeps: rounded-cube semicontinuity or lr-ball divergence");
    sweep->add_option("--family", j.family, "sweep family")
        ->required()
        ->check(CLI::IsMember({"rounded-cube", "lr-ball"}));
    sweep->add_option("--n", j.n, "dimension")->required()->check(CLI::Range(2, 3));
    sweep->add_option("--p", j.p, "parameter")->required();
    sweep->add_option("--l", j.l, "rounding parameters (comma separated)")
        ->delimiter(',');
    sweep->add_option("--k", k_range, "degree range (rounded-cube)");
    sweep->add_option("--r", j.r, "lr-ball exponent")->check(CLI::PositiveNumber);
    sweep->add_option("--levels", j.levels, "lr-ball quadrature levels")
        ->check(CLI::Range(2, 10));
    add_common(sweep, false);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, help_out, help_out);
            return std::nullopt;
        }
        throw UsageError(e.what());
    }

    for (const char* name : {"coeff", "asa", "steiner", "series", "verify", "sweep"})
        if (app.got_subcommand(name)) j.command = name;

    // Canonicalize and validate the parameter string.
    auto canonical_p = [](const std::string& text) {
        try {
            return parse_p(text);
        } catch (const std::exception& e) {
            throw UsageError(std::string("bad --p: ") + e.what());
        }
    };
    auto reject_pole = [](const PParam& p, int n) {
        if (!p.is_inf() && p.value() == Rational(-n))
            throw UsageError("p = -n is the excluded pole of the parameter range");
    };

    if (j.command == "coeff") {
        PParam p = canonical_p(j.p);
        j.p = p.str();
        reject_pole(p, j.n);
        std::tie(j.k_lo, j.k_hi) = detail::parse_k_range(k_range);
    } else if (j.command == "asa" || j.command == "steiner" || j.command == "series") {
        Body b;
        try {
            b = parse_body_spec(j.body);
        } catch (const std::exception& e) {
            throw UsageError(std::string("bad --body: ") + e.what());
        }
        j.body = b.spec;
        PParam p = canonical_p(j.p);
        j.p = p.str();
        reject_pole(p, b.n);
        if (j.command == "steiner") {
            std::tie(j.k_lo, j.k_hi) = detail::parse_k_range(k_range);
            if (j.m > j.k_hi)
                throw UsageError("--m exceeds the top of the --k range");
        }
        if (j.command == "asa") {
            try {
                j.s = Rational::parse(j.s).str();
            } catch (const std::exception& e) {
                throw UsageError(std::string("bad --s: ") + e.what());
            }
        }
        if (j.command == "series")
            for (double t : j.t)
                if (!(t >= 0.0)) throw UsageError("--t values must be >= 0");
    } else if (j.command == "sweep") {
        PParam p = canonical_p(j.p);
        j.p = p.str();
        reject_pole(p, j.n);
        if (j.family == "rounded-cube") {
            if (j.l.empty())
                throw UsageError("sweep --family rounded-cube needs --l values");
            for (double l : j.l)
                if (!(l >= 1.0)) throw UsageError("--l values must be >= 1");
            if (k_range.empty())
                throw UsageError("sweep --family rounded-cube needs --k");
            std::tie(j.k_lo, j.k_hi) = detail::parse_k_range(k_range);
            if (p.is_inf())
                throw UsageError("sweep --family rounded-cube needs a finite p");
        }
    }
    return j;
}

// ---------------------------------------------------------------------------
// Command execution.

namespace detail {

inline CommandOutput run_coeff(const JobSpec& j) {
    CommandOutput co;
    co.csv_header = "n,p,k,coefficient";
    PParam p = parse_p(j.p);
    Rational alpha = exponents_for(j.n, p).alpha_rat;
    for (int k = j.k_lo; k <= j.k_hi; ++k) {
        Rational c = gen_binom(alpha, k);
        ResultRow row;
        row.id = "coefficient";
        row.inputs = "n=" + std::to_string(j.n) + " p=" + j.p + " k=" + std::to_string(k);
        row.exact = true;
        row.value_text = c.str();
        co.rows.push_back(row);
        co.csv_rows.push_back({std::to_string(j.n), j.p, std::to_string(k), c.str()});
    }
    return co;
}

inline ResultRow row_from_coeff(const CoeffResult& r, std::string inputs) {
    ResultRow row;
    row.id = r.tag.name;
    row.inputs = std::move(inputs);
    row.value_text = fmt17(r.value);
    row.error_estimate = r.error_estimate;
    row.flags = r.flags;
    return row;
}

inline CommandOutput run_asa(const JobSpec& j) {
    CommandOutput co;
    co.csv_header = "body,p,s,value,error_estimate,flags";
    Body b = parse_body_spec(j.body);
    PParam p = parse_p(j.p);
    double tol = j.tol > 0.0 ? j.tol : 1e-10;
    Rational s = Rational::parse(j.s);
    CoeffResult r = (s != Rational(0)) ? mixed_asa(b, p, s, tol)
                    : p.is_inf()       ? asp_sphere(b, p, tol)
                                       : asp_boundary(b, p, tol);
    co.rows.push_back(
        row_from_coeff(r, "body=" + j.body + " p=" + j.p + " s=" + j.s));
    co.csv_rows.push_back({j.body, j.p, j.s, fmt17(r.value), fmt17(r.error_estimate),
                           join_flags(r.flags)});
    return co;
}

inline CommandOutput run_steiner(const JobSpec& j) {
    CommandOutput co;
    co.csv_header = "quantity,m,k,value,error_estimate,flags";
    Body b = parse_body_spec(j.body);
    PParam p = parse_p(j.p);
    double tol = j.tol > 0.0 ? j.tol : 1e-10;
    bool sphere = j.route == "sphere";
    SteinerTable table = sphere ? sphere_table(b, p, j.k_hi, tol)
                                : boundary_table(b, p, j.k_hi, tol);
    std::vector<CoeffResult> vk = sphere ? U_pk_table(b, p, j.k_hi, tol)
                                         : V_pk_table(b, p, j.k_hi, tol);
    const char* wq = sphere ? "Z" : "W";
    const char* vq = sphere ? "U" : "V";
    for (int k = j.k_lo; k <= j.k_hi; ++k) {
        for (int m = 0; m <= k; ++m) {
            if (j.m >= 0 && m != j.m) continue;
            ResultRow row;
            row.id = wq;
            row.inputs = "m=" + std::to_string(m) + " k=" + std::to_string(k);
            row.value_text = fmt17(table.w(m, k));
            row.error_estimate = table.w_err(m, k);
            row.flags = table.flags;
            co.rows.push_back(row);
            co.csv_rows.push_back({wq, std::to_string(m), std::to_string(k),
                                   fmt17(table.w(m, k)), fmt17(table.w_err(m, k)),
                                   join_flags(table.flags)});
        }
        const CoeffResult& v = vk[static_cast<std::size_t>(k)];
        ResultRow row;
        row.id = vq;
        row.inputs = "k=" + std::to_string(k);
        row.value_text = fmt17(v.value);
        row.error_estimate = v.error_estimate;
        row.flags = v.flags;
        co.rows.push_back(row);
        co.csv_rows.push_back({vq, "", std::to_string(k), fmt17(v.value),
                               fmt17(v.error_estimate), join_flags(v.flags)});
    }
    return co;
}

inline CommandOutput run_series(const JobSpec& j) {
    CommandOutput co;
    co.csv_header = "kind,index,value,error_estimate,flags";
    Body b = parse_body_spec(j.body);
    PParam p = parse_p(j.p);
    double tol = j.tol > 0.0 ? j.tol : 1e-9;
    int kser = j.kmax > 0 ? j.kmax : (b.n == 2 ? 60 : 40);
    SeriesResult s = series_asp(b, p, kser, tol);

    ResultRow head;
    head.id = "series";
    head.inputs = std::string("kmax=") + std::to_string(kser) +
                  " truncation=" + truncation_name(s.truncation) +
                  " t_validity=" + fmt17(s.t_validity);
    head.value_text = fmt17(static_cast<double>(s.k_max));
    head.flags = s.flags;
    co.rows.push_back(head);
    co.csv_rows.push_back({"series", truncation_name(s.truncation),
                           fmt17(static_cast<double>(s.k_max)), "0",
                           join_flags(s.flags)});

    for (int k = 0; k <= s.k_max; ++k) {
        ResultRow row;
        row.id = "coefficient";
        row.inputs = "k=" + std::to_string(k);
        row.value_text = fmt17(s.coefficients[static_cast<std::size_t>(k)]);
        row.error_estimate = s.errors[static_cast<std::size_t>(k)];
        co.rows.push_back(row);
        co.csv_rows.push_back({"coefficient", std::to_string(k), row.value_text,
                               fmt17(row.error_estimate), ""});
    }
    for (double t : j.t) {
        double ps = series_eval(s, t);
        CoeffResult d = direct_asp_parallel(b, p, t, tol);
        double residual =
            std::fabs(ps - d.value) / std::max(std::fabs(d.value), 1e-300);
        std::vector<std::string> tflags;
        if (t > s.t_validity) tflags.push_back("beyond-validity");

        ResultRow prow;
        prow.id = "partial_sum";
        prow.inputs = "t=" + fmt17(t);
        prow.value_text = fmt17(ps);
        prow.flags = tflags;
        co.rows.push_back(prow);
        co.csv_rows.push_back(
            {"partial_sum", fmt17(t), fmt17(ps), "0", join_flags(tflags)});

        co.rows.push_back(row_from_coeff(d, "t=" + fmt17(t)));
        co.rows.back().id = "direct";
        co.csv_rows.push_back({"direct", fmt17(t), fmt17(d.value),
                               fmt17(d.error_estimate), join_flags(d.flags)});

        ResultRow rrow;
        rrow.id = "residual";
        rrow.inputs = "t=" + fmt17(t);
        rrow.value_text = fmt17(residual);
        co.rows.push_back(rrow);
        co.csv_rows.push_back({"residual", fmt17(t), fmt17(residual), "0", ""});
    }
    return co;
}

inline CommandOutput reports_output(const std::vector<CheckReport>& reports) {
    CommandOutput co;
    co.csv_header = "id,inputs,status,expected,computed,tolerance,mode,provenance,note";
    for (const CheckReport& r : reports) {
        ResultRow row;
        row.id = r.id;
        row.inputs = r.inputs;
        row.value_text = fmt17(r.computed);
        row.error_estimate = std::fabs(r.computed - r.expected);
        row.flags = {std::string("status:") + check_status_name(r.status),
                     "expected=" + fmt17(r.expected),
                     "tolerance=" + fmt17(r.tolerance),
                     r.relative ? "mode=relative" : "mode=absolute",
                     "provenance=" + r.provenance};
        if (!r.note.empty()) row.flags.push_back("note=" + r.note);
        co.rows.push_back(row);
        co.csv_rows.push_back({r.id, r.inputs, check_status_name(r.status),
                               fmt17(r.expected), fmt17(r.computed),
                               fmt17(r.tolerance),
                               r.relative ? "relative" : "absolute", r.provenance,
                               r.note});
    }
    co.human = summarize_checks(reports);
    if (any_failed(reports)) co.exit_code = exit_check_fail;
    return co;
}

inline CommandOutput run_verify(const JobSpec& j) {
    return reports_output(run_verify_suite(j.suite));
}

inline CommandOutput run_sweep(const JobSpec& j) {
    PParam p = parse_p(j.p);
    if (j.family == "rounded-cube")
        return reports_output(
            sweep_semicontinuity(j.n, j.l, {p.value()}, j.k_hi));
    return reports_output({sweep_lr_divergence(j.n, j.r, p, j.levels)});
}

}  // namespace detail

inline int run_job(const JobSpec& j, std::ostream& out, std::ostream& err) {
    detail::CommandOutput co;
    if (j.command == "coeff") co = detail::run_coeff(j);
    else if (j.command == "asa") co = detail::run_asa(j);
    else if (j.command == "steiner") co = detail::run_steiner(j);
    else if (j.command == "series") co = detail::run_series(j);
    else if (j.command == "verify") co = detail::run_verify(j);
    else if (j.command == "sweep") co = detail::run_sweep(j);
    else throw UsageError("unknown command: " + j.command);

    std::string artifact = j.format == "csv" ? detail::render_csv(co)
                                             : detail::render_json(format_job(j), co.rows);
    if (j.out.empty()) {
        out << artifact;
        if (!co.human.empty()) err << co.human << "\n";
    } else {
        std::ofstream f(j.out, std::ios::binary);
        if (!f) throw UsageError("cannot open output file: " + j.out);
        f << artifact;
        if (!co.human.empty()) out << co.human << "\n";
    }

    int code = co.exit_code;
    if (code == exit_ok)
        for (const detail::ResultRow& r : co.rows)
            for (const std::string& f : r.flags)
                if (f == "unconverged") code = exit_unconverged;
    return code;
}

inline int cli_main(const std::vector<std::string>& args, std::ostream& out,
                    std::ostream& err) {
    try {
        std::optional<JobSpec> job = parse_job(args, out);
        if (!job) return exit_ok;  // help requested
        return run_job(*job, out, err);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        // Library domain/argument errors are usage errors at the CLI surface.
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
}

}  // namespace lpsteiner
