// Command-line front end: derivation, membership verification, canonical
// decomposition, numeric spot checks, and Groebner computations over the
// shared cuboid table or a user-declared one.
//
// Exit codes are a stable contract:
//   0 success, 1 verification mismatch, 2 parse or usage error,
//   3 symmetry violation, 4 reduction budget exceeded.
//
// stdout carries only the requested payload; identical flags and seed give
// byte-identical bytes. Timing diagnostics go to stderr.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubsym/cuboid.hpp"
#include "cubsym/groebner.hpp"
#include "cubsym/numeric.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kParseError = 2;
constexpr int kSymmetryError = 3;
constexpr int kBudgetExceeded = 4;

class Timer {
   public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

   private:
    std::chrono::steady_clock::time_point start_;
};

void report_timing(const std::string& label, double ms) {
    std::fprintf(stderr, "timing %s %.3f ms\n", label.c_str(), ms);
}

// Payload sink: stdout by default, --out FILE otherwise.
void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::fwrite(payload.data(), 1, payload.size(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw cubsym::UsageError("cannot open output file " + out_path);
    f.write(payload.data(),
            static_cast<std::streamsize>(payload.size()));
}

std::string scientific(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", value);
    return buf;
}

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : csv) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

struct DeriveOptions {
    std::string format = "text";
    std::string out;
    std::string only;
    bool traces = false;
};

struct VerifyOptions {
    std::string format = "text";
    std::string out;
    std::vector<std::string> inputs;
};

struct DecomposeOptions {
    std::string format = "text";
    std::string out;
    std::string input;
};

struct NumericOptions {
    std::string format = "text";
    std::string out;
    unsigned samples = 1000;
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
};

struct GroebnerOptions {
    std::string format = "text";
    std::string out;
    std::string file;
    std::string vars;
    std::string eliminate;
    std::string order = "grevlex";
    bool cuboid = false;
    long budget = cubsym::kDefaultReductionBudget;
};

int run_derive(const DeriveOptions& opt) {
    Timer timer;
    cubsym::CuboidSystem sys;
    std::vector<cubsym::FactorEquation> catalog = cubsym::factor_catalog(sys);
    std::vector<cubsym::DerivationTrace> traces =
        cubsym::derive_factor_equations(sys);
    report_timing("derive-pipeline", timer.ms());

    if (!opt.only.empty()) {
        std::vector<cubsym::FactorEquation> one_catalog;
        std::vector<cubsym::DerivationTrace> one_trace;
        for (std::size_t i = 0; i < catalog.size(); ++i) {
            if (catalog[i].id != opt.only) continue;
            one_catalog.push_back(catalog[i]);
            one_trace.push_back(traces[i]);
        }
        if (one_catalog.empty())
            throw cubsym::UsageError("unknown catalog id " + opt.only);
        catalog.swap(one_catalog);
        traces.swap(one_trace);
    }

    bool all_match = true;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
        if (traces[i].result.lhs == catalog[i].lhs) continue;
        all_match = false;
        // First differing coefficient under the display order.
        cubsym::Polynomial diff = catalog[i].lhs - traces[i].result.lhs;
        const cubsym::Monomial* first = nullptr;
        for (const auto& [m, c] : diff.terms())
            if (!first || sys.display_order().greater(m, *first)) first = &m;
        std::string where =
            first ? cubsym::monomial_to_string(*sys.table(), *first) : "?";
        std::fprintf(stderr,
                     "mismatch in %s: coefficient of %s is %s, catalog has "
                     "%s\n",
                     catalog[i].id.c_str(), where.c_str(),
                     first ? traces[i].result.lhs.coeff(*first).to_string().c_str()
                           : "?",
                     first ? catalog[i].lhs.coeff(*first).to_string().c_str()
                           : "?");
    }

    std::string payload;
    if (opt.format == "json") {
        ordered_json doc = ordered_json::array();
        if (opt.traces) {
            for (const cubsym::DerivationTrace& t : traces) {
                ordered_json steps = ordered_json::array();
                for (const cubsym::DerivationStep& s : t.steps)
                    steps.push_back({{"rule", s.rule},
                                     {"poly", sys.display(s.state)}});
                doc.push_back({{"target", t.target},
                               {"steps", std::move(steps)},
                               {"result_id", t.result.id}});
            }
        } else {
            for (const cubsym::DerivationTrace& t : traces)
                doc.push_back({{"id", t.result.id},
                               {"paper_eq", t.result.paper_eq},
                               {"lhs", sys.display(t.result.lhs)}});
        }
        payload = doc.dump(2) + "\n";
    } else {
        for (const cubsym::DerivationTrace& t : traces)
            payload += sys.display(t.result.lhs) + " = 0\n";
    }
    emit(opt.out, payload);
    return all_match ? kOk : kMismatch;
}

int run_verify(const VerifyOptions& opt) {
    cubsym::CuboidSystem sys;
    std::vector<cubsym::FactorEquation> catalog = cubsym::factor_catalog(sys);

    std::vector<std::pair<std::string, cubsym::Polynomial>> targets;
    if (opt.inputs.empty()) {
        for (const cubsym::FactorEquation& f : catalog)
            targets.emplace_back(f.id, f.lhs);
    } else {
        for (const std::string& input : opt.inputs) {
            const cubsym::FactorEquation* hit = nullptr;
            for (const cubsym::FactorEquation& f : catalog)
                if (f.id == input) hit = &f;
            if (hit)
                targets.emplace_back(hit->id, hit->lhs);
            else
                targets.emplace_back(
                    input, cubsym::parse_polynomial(input, sys.table()));
        }
    }

    bool all_member = true;
    std::string text;
    ordered_json items = ordered_json::array();
    for (const auto& [id, p] : targets) {
        Timer timer;
        cubsym::VerificationResult v = cubsym::verify_membership(sys, p);
        report_timing(id, timer.ms());
        all_member = all_member && v.member;
        if (v.member) {
            text += id + ": member (certificate: " +
                    std::to_string(v.certificate.size()) + " steps)\n";
            items.push_back(
                {{"id", id},
                 {"verdict", "member"},
                 {"certificate_steps", v.certificate.size()}});
        } else {
            std::string rem = cubsym::format(v.remainder,
                                             sys.membership_order());
            text += id + ": non-member, remainder " + rem + "\n";
            items.push_back({{"id", id},
                             {"verdict", "non-member"},
                             {"remainder", rem}});
        }
    }

    if (opt.format == "json") {
        ordered_json doc = {{"command", "verify"},
                            {"status", all_member ? "ok" : "failed"},
                            {"items", std::move(items)}};
        emit(opt.out, doc.dump(2) + "\n");
    } else {
        emit(opt.out, text);
    }
    return all_member ? kOk : kMismatch;
}

int run_decompose(const DecomposeOptions& opt) {
    Timer timer;
    cubsym::CuboidSystem sys;
    cubsym::Polynomial p = cubsym::parse_polynomial(opt.input, sys.table());
    cubsym::Polynomial q = cubsym::decompose(p);
    bool round_trip = cubsym::expand_in_matrix_vars(q) == p;
    report_timing("decompose", timer.ms());

    if (opt.format == "json") {
        ordered_json doc = {
            {"command", "decompose"},
            {"status", round_trip ? "ok" : "failed"},
            {"items",
             ordered_json::array({{{"id", opt.input},
                                   {"verdict", round_trip ? "ok" : "failed"},
                                   {"result", sys.display(q)},
                                   {"round_trip", round_trip}}})}};
        emit(opt.out, doc.dump(2) + "\n");
    } else {
        emit(opt.out, sys.display(q) + "\nround-trip: " +
                          (round_trip ? "ok" : "FAILED") + "\n");
    }
    return round_trip ? kOk : kMismatch;
}

int run_check_numeric(const NumericOptions& opt) {
    Timer timer;
    cubsym::CuboidSystem sys;
    std::vector<cubsym::FactorEquation> catalog = cubsym::factor_catalog(sys);
    cubsym::NumericReport report =
        cubsym::numeric_spot_check(sys, catalog, opt.samples, opt.seed);
    report_timing("check-numeric", timer.ms());

    bool ok = report.within(opt.tolerance);
    if (opt.format == "json") {
        ordered_json items = ordered_json::array();
        for (const cubsym::NumericCheck& c : report.checks)
            items.push_back(
                {{"id", c.id},
                 {"verdict",
                  c.max_residual < opt.tolerance ? "ok" : "exceeded"},
                 {"max_residual", c.max_residual}});
        ordered_json doc = {{"command", "check-numeric"},
                            {"status", ok ? "ok" : "failed"},
                            {"samples", report.samples},
                            {"seed", report.seed},
                            {"tolerance", opt.tolerance},
                            {"max_residual", report.max_residual},
                            {"items", std::move(items)}};
        emit(opt.out, doc.dump(2) + "\n");
    } else {
        std::string text;
        for (const cubsym::NumericCheck& c : report.checks)
            text += c.id + ": max residual " + scientific(c.max_residual) +
                    "\n";
        text += "overall: " + scientific(report.max_residual) + " (samples " +
                std::to_string(report.samples) + ", seed " +
                std::to_string(report.seed) + ", tolerance " +
                scientific(opt.tolerance) + ") -> " +
                (ok ? "ok" : "exceeded") + "\n";
        emit(opt.out, text);
    }
    return ok ? kOk : kMismatch;
}

int run_groebner(const GroebnerOptions& opt) {
    cubsym::VarTablePtr table;
    if (opt.cuboid) {
        table = cubsym::cuboid_table();
    } else if (!opt.vars.empty()) {
        table = cubsym::VarTable::plain(split_names(opt.vars));
    } else {
        throw cubsym::UsageError("declare variables with --vars or --cuboid");
    }

    std::ifstream f(opt.file);
    if (!f) throw cubsym::UsageError("cannot read generators file " + opt.file);
    std::stringstream content;
    content << f.rdbuf();
    std::vector<cubsym::Polynomial> generators =
        cubsym::parse_polynomial_file(content.str(), table);
    if (generators.empty())
        throw cubsym::UsageError("generators file holds no expressions");

    std::vector<unsigned> front;
    for (const std::string& name : split_names(opt.eliminate)) {
        std::optional<unsigned> v = table->find(name);
        if (!v) throw cubsym::UsageError("unknown variable " + name);
        front.push_back(*v);
    }

    cubsym::MonomialOrder order =
        !front.empty() ? cubsym::MonomialOrder::elimination(*table, front)
        : opt.order == "lex" ? cubsym::MonomialOrder::lex_for(*table)
                             : cubsym::MonomialOrder::grevlex_for(*table);

    Timer timer;
    std::vector<cubsym::Polynomial> elements;
    try {
        cubsym::Ideal ideal(generators, order, opt.budget);
        if (front.empty()) {
            elements = cubsym::buchberger(ideal).elements;
        } else {
            std::vector<unsigned> keep;
            for (unsigned v = 0; v < table->size(); ++v) {
                bool dropped = false;
                for (unsigned fv : front) dropped = dropped || fv == v;
                if (!dropped) keep.push_back(v);
            }
            elements = cubsym::elimination_ideal(ideal, keep);
        }
    } catch (const cubsym::BudgetError& e) {
        report_timing("groebner", timer.ms());
        std::fprintf(stderr,
                     "budget exceeded after %ld pair reductions (basis size "
                     "%ld)\n",
                     e.pairs_processed, e.basis_size);
        if (opt.format == "json") {
            ordered_json doc = {{"command", "groebner"},
                                {"status", "budget-exceeded"},
                                {"pairs_processed", e.pairs_processed},
                                {"basis_size", e.basis_size},
                                {"items", ordered_json::array()}};
            emit(opt.out, doc.dump(2) + "\n");
        }
        return kBudgetExceeded;
    }
    report_timing("groebner", timer.ms());

    if (opt.format == "json") {
        ordered_json items = ordered_json::array();
        for (std::size_t i = 0; i < elements.size(); ++i)
            items.push_back({{"id", std::to_string(i + 1)},
                             {"verdict", "ok"},
                             {"poly", cubsym::format(elements[i], order)}});
        ordered_json doc = {{"command", "groebner"},
                            {"status", "ok"},
                            {"items", std::move(items)}};
        emit(opt.out, doc.dump(2) + "\n");
    } else {
        std::string text;
        for (const cubsym::Polynomial& g : elements)
            text += cubsym::format(g, order) + "\n";
        emit(opt.out, text);
    }
    return kOk;
}

void add_format_flags(CLI::App* cmd, std::string& format, std::string& out) {
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--out", out, "Write the payload to a file");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Exact multisymmetric polynomial machinery for the integer cuboid "
        "factor catalog"};
    app.require_subcommand(1);

    DeriveOptions derive_opt;
    CLI::App* derive =
        app.add_subcommand("derive",
                           "Re-derive the factor catalog and compare it "
                           "against the stored golden equations");
    add_format_flags(derive, derive_opt.format, derive_opt.out);
    derive->add_option("--only", derive_opt.only,
                       "Restrict to a single catalog id");
    derive->add_flag("--traces", derive_opt.traces,
                     "With --format json, export full derivation traces");

    VerifyOptions verify_opt;
    CLI::App* verify = app.add_subcommand(
        "verify",
        "Check ideal membership of expressions or catalog ids (default: the "
        "whole catalog)");
    add_format_flags(verify, verify_opt.format, verify_opt.out);
    verify->add_option("input", verify_opt.inputs,
                       "Expressions over the cuboid variables or catalog ids");

    DecomposeOptions decompose_opt;
    CLI::App* decompose = app.add_subcommand(
        "decompose",
        "Canonical E-variable representation of a multisymmetric polynomial");
    add_format_flags(decompose, decompose_opt.format, decompose_opt.out);
    decompose
        ->add_option("input", decompose_opt.input,
                     "Expression over the matrix variables and L")
        ->required();

    NumericOptions numeric_opt;
    CLI::App* numeric = app.add_subcommand(
        "check-numeric",
        "Residuals of the catalog on random points of the cuboid variety");
    add_format_flags(numeric, numeric_opt.format, numeric_opt.out);
    numeric->add_option("--samples", numeric_opt.samples, "Sample count")
        ->capture_default_str();
    numeric->add_option("--seed", numeric_opt.seed, "Stream seed")
        ->capture_default_str();
    numeric->add_option("--tolerance", numeric_opt.tolerance,
                        "Relative residual bound")
        ->capture_default_str();

    GroebnerOptions groebner_opt;
    CLI::App* groebner = app.add_subcommand(
        "groebner",
        "Reduced Groebner basis of a generators file, optionally eliminating "
        "variables");
    add_format_flags(groebner, groebner_opt.format, groebner_opt.out);
    groebner
        ->add_option("file", groebner_opt.file,
                     "Generators file: one expression per line, '#' comments")
        ->required();
    groebner->add_option("--vars", groebner_opt.vars,
                         "Comma-separated variable names, highest first");
    groebner->add_flag("--cuboid", groebner_opt.cuboid,
                       "Use the shared cuboid table instead of --vars");
    groebner
        ->add_option("--order", groebner_opt.order,
                     "Monomial order when not eliminating")
        ->check(CLI::IsMember({"lex", "grevlex"}))
        ->capture_default_str();
    groebner->add_option(
        "--eliminate", groebner_opt.eliminate,
        "Comma-separated variables to eliminate; prints only kept-variable "
        "elements");
    groebner
        ->add_option("--budget", groebner_opt.budget,
                     "Pair-reduction budget")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kParseError;
    }

    try {
        if (derive->parsed()) return run_derive(derive_opt);
        if (verify->parsed()) return run_verify(verify_opt);
        if (decompose->parsed()) return run_decompose(decompose_opt);
        if (numeric->parsed()) return run_check_numeric(numeric_opt);
        if (groebner->parsed()) return run_groebner(groebner_opt);
    } catch (const cubsym::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kParseError;
    } catch (const cubsym::SymmetryError& e) {
        std::fprintf(stderr, "symmetry error: %s\n", e.what());
        return kSymmetryError;
    } catch (const cubsym::BudgetError& e) {
        std::fprintf(stderr,
                     "budget exceeded after %ld pair reductions (basis size "
                     "%ld)\n",
                     e.pairs_processed, e.basis_size);
        return kBudgetExceeded;
    } catch (const cubsym::UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kParseError;
    } catch (const cubsym::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kMismatch;
    }
    return kParseError;
}
