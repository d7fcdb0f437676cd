// Command-line front end: fqw <command> [options].

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "fqw/carlitz.hpp"
#include "fqw/congruence.hpp"
#include "fqw/deriv.hpp"
#include "fqw/errors.hpp"
#include "fqw/factor.hpp"
#include "fqw/irr.hpp"
#include "fqw/survey.hpp"

using namespace fqw;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Raised when a reproduced number differs from the published one.
class Mismatch : public Error {
    using Error::Error;
};

struct Config {
    std::string field = "3";
    std::uint64_t seed = 0;
    bool seed_given = false;
    bool as_json = false;
    std::string out;
    unsigned jobs = 1;
    bool extended = false;
    unsigned max_trial_degree = 0;
    std::uint64_t budget = std::uint64_t{1} << 22;

    std::uint64_t effective_seed() const
    {
        if (seed_given)
            return seed;
        if (const char* env = std::getenv("CARLITZ_SEED"))
            return std::stoull(env);
        return 0;
    }
};

class Output {
public:
    explicit Output(const Config& cfg) : cfg_(cfg) {}
    ~Output() { flush(); }

    std::ostream& text() { return buf_; }
    void emit(const json& j) { buf_ << j.dump(2) << '\n'; }

    void flush()
    {
        const std::string s = buf_.str();
        buf_.str("");
        if (s.empty())
            return;
        if (cfg_.out.empty()) {
            std::cout << s << std::flush;
            return;
        }
        std::ofstream f(cfg_.out, std::ios::binary | (written_ ? std::ios::app : std::ios::trunc));
        if (!f)
            throw IoError("cannot write " + cfg_.out);
        f << s;
        written_ = true;
    }

private:
    const Config& cfg_;
    std::ostringstream buf_;
    bool written_ = false;
};

Elem parse_elem(const Field& f, long long v)
{
    const Elem e = f.from_int(v);
    if (!f.is_prime_field() && (v < 0 || static_cast<std::uint64_t>(v) >= f.order()))
        throw ParseError(fmt::format("constant {} is not a field code", v));
    return f.is_prime_field() ? e : static_cast<Elem>(v);
}

PrimeContext prime_context(const Field& f, const std::string& text)
{
    const Poly p = Poly::parse(f, text);
    if (p.is_zero() || p.is_constant())
        throw NotPrime("a prime must have degree >= 1: " + text);
    if (!p.is_monic())
        throw NotMonic("prime must be monic: " + text);
    if (!is_irreducible(p))
        throw NotPrime("not irreducible: " + text);
    return make_prime_context(p);
}

std::vector<unsigned> parse_degrees(const std::string& s)
{
    std::vector<unsigned> out;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ',')) {
        const auto dash = part.find('-');
        try {
            if (dash == std::string::npos) {
                out.push_back(static_cast<unsigned>(std::stoul(part)));
            } else {
                const unsigned a = static_cast<unsigned>(std::stoul(part.substr(0, dash)));
                const unsigned b = static_cast<unsigned>(std::stoul(part.substr(dash + 1)));
                for (unsigned d = a; d <= b; ++d)
                    out.push_back(d);
            }
        } catch (const std::logic_error&) {
            throw ParseError("bad degree list: '" + s + "'");
        }
    }
    if (out.empty())
        throw ParseError("empty degree list");
    return out;
}

void print_suite(std::ostream& os, const ConditionSuite& s)
{
    os << fmt::format("prime {}  ({})\n", s.prime.to_string(), s.kind == SuiteKind::Wieferich ? "Wieferich" : "Wilson");
    if (s.base)
        os << fmt::format("base  {}\n", s.base->to_string());
    for (const auto& [k, v] : s.verdicts)
        os << fmt::format("  {:<8} {}\n", k, v);
    for (const auto& k : s.skipped)
        os << fmt::format("  {:<8} skipped (bound)\n", k);
    if (s.definition_only)
        os << "  definition only (p = 2)\n";
    os << fmt::format("unanimous {}\n", s.unanimous());
}

std::string mult_text(const Multiplicity& m) { return fmt::format("{}{}", m.at_least ? ">= " : "", m.value); }

void print_record(std::ostream& os, const SurveyRecord& r)
{
    os << fmt::format("q={} d={}: {} primes, {} with constant derivative, ", r.field.order(), r.d, r.prime_count,
                      r.constant_derivative);
    if (r.wilson_method == WilsonMethod::Skipped)
        os << "Wilson skipped (bound)\n";
    else
        os << fmt::format("{} Wilson ({})\n", r.wilson_primes.size(), to_string(r.wilson_method));
    for (const auto& [c, list] : r.special_primes)
        for (const auto& e : list)
            os << fmt::format("  special c={} {}  mult L {}  mult D {}\n", c, e.prime.to_string(), mult_text(e.mult_L),
                              mult_text(e.mult_D));
}

void print_factorization(std::ostream& os, const Factorization& fz)
{
    os << fmt::format("unit {}\n", fz.unit.code());
    for (const auto& [base, mult] : fz.factors)
        os << fmt::format("  deg {:>5}  mult {}  {}\n", base.degree().value(), mult,
                          base.degree().value() <= 40 ? base.to_string() : std::string("..."));
    if (fz.cofactor) {
        os << fmt::format("cofactor of degree {}", fz.cofactor->degree().value());
        if (fz.cofactor_irreducible)
            os << (*fz.cofactor_irreducible ? " (irreducible)" : " (reducible)");
        else
            os << " (unchecked)";
        os << '\n';
    }
}

void expect(std::ostream& os, bool ok, const std::string& what, std::vector<std::string>& failures)
{
    os << fmt::format("  [{}] {}\n", ok ? "ok" : "MISMATCH", what);
    if (!ok)
        failures.push_back(what);
}

std::vector<DegreeClass> classes(std::initializer_list<DegreeClass> v) { return v; }

// Published numbers, checked one by one.
int verify_case(const std::string& name, const Config& cfg, Output& out)
{
    std::vector<std::string> failures;
    std::ostringstream os;
    json report;
    report["case"] = name;
    const std::uint64_t seed = cfg.effective_seed();

    if (name == "q3d6") {
        const Field f = make_prime_field(3);
        CarlitzCache cache(f);
        const SurveyRecord r = survey_degree(f, 6, cache);
        os << fmt::format("q=3 d=6: ({}, {}, {})\n", r.prime_count, r.constant_derivative, r.wilson_primes.size());
        expect(os, r.prime_count == 116, "116 primes of degree 6", failures);
        expect(os, r.constant_derivative == 6, "6 with constant derivative", failures);
        expect(os, r.special_primes.at(1).size() == 3 && r.special_primes.at(2).size() == 3,
               "3 per derivative value", failures);
        expect(os, r.wilson_primes.size() == 15, "15 with vanishing second derivative", failures);
        expect(os, r.suite_agreement == std::optional<bool>(true), "Wilson suites unanimous on every prime", failures);
        report["survey"] = to_json(r);

        for (Elem c : {Elem{2}, Elem{1}}) {
            const auto t7 = theorem7_report(f, 6, c, Theorem7Mode::Full(), cache, seed);
            const Elem deriv = special_derivative(f, 6, c);
            bool mult2 = t7.L_degree_d.size() == 3;
            for (const auto& e : t7.L_degree_d)
                mult2 = mult2 && e.mult == 2 && derivative(e.base) == Poly::constant(f, deriv);
            os << fmt::format("L_5 {} 1: degree {}, degree-6 part {}x6 (mult 2), others {}\n", c == 2 ? "+" : "-",
                              t7.L_degree, t7.L_degree_d.size(), format_multiset(t7.L_other));
            expect(os, t7.L_degree == 363, "degree 363", failures);
            expect(os, mult2, fmt::format("three degree-6 primes with derivative {}, multiplicity 2", deriv), failures);
            expect(os, t7.L_other == classes({{95, 1, 3}, {14, 1, 3}}), "three of degree 95 and three of degree 14",
                   failures);
            report[c == 2 ? "L5_plus_1" : "L5_minus_1"] = to_json(t7);
        }

        const auto t5 = theorem5_report(f, 6, cache, seed);
        os << fmt::format("Wilson-sum polynomial: degree {}, factors {}\n", t5.degree, format_multiset(t5.multiset));
        expect(os, t5.degree == 360, "degree 360", failures);
        expect(os, t5.degree_d_factors.size() == 15, "the 15 Wilson primes", failures);
        expect(os,
               t5.multiset ==
                   classes({{28, 1, 3}, {24, 1, 3}, {20, 1, 3}, {18, 1, 2}, {6, 1, 15}, {2, 1, 3}, {1, 4, 3}}),
               "28x3, 24x3, 20x3, 18x2, 2x3, 1x3 with multiplicity 4", failures);
        report["wilson_sum"] = to_json(t5);
    } else if (name == "q2d14") {
        const Field f = make_prime_field(2);
        CarlitzCache cache(f);
        SurveyOptions opts;
        opts.multiplicities = false;
        const SurveyRecord r = survey_degree(f, 14, cache, opts);
        os << fmt::format("q=2 d=14: {} primes, {} with constant derivative\n", r.prime_count, r.constant_derivative);
        expect(os, r.prime_count == 1161, "1161 primes of degree 14", failures);
        expect(os, r.constant_derivative == 12, "12 with constant derivative", failures);
        report["survey"] = to_json(r);

        const unsigned bound = cfg.max_trial_degree ? cfg.max_trial_degree : 22;
        const auto mode = cfg.extended ? Theorem7Mode::Full() : Theorem7Mode::Partial(bound);
        const auto t7 = theorem7_report(f, 14, 1, mode, cache, seed);
        os << fmt::format("L_13 + 1: degree {}, degree-14 factors {}, others {}\n", t7.L_degree, t7.L_degree_d.size(),
                          format_multiset(t7.L_other));
        expect(os, t7.L_degree_d.size() == 12, "exactly the 12 special primes", failures);
        if (cfg.extended) {
            expect(os,
                   t7.L_other == classes({{9260, 1, 1}, {2246, 1, 2}, {1156, 1, 2}, {128, 1, 1}, {22, 1, 1}}),
                   "remaining degrees 22, 128, 1156x2, 2246x2, 9260", failures);
        } else {
            const bool one22 = !t7.L_other.empty() && t7.L_other.back() == DegreeClass{22, 1, 1} &&
                               t7.L_other.size() == 1;
            expect(os, one22, "one prime of degree 22 below the trial bound", failures);
            if (t7.L_factorization.cofactor)
                os << fmt::format("  cofactor degree {} (not split; use --extended)\n",
                                  t7.L_factorization.cofactor->degree().value());
        }
        std::size_t total = 0;
        for (const auto& [base, mult] : t7.L_factorization.factors)
            total += base.degree().value() * mult;
        if (t7.L_factorization.cofactor)
            total += t7.L_factorization.cofactor->degree().value();
        expect(os, total == 16382, "factor degrees sum to deg L_13 = 16382", failures);
        os << "  note: the published figure 'degree 8192' for L_13 + 1 is inconsistent with deg L_13 = 2 + 4 + ... + "
              "8192 = 16382 and with the published factor degrees, which also sum to 16382\n";
        report["L13_plus_1"] = to_json(t7);
        report["published_degree_8192_consistent"] = false;
    } else if (name == "artin-schreier") {
        for (std::uint32_t p : {3u, 5u}) {
            CarlitzCache cache(make_prime_field(p));
            for (const auto& c : artin_schreier_report(p, cache)) {
                os << fmt::format("p={} {}: irreducible {}, Wilson {}, multiplicity {}\n", p, c.prime.to_string(),
                                  c.irreducible, c.wilson, mult_text(c.multiplicity));
                for (const auto& [k, v] : c.checks)
                    expect(os, v, fmt::format("p={} m={} ({})", p, c.m, k), failures);
                expect(os, c.irreducible && c.wilson && c.multiplicity.value + 1 >= p,
                       fmt::format("p={} m={} irreducible Wilson, multiplicity >= p - 1", p, c.m), failures);
                report["cases"].push_back(to_json(c));
            }
        }
    } else if (name == "q3d9") {
        const Field f = make_prime_field(3);
        CarlitzCache cache(f);
        const auto plus = theorem7_report(f, 9, 1, Theorem7Mode::Partial(9), cache, seed);
        const auto minus = theorem7_report(f, 9, 2, Theorem7Mode::Partial(9), cache, seed);
        os << fmt::format("L_8 - 1: {} degree-9 factors; L_8 + 1: {}\n", plus.L_degree_d.size(),
                          minus.L_degree_d.size());
        expect(os, plus.L_degree_d.size() == 6, "six degree-9 primes divide L_8 - 1", failures);
        expect(os, minus.L_degree_d.empty(), "none divides L_8 + 1", failures);
        report["L8_minus_1"] = to_json(plus);
        report["L8_plus_1"] = to_json(minus);
    } else {
        throw ParseError("unknown case '" + name + "' (q3d6, q2d14, artin-schreier, q3d9)");
    }
    report["failures"] = failures;
    if (cfg.as_json)
        out.emit(report);
    else
        out.text() << os.str();
    if (!failures.empty())
        throw Mismatch(fmt::format("{} mismatch(es) in case {}", failures.size(), name));
    return kExitOk;
}

} // namespace

int main(int argc, char** argv)
{
    Config cfg;
    CLI::App app{"Fermat and Wilson supercongruences in F_q[t]"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--field", cfg.field, "field descriptor: p, q, p^k or p^k:<modulus>");
    app.add_option("--seed", cfg.seed, "seed for randomized splitting (default: $CARLITZ_SEED or 0)")
        ->each([&](const std::string&) { cfg.seed_given = true; });
    app.add_flag("--json", cfg.as_json, "machine-readable output");
    app.add_option("--out", cfg.out, "write output to this file");
    app.add_option("--jobs", cfg.jobs, "worker threads for surveys")->check(CLI::PositiveNumber);
    app.add_flag("--extended", cfg.extended, "enable long-running cases");
    app.add_option("--max-trial-degree", cfg.max_trial_degree, "trial-division bound for partial factorization");
    app.add_option("--budget", cfg.budget, "work budget (q^d products) for definition checks")
        ->check(CLI::PositiveNumber);

    std::function<int(Output&)> action;

    // primes list
    auto* primes = app.add_subcommand("primes", "monic irreducibles")->require_subcommand(1)->fallthrough();
    unsigned degree = 1;
    std::uint64_t limit = 0;
    auto* plist = primes->add_subcommand("list", "list the monic irreducibles of one degree")->fallthrough();
    plist->add_option("--degree,-d", degree)->required()->check(CLI::PositiveNumber);
    plist->add_option("--limit", limit, "stop after this many");
    plist->callback([&] {
        action = [&](Output& out) {
            const Field f = parse_field(cfg.field);
            IrreducibleStream s(f, degree);
            json arr = json::array();
            std::uint64_t n = 0;
            while (auto p = s.next_poly()) {
                if (cfg.as_json)
                    arr.push_back(p->to_string());
                else
                    out.text() << p->to_string() << '\n';
                if (limit && ++n >= limit)
                    break;
            }
            if (cfg.as_json)
                out.emit({{"field", f.descriptor()}, {"degree", degree}, {"primes", arr}});
            return kExitOk;
        };
    });

    // check wieferich | wilson
    auto* check = app.add_subcommand("check", "Wieferich and Wilson conditions")->require_subcommand(1)->fallthrough();
    std::string prime_text, base_text, poly_text;
    bool all_conditions = false;
    auto* wief = check->add_subcommand("wieferich", "the six Wieferich conditions")->fallthrough();
    wief->add_option("--prime", prime_text)->required();
    wief->add_option("--base", base_text)->required();
    wief->callback([&] {
        action = [&](Output& out) {
            const Field f = parse_field(cfg.field);
            const auto s = wieferich_suite(prime_context(f, prime_text), Poly::parse(f, base_text));
            cfg.as_json ? out.emit(to_json(s)) : print_suite(out.text(), s);
            return kExitOk;
        };
    });
    bool with_multiplicity = false;
    auto* wil = check->add_subcommand("wilson", "Wilson verdict")->fallthrough();
    wil->add_option("--prime", prime_text)->required();
    wil->add_flag("--all-conditions", all_conditions, "evaluate all fifteen conditions");
    wil->add_flag("--multiplicity", with_multiplicity, "report the order of F_d + 1 at the prime");
    wil->callback([&] {
        action = [&](Output& out) {
            const Field f = parse_field(cfg.field);
            const PrimeContext ctx = prime_context(f, prime_text);
            CarlitzCache cache(f);
            json j;
            if (all_conditions || f.characteristic() == 2) {
                WilsonOptions o;
                o.def_bound = cfg.budget;
                const auto s = wilson_suite(ctx, cache, o);
                j = to_json(s);
                if (!cfg.as_json)
                    print_suite(out.text(), s);
            } else {
                const bool w = is_wilson_fast(ctx.prime);
                j = {{"prime", ctx.prime.to_string()}, {"kind", "wilson"}, {"verdicts", {{"i", w}}}};
                if (!cfg.as_json)
                    out.text() << fmt::format("prime {}  Wilson {}\n", ctx.prime.to_string(), w);
            }
            if (with_multiplicity) {
                const auto m = wilson_multiplicity(ctx, cache);
                j["multiplicity"] = {{"value", m.value}, {"at_least", m.at_least}};
                if (!cfg.as_json)
                    out.text() << fmt::format("multiplicity {}\n", mult_text(m));
            }
            if (cfg.as_json)
                out.emit(j);
            return kExitOk;
        };
    });

    // classify-base
    auto* cls = app.add_subcommand("classify-base", "which primes are a-Wieferich")->fallthrough();
    cls->add_option("--base", base_text)->required();
    cls->callback([&] {
        action = [&](Output& out) {
            const Field f = parse_field(cfg.field);
            const auto b = classify_base(Poly::parse(f, base_text));
            if (cfg.as_json) {
                out.emit(to_json(b));
            } else {
                out.text() << to_string(b.tag);
                if (b.b)
                    out.text() << fmt::format("  b = {}", b.b->to_string());
                if (b.c)
                    out.text() << fmt::format("  c = {}", *b.c);
                out.text() << '\n';
            }
            return kExitOk;
        };
    });

    // carlitz compute
    auto* carlitz = app.add_subcommand("carlitz", "Carlitz quantities")->require_subcommand(1)->fallthrough();
    std::string quantity = "L";
    unsigned n_arg = 1;
    long long c_arg = 1;
    std::string mod_text;
    auto* ccomp = carlitz->add_subcommand("compute", "bracket, L, D, F, wilson-sum, L-c, D+c")->fallthrough();
    ccomp->add_option("--quantity,-q", quantity)
        ->check(CLI::IsMember({"bracket", "L", "D", "F", "wilson-sum", "L-c", "D+c"}));
    ccomp->add_option("--n,-n", n_arg, "index (d for F, wilson-sum, L-c, D+c)")->required();
    ccomp->add_option("--c", c_arg, "constant for the perturbations");
    ccomp->add_option("--mod", mod_text, "reduce modulo this polynomial");
    ccomp->callback([&] {
        action = [&](Output& out) {
            const Field f = parse_field(cfg.field);
            CarlitzCache cache(f);
            Poly v(f);
            if (!mod_text.empty()) {
                const Poly m = Poly::parse(f, mod_text);
                if (quantity == "bracket")
                    v = cache.bracket_mod(n_arg, m);
                else if (quantity == "L")
                    v = cache.L_mod(n_arg, m);
                else if (quantity == "D")
                    v = cache.D_mod(n_arg, m);
                else if (quantity == "F")
                    v = cache.F_mod(n_arg, m);
                else if (quantity == "L-c")
                    v = cache.perturbation_mod(PerturbationKind::LMinusC, n_arg, parse_elem(f, c_arg), m);
                else if (quantity == "D+c")
                    v = cache.perturbation_mod(PerturbationKind::DPlusSignC, n_arg, parse_elem(f, c_arg), m);
                else
                    v = rem(cache.wilson_sum_poly(n_arg), m);
            } else if (quantity == "bracket") {
                v = cache.bracket(n_arg);
            } else if (quantity == "L") {
                v = cache.L(n_arg);
            } else if (quantity == "D") {
                v = cache.D(n_arg);
            } else if (quantity == "F") {
                v = cache.F(n_arg);
            } else if (quantity == "L-c") {
                v = cache.perturbation(PerturbationKind::LMinusC, n_arg, parse_elem(f, c_arg));
            } else if (quantity == "D+c") {
                v = cache.perturbation(PerturbationKind::DPlusSignC, n_arg, parse_elem(f, c_arg));
            } else {
                v = cache.wilson_sum_poly(n_arg);
            }
            const long long deg = v.is_zero() ? -1 : static_cast<long long>(v.degree().value());
            if (cfg.as_json)
                out.emit({{"quantity", quantity}, {"n", n_arg}, {"degree", deg}, {"value", v.to_string()}});
            else
                out.text() << fmt::format("degree {}\n{}\n", deg, v.to_string());
            return kExitOk;
        };
    });

    // factor
    auto* fac = app.add_subcommand("factor", "factor a polynomial")->fallthrough();
    fac->add_option("--poly", poly_text)->required();
    fac->callback([&] {
        action = [&](Output& out) {
            const Field f = parse_field(cfg.field);
            const Poly a = Poly::parse(f, poly_text);
            const auto fz = cfg.max_trial_degree ? trial_division(a, cfg.max_trial_degree, cfg.effective_seed())
                                                 : factorize(a, cfg.effective_seed());
            cfg.as_json ? out.emit(to_json(fz)) : print_factorization(out.text(), fz);
            return kExitOk;
        };
    });

    // survey
    std::string degrees_text = "1-4";
    bool csv = false;
    bool timing = false;
    auto* sur = app.add_subcommand("survey", "degree sweep; --out gives a resumable JSON-lines file")->fallthrough();
    sur->add_option("--degrees", degrees_text, "e.g. 1-6 or 2,4,6");
    sur->add_flag("--csv", csv, "print a CSV count table");
    sur->add_flag("--timing", timing, "store wall time in each record");
    sur->callback([&] {
        action = [&](Output&) {
            const Field f = parse_field(cfg.field);
            CarlitzCache cache(f);
            SurveyOptions o;
            o.def_budget = cfg.budget;
            o.jobs = cfg.jobs;
            o.timing = timing;
            std::vector<SurveyRecord> recs;
            if (!cfg.out.empty()) {
                ResumeStats st;
                recs = resume_survey(cfg.out, f, parse_degrees(degrees_text), cache, o, cfg.effective_seed(), &st);
                std::cerr << fmt::format("{} computed, {} reused from {}\n", st.computed, st.reused, cfg.out);
            } else {
                for (unsigned d : parse_degrees(degrees_text))
                    recs.push_back(survey_degree(f, d, cache, o));
            }
            // Records already went to --out; the summary goes to stdout.
            std::ostringstream os;
            if (csv) {
                os << to_csv(recs);
            } else if (cfg.as_json) {
                json arr = json::array();
                for (const auto& r : recs)
                    arr.push_back(to_json(r));
                os << arr.dump(2) << '\n';
            } else {
                for (const auto& r : recs)
                    print_record(os, r);
            }
            std::cout << os.str();
            return kExitOk;
        };
    });

    // theorem5, theorem7
    auto* t5 = app.add_subcommand("theorem5", "factor the Wilson-sum polynomial -L'_{d-1}")->fallthrough();
    t5->add_option("--degree,-d", degree)->required();
    t5->callback([&] {
        action = [&](Output& out) {
            const Field f = parse_field(cfg.field);
            CarlitzCache cache(f);
            const auto r = theorem5_report(f, degree, cache, cfg.effective_seed());
            if (cfg.as_json) {
                out.emit(to_json(r));
            } else {
                out.text() << fmt::format("degree {}; {} Wilson primes of degree {}; factors {}\n", r.degree,
                                          r.wilson_primes.size(), degree, format_multiset(r.multiset));
                for (const auto& [base, mult] : r.degree_d_factors)
                    out.text() << fmt::format("  {}  mult {}\n", base.to_string(), mult);
            }
            return kExitOk;
        };
    });
    auto* t7 = app.add_subcommand("theorem7", "factor L_{d-1} - c and match special Wilson primes")->fallthrough();
    t7->add_option("--degree,-d", degree)->required();
    t7->add_option("--c", c_arg)->required();
    t7->callback([&] {
        action = [&](Output& out) {
            const Field f = parse_field(cfg.field);
            CarlitzCache cache(f);
            const auto mode = cfg.max_trial_degree ? Theorem7Mode::Partial(cfg.max_trial_degree) : Theorem7Mode::Full();
            const auto r = theorem7_report(f, degree, parse_elem(f, c_arg), mode, cache, cfg.effective_seed());
            if (cfg.as_json) {
                out.emit(to_json(r));
            } else {
                out.text() << fmt::format("L_{} - {}: degree {}; derivative {}; {} degree-{} factors; others {}\n",
                                          degree - 1, r.c, r.L_degree, r.special_derivative.to_string(),
                                          r.L_degree_d.size(), degree, format_multiset(r.L_other));
                for (const auto& [base, mult] : r.L_degree_d)
                    out.text() << fmt::format("  {}  mult {}\n", base.to_string(), mult);
                if (r.L_factorization.cofactor)
                    out.text() << fmt::format("cofactor degree {}\n", r.L_factorization.cofactor->degree().value());
                out.text() << fmt::format("D_{} + (-1)^{} c: {} degree-{} factors, each simple\n", degree - 1, degree,
                                          r.D_degree_d.size(), degree);
            }
            return kExitOk;
        };
    });

    // scan borisov | alt-conjecture
    auto* scan = app.add_subcommand("scan", "gcd scans against [d]")->require_subcommand(1)->fallthrough();
    unsigned dmax = 6;
    auto print_scan = [&](Output& out, const std::vector<ScanFinding>& v) {
        if (cfg.as_json) {
            json arr = json::array();
            for (const auto& s : v)
                arr.push_back(to_json(s));
            out.emit(arr);
            return;
        }
        for (const auto& s : v)
            out.text() << fmt::format("d={} c={} gcd degree {}{}\n", s.d, s.c, s.gcd.degree().value(),
                                      s.violates_expectation ? "  (p does not divide d)" : "");
        out.text() << fmt::format("{} nontrivial gcds\n", v.size());
    };
    auto* bor = scan->add_subcommand("borisov", "gcd(L_{d-1} + c, [d])")->fallthrough();
    bor->add_option("--dmax", dmax);
    bor->callback([&] {
        action = [&](Output& out) {
            const Field f = parse_field(cfg.field);
            CarlitzCache cache(f);
            print_scan(out, borisov_scan(f, dmax, cache));
            return kExitOk;
        };
    });
    auto* alt = scan->add_subcommand("alt-conjecture", "gcd([d], 1 - [d-1] + [d-1][d-2] - ...)")->fallthrough();
    alt->add_option("--dmax", dmax);
    alt->callback([&] {
        action = [&](Output& out) {
            const Field f = parse_field(cfg.field);
            CarlitzCache cache(f);
            print_scan(out, alt_gcd_conjecture_scan(f, dmax, cache));
            return kExitOk;
        };
    });

    // distribution
    unsigned bound = 2;
    bool all_bases = false;
    auto* dist = app.add_subcommand("distribution", "residues of Q(a) at theta")->fallthrough();
    dist->add_option("--prime", prime_text)->required();
    dist->add_option("--bound", bound, "bases of degree below this");
    dist->add_flag("--all-bases", all_bases, "include non-monic bases and zero");
    dist->callback([&] {
        action = [&](Output& out) {
            const Field f = parse_field(cfg.field);
            const PrimeContext ctx = prime_context(f, prime_text);
            const auto d = fq_distribution(ctx, bound, !all_bases, cfg.budget);
            if (cfg.as_json) {
                out.emit(to_json(d, ctx.residue_field));
            } else {
                for (const auto& [code, n] : d.histogram)
                    out.text() << fmt::format("{:>8}  {}\n", code, n);
                out.text() << fmt::format("{} bases\n", d.bases);
            }
            return kExitOk;
        };
    });

    // deriv eval
    unsigned order = 2;
    auto* deriv = app.add_subcommand("deriv", "arithmetic derivatives")->require_subcommand(1)->fallthrough();
    auto* deval = deriv->add_subcommand("eval", "D^i, Q^i mod prime and Delta^i at theta")->fallthrough();
    deval->add_option("--prime", prime_text)->required();
    deval->add_option("--poly", poly_text)->required();
    deval->add_option("--order", order);
    deval->callback([&] {
        action = [&](Output& out) {
            const Field f = parse_field(cfg.field);
            const auto r = deriv_report(Poly::parse(f, poly_text), prime_context(f, prime_text), order);
            const json j = to_json(r);
            if (cfg.as_json) {
                out.emit(j);
            } else {
                for (const auto& [k, v] : j.at("values").items())
                    out.text() << fmt::format("{:<18} {}\n", k,
                                              v.contains("poly") ? v["poly"].get<std::string>() : v["element"].dump());
            }
            return kExitOk;
        };
    });

    // verify paper
    std::string case_name;
    auto* verify = app.add_subcommand("verify", "reproduce published numbers")->require_subcommand(1)->fallthrough();
    auto* paper = verify->add_subcommand("paper", "run one reproduction case")->fallthrough();
    paper->add_option("--case", case_name)->required()->check(CLI::IsMember({"q3d6", "q2d14", "artin-schreier", "q3d9"}));
    paper->callback([&] { action = [&](Output& out) { return verify_case(case_name, cfg, out); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    Output out(cfg);
    try {
        const int rc = action(out);
        out.flush();
        return rc;
    } catch (const Mismatch& e) {
        out.flush();
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NotPrime& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NotMonic& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ZeroC& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const FieldMismatch& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        out.flush();
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}
