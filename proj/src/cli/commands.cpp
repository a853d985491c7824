#include "pittlab/cli/commands.hpp"

#include <algorithm>
#include <cmath>

#include "pittlab/interpolation.hpp"
#include "pittlab/sharpness.hpp"

namespace pittlab::cli {

namespace {

class Args {
public:
    explicit Args(const GridPoint& g) : g_(g) {}

    bool has(const std::string& key) const {
        const auto it = g_.find(key);
        return it != g_.end() && !it->second.empty();
    }
    const std::string& text(const std::string& key) const {
        if (!has(key)) throw ConfigError("missing parameter '" + key + "'");
        return g_.at(key);
    }
    double real(const std::string& key) const { return parse_real(text(key), key); }
    long integer(const std::string& key) const {
        const auto v = parse_u64(text(key), key);
        if (v > 1'000'000'000ULL) throw ConfigError(key + ": too large");
        return static_cast<long>(v);
    }
    bool flag(const std::string& key) const {
        const auto& t = text(key);
        if (t == "true" || t == "1") return true;
        if (t == "false" || t == "0") return false;
        throw ConfigError(key + ": expected true or false");
    }
    template <class E>
    E choice(const std::string& key, std::initializer_list<std::pair<const char*, E>> options) const {
        const auto& t = text(key);
        std::string names;
        for (const auto& [name, value] : options) {
            if (t == name) return value;
            names += names.empty() ? name : std::string("|") + name;
        }
        throw ConfigError(key + ": expected one of " + names + ", got '" + t + "'");
    }

private:
    const GridPoint& g_;
};

bool never(const GridPoint&) { return false; }
bool always(const GridPoint&) { return true; }

std::uint64_t seed_of(const RunContext& ctx) {
    if (!ctx.seed) throw ConfigError("this command needs --seed");
    return *ctx.seed;
}

struct Stats {
    double max = 0.0;
    double min = infinity;
    double mean = 0.0;

    json to_json() const { return {{"max", max}, {"mean", mean}, {"min", min}}; }
};

Stats summarize(const std::vector<double>& v) {
    Stats s;
    CompensatedSum acc;
    for (double x : v) {
        s.max = std::max(s.max, x);
        s.min = std::min(s.min, x);
        acc.add(x);
    }
    s.mean = v.empty() ? 0.0 : acc.value() / static_cast<double>(v.size());
    if (v.empty()) s.min = 0.0;
    return s;
}

json sides_json(const SideValues& s) { return {{"lhs", s.lhs}, {"rhs", s.rhs}, {"ratio", s.ratio}}; }

ValueSpace value_space(const Args& a) { return {a.real("r"), static_cast<std::size_t>(a.integer("m"))}; }

// ---------------------------------------------------------------- region

json run_region(const GridPoint& g, const RunContext&) {
    const Args a(g);
    PittParams s;
    s.d = static_cast<int>(a.integer("d"));
    s.p = a.real("p");
    s.q = a.real("q");
    s.gamma = a.real("gamma");
    s.p0 = a.real("p0");
    s.beta = a.has("beta") ? a.real("beta") : s.gamma + s.d * (1.0 - 1.0 / s.p - 1.0 / s.q);
    const auto v = pitt_region_classify(s);
    return {{"verdict", std::string(to_string(v))},
            {"beta", s.beta},
            {"gamma_lower", gamma_lower_bound(s)},
            {"gamma_upper", gamma_upper_bound(s)}};
}

// ---------------------------------------------------------------- ratio

json run_ratio(const GridPoint& g, const RunContext& ctx) {
    const Args a(g);
    PittParams s;
    s.d = static_cast<int>(a.integer("d"));
    s.p = a.real("p");
    s.q = a.real("q");
    s.gamma = a.real("gamma");
    s.beta = a.has("beta") ? a.real("beta") : s.gamma + s.d * (1.0 - 1.0 / s.p - 1.0 / s.q);
    const long N = a.integer("N");
    const auto samples = a.integer("samples");
    const CounterRng rng(seed_of(ctx));
    const auto stream = point_stream(g);
    std::vector<double> ratios;
    for (long k = 0; k < samples; ++k) {
        const auto f = random_polynomial(s.d, N, value_space(a), rng, stream + static_cast<std::uint64_t>(k));
        ratios.push_back(pitt_ratio(f, s, ctx.quad).ratio);
    }
    return {{"beta", s.beta}, {"ratio", summarize(ratios).to_json()}};
}

// ---------------------------------------------------------------- type-test

json run_type_test(const GridPoint& g, const RunContext& ctx) {
    const Args a(g);
    TypeNotion notion;
    notion.family = a.choice<TypeFamily>(
        "notion", {{"fourier", TypeFamily::fourier}, {"paley", TypeFamily::paley}, {"hl", TypeFamily::hl}});
    notion.kind = a.choice<TypeKind>("kind", {{"type", TypeKind::type}, {"cotype", TypeKind::cotype}});
    notion.exponent = a.real("exponent");
    const int d = static_cast<int>(a.integer("d"));
    const long N = a.integer("N");
    const CounterRng rng(seed_of(ctx));
    const auto stream = point_stream(g);
    std::vector<double> ratios;
    for (long k = 0; k < a.integer("samples"); ++k) {
        const auto f = random_polynomial(d, N, value_space(a), rng, stream + static_cast<std::uint64_t>(k));
        ratios.push_back(type_test_ratio(f, notion, ctx.quad));
    }
    return {{"ratio", summarize(ratios).to_json()}};
}

// ---------------------------------------------------------------- sharpness

const std::vector<std::string> family_keys{"p", "q", "eps", "p0", "gamma", "eta", "q0", "alpha", "r", "beta", "b", "delta"};

json run_sharpness(const GridPoint& g, const RunContext& ctx) {
    const Args a(g);
    CounterexampleSpec spec;
    try {
        spec.family = family_from_string(a.text("family"));
    } catch (const DomainError&) {
        throw ConfigError("family: unknown family '" + a.text("family") + "'");
    }
    spec.d = static_cast<int>(a.integer("d"));
    spec.control = a.flag("control");
    spec.schedule = ctx.schedule;
    for (const auto& key : family_keys)
        if (a.has(key)) spec.params[key] = a.real(key);

    const auto rep = sharpness_verdict(spec, ctx.jobs);
    json series = {{"N", json::array()}, {"lhs", json::array()}, {"rhs", json::array()}};
    for (std::size_t i = 0; i < rep.series.lhs.size(); ++i) {
        series["N"].push_back(rep.series.lhs[i].n);
        series["lhs"].push_back(rep.series.lhs[i].value);
        series["rhs"].push_back(rep.series.rhs[i].value);
    }
    json resolved = json::object();
    for (const auto& [key, value] : family_defaults(spec.family)) resolved[key] = spec.param(key);
    return {{"verdict", std::string(to_string(rep.verdict))},
            {"reason", rep.reason},
            {"inequality", std::string(inequality_name(spec.family))},
            {"family_params", resolved},
            {"model", std::string(to_string(rep.expected.model))},
            {"expected_exponent", rep.expected.exponent},
            {"measured_exponent", rep.measured},
            {"r_squared", rep.fit.r_squared},
            {"rhs_relative_increment", rep.rhs_relative_increment},
            {"rhs_exponent", rep.rhs_fit.exponent},
            {"fit",
             {{"axis", std::string(to_string(rep.expected.axis))},
              {"power", rep.expected.lhs_power},
              {"t", rep.lhs_fit.t}}},
            {"free_fit",
             {{"model", std::string(to_string(rep.free_fit.model))},
              {"exponent", rep.free_fit.exponent},
              {"r_squared", rep.free_fit.r_squared}}},
            {"series", series}};
}

// ---------------------------------------------------------------- zygmund

json run_zygmund(const GridPoint& g, const RunContext& ctx) {
    const Args a(g);
    const auto variant = a.choice<ZygmundVariant>("variant", {{"std", ZygmundVariant::standard},
                                                              {"endpoint", ZygmundVariant::endpoint},
                                                              {"sequence", ZygmundVariant::sequence}});
    const double b = a.real("b"), q = a.real("q"), decay = a.real("decay");
    const int d = static_cast<int>(a.integer("d"));
    TrigPolynomial f(d, a.integer("N"), ValueSpace(2.0, 1));
    for (std::size_t i = 0; i < f.box().size(); ++i) {
        const double n = index_norm(f.box().at(i), d, IndexNorm::euclid);
        f.coefficient_entries(i)[0] = std::pow(n + 1.0, -decay);
    }
    json out = sides_json(zygmund_check(f, b, q, variant, ctx.quad));
    if (variant == ZygmundVariant::standard) out["exp_sum"] = exp_summability(f.coefficient_norms(), a.real("a"), b, q);
    return out;
}

// ---------------------------------------------------------------- bochkarev

json run_bochkarev(const GridPoint& g, const RunContext& ctx) {
    const Args a(g);
    const int d = static_cast<int>(a.integer("d"));
    const long N = a.integer("N");
    const double p0 = a.real("p0"), q = a.real("q");
    const CounterRng rng(seed_of(ctx));
    const auto stream = point_stream(g);
    std::vector<double> stats;
    for (long k = 0; k < a.integer("samples"); ++k) {
        const auto f = random_polynomial(d, N, value_space(a), rng, stream + static_cast<std::uint64_t>(k));
        stats.push_back(bochkarev_decay(f, p0, q, ctx.quad));
    }
    return {{"statistic", summarize(stats).to_json()}};
}

// ---------------------------------------------------------------- rademacher

bool rademacher_needs_seed(const GridPoint& g) {
    const Args a(g);
    return (a.has("method") && a.text("method") == "mc") || (a.has("family") && a.text("family") == "random");
}

json run_rademacher(const GridPoint& g, const RunContext& ctx) {
    const Args a(g);
    const auto n = static_cast<std::size_t>(a.integer("n"));
    const auto m = a.has("m") ? static_cast<std::size_t>(a.integer("m")) : n;
    const ValueSpace space(a.real("r"), m);
    const auto kind = a.choice<TypeKind>("kind", {{"type", TypeKind::type}, {"cotype", TypeKind::cotype}});
    const bool random_family = a.choice<bool>("family", {{"basis", false}, {"random", true}});
    const bool monte_carlo = a.choice<bool>("method", {{"exact", false}, {"mc", true}});

    AveragingMethod method = ExactEnumeration{};
    std::uint64_t stream = 0;
    if (rademacher_needs_seed(g)) stream = point_stream(g);
    if (monte_carlo) {
        MonteCarlo mc;
        mc.seed = CounterRng(seed_of(ctx)).bits(stream, 0);
        mc.trials = static_cast<std::size_t>(a.integer("trials"));
        mc.signs = a.choice<RandomSigns>("signs",
                                         {{"rademacher", RandomSigns::rademacher}, {"steinhaus", RandomSigns::steinhaus}});
        method = mc;
    }
    std::vector<std::vector<ValuePoint>> family;
    if (random_family) {
        const CounterRng rng(seed_of(ctx));
        for (long s = 0; s < a.integer("samples"); ++s) {
            std::vector<ValuePoint> xs;
            std::uint64_t idx = 0;
            for (std::size_t k = 0; k < n; ++k) {
                ValuePoint x(space);
                for (std::size_t i = 0; i < m; ++i) x[i] = rng.normal(stream + 1 + static_cast<std::uint64_t>(s), idx++);
                xs.push_back(std::move(x));
            }
            family.push_back(std::move(xs));
        }
    } else {
        require(n <= m, "n <= m", "basis family");
        std::vector<ValuePoint> xs;
        for (std::size_t k = 0; k < n; ++k) xs.push_back(ValuePoint::basis(space, k));
        family.push_back(std::move(xs));
    }
    const double moment = a.real("moment");
    json out = {{"constant", type_cotype_constant(kind, a.real("exponent"), family, moment, method)}};
    if (!random_family) out["std_error"] = rademacher_estimate(family.front(), moment, method).std_error;
    return out;
}

// ---------------------------------------------------------------- interp

RearrangementCurve interp_curve(const Args& a) {
    const double s = a.real("a");
    const std::string kind = a.text("profile");
    if (kind == "indicator") {
        require(s > 0.0, "a > 0", "indicator length");
        return RearrangementCurve::steps({s}, {1.0});
    }
    if (kind == "power") {
        require(s >= 0.0 && s < 1.0, "0 <= a < 1", "power profile t^{-a}");
        return RearrangementCurve::profile([s](double t) { return std::pow(t, -s); }, 1.0);
    }
    if (kind == "log") {
        require(s > 0.0, "a > 0", "log profile (1 - log t)^{-a}");
        return RearrangementCurve::profile([s](double t) { return std::pow(1.0 - std::log(t), -s); }, 1.0);
    }
    throw ConfigError("profile: expected indicator|power|log, got '" + kind + "'");
}

json run_interp(const GridPoint& g, const RunContext& ctx) {
    const Args a(g);
    const auto curve = interp_curve(a);
    const double t = a.real("t");
    require(t > 0.0, "t > 0");
    json out = {{"k", k_functional(curve, t)}, {"k_reversed", k_functional_reversed(curve, t)}};
    const std::string mode = a.text("mode");
    if (mode == "limiting") {
        out["norm"] = limiting_interp_norm(curve, {a.real("theta"), a.real("q"), a.real("b")}, ctx.quad);
    } else if (mode == "reiteration") {
        const auto r = reiteration_bracket_check(curve, a.real("theta"), a.real("p"), a.real("q"), a.real("b"), ctx.quad);
        out["left"] = r.left;
        out["middle"] = r.middle;
        out["right"] = r.right;
        out["upper_constant"] = r.upper_constant;
        out["lower_constant"] = r.lower_constant;
    } else {
        throw ConfigError("mode: expected limiting|reiteration, got '" + mode + "'");
    }
    return out;
}

// ---------------------------------------------------------------- hardy

json run_hardy(const GridPoint& g, const RunContext& ctx) {
    const Args a(g);
    const double b = a.real("b"), q = a.real("q");
    const auto member = static_cast<std::size_t>(a.integer("member"));
    if (member >= hardy_family_size) throw ConfigError("member: expected 0.." + std::to_string(hardy_family_size - 1));
    const std::string kind = a.text("kind");
    HardySides base, refined;
    if (kind == "function") {
        const auto variant = a.choice<HardyVariant>("variant", {{"i", HardyVariant::i}, {"iii", HardyVariant::iii}});
        const auto psi = hardy_profile_family()[member];
        base = hardy_check_functions(psi, b, q, variant, ctx.quad);
        refined = hardy_check_functions(psi, b, q, variant, ctx.quad.doubled());
    } else if (kind == "sequence") {
        const auto N = static_cast<std::size_t>(a.integer("N"));
        base = hardy_check_sequences(hardy_sequence_family(N)[member], b, q);
        refined = hardy_check_sequences(hardy_sequence_family(2 * N)[member], b, q);
    } else {
        throw ConfigError("kind: expected function|sequence, got '" + kind + "'");
    }
    const double c = base.rhs > 0.0 ? base.lhs / base.rhs : 0.0;
    const double c2 = refined.rhs > 0.0 ? refined.lhs / refined.rhs : 0.0;
    return {{"lhs", base.lhs},
            {"rhs", base.rhs},
            {"ratio", c},
            {"ratio_refined", c2},
            {"drift", c > 0.0 ? std::abs(c2 / c - 1.0) : 0.0}};
}

// ---------------------------------------------------------------- stein-weiss

json run_stein_weiss(const GridPoint& g, const RunContext& ctx) {
    const Args a(g);
    const SteinWeissParams s{a.real("u"), a.real("v"), a.real("lambda"), a.real("a"), a.real("b")};
    check_stein_weiss(s);
    const long N = a.integer("N");
    const CounterRng rng(seed_of(ctx));
    const auto stream = point_stream(g);
    std::vector<double> ratios;
    for (long k = 0; k < a.integer("samples"); ++k) {
        StepFunction f(1, a.real("scale"), N, ValueSpace(2.0, 1));
        for (long j = -N; j <= N; ++j)
            f.set_cell({{j, 0}}, ValuePoint::basis(ValueSpace(2.0, 1), 0,
                                                   rng.normal(stream + static_cast<std::uint64_t>(k),
                                                              static_cast<std::uint64_t>(j + N))));
        ratios.push_back(stein_weiss_check(f, s, ctx.quad).ratio);
    }
    return {{"ratio", summarize(ratios).to_json()}};
}

std::vector<Command> build_commands() {
    std::vector<Command> out;
    out.push_back({"region",
                   "Pitt's inequality for functions with values in a space of Fourier type p0: "
                   "classifies (p, q, beta, gamma) as interior, endpoint (cases i-iv), failing endpoint or outside",
                   {{"d", "1", "dimension (1 or 2)"},
                    {"p", "2", "source exponent"},
                    {"q", "2", "target exponent"},
                    {"beta", "", "source weight exponent (default: from the scaling relation)"},
                    {"gamma", "0", "target weight exponent"},
                    {"p0", "2", "Fourier type of the value space"}},
                   never,
                   run_region});
    out.push_back({"ratio",
                   "Pitt's inequality on the torus: weighted coefficient norm over weighted function norm "
                   "for random vector-valued trigonometric polynomials",
                   {{"d", "1", "dimension"},
                    {"N", "16", "degree"},
                    {"r", "2", "value space l^r_m"},
                    {"m", "1", "value space dimension"},
                    {"p", "2", "source exponent"},
                    {"q", "2", "target exponent"},
                    {"beta", "", "source weight exponent (default: from the scaling relation)"},
                    {"gamma", "0", "target weight exponent"},
                    {"samples", "20", "random polynomials per point"}},
                   always,
                   run_ratio});
    out.push_back({"type-test",
                   "Fourier, Paley and Hardy-Littlewood type and cotype of l^r_m "
                   "(Hausdorff-Young and Paley inequalities for vector-valued functions)",
                   {{"notion", "fourier", "fourier|paley|hl"},
                    {"kind", "type", "type|cotype"},
                    {"exponent", "2", "type exponent in (1,2] or cotype exponent in [2,inf)"},
                    {"r", "2", "value space l^r_m"},
                    {"m", "2", "value space dimension"},
                    {"d", "1", "dimension"},
                    {"N", "8", "degree"},
                    {"samples", "20", "random polynomials per point"}},
                   always,
                   run_type_test});
    std::vector<ParamSpec> sharp{{"family", "EX411", "counterexample family"},
                                 {"d", "1", "dimension"},
                                 {"control", "false", "skip the parameter window checks"}};
    for (const auto& key : family_keys) sharp.push_back({key, "", "family parameter (default: family default)"});
    out.push_back({"sharpness",
                   "Sharpness of the endpoint Pitt, Hardy-Littlewood, Zygmund and Bochkarev inequalities: "
                   "counterexample families diverging at a logarithmic rate",
                   std::move(sharp),
                   never,
                   run_sharpness});
    out.push_back({"zygmund",
                   "Zygmund's inequality and its limiting Lorentz-Zygmund forms for vector-valued functions, "
                   "with the exponential summability corollary",
                   {{"variant", "std", "std|endpoint|sequence"},
                    {"b", "0", "log exponent"},
                    {"q", "1", "fine index"},
                    {"a", "1", "exponential summability scale"},
                    {"decay", "1", "coefficients (|n|+1)^{-decay}"},
                    {"d", "1", "dimension"},
                    {"N", "64", "degree"}},
                   never,
                   run_zygmund});
    out.push_back({"bochkarev",
                   "Bochkarev's Hausdorff-Young inequality for Lorentz spaces: decay of rearranged coefficients",
                   {{"p0", "2", "Fourier type"},
                    {"q", "4", "Lorentz fine index, q > p0"},
                    {"d", "1", "dimension"},
                    {"N", "64", "degree"},
                    {"r", "2", "value space l^r_m"},
                    {"m", "1", "value space dimension"},
                    {"samples", "200", "random polynomials per point"}},
                   always,
                   run_bochkarev});
    out.push_back({"rademacher",
                   "Rademacher type and cotype of l^r_m (Kahane's moment comparison, Pisier's l^1_n criterion)",
                   {{"family", "basis", "basis|random"},
                    {"r", "1", "value space l^r_m"},
                    {"n", "4", "vectors per tuple"},
                    {"m", "", "space dimension (default n)"},
                    {"kind", "type", "type|cotype"},
                    {"exponent", "2", "type or cotype exponent"},
                    {"moment", "2", "moment of the random sum"},
                    {"method", "exact", "exact|mc"},
                    {"trials", "10000", "Monte Carlo trials"},
                    {"signs", "rademacher", "rademacher|steinhaus"},
                    {"samples", "1", "tuples in a random family"}},
                   rademacher_needs_seed,
                   run_rademacher});
    out.push_back({"interp",
                   "Limiting real interpolation of (L^1, L^inf) and the reiteration bracket between Lorentz-Zygmund "
                   "spaces (Holmstedt's formula)",
                   {{"profile", "indicator", "indicator|power|log"},
                    {"a", "0.5", "indicator length, power exponent or log exponent"},
                    {"mode", "limiting", "limiting|reiteration"},
                    {"theta", "0", "interpolation parameter"},
                    {"q", "1", "fine index"},
                    {"b", "0", "log exponent"},
                    {"p", "2", "Lorentz second index (reiteration)"},
                    {"t", "0.5", "K-functional argument"}},
                   never,
                   run_interp});
    out.push_back({"hardy",
                   "Hardy inequalities with logarithmic and doubly logarithmic weights, for functions on (0,1) "
                   "and for sequences",
                   {{"kind", "function", "function|sequence"},
                    {"variant", "i", "i|iii (functions)"},
                    {"member", "0", "index in the fixed 20-member test family"},
                    {"b", "0.5", "log exponent"},
                    {"q", "2", "exponent"},
                    {"N", "10000", "sequence length"}},
                   never,
                   run_hardy});
    out.push_back({"stein-weiss",
                   "Stein-Weiss inequality for Riesz potentials with power weights",
                   {{"u", "2", "source exponent"},
                    {"v", "2", "target exponent"},
                    {"lambda", "0.5", "kernel exponent"},
                    {"a", "0.25", "target weight exponent"},
                    {"b", "0.25", "source weight exponent"},
                    {"N", "4", "cells -N..N"},
                    {"scale", "1", "cell width"},
                    {"samples", "1", "random step functions per point"}},
                   always,
                   run_stein_weiss});
    return out;
}

}  // namespace

const std::vector<Command>& commands() {
    static const std::vector<Command> all = build_commands();
    return all;
}

const Command* find_command(const std::string& name) {
    for (const auto& c : commands())
        if (c.name == name) return &c;
    return nullptr;
}

std::uint64_t point_stream(const GridPoint& point) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    auto feed = [&h](const std::string& s) {
        for (unsigned char ch : s) {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
        h ^= 0xff;
        h *= 0x100000001b3ULL;
    };
    for (const auto& [key, value] : point) {
        feed(key);
        feed(value);
    }
    return h;
}

}  // namespace pittlab::cli
