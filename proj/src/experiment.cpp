#include "condgrad/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace condgrad {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

}  // namespace

std::string RuleSpec::label() const {
    switch (kind) {
        case RuleKind::Alg1: return "alg1";
        case RuleKind::Alg2: return "alg2";
        case RuleKind::Diminishing: return "diminishing";
        case RuleKind::Nesterov: return "nesterov";
        case RuleKind::Short: return "short";
    }
    return "?";
}

RuleSpec rule_spec_from_string(const std::string& text) {
    const std::string t = lower(trim(text));
    const auto colon = t.find(':');
    const std::string head = colon == std::string::npos ? t : trim(t.substr(0, colon));
    RuleSpec spec;
    if (head == "alg1") {
        spec.kind = RuleKind::Alg1;
    } else if (head == "alg2") {
        spec.kind = RuleKind::Alg2;
    } else if (head == "diminishing") {
        spec.kind = RuleKind::Diminishing;
    } else if (head == "nesterov") {
        spec.kind = RuleKind::Nesterov;
    } else if (head == "short") {
        spec.kind = RuleKind::Short;
    } else {
        throw std::invalid_argument("unknown rule '" + text + "'");
    }
    if (colon != std::string::npos) {
        if (spec.kind != RuleKind::Alg2 && spec.kind != RuleKind::Short)
            throw std::invalid_argument("rule '" + head + "' takes no parameter");
        spec.L = std::stod(t.substr(colon + 1));
        if (!(spec.L > 0.0)) throw std::invalid_argument("rule parameter must be > 0");
    } else if (spec.kind == RuleKind::Short) {
        throw std::invalid_argument("rule 'short' needs an explicit L, e.g. short:10");
    }
    return spec;
}

void ExperimentConfig::validate() const {
    if (n_seeds < 1) throw std::invalid_argument("config: n_seeds must be >= 1");
    if (rules.empty()) throw std::invalid_argument("config: at least one rule required");
    if (term.rel_gap_tol > 0.0 && term.rel_gap_tol >= 1.0)
        throw std::invalid_argument("config: tol must be in (0, 1)");
    term.validate();
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

namespace {

StepRuleConfig resolve_rule(const RuleSpec& spec, const CompositeProblem& problem) {
    switch (spec.kind) {
        case RuleKind::Alg1: {
            const auto& c = problem.constants;
            if (!c.nu || !c.M_nu)
                throw std::runtime_error("alg1 needs certified (nu, M_nu), which instance '" +
                                         problem.name + "' does not carry");
            return ParamDependent{*c.nu, *c.M_nu};
        }
        case RuleKind::Alg2: return AdaptiveLS{spec.L};
        case RuleKind::Diminishing: return Diminishing{};
        case RuleKind::Nesterov: return NesterovDiminishing{};
        case RuleKind::Short: return ShortStep{spec.L};
    }
    throw std::logic_error("resolve_rule: unreachable");
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg, int jobs) {
    cfg.validate();
    if (jobs < 1) jobs = 1;

    std::vector<CompositeProblem> problems;
    problems.reserve(static_cast<std::size_t>(cfg.n_seeds));
    for (int i = 0; i < cfg.n_seeds; ++i) {
        InstanceSpec spec = cfg.instance;
        spec.seed = cfg.base_seed + static_cast<std::uint64_t>(i);
        problems.push_back(make_problem(spec));
    }

    ExperimentResult result;
    result.name = cfg.name;
    result.runs.resize(cfg.rules.size() * static_cast<std::size_t>(cfg.n_seeds));

    auto run_one = [&](std::size_t task) {
        const std::size_t r = task / static_cast<std::size_t>(cfg.n_seeds);
        const std::size_t s = task % static_cast<std::size_t>(cfg.n_seeds);
        RunOutcome& out = result.runs[task];
        out.rule = cfg.rules[r].label();
        out.seed = cfg.base_seed + s;
        try {
            const CompositeProblem& problem = problems[s];
            const StepRuleConfig rule = resolve_rule(cfg.rules[r], problem);
            out.trace = solve(problem, rule, problem.default_start, cfg.term);
            out.ok = true;
        } catch (const std::exception& e) {
            out.ok = false;
            out.error = e.what();
        }
    };

    const std::size_t n_tasks = result.runs.size();
    if (jobs == 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) run_one(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int n_workers = std::min<int>(jobs, static_cast<int>(n_tasks));
        pool.reserve(static_cast<std::size_t>(n_workers));
        for (int w = 0; w < n_workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1))
                    run_one(i);
            });
        }
        for (auto& t : pool) t.join();
    }

    for (std::size_t r = 0; r < cfg.rules.size(); ++r) {
        RuleSummary row;
        row.rule = cfg.rules[r].label();
        double iter_sum = 0.0, sec_sum = 0.0;
        for (int s = 0; s < cfg.n_seeds; ++s) {
            const RunOutcome& out = result.runs[r * static_cast<std::size_t>(cfg.n_seeds) +
                                                static_cast<std::size_t>(s)];
            if (out.ok) {
                ++row.n_success;
                iter_sum += static_cast<double>(out.trace.iterations());
                sec_sum += out.trace.records.back().elapsed_s;
            } else {
                ++row.n_fail;
            }
        }
        if (row.n_success > 0) {
            row.avg_iterations = iter_sum / row.n_success;
            row.avg_seconds = sec_sum / row.n_success;
        }
        result.summary.push_back(std::move(row));
    }
    return result;
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

std::vector<ExperimentConfig> parse_config(std::istream& in) {
    std::vector<ExperimentConfig> out;
    std::string line;
    int line_no = 0;
    auto fail = [&line_no](const std::string& what) {
        throw std::invalid_argument("config line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') fail("unterminated section header");
            out.emplace_back();
            out.back().name = trim(t.substr(1, t.size() - 2));
            if (out.back().name.empty()) fail("empty section name");
            continue;
        }
        if (out.empty()) fail("key outside any [section]");
        const auto eq = t.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        const std::string key = lower(trim(t.substr(0, eq)));
        const std::string value = trim(t.substr(eq + 1));
        if (value.empty()) fail("empty value for '" + key + "'");
        ExperimentConfig& cfg = out.back();
        try {
            if (key == "family") {
                cfg.instance.family = lower(value);
            } else if (key == "n") {
                cfg.instance.n = std::stol(value);
            } else if (key == "m") {
                cfg.instance.m = std::stol(value);
            } else if (key == "k") {
                cfg.instance.k = std::stol(value);
            } else if (key == "p") {
                cfg.instance.p = std::stod(value);
            } else if (key == "q") {
                cfg.instance.q = std::stod(value);
            } else if (key == "lambda") {
                cfg.instance.lambda = std::stod(value);
            } else if (key == "alpha") {
                cfg.instance.alpha = std::stod(value);
            } else if (key == "rules") {
                cfg.rules.clear();
                for (const std::string& r : split(value, ','))
                    cfg.rules.push_back(rule_spec_from_string(r));
            } else if (key == "n_seeds") {
                cfg.n_seeds = std::stoi(value);
            } else if (key == "base_seed") {
                cfg.base_seed = std::stoull(value);
            } else if (key == "tol") {
                cfg.term.rel_gap_tol = std::stod(value);
            } else if (key == "max_iter") {
                cfg.term.max_iter = std::stol(value);
            } else if (key == "max_seconds") {
                cfg.term.max_seconds = std::stod(value);
            } else {
                fail("unknown key '" + key + "'");
            }
        } catch (const std::invalid_argument&) {
            throw;
        } catch (const std::exception& e) {
            fail(std::string("bad value for '") + key + "': " + e.what());
        }
    }
    for (const ExperimentConfig& cfg : out) cfg.validate();
    return out;
}

std::vector<ExperimentConfig> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    return parse_config(in);
}

// ---------------------------------------------------------------------------
// CSV emission
// ---------------------------------------------------------------------------

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

static void require_stream(const std::ostream& out, const std::string& what) {
    if (!out) throw std::runtime_error("cannot write " + what);
}

void emit_trace_csv(const SolverTrace& trace, std::ostream& out) {
    if (trace.records.empty()) throw std::invalid_argument("emit_trace_csv: empty trace");
    out << "t,phi,delta,delta_star,tau,L,inner,elapsed_s\n";
    for (const TraceRecord& r : trace.records) {
        out << r.t << ',' << format_double(r.phi) << ',' << format_double(r.delta) << ','
            << format_double(r.delta_star) << ',' << format_double(r.tau) << ',';
        if (r.L) out << format_double(*r.L);
        out << ',';
        if (r.inner) out << *r.inner;
        out << ',' << format_double(r.elapsed_s) << '\n';
    }
    require_stream(out, "trace CSV");
}

void emit_trace_csv(const SolverTrace& trace, const std::string& path) {
    std::ofstream out(path);
    require_stream(out, "'" + path + "'");
    emit_trace_csv(trace, out);
}

void emit_bounds_csv(const SolverTrace& trace, const TheoremBounds& bounds, double phi_star,
                     std::ostream& out) {
    if (trace.records.empty()) throw std::invalid_argument("emit_bounds_csv: empty trace");
    out << "t,phi_gap,envelope,delta_star,delta_star_bound,valid\n";
    for (const TraceRecord& r : trace.records) {
        const double env = bounds.phi_gap_bound(r.t);
        const double ds_bound = bounds.delta_star_bound_convex(r.t);
        const bool valid = std::isfinite(env);
        out << r.t << ',' << format_double(r.phi - phi_star) << ',' << format_double(env) << ','
            << format_double(r.delta_star) << ',' << format_double(ds_bound) << ','
            << (valid ? 1 : 0) << '\n';
    }
    require_stream(out, "bounds CSV");
}

void emit_bounds_csv(const SolverTrace& trace, const TheoremBounds& bounds, double phi_star,
                     const std::string& path) {
    std::ofstream out(path);
    require_stream(out, "'" + path + "'");
    emit_bounds_csv(trace, bounds, phi_star, out);
}

void print_summary(const ExperimentResult& result, std::ostream& out) {
    out << "# " << result.name << "\n";
    out << "rule          ok/all   avg_iter      avg_sec\n";
    for (const RuleSummary& row : result.summary) {
        char line[128];
        std::snprintf(line, sizeof(line), "%-12s %3d/%-3d %10.1f %12.4f\n", row.rule.c_str(),
                      row.n_success, row.n_success + row.n_fail, row.avg_iterations,
                      row.avg_seconds);
        out << line;
    }
}

}  // namespace condgrad
