#include "bhlab/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "bhlab/archimedean.hpp"
#include "bhlab/localdensity.hpp"
#include "bhlab/report.hpp"
#include "bhlab/siegel.hpp"
#include "bhlab/sieve.hpp"
#include "bhlab/zeta.hpp"

namespace bhlab {

using nlohmann::json;

namespace {

void require_keys(const json& obj, const std::set<std::string>& required,
                  const std::set<std::string>& optional, const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (auto& [key, _] : obj.items()) {
        if (!required.count(key) && !optional.count(key))
            throw ConfigError(where + ": unknown key '" + key + "'");
    }
    for (auto& key : required) {
        if (!obj.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
    }
}

MatrixSpace parse_space(const json& j) {
    require_keys(j, {"family", "n"}, {}, "space");
    std::string fam = j.at("family").get<std::string>();
    int n = j.at("n").get<int>();
    if (n < 1 || n > 6) throw ConfigError("space: n out of desk-scale range");
    if (fam == "full") return MatrixSpace{Family::Full, n};
    if (fam == "skew") return MatrixSpace{Family::Skew, n};
    if (fam == "sym") return MatrixSpace{Family::Sym, n};
    throw ConfigError("space: family must be full|skew|sym");
}

Region parse_region(const json& j) {
    require_keys(j, {"kind"}, {"T", "sign_mode", "patch_height", "rho"}, "region");
    std::string kind = j.at("kind").get<std::string>();
    SignMode mode = SignMode::PositivePrime;
    if (j.contains("sign_mode")) {
        std::string m = j.at("sign_mode").get<std::string>();
        if (m == "positive_prime") mode = SignMode::PositivePrime;
        else if (m == "prime_ideal") mode = SignMode::PrimeIdeal;
        else throw ConfigError("region: sign_mode must be positive_prime|prime_ideal");
    }
    double T = j.value("T", 0.0);
    if (kind == "box") return Region::box(T, mode);
    if (kind == "cone") {
        double h = j.value("patch_height", 1.0);
        PatchPredicate patch = [h](const std::vector<double>& v) {
            for (double x : v)
                if (std::fabs(x) > h) return false;
            return true;
        };
        return Region::cone(patch, T, h, mode);
    }
    if (kind == "radial") {
        double rho = j.value("rho", 1.0);
        return Region::radial_region([rho](const std::vector<double>&) { return rho; }, T, rho,
                                     mode);
    }
    throw ConfigError("region: kind must be box|cone|radial (custom regions are library-only)");
}

std::string json_dump_sorted(const json& j) { return j.dump(2); }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write " + path);
    f << text;
}

json sym_to_json(const SymMat& S) {
    json a = json::array();
    for (i64 x : S) a.push_back(x);
    return a;
}

SymMat sym_from_json(const json& j, int n) {
    if (!j.is_array() || (int)j.size() != n * n)
        throw ConfigError("matrix: expected a flat row-major array of n*n integers");
    SymMat S;
    for (auto& x : j) S.push_back(x.get<i64>());
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < n; ++c)
            if (S[i * n + c] != S[c * n + i]) throw ConfigError("matrix: not symmetric");
    return S;
}

json jordan_odd_to_json(const SymMat& S, int n, i64 D) {
    json out = json::object();
    for (auto& [p, e] : factorize(D)) {
        if (p == 2) continue;
        json blocks = json::array();
        for (auto& b : jordan_decompose_odd(S, n, p).blocks)
            blocks.push_back({{"scale", b.scale}, {"dim", b.dim}, {"det_class", b.det_class}});
        out[std::to_string(p)] = blocks;
    }
    return out;
}

json jordan2_to_json(const JordanSymbol2& sym) {
    json blocks = json::array();
    for (auto& b : sym.blocks) {
        const char* type = b.type == BlockType2::I        ? "I"
                           : b.type == BlockType2::II     ? "II"
                           : b.type == BlockType2::LoveBound ? "love_bound"
                                                             : "love_free";
        blocks.push_back({{"scale", b.scale},
                          {"dim", b.dim},
                          {"type", type},
                          {"octane", b.octane},
                          {"det_mod8", b.det_mod8}});
    }
    return {{"blocks", blocks}, {"oct", sym.oct}};
}

const std::set<std::string> kExperiments = {"count",   "predict",     "compare", "density",
                                            "series",  "equidist",    "sieve",   "mass",
                                            "classnumber", "cutting", "pipeline"};

} // namespace

nlohmann::json resolve_config(const nlohmann::json& config) {
    require_keys(config, {"version", "experiment"},
                 {"space", "region", "T_list", "seed", "samples", "threads", "budget", "q", "k",
                  "m", "trunc", "brute_limit", "z", "d_max", "epsilon", "D", "n", "matrix",
                  "equivalence", "progression"},
                 "config");
    if (config.at("version").get<int>() != 1) throw ConfigError("config: version must be 1");
    std::string exp = config.at("experiment").get<std::string>();
    if (!kExperiments.count(exp)) throw ConfigError("config: unknown experiment '" + exp + "'");
    json resolved = config;
    if (!resolved.contains("seed")) resolved["seed"] = 1;
    if (!resolved.contains("threads")) resolved["threads"] = 1;
    if (!resolved.contains("samples")) resolved["samples"] = 200000;
    if (!resolved.contains("budget")) resolved["budget"] = 2000000000LL;
    return resolved;
}

static void run_experiment_impl(const nlohmann::json& raw, const std::string& out_dir);

void run_experiment(const nlohmann::json& raw, const std::string& out_dir) {
    try {
        run_experiment_impl(raw, out_dir);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

static void run_experiment_impl(const nlohmann::json& raw, const std::string& out_dir) {
    json config = resolve_config(raw);
    std::filesystem::create_directories(out_dir);
    std::string exp = config.at("experiment").get<std::string>();
    int threads = config.at("threads").get<int>();
    u64 seed = config.at("seed").get<u64>();
    i64 samples = config.at("samples").get<i64>();
    i64 budget = config.at("budget").get<i64>();

    write_text(out_dir + "/resolved_config.json", json_dump_sorted(config) + "\n");

    if (exp == "count") {
        MatrixSpace sp = parse_space(config.at("space"));
        Region region = parse_region(config.at("region"));
        std::optional<Progression> prog;
        if (config.contains("progression")) {
            auto& pj = config.at("progression");
            require_keys(pj, {"a", "q"}, {}, "progression");
            prog = Progression{pj.at("a").get<i64>(), pj.at("q").get<i64>()};
        }
        CountResult r = count_primes(sp, region, threads, prog);
        json by = json::object();
        for (auto& [v, c] : r.by_value) by[std::to_string(v)] = c;
        json out = {{"total", r.total}, {"by_value", by}};
        write_text(out_dir + "/count.json", json_dump_sorted(out) + "\n");
        json meta = {{"wall_time", r.wall_time}, {"thread_count", r.thread_count}};
        write_text(out_dir + "/meta.json", json_dump_sorted(meta) + "\n");
    } else if (exp == "predict") {
        MatrixSpace sp = parse_space(config.at("space"));
        double series = singular_series_closed_form(sp);
        CsvWriter csv({"T", "predicted", "stderr"});
        for (i64 T : config.at("T_list").get<std::vector<i64>>()) {
            McEstimate bh = bh_integral(sp, Region::box((double)T), samples, seed, threads);
            csv.row({std::to_string(T), format_double(series * bh.value),
                     format_double(series * bh.stderr_)});
        }
        csv.write(out_dir + "/predict.csv");
    } else if (exp == "compare") {
        MatrixSpace sp = parse_space(config.at("space"));
        double series = singular_series_closed_form(sp);
        CsvWriter csv({"T", "empirical", "predicted", "ratio", "stderr"});
        for (i64 T : config.at("T_list").get<std::vector<i64>>()) {
            CountResult r = count_primes(sp, Region::box((double)T), threads);
            McEstimate bh = bh_integral(sp, Region::box((double)T), samples, seed, threads);
            double pred = series * bh.value;
            csv.row({std::to_string(T), std::to_string(r.total), format_double(pred),
                     format_double(pred > 0 ? r.total / pred : 0.0),
                     format_double(series * bh.stderr_)});
        }
        csv.write(out_dir + "/compare.csv");
    } else if (exp == "density") {
        MatrixSpace sp = parse_space(config.at("space"));
        LocalDensity d = count_mod(sp, config.at("q").get<i64>(), config.at("k").get<int>(),
                                   config.at("m").get<i64>(), threads, budget, true);
        json out = {{"raw_count", d.raw_count},
                    {"normalized_num", to_string_i128(d.normalized.num())},
                    {"normalized_den", to_string_i128(d.normalized.den())},
                    {"stabilized", d.stabilized},
                    {"stable_k", d.stable_k}};
        write_text(out_dir + "/density.json", json_dump_sorted(out) + "\n");
    } else if (exp == "series") {
        MatrixSpace sp = parse_space(config.at("space"));
        SingularSeries s = singular_series(sp, config.value("trunc", (i64)200),
                                           config.value("brute_limit", (i64)31), threads);
        CsvWriter csv({"prime", "raw_count", "normalized_num", "normalized_den", "factor"});
        int dim = sp.ambient_dim();
        for (auto& [p, f] : s.per_prime_factors) {
            // factor = (1 - p^-dim rho)/(1 - 1/p); recover rho for the table
            Rational rho_rat = (Rational(1) - f * Rational(p - 1, p)) * Rational(checked_pow(p, dim));
            if (rho_rat.den() != 1) throw std::logic_error("series: non-integral rho");
            Rational norm = rho_rat / Rational(checked_pow(p, dim - 1));
            csv.row({std::to_string(p), to_string_i128(rho_rat.num()),
                     to_string_i128(norm.num()), to_string_i128(norm.den()),
                     format_double(f.to_double())});
        }
        csv.write(out_dir + "/series.csv");
        json out = {{"truncated_product", s.truncated_product},
                    {"closed_form", s.closed_form},
                    {"closed_form_symbolic", s.closed_form_symbolic}};
        write_text(out_dir + "/series.json", json_dump_sorted(out) + "\n");
    } else if (exp == "equidist") {
        MatrixSpace sp = parse_space(config.at("space"));
        EquidistReport r = check_local_equidistribution(sp, config.at("q").get<i64>(),
                                                        config.at("k").get<int>(), budget);
        json counts = json::object();
        for (auto& [cls, c] : r.class_counts) counts[std::to_string(cls)] = c;
        json out = {{"pass", r.pass},
                    {"common_count", r.common_count},
                    {"detail", r.detail},
                    {"class_counts", counts}};
        write_text(out_dir + "/equidist.json", json_dump_sorted(out) + "\n");
        if (!r.pass) throw std::logic_error("equidistribution invariant failed");
    } else if (exp == "sieve") {
        MatrixSpace sp = parse_space(config.at("space"));
        i64 T = (i64)parse_region(config.at("region")).T;
        double z = config.at("z").get<double>();
        SieveResult r = rough_count(sp, T, z, threads);
        json out = {{"main_term", r.main_term},
                    {"exact_rough_count", r.exact_rough_count},
                    {"remainder_sum", r.remainder_sum},
                    {"z", r.z},
                    {"prime_count_bound", r.prime_count_bound},
                    {"sieve_constant", r.sieve_constant},
                    {"small_prime_contribution", small_prime_contribution(sp, T, z, threads)}};
        write_text(out_dir + "/sieve.json", json_dump_sorted(out) + "\n");
        CsvWriter csv({"d", "r_d", "bound", "ratio"});
        for (auto& row : remainder_experiment(sp, T, config.value("d_max", (i64)30), threads))
            csv.row({std::to_string(row.d), format_double(row.r_d), format_double(row.bound),
                     format_double(row.ratio)});
        csv.write(out_dir + "/remainders.csv");
    } else if (exp == "mass") {
        int n = config.at("n").get<int>();
        json out;
        if (config.contains("matrix")) {
            SymMat S = sym_from_json(config.at("matrix"), n);
            MassResult m = siegel_mass(S, n);
            json alphas = json::object();
            for (auto& [p, a] : m.alpha_factors) alphas[std::to_string(p)] = a.str();
            out = {{"mass", m.mass},
                   {"n", n},
                   {"D", m.D},
                   {"alpha_factors", alphas},
                   {"jordan_2", jordan2_to_json(jordan_decompose_2(S, n))}};
        } else {
            i64 D = config.at("D").get<i64>();
            json genera = json::array();
            for (auto& g : mass_bruteforce(n, D)) {
                json cls = json::array();
                for (int idx : g.class_indices) cls.push_back(idx);
                genera.push_back({{"mass", g.mass.str()},
                                  {"mass_float", g.mass.to_double()},
                                  {"classes", cls},
                                  {"representative", sym_to_json(g.representative)},
                                  {"jordan_2", jordan2_to_json(jordan_decompose_2(g.representative, n))},
                                  {"jordan_odd", jordan_odd_to_json(g.representative, n, D)}});
            }
            out = {{"n", n}, {"D", D}, {"genera", genera}};
        }
        write_text(out_dir + "/mass.json", json_dump_sorted(out) + "\n");
    } else if (exp == "classnumber") {
        int n = config.at("n").get<int>();
        i64 D = config.at("D").get<i64>();
        json out = {{"n", n},
                    {"D", D},
                    {"GL", class_number_bruteforce(n, D, Equivalence::GL)},
                    {"SL", class_number_bruteforce(n, D, Equivalence::SL)},
                    {"asymptotic", n >= 3 && is_prime64(D) ? class_number_asymptotic(n, D) : 0.0}};
        write_text(out_dir + "/classnumber.json", json_dump_sorted(out) + "\n");
    } else if (exp == "cutting") {
        MatrixSpace sp = parse_space(config.at("space"));
        double eps = config.at("epsilon").get<double>();
        EpsilonCutting cut = epsilon_cutting(sp, Region::box(1.0), eps, samples, seed);
        json pieces = json::array();
        for (auto& pc : cut.pieces)
            pieces.push_back({{"sign", pc.sign},
                              {"outer_radius", pc.m_lo},
                              {"inner_radius", pc.m_hi},
                              {"height", pc.height}});
        json out = {{"epsilon", cut.epsilon},
                    {"pieces", pieces},
                    {"exceptional_fraction", cut.exceptional_fraction},
                    {"exceptional_volume_bound", cut.exceptional_volume_bound}};
        write_text(out_dir + "/cutting.json", json_dump_sorted(out) + "\n");
    } else if (exp == "pipeline") {
        MatrixSpace sp = parse_space(config.at("space"));
        double eps = config.value("epsilon", 0.2);
        CsvWriter csv({"T", "empirical", "predicted", "exceptional_bound", "ratio", "stderr"});
        for (auto& row : cones_to_box_experiment(sp, config.at("T_list").get<std::vector<i64>>(),
                                                 eps, samples, seed, threads))
            csv.row({format_double(row.T), format_double(row.empirical),
                     format_double(row.predicted), format_double(row.exceptional_bound),
                     format_double(row.ratio), format_double(row.stderr_)});
        csv.write(out_dir + "/pipeline.csv");
    }
}

namespace {

std::string rational_str(const Rational& r) { return r.str(); }

struct FixtureDef {
    std::string name;
    std::string kind;
    double tol;
    std::function<std::string(int)> compute; // threads -> canonical value
};

std::vector<FixtureDef> fixture_registry() {
    std::vector<FixtureDef> defs;
    auto add_int = [&](std::string name, std::function<i64(int)> f) {
        defs.push_back({std::move(name), "int", 0.0,
                        [f](int t) { return std::to_string(f(t)); }});
    };
    auto add_rat = [&](std::string name, std::function<Rational(int)> f) {
        defs.push_back({std::move(name), "rational", 0.0,
                        [f](int t) { return rational_str(f(t)); }});
    };
    auto add_float = [&](std::string name, double tol, std::function<double(int)> f) {
        defs.push_back({std::move(name), "float", tol,
                        [f](int t) { return format_double(f(t)); }});
    };

    MatrixSpace full2{Family::Full, 2}, sym3{Family::Sym, 3}, skew2{Family::Skew, 2};

    add_int("count.full2.box1.positive",
            [full2](int t) { return count_primes(full2, Region::box(1), t).total; });
    add_int("count.full2.box1.ideal", [full2](int t) {
        return count_primes(full2, Region::box(1, SignMode::PrimeIdeal), t).total;
    });
    add_int("count.full2.box20.positive",
            [full2](int t) { return count_primes(full2, Region::box(20), t).total; });
    add_int("count.sym3.box10.positive",
            [sym3](int t) { return count_primes(sym3, Region::box(10), t).total; });
    add_int("count.sym3.box10.ideal", [sym3](int t) {
        return count_primes(sym3, Region::box(10, SignMode::PrimeIdeal), t).total;
    });
    add_int("count.skew2.box10.positive",
            [skew2](int t) { return count_primes(skew2, Region::box(10), t).total; });
    add_int("count.skew2.box10.ideal", [skew2](int t) {
        return count_primes(skew2, Region::box(10, SignMode::PrimeIdeal), t).total;
    });
    add_int("levelset.full2.m1.box5",
            [full2](int t) { return count_level_set(full2, 1, Region::box(5), t); });
    add_int("levelset.full2.m6.box5",
            [full2](int t) { return count_level_set(full2, 6, Region::box(5), t); });

    add_int("density.full2.q3k1m1",
            [full2](int t) { return count_mod(full2, 3, 1, 1, t).raw_count; });
    add_int("density.full2.q3k1m0",
            [full2](int t) { return count_mod(full2, 3, 1, 0, t).raw_count; });
    add_int("density.full2.q5k2m5",
            [full2](int t) { return count_mod(full2, 5, 2, 5, t).raw_count; });
    add_int("density.sym3.q3k1m0",
            [sym3](int t) { return count_mod(sym3, 3, 1, 0, t).raw_count; });
    add_int("density.skew2.q5k1m0",
            [skew2](int t) { return count_mod(skew2, 5, 1, 0, t).raw_count; });

    add_int("sieve.full2.T20.z5.rough",
            [full2](int t) { return rough_count(full2, 20, 5.0, t).exact_rough_count; });
    add_int("sieve.full2.T20.z5.smallprimes",
            [full2](int t) { return small_prime_contribution(full2, 20, 5.0, t); });
    add_int("sieve.full2.rho6", [full2](int t) { return rho(full2, 6, t); });

    add_int("classnumber.n2.D1.GL",
            [](int) { return class_number_bruteforce(2, 1, Equivalence::GL); });
    add_int("classnumber.n2.D3.GL",
            [](int) { return class_number_bruteforce(2, 3, Equivalence::GL); });
    add_int("classnumber.n3.D5.SL",
            [](int) { return class_number_bruteforce(3, 5, Equivalence::SL); });
    add_int("classnumber.n3.D53.SL",
            [](int) { return class_number_bruteforce(3, 53, Equivalence::SL); });

    add_rat("mass.n3.D3.total", [](int) {
        Rational total(0);
        for (auto& g : mass_bruteforce(3, 3)) total += g.mass;
        return total;
    });
    add_rat("mass.n3.D11.total", [](int) {
        Rational total(0);
        for (auto& g : mass_bruteforce(3, 11)) total += g.mass;
        return total;
    });
    add_rat("alpha2.I3", [](int) { return alpha_2({1, 0, 0, 0, 1, 0, 0, 0, 1}, 3); });

    add_float("siegelmass.I3", 1e-10,
              [](int) { return siegel_mass({1, 0, 0, 0, 1, 0, 0, 0, 1}, 3).mass; });
    add_float("siegelmass.diag115", 1e-10,
              [](int) { return siegel_mass({1, 0, 0, 0, 1, 0, 0, 0, 5}, 3).mass; });
    add_float("zeta2.inv", 1e-12, [](int) { return 1.0 / riemann_zeta(2); });
    return defs;
}

} // namespace

std::vector<FixtureEntry> compute_fixtures(int threads) {
    std::vector<FixtureEntry> out;
    for (auto& def : fixture_registry())
        out.push_back({def.name, def.kind, def.compute(threads), def.tol});
    return out;
}

void write_fixtures(const std::string& path, const std::vector<FixtureEntry>& entries) {
    json arr = json::array();
    for (auto& e : entries)
        arr.push_back({{"name", e.name}, {"kind", e.kind}, {"value", e.value}, {"tol", e.tol}});
    json out = {{"version", 1}, {"entries", arr}};
    std::filesystem::create_directories(std::filesystem::path(path).parent_path());
    std::ofstream f(path);
    if (!f) throw ConfigError("cannot write fixtures to " + path);
    f << out.dump(2) << "\n";
}

GoldenReport golden_check(const std::string& fixture_path, int threads) {
    GoldenReport rep;
    std::ifstream f(fixture_path);
    if (!f) {
        rep.failures.push_back("missing fixture file: " + fixture_path +
                               " (run bootstrap-oracles first)");
        return rep;
    }
    json parsed;
    try {
        f >> parsed;
    } catch (const std::exception& e) {
        rep.failures.push_back(std::string("unreadable fixture file: ") + e.what());
        return rep;
    }
    if (!parsed.contains("entries") || parsed.at("entries").empty()) {
        rep.failures.push_back("fixture file has no entries");
        return rep;
    }

    std::map<std::string, FixtureDef> registry;
    for (auto& def : fixture_registry()) registry.emplace(def.name, def);

    for (auto& e : parsed.at("entries")) {
        std::string name = e.at("name").get<std::string>();
        std::string want = e.at("value").get<std::string>();
        auto it = registry.find(name);
        if (it == registry.end()) {
            rep.failures.push_back(name + ": unknown fixture");
            continue;
        }
        ++rep.checked;
        std::string got = it->second.compute(threads);
        if (it->second.kind == "float") {
            double a = std::stod(got), b = std::stod(want);
            if (std::fabs(a - b) > it->second.tol)
                rep.failures.push_back(name + ": got " + got + ", fixture " + want);
        } else if (got != want) {
            rep.failures.push_back(name + ": got " + got + ", fixture " + want);
        }
    }
    rep.pass = rep.failures.empty();
    return rep;
}

std::string default_fixture_path() {
    if (const char* env = std::getenv("BHLAB_FIXTURES")) return std::string(env) + "/golden.json";
    return "tests/fixtures/golden.json";
}

} // namespace bhlab
