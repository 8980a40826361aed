#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "bhlab/cli.hpp"

using nlohmann::json;

namespace {

int run_with_exit_codes(const std::function<void()>& body) {
    try {
        body();
        return 0;
    } catch (const bhlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const bhlab::BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const std::logic_error& e) {
        std::cerr << "invariant failure: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bhlab: desk-scale verification lab for prime values of det and Pff"};
    app.require_subcommand(1);

    std::string config_path, out_dir = "out";
    long long seed = -1, threads = -1, budget = -1;

    const std::vector<std::string> experiments = {"count",   "predict", "compare",     "density",
                                                  "series",  "equidist", "sieve",      "mass",
                                                  "classnumber", "cutting", "pipeline"};
    std::string chosen;
    for (const auto& name : experiments) {
        CLI::App* sub = app.add_subcommand(name, "run the '" + name + "' experiment");
        sub->add_option("--config", config_path, "JSON config path")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "override seed");
        sub->add_option("--threads", threads, "override worker threads");
        sub->add_option("--budget", budget, "override enumeration budget (points)");
        sub->callback([&chosen, name]() { chosen = name; });
    }

    std::string fixture_path;
    CLI::App* boot = app.add_subcommand("bootstrap-oracles",
                                        "run the brute-force oracles once and freeze fixtures");
    boot->add_option("--out", fixture_path, "fixture file (default $BHLAB_FIXTURES/golden.json)");
    boot->add_option("--threads", threads, "worker threads");
    boot->callback([&chosen]() { chosen = "bootstrap-oracles"; });

    CLI::App* golden = app.add_subcommand("golden-check", "recompute every fixture and diff");
    golden->add_option("--fixtures", fixture_path,
                       "fixture file (default $BHLAB_FIXTURES/golden.json)");
    golden->add_option("--threads", threads, "worker threads");
    golden->callback([&chosen]() { chosen = "golden-check"; });

    CLI11_PARSE(app, argc, argv);

    return run_with_exit_codes([&]() {
        if (chosen == "bootstrap-oracles") {
            std::string path = fixture_path.empty() ? bhlab::default_fixture_path() : fixture_path;
            auto entries = bhlab::compute_fixtures(threads > 0 ? (int)threads : 1);
            bhlab::write_fixtures(path, entries);
            std::cout << "wrote " << entries.size() << " fixtures to " << path << "\n";
            return;
        }
        if (chosen == "golden-check") {
            std::string path = fixture_path.empty() ? bhlab::default_fixture_path() : fixture_path;
            bhlab::GoldenReport rep = bhlab::golden_check(path, threads > 0 ? (int)threads : 1);
            for (auto& f : rep.failures) std::cout << "[FAIL] " << f << "\n";
            std::cout << (rep.pass ? "[PASS] " : "[FAIL] ") << rep.checked
                      << " fixtures checked, " << rep.failures.size() << " failures\n";
            if (!rep.pass) throw std::logic_error("golden-check failed");
            return;
        }

        std::ifstream f(config_path);
        if (!f) throw bhlab::ConfigError("cannot open config " + config_path);
        json config;
        try {
            f >> config;
        } catch (const std::exception& e) {
            throw bhlab::ConfigError(std::string("config parse: ") + e.what());
        }
        if (!config.contains("experiment")) config["experiment"] = chosen;
        if (config.at("experiment").get<std::string>() != chosen)
            throw bhlab::ConfigError("config experiment does not match the subcommand");
        if (seed >= 0) config["seed"] = (bhlab::u64)seed;
        if (threads > 0) config["threads"] = (int)threads;
        if (budget > 0) config["budget"] = (bhlab::i64)budget;
        bhlab::run_experiment(config, out_dir);
        std::cout << "ok: outputs in " << out_dir << "\n";
    });
}
