#include "spectori/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"spectral-tori: Floquet spectra of Dirac-represented tori"};
    app.require_subcommand(1);

    std::string configPath, outDir;
    std::vector<std::string> overrides;

    std::vector<CLI::App*> subs;
    for (const auto& name : spectori::kSubcommands) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", configPath, "JSON config file");
        sub->add_option("--out", outDir, "output directory");
        sub->add_option("--override", overrides, "key.path=value config overrides");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    spectori::Json config = spectori::Json::object();
    if (!configPath.empty()) {
        try {
            config = spectori::Json::parse(spectori::readFile(configPath));
        } catch (const std::exception& e) {
            std::cerr << spectori::Json({{"error", e.what()}, {"kind", "config"}}).dump(2)
                      << std::endl;
            return 1;
        }
    }
    try {
        for (const auto& kv : overrides) spectori::applyOverride(config, kv);
    } catch (const std::exception& e) {
        std::cerr << spectori::Json({{"error", e.what()}, {"kind", "config"}}).dump(2)
                  << std::endl;
        return 1;
    }

    const std::string name = app.get_subcommands().front()->get_name();
    spectori::RunResult result = spectori::runSubcommand(name, config, outDir);
    if (result.exitCode == 1 || result.exitCode == 2) {
        std::cerr << result.report.dump(2) << std::endl;
        return result.exitCode;
    }
    std::cout << result.report.dump(2) << std::endl;
    return result.exitCode;
}
