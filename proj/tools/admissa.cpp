// admissa: command-line front end for the admissibility and objective-pair pipeline.
//
// Exit codes: 0 success, 1 usage or config error, 2 data error, 3 internal error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <admissa/campaign.hpp>

namespace {

using namespace admissa;

struct Options {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::size_t> jobs;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> format;
};

std::optional<std::uint64_t> env_seed() {
    const char* v = std::getenv("ADMISSA_SEED");
    if (!v || !*v) return std::nullopt;
    std::uint64_t s = 0;
    const std::string text(v);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), s);
    if (ec != std::errc{} || ptr != text.data() + text.size()) throw UsageError("ADMISSA_SEED must be an unsigned integer");
    return s;
}

campaign::CampaignConfig resolve(const Options& o) {
    // --seed beats ADMISSA_SEED beats the config file
    auto seed = o.seed;
    if (!seed) seed = env_seed();
    auto c = campaign::load_config(o.config, seed);
    if (o.out) c.out = *o.out;
    if (o.jobs) c.jobs = *o.jobs;
    if (o.format) c.formats = {report::parse_format(*o.format)};
    return c;
}

void add_common(CLI::App* cmd, Options& o, bool needs_config = true) {
    auto* cfg = cmd->add_option("-c,--config", o.config, "campaign config (JSON)");
    if (needs_config) cfg->required()->check(CLI::ExistingFile);
    cmd->add_option("-o,--out", o.out, "output directory (overrides config)");
    cmd->add_option("-j,--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("-s,--seed", o.seed, "master seed (overrides ADMISSA_SEED and config)");
    cmd->add_option("-f,--format", o.format, "output format")->check(CLI::IsMember({"csv", "json", "markdown"}));
}

int run(int argc, char** argv) {
    CLI::App app{"Admissibility analysis and multi-objective clustering campaigns"};
    app.require_subcommand(1);
    Options o;
    auto* gen = app.add_subcommand("gen", "write generated datasets as CSV plus a manifest");
    auto* init = app.add_subcommand("init", "build initial populations per dataset and initializer");
    auto* adm = app.add_subcommand("admissibility", "classify objectives against the initial populations");
    auto* opt = app.add_subcommand("optimize", "run seeded objective-pair EMOC campaigns");
    auto* rep = app.add_subcommand("report", "collect rendered tables into report.md");
    for (auto* c : {gen, init, adm, opt}) add_common(c, o);
    add_common(rep, o, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (rep->parsed()) {
        std::string root;
        if (o.out) root = *o.out;
        else if (!o.config.empty()) root = resolve(o).out;
        else throw UsageError("report needs --out or --config");
        if (!campaign::cmd_report(root)) std::cerr << "warning: no artifacts found under " << root << "\n";
        std::cout << "wrote " << (std::filesystem::path(root) / "report.md").string() << "\n";
        return 0;
    }

    const auto c = resolve(o);
    if (gen->parsed()) {
        campaign::cmd_gen(c);
        std::cout << "generated " << c.datasets.size() << " dataset entries into " << c.out << "\n";
    } else if (init->parsed()) {
        const auto computed = campaign::cmd_init(c);
        std::cout << "populations: " << computed << " built, "
                  << c.datasets.size() * c.initializers.size() - computed << " up to date\n";
    } else if (adm->parsed()) {
        const auto tables = campaign::cmd_admissibility(c);
        for (const auto& t : tables) {
            std::cout << t.initializer << ":";
            for (std::size_t j = 0; j < t.specs.size(); ++j)
                std::cout << " " << criteria::format_spec(t.specs[j]) << "=" << t.in_count[j] << "/" << t.op_count[j];
            std::cout << "  (IN/OP)\n";
        }
    } else if (opt->parsed()) {
        const auto stats = campaign::cmd_optimize(c);
        std::cout << "runs: " << stats.computed << " computed, " << stats.cells - stats.computed << " up to date\n";
        for (const auto& s : stats.summaries)
            std::cout << s.dataset << " " << s.initializer << " " << s.pair << " mean_ari=" << report::fixed4(s.mean)
                      << " std=" << report::fixed4(s.std) << " truth_dominated=" << report::num(s.truth_dominated_freq)
                      << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const admissa::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const admissa::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}
