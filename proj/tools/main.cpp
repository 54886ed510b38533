#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mbgk/cases.hpp"
#include "mbgk/diagnostics.hpp"
#include "mbgk/riemann.hpp"

using namespace mbgk;

namespace {

std::vector<int> parseIntList(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
    return out;
}

Config loadConfig(const std::string& path, const std::vector<std::string>& overrides,
                  const std::string& outDir) {
    Config cfg = Config::fromFile(path);
    for (const auto& ov : overrides) cfg.setOverride(ov);
    if (!outDir.empty()) cfg.set("out", outDir);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mbgk - meshfree ALE solver for the Chu-reduced BGK equation"};
    app.require_subcommand(1);

    // ---- run ----
    auto* run = app.add_subcommand("run", "run one case from a config file");
    std::string runConfig, runOut;
    std::vector<std::string> runOverrides;
    run->add_option("--config", runConfig, "config file")->required();
    run->add_option("--out", runOut, "output directory (overrides config)");
    run->add_option("--override", runOverrides, "key=value override (repeatable)");

    // ---- convergence ----
    auto* conv = app.add_subcommand("convergence", "error sweep against a fine self-reference");
    std::string convConfig, convOut, convNx, convCache;
    int convRefNx = 0, convAuditN = 0;
    std::vector<std::string> convOverrides;
    conv->add_option("--config", convConfig, "config file")->required();
    conv->add_option("--nx", convNx, "comma-separated Nx list")->required();
    conv->add_option("--ref-nx", convRefNx, "reference Nx")->required();
    conv->add_option("--out", convOut, "output directory");
    conv->add_option("--cache", convCache, "cache directory for runs");
    conv->add_option("--audit-n", convAuditN, "audit-grid nodes per axis");
    conv->add_option("--override", convOverrides, "key=value override (repeatable)");

    // ---- riemann ----
    auto* rie = app.add_subcommand("riemann", "exact Riemann solution on a grid");
    double rhoL = 1.0, uL = 0.0, TL = 1.0, rhoR = 0.125, uR = 0.0, TR = 0.8;
    double rs = 1.0, gamma = 5.0 / 3.0, rt = 0.2, x0 = 0.5, xmin = 0.0, xmax = 1.0;
    int rnx = 500;
    std::string rieOut = "riemann.dat";
    rie->add_option("--rho-l", rhoL);
    rie->add_option("--u-l", uL);
    rie->add_option("--t-l", TL);
    rie->add_option("--rho-r", rhoR);
    rie->add_option("--u-r", uR);
    rie->add_option("--t-r", TR);
    rie->add_option("--rs", rs);
    rie->add_option("--gamma", gamma);
    rie->add_option("--time", rt);
    rie->add_option("--x0", x0);
    rie->add_option("--xmin", xmin);
    rie->add_option("--xmax", xmax);
    rie->add_option("--nx", rnx);
    rie->add_option("--out", rieOut);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            Config cfg = loadConfig(runConfig, runOverrides, runOut);
            const std::string out = cfg.getS("out", "out");
            Simulation sim(cfg);
            std::cout << "case " << sim.caseName() << ": " << sim.cloud().size()
                      << " points, dt = " << fmt17(sim.dt()) << ", steps = "
                      << sim.stepsPlanned() << "\n";
            sim.run(out);
            std::cout << "artifacts written to " << out << "\n";
        } else if (*conv) {
            Config cfg = loadConfig(convConfig, convOverrides, "");
            const std::string out = convOut.empty() ? cfg.getS("out", "out") : convOut;
            const std::string cache = convCache.empty() ? out + "/cache" : convCache;
            const int auditN =
                convAuditN > 0 ? convAuditN : (caseDomainFor(cfg).yhi != 0.0 ? 101 : 500);
            const ConvergenceTable t =
                runConvergence(cfg, parseIntList(convNx), convRefNx, cache, auditN);
            std::filesystem::create_directories(out);
            std::ofstream f(out + "/convergence.dat");
            f << "# nx err_rho err_u err_T\n";
            std::cout << "nx err_rho err_u err_T\n";
            for (const auto& r : t.rows) {
                f << r.nx << ' ' << fmt17(r.errRho) << ' ' << fmt17(r.errU) << ' '
                  << fmt17(r.errT) << "\n";
                std::cout << r.nx << ' ' << r.errRho << ' ' << r.errU << ' ' << r.errT << "\n";
            }
            f << "# order_rho = " << fmt17(t.orderRho) << "\n";
            f << "# order_u = " << fmt17(t.orderU) << "\n";
            f << "# order_T = " << fmt17(t.orderT) << "\n";
            std::cout << "observed order: rho " << t.orderRho << ", u " << t.orderU << ", T "
                      << t.orderT << "\n";
        } else if (*rie) {
            const RiemannState left{rhoL, uL, rhoL * rs * TL};
            const RiemannState right{rhoR, uR, rhoR * rs * TR};
            std::vector<double> xs(rnx);
            for (int i = 0; i < rnx; ++i)
                xs[i] = xmin + (xmax - xmin) * i / double(rnx - 1);
            const auto prof = riemannProfile(left, right, gamma, rt, x0, xs);
            std::ofstream f(rieOut);
            f << "# x rho u p\n";
            for (int i = 0; i < rnx; ++i)
                f << fmt17(xs[i]) << ' ' << fmt17(prof[i].rho) << ' ' << fmt17(prof[i].u) << ' '
                  << fmt17(prof[i].p) << "\n";
            std::cout << "profile written to " << rieOut << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
