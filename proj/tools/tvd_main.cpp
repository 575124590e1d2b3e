#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "tvd/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResourceCap = 3;

struct RunConfig {
    uint32_t t = 2;
    uint32_t m = 0;
    double epsilon = 1e-3;
    int64_t k = 1;
    uint64_t n = 1;
    uint64_t seed = 0;
    std::string format = "json";
    std::string out;
    uint64_t cap = tvd::kDefaultDenseCap;
    bool empirical = false;
    bool negative_control = false;
    bool list_only = false;
    std::string sector = "full";
};

int cmd_spectrum(const RunConfig& cfg) {
    using namespace tvd;
    bool asserted = false;
    bool pass = true;
    std::string note;
    nlohmann::json j;
    SpectrumReport rep;

    if (cfg.sector == "nc" || cfg.sector == "c") {
        if (cfg.t != 3) {
            std::cerr << "sector spectra are defined for --t 3\n";
            return kExitUsage;
        }
        check_cap(cfg.t, cfg.m, cfg.cap);
        SectorReport sec =
            sector_decompose_GT(cfg.m, cfg.sector == "nc" ? SectorTag::NC : SectorTag::C);
        asserted = true;
        pass = sec.split_identity_ok && sec.permutation_relations_ok &&
               sec.t1_spectral_form_ok && sec.t1_multiplicities_ok;
        j = to_json(sec);
    } else if (cfg.t == 2) {
        check_cap(cfg.t, cfg.m, cfg.cap);
        T2SpectrumCheck check = verify_t2_spectrum(cfg.m);
        rep = check.report;
        if (cfg.m >= 2) {
            asserted = true;
            pass = check.ok();
        } else {
            note = "m = 1 is below the certified range; values reported, not asserted";
        }
        j = to_json(rep);
    } else {
        check_cap(cfg.t, cfg.m, cfg.cap);
        Superoperator gtgp = compose(build_GT(3, cfg.m, cfg.cap), build_GP(3, cfg.m, cfg.cap));
        rep = full_spectrum(gtgp, 1e-9, "GT*GP");
        uint64_t unit_mult = rep.groups.empty() ? 0 : rep.groups.front().multiplicity;
        if (cfg.m >= 3) {
            asserted = true;
            double second = rep.groups.size() > 1 ? rep.groups[1].value : 0.0;
            pass = unit_mult == 6 && second < claimed_second_eig_bound(cfg.m);
        } else {
            note = "m < 3 is below the certified range; values reported, not asserted";
        }
        j = to_json(rep);
    }

    if (!note.empty()) {
        j["note"] = note;
    }
    j["asserted"] = asserted;
    j["pass"] = pass;
    if (cfg.format == "csv") {
        write_output(cfg.out, to_csv(rep));
    } else {
        write_output(cfg.out, j.dump(2) + "\n");
    }
    return asserted && !pass ? kExitVerificationFailure : kExitOk;
}

int cmd_certify(const RunConfig& cfg) {
    using namespace tvd;
    if (cfg.empirical) {
        check_cap(cfg.t, cfg.m, cfg.cap);
    }
    ConvergenceCertificate cert =
        make_certificate(cfg.t, cfg.m, cfg.epsilon, cfg.empirical, cfg.cap);
    cert.seed = cfg.seed;
    nlohmann::json j = to_json(cert);
    j["closed_form_bound_ok"] = cert.closed_form_bound <= cfg.epsilon;
    if (cfg.empirical) {
        j["empirical_bound_ok"] = cert.empirical_bound <= cfg.epsilon;
    }
    write_output(cfg.out, j.dump(2) + "\n");
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
    using namespace tvd;
    if (!cfg.list_only && cfg.m < 2) {
        // The |A(a)> family is identically zero at m = 1, so the closed
        // forms under test degenerate below m = 2.
        std::cerr << "verify requires --m >= 2\n";
        return kExitUsage;
    }
    if (cfg.list_only) {
        nlohmann::json j;
        j["checks"] = {"subspace_invariance", "subspace_orthogonality", "dimension_accounting",
                       "intertwiner_d_to_nc", "intertwiner_d_to_c",    "intertwiner_k_v12",
                       "gram_A_spectrum",     "null_eigenspace",       "inner_products",
                       "w_map"};
        write_output(cfg.out, j.dump(2) + "\n");
        return kExitOk;
    }
    check_cap(3, cfg.m, cfg.cap);
    VerificationReport rep = run_verification(cfg.m, cfg.negative_control, cfg.seed);
    write_output(cfg.out, to_json(rep).dump(2) + "\n");
    return rep.pass() ? kExitOk : kExitVerificationFailure;
}

int cmd_sample(const RunConfig& cfg) {
    using namespace tvd;
    std::mt19937_64 rng(cfg.seed);
    std::ostringstream lines;
    for (uint64_t i = 0; i < cfg.n; i++) {
        SchemeSample s = sample_scheme(cfg.m, uint32_t(cfg.k), rng);
        lines << to_json(s).dump() << "\n";
    }
    write_output(cfg.out, lines.str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transvection-based asymptotic unitary 2-/3-design toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;
    cfg.m = 3;  // default for certify; commands that need --m mark it required

    auto add_common = [&](CLI::App* sub, bool needs_m) {
        auto* m_opt = sub->add_option("--m", cfg.m, "number of qubits");
        if (needs_m) {
            m_opt->required();
        }
        sub->add_option("--cap", cfg.cap, "largest dense dimension to materialize")
            ->envname("TVD_CAP");
        sub->add_option("--out", cfg.out, "output path (stdout when omitted)");
        sub->add_option("--seed", cfg.seed, "RNG seed");
    };

    auto* spectrum = app.add_subcommand("spectrum", "eigensystem of the scheme's channel");
    spectrum->add_option("--t", cfg.t, "number of copies (2 or 3)")
        ->check(CLI::IsMember({2, 3}))
        ->required();
    add_common(spectrum, true);
    spectrum->add_option("--sector", cfg.sector, "full | nc | c")
        ->check(CLI::IsMember({"full", "nc", "c"}));
    spectrum->add_option("--format", cfg.format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* certify = app.add_subcommand("certify", "convergence certificate for given epsilon");
    certify->add_option("--t", cfg.t, "number of copies (2 or 3)")
        ->check(CLI::IsMember({2, 3}))
        ->required();
    certify->add_option("--epsilon", cfg.epsilon, "diamond-norm accuracy in (0, 1]")
        ->required();
    certify->add_flag("--empirical", cfg.empirical,
                      "also measure the second eigenvalue and the distance at k");
    add_common(certify, false);

    auto* verify = app.add_subcommand("verify", "invariant-subspace verification suite");
    add_common(verify, true);
    verify->add_flag("--negative-control", cfg.negative_control,
                     "inject a random subspace that must fail");
    verify->add_flag("--list", cfg.list_only, "enumerate checks without running them");

    auto* sample = app.add_subcommand("sample", "stream scheme samples as JSON lines");
    add_common(sample, true);
    sample->add_option("--k", cfg.k, "transvections per sample")->required();
    sample->add_option("--n", cfg.n, "number of samples")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (spectrum->parsed()) {
            return cmd_spectrum(cfg);
        }
        if (certify->parsed()) {
            return cmd_certify(cfg);
        }
        if (verify->parsed()) {
            return cmd_verify(cfg);
        }
        if (sample->parsed()) {
            return cmd_sample(cfg);
        }
    } catch (const tvd::resource_cap_error& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kExitResourceCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerificationFailure;
    }
    return kExitUsage;
}
