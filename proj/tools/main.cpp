#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "thetadim/report.hpp"

using namespace thetadim;

namespace {

struct CommonOpts {
    std::string family = "A";
    int rank = 1;
    int degree = 1;
    i64 q_short = 1;
    std::optional<i64> kp_p, kp_q;
    std::optional<i64> twist_omega;
    std::string config_path;
    std::string format = "json";
};

void add_instance_flags(CLI::App *cmd, CommonOpts &o) {
    cmd->add_option("--family", o.family, "root system family (A, B, C, D, E, F, G, GL)");
    cmd->add_option("--rank", o.rank, "rank (for GL: r of GL_r)");
    cmd->add_option("--degree", o.degree, "covering degree n");
    cmd->add_option("--q-short", o.q_short, "value of Q on a short simple coroot");
    cmd->add_option("--kp-p", [&o](const std::vector<std::string> &v) {
        o.kp_p = std::stoll(v[0]);
        return true;
    }, "Kazhdan-Patterson parameter p (GL only)");
    cmd->add_option("--kp-q", [&o](const std::vector<std::string> &v) {
        o.kp_q = std::stoll(v[0]);
        return true;
    }, "Kazhdan-Patterson parameter q (GL only)");
    cmd->add_option("--twist-omega", [&o](const std::vector<std::string> &v) {
        o.twist_omega = std::stoll(v[0]);
        return true;
    }, "analyze the psi_a-twisted character; value scales the unit symbol exponent");
    cmd->add_option("--config", o.config_path, "key=value config file with the same keys");
    cmd->add_option("--format", o.format, "output format: json or md")
        ->check(CLI::IsMember({"json", "md"}));
}

InstanceSpec make_spec(const CommonOpts &o) {
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw CLI::ValidationError("--config", "cannot open " + o.config_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        return parse_config_text(ss.str());
    }
    InstanceSpec spec;
    spec.family = family_from_string(o.family);
    spec.rank = o.rank;
    spec.degree = o.degree;
    spec.q_short = o.q_short;
    if (o.kp_p || o.kp_q) {
        if (!(o.kp_p && o.kp_q)) throw CLI::ValidationError("--kp-p/--kp-q", "both are required");
        spec.kp = KPParams{*o.kp_p, *o.kp_q};
    }
    spec.twist_omega = o.twist_omega;
    return spec;
}

int cmd_analyze(const CommonOpts &o) {
    InstanceSpec spec = make_spec(o);
    CoverSpec cover = build_cover(spec);
    OrbitSetting setting = make_orbit_setting(cover);
    OrbitSurvey sv = survey(setting);
    ThetaContext ctx = make_context(setting);
    DimReport rep = dim_whittaker(ctx);
    std::optional<DistinguishedVerdict> verdict;
    if (spec.twist_omega) {
        TwistSpec tw;
        tw.mode = TwistSpec::Mode::UnitTwist;
        tw.omega_exp = *spec.twist_omega;
        verdict = decide_distinguished(ctx, tw);
    }
    if (o.format == "md")
        std::cout << run_report_markdown(spec, sv, rep, verdict);
    else
        std::cout << run_report_json(spec, sv, setting, rep, verdict) << "\n";
    return 0;
}

int cmd_verify(const CommonOpts &o, int samples, unsigned long long seed) {
    InstanceSpec spec = make_spec(o);
    auto results = verify_instance(spec, samples, seed);
    int failures = 0;
    for (const auto &r : results) {
        std::cout << (r.pass ? "[ok]   " : "[FAIL] ") << spec.label() << ": " << r.name;
        if (!r.pass) std::cout << " -- " << r.detail;
        std::cout << "\n";
        if (!r.pass) ++failures;
    }
    return failures ? 1 : 0;
}

int cmd_reproduce(const std::string &table, const std::string &data_dir, int jobs) {
    TableReport rep = reproduce_tables(table, data_dir, jobs);
    for (const auto &line : rep.lines) std::cout << line << "\n";
    std::cout << (rep.failures ? "FAILED rows: " + std::to_string(rep.failures)
                               : "all rows match")
              << "\n";
    return rep.failures ? 1 : 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Whittaker dimensions of theta representations of covering groups"};
    app.require_subcommand(1);

    CommonOpts a_opts, v_opts, k_opts;
    int samples = 100;
    unsigned long long seed = 12345;
    std::string table = "all";
    std::string data_dir = default_data_dir();
    int jobs = 1;

    CLI::App *analyze = app.add_subcommand("analyze", "survey bounds and the dimension table");
    add_instance_flags(analyze, a_opts);

    CLI::App *verify = app.add_subcommand("verify", "run the property suites on an instance");
    add_instance_flags(verify, v_opts);
    verify->add_option("--samples", samples, "random samples per identity");
    verify->add_option("--seed", seed, "random seed");

    CLI::App *reproduce = app.add_subcommand("reproduce", "check the golden tables");
    reproduce->add_option("table", table, "t-A, t-C, t-B, t-G2, kp or all")
        ->check(CLI::IsMember({"t-A", "t-C", "t-B", "t-G2", "kp", "all"}));
    reproduce->add_option("--data", data_dir, "golden data directory");
    reproduce->add_option("--jobs", jobs, "parallel instances");

    CLI::App *kp = app.add_subcommand("kp", "general linear covers: bounds coincide and dims");
    add_instance_flags(kp, k_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(a_opts);
        if (app.got_subcommand(verify)) return cmd_verify(v_opts, samples, seed);
        if (app.got_subcommand(reproduce)) return cmd_reproduce(table, data_dir, jobs);
        if (app.got_subcommand(kp)) {
            if (!k_opts.kp_p) { k_opts.kp_p = 0; k_opts.kp_q = -1; }
            k_opts.family = "GL";
            return cmd_analyze(k_opts);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
