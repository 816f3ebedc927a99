#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "thetadim/theta.hpp"

namespace thetadim {

struct InstanceSpec {
    Family family = Family::A;
    int rank = 1;
    int degree = 1;
    i64 q_short = 1;
    std::optional<KPParams> kp;
    std::optional<i64> twist_omega;

    std::string label() const;
};

CoverSpec build_cover(const InstanceSpec &spec, bool upper_bisector = false);

// plain-text key=value config (family, rank, degree, q_short, kp_p, kp_q,
// twist_omega), one pair per line, '#' comments
InstanceSpec parse_config_text(const std::string &text);

std::string survey_json(const OrbitSurvey &sv, const OrbitSetting &setting);
std::string dim_report_json(const DimReport &rep);
std::string run_report_json(const InstanceSpec &spec, const OrbitSurvey &sv,
                            const OrbitSetting &setting, const DimReport &rep,
                            const std::optional<DistinguishedVerdict> &verdict);
std::string run_report_markdown(const InstanceSpec &spec, const OrbitSurvey &sv,
                                const DimReport &rep,
                                const std::optional<DistinguishedVerdict> &verdict);

struct CheckResult {
    std::string name;
    bool pass = true;
    std::string detail;
};

// Property suites; each returns one result line per check.
std::vector<CheckResult> verify_instance(const InstanceSpec &spec, int samples,
                                         unsigned long long seed);

// Golden table reproduction. `which` is one of t-A, t-C, t-B, t-G2, kp, all.
struct TableReport {
    std::vector<std::string> lines;
    int failures = 0;
};
TableReport reproduce_tables(const std::string &which, const std::string &data_dir, int jobs);

std::string default_data_dir();

} // namespace thetadim
