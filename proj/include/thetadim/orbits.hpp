#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "thetadim/lattice.hpp"
#include "thetadim/rootdata.hpp"

namespace thetadim {

// Shared context for orbit computations on Y / Y_{Q,n}.
struct OrbitSetting {
    CoverSpec cover;
    WeylGroup weyl;
    Sublattice yqn;
    Sublattice sc;
    QuotientEnum classes;
    CosetReducer sc_reducer;
    i64 dual_center_order = 0; // |Y_{Q,n} / Y_{Q,n}^sc|, 0 when infinite
};

OrbitSetting make_orbit_setting(const CoverSpec &cover);

struct Witness {
    int w_index = 0;
    Vec at;   // the orbit element y
    Vec diff; // w[y] - y
};

struct OrbitRecord {
    Vec base;
    i64 base_class = 0;
    i64 size = 0; // orbit size in Y
    bool is_free = false;
    bool is_sc_free = false;
    bool is_qn_free = false;
    std::vector<i64> image;   // sorted distinct classes mod Y_{Q,n}
    std::vector<int> qn_stab; // w with w[base] = base mod Y_{Q,n}
    std::optional<Witness> non_free_witness, non_sc_witness, non_qn_witness;
    std::vector<Vec> elements; // optional
};

OrbitRecord orbit(const OrbitSetting &s, i64 start_class, bool store_elements = true);

struct OrbitSummary {
    i64 base_class = 0;
    i64 image_size = 0;
    i64 orbit_size = 0; // size in Y; 0 when not scanned
    std::vector<i64> image;
    bool scanned = false; // full Weyl scan performed
    bool is_free = false, is_sc_free = false, is_qn_free = false;
    std::optional<Witness> non_sc_witness, non_qn_witness;
};

struct ImageClassInfo {
    std::vector<i64> key; // sorted classes
    bool qn_free = false;
    i64 orbit_base_class = 0;
};

struct OrbitSurvey {
    i64 lower = 0;
    i64 upper = 0;
    i64 total_classes = 0;
    std::vector<OrbitSummary> orbits;
    std::vector<ImageClassInfo> sc_free_images;
};

struct SurveyOptions {
    bool full_scan = false;      // scan every component even when prunable
    bool store_summaries = true; // keep per-orbit summaries
};

OrbitSurvey survey(const OrbitSetting &s, const SurveyOptions &opt = {});

std::string image_digest(const std::vector<i64> &image);

} // namespace thetadim
