#include <doctest.h>

#include <numeric>
#include <optional>

#include "thetadim/orbits.hpp"

using namespace thetadim;

namespace {

OrbitSetting setting_for(Family f, int rank, int n, std::optional<KPParams> kp = std::nullopt) {
    return make_orbit_setting(make_cover(build_root_datum(f, rank, kp), n));
}

} // namespace

TEST_CASE("G2 degree 7: the distinguished orbit is fully free") {
    OrbitSetting s = setting_for(Family::G, 2, 7);
    // base with embedded shifted coordinates (-2, -1, 3), i.e. y = 9a1 + 6a2
    Vec y{9, 6};
    OrbitRecord r = orbit(s, s.classes.class_of(y));
    CHECK(r.is_free);
    CHECK(r.is_sc_free);
    CHECK(r.is_qn_free);
    CHECK(r.size == 12);
}

TEST_CASE("self-degree special linear orbit of zero") {
    for (int n : {3, 4, 5}) {
        OrbitSetting s = setting_for(Family::A, n - 1, n);
        OrbitRecord r = orbit(s, s.classes.class_of(Vec(n - 1, 0)));
        CHECK(r.is_free);
        CHECK(r.is_sc_free);
        CHECK_FALSE(r.is_qn_free);
        REQUIRE(r.non_qn_witness.has_value());
        // a witness translation lies in the lattice; the canonical one is
        // w_nat[0] - 0 = sum of i a_i^vee
        Sublattice yqn = sublattice_yqn(s.cover);
        CHECK(member(yqn, r.non_qn_witness->diff));
        Vec want(n - 1);
        for (int i = 0; i < n - 1; ++i) want[i] = i + 1;
        CHECK(member(yqn, want));
        bool nat_found = false;
        for (int wi : r.qn_stab)
            if (vec_sub(shifted_apply(s.cover.datum, s.weyl.elements[wi], r.base), r.base) == want)
                nat_found = true;
        CHECK(nat_found);
        // the identity is never a witness
        CHECK(r.non_qn_witness->w_index != 0);
        CHECK(r.qn_stab.size() == static_cast<size_t>(n));
    }
}

TEST_CASE("survey bounds on the headline instances") {
    // self-degree: (0, 1)
    for (int n : {2, 3, 4, 5}) {
        OrbitSurvey sv = survey(setting_for(Family::A, n - 1, n));
        CHECK(sv.lower == 0);
        CHECK(sv.upper == 1);
    }
    // small degree: empty
    for (int r : {2, 3}) {
        for (int n = 1; n <= r; ++n) {
            OrbitSurvey sv = survey(setting_for(Family::A, r, n));
            CHECK(sv.lower == 0);
            CHECK(sv.upper == 0);
        }
    }
    // symplectic rank 2, degree 10: (1, 3)
    OrbitSurvey sp = survey(setting_for(Family::C, 2, 10));
    CHECK(sp.lower == 1);
    CHECK(sp.upper == 3);
    // symplectic rank 3, degree 14: (1, 4)
    OrbitSurvey sp3 = survey(setting_for(Family::C, 3, 14));
    CHECK(sp3.lower == 1);
    CHECK(sp3.upper == 4);
}

TEST_CASE("orbit partition and flag chain") {
    struct Row {
        Family f;
        int rank, n;
    };
    for (auto [f, rank, n] : {Row{Family::A, 2, 3}, Row{Family::C, 2, 6}, Row{Family::C, 2, 10},
                              Row{Family::B, 3, 8}, Row{Family::G, 2, 7}, Row{Family::G, 2, 12}}) {
        OrbitSetting s = setting_for(f, rank, n);
        OrbitSurvey sv = survey(s, SurveyOptions{true, true});
        i64 covered = 0;
        for (const auto &o : sv.orbits) {
            covered += o.image_size;
            OrbitRecord r = orbit(s, o.base_class);
            CHECK(static_cast<size_t>(r.size) <= s.weyl.size());
            CHECK(s.weyl.size() % r.size == 0);
            if (r.is_qn_free) CHECK(r.is_sc_free);
            if (r.is_sc_free) CHECK(r.is_free);
            CHECK(r.image == o.image);
            // classes in the image are hit equally often
            CHECK(r.size % static_cast<i64>(r.image.size()) == 0);
        }
        CHECK(covered == sv.total_classes);
        CHECK(sv.lower <= sv.upper);
        if (s.dual_center_order == 1) CHECK(sv.lower == sv.upper);
    }
}

TEST_CASE("degree 1 surveys are empty in positive rank") {
    for (auto [f, rank] : std::vector<std::pair<Family, int>>{{Family::A, 1}, {Family::C, 2}}) {
        OrbitSetting s = setting_for(f, rank, 1);
        OrbitSurvey sv = survey(s);
        CHECK(sv.total_classes == 1);
        CHECK(sv.lower == 0);
        CHECK(sv.upper == 0);
    }
}

TEST_CASE("Kazhdan-Patterson freeness coincidence") {
    for (int r : {2, 3, 4}) {
        for (int n = 1; n <= r + 1; ++n) {
            OrbitSetting s = setting_for(Family::GL, r, n, KPParams{0, -1});
            OrbitSurvey sv = survey(s, SurveyOptions{true, true});
            for (const auto &o : sv.orbits) {
                REQUIRE(o.scanned);
                CHECK(o.is_sc_free == o.is_qn_free);
            }
            CHECK(sv.lower == sv.upper);
        }
    }
}

TEST_CASE("pruned and fully scanned surveys agree") {
    struct Row {
        Family f;
        int rank, n;
    };
    for (auto [f, rank, n] : {Row{Family::A, 3, 4}, Row{Family::C, 2, 10}, Row{Family::B, 3, 8},
                              Row{Family::G, 2, 12}}) {
        OrbitSetting s = setting_for(f, rank, n);
        OrbitSurvey fast = survey(s, SurveyOptions{false, false});
        OrbitSurvey full = survey(s, SurveyOptions{true, false});
        CHECK(fast.lower == full.lower);
        CHECK(fast.upper == full.upper);
        CHECK(fast.sc_free_images.size() == full.sc_free_images.size());
    }
}

TEST_CASE("image digest is order-stable") {
    CHECK(image_digest({1, 2, 3}) == image_digest({1, 2, 3}));
    CHECK(image_digest({1, 2, 3}) != image_digest({1, 2, 4}));
}
