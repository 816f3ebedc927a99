#include "thetadim/orbits.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace thetadim {

OrbitSetting make_orbit_setting(const CoverSpec &cover) {
    OrbitSetting s;
    s.cover = cover;
    s.weyl = weyl_elements(cover.datum);
    s.yqn = sublattice_yqn(cover);
    s.sc = sublattice_yqn_sc(cover);
    s.classes = quotient(cover.datum.y_rank, s.yqn);
    s.sc_reducer = CosetReducer(s.sc.basis);
    if (s.sc.basis.cols == s.yqn.basis.cols)
        s.dual_center_order = sublattice_index(s.sc, s.yqn);
    else
        s.dual_center_order = 0;
    return s;
}

OrbitRecord orbit(const OrbitSetting &s, i64 start_class, bool store_elements) {
    if (start_class < 0 || start_class >= s.classes.size)
        throw std::out_of_range("orbit: bad class index");
    OrbitRecord r;
    r.base = s.classes.rep(start_class);
    r.base_class = start_class;

    const Vec base_sc_key = s.sc_reducer.reduce(r.base);
    i64 stab_exact = 0, stab_sc = 0;
    std::vector<i64> image;
    image.reserve(s.weyl.size());
    for (const WeylElement &w : s.weyl.elements) {
        Vec v = shifted_apply(s.cover.datum, w, r.base);
        if (v == r.base) {
            ++stab_exact;
            if (w.index != 0 && !r.non_free_witness)
                r.non_free_witness = Witness{w.index, r.base, vec_sub(v, r.base)};
        }
        if (s.sc_reducer.reduce(v) == base_sc_key) {
            ++stab_sc;
            if (w.index != 0 && !r.non_sc_witness)
                r.non_sc_witness = Witness{w.index, r.base, vec_sub(v, r.base)};
        }
        i64 cls = s.classes.class_of(v);
        image.push_back(cls);
        if (cls == start_class) {
            r.qn_stab.push_back(w.index);
            if (w.index != 0 && !r.non_qn_witness)
                r.non_qn_witness = Witness{w.index, r.base, vec_sub(v, r.base)};
        }
        if (store_elements) r.elements.push_back(std::move(v));
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    r.image = std::move(image);
    r.size = static_cast<i64>(s.weyl.size()) / stab_exact;
    r.is_free = (stab_exact == 1);
    r.is_sc_free = (stab_sc == 1);
    r.is_qn_free = (r.qn_stab.size() == 1);
    return r;
}

namespace {

// Connected component of start under the shifted simple reflections on classes.
std::vector<i64> class_component(const OrbitSetting &s, i64 start, std::vector<uint8_t> &visited) {
    std::vector<i64> comp{start};
    visited[static_cast<size_t>(start)] = 1;
    size_t head = 0;
    while (head < comp.size()) {
        i64 c = comp[head++];
        Vec y = s.classes.rep(c);
        for (int j = 0; j < s.cover.datum.rank; ++j) {
            i64 nb = s.classes.class_of(shifted_reflect(s.cover.datum, j, y));
            if (!visited[static_cast<size_t>(nb)]) {
                visited[static_cast<size_t>(nb)] = 1;
                comp.push_back(nb);
            }
        }
    }
    std::sort(comp.begin(), comp.end());
    return comp;
}

} // namespace

OrbitSurvey survey(const OrbitSetting &s, const SurveyOptions &opt) {
    OrbitSurvey out;
    out.total_classes = s.classes.size;
    const i64 wsize = static_cast<i64>(s.weyl.size());
    std::vector<uint8_t> visited(static_cast<size_t>(s.classes.size), 0);
    std::map<std::vector<i64>, size_t> image_slot; // dedup of sc-free images

    for (i64 c = 0; c < s.classes.size; ++c) {
        if (visited[static_cast<size_t>(c)]) continue;
        std::vector<i64> comp = class_component(s, c, visited);
        OrbitSummary sum;
        sum.base_class = comp.front();
        sum.image_size = static_cast<i64>(comp.size());
        sum.image = comp;

        // A component of size |W| is a Y_{Q,n}-free orbit; no scan needed.
        // A component smaller than |W| / |Z| cannot be Y_{Q,n}^sc-free since
        // the class stabilizer embeds into Y_{Q,n} / Y_{Q,n}^sc.
        bool maybe_sc_free = true;
        if (sum.image_size == wsize) {
            sum.is_free = sum.is_sc_free = sum.is_qn_free = true;
            sum.scanned = true;
            sum.orbit_size = wsize;
        } else if (!opt.full_scan && s.dual_center_order > 0 &&
                   sum.image_size * s.dual_center_order < wsize) {
            maybe_sc_free = false; // pruned
        } else {
            OrbitRecord r = orbit(s, sum.base_class, false);
            sum.scanned = true;
            sum.orbit_size = r.size;
            sum.is_free = r.is_free;
            sum.is_sc_free = r.is_sc_free;
            sum.is_qn_free = r.is_qn_free;
            sum.non_sc_witness = r.non_sc_witness;
            sum.non_qn_witness = r.non_qn_witness;
            maybe_sc_free = r.is_sc_free;
        }

        if (maybe_sc_free && (sum.scanned ? sum.is_sc_free : false)) {
            auto it = image_slot.find(sum.image);
            if (it == image_slot.end()) {
                image_slot.emplace(sum.image, out.sc_free_images.size());
                out.sc_free_images.push_back({sum.image, sum.is_qn_free, sum.base_class});
            } else {
                // qn-free and non-qn-free orbits never share an image
                if (out.sc_free_images[it->second].qn_free != sum.is_qn_free)
                    throw std::logic_error("inconsistent freeness on a shared image");
            }
        }
        if (opt.store_summaries) out.orbits.push_back(std::move(sum));
    }

    out.upper = static_cast<i64>(out.sc_free_images.size());
    out.lower = 0;
    for (const auto &im : out.sc_free_images)
        if (im.qn_free) ++out.lower;
    return out;
}

std::string image_digest(const std::vector<i64> &image) {
    // FNV-1a over the class list, printed as hex
    uint64_t h = 1469598103934665603ull;
    for (i64 v : image) {
        uint64_t x = static_cast<uint64_t>(v);
        for (int b = 0; b < 8; ++b) {
            h ^= (x >> (8 * b)) & 0xff;
            h *= 1099511628211ull;
        }
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

} // namespace thetadim
