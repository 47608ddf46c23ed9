#include "aam/geometry4d.hpp"

#include <algorithm>
#include <cmath>

namespace aam::geo {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

const char* to_string(PriorityClass c) {
    switch (c) {
        case PriorityClass::PublicService: return "PublicService";
        case PriorityClass::Commercial: return "Commercial";
        case PriorityClass::LowPriorityNonExclusive: return "LowPriorityNonExclusive";
    }
    return "?";
}

void validate(const Point4D& p) {
    if (!std::isfinite(p.t) || p.t < 0) throw GeoError("Point4D.t must be finite and >= 0");
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
        throw GeoError("Point4D coordinates must be finite");
}

static void validate(const VolumeSegment& s) {
    if (!std::isfinite(s.t_start) || !std::isfinite(s.t_end) || !(s.t_start < s.t_end))
        throw GeoError("segment requires t_start < t_end");
    auto finite = [](const Vec3& v) {
        return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
    };
    if (!finite(s.box_min) || !finite(s.box_max)) throw GeoError("segment box must be finite");
    if (!(s.box_min.x < s.box_max.x && s.box_min.y < s.box_max.y && s.box_min.z < s.box_max.z))
        throw GeoError("segment requires box_min < box_max component-wise");
}

void validate(const OperatingVolumeContract& ovc) {
    if (ovc.ovc_id.empty()) throw GeoError("ovc_id empty");
    if (ovc.operator_id.empty()) throw GeoError("operator_id empty");
    if (ovc.segments.empty()) throw GeoError("OVC requires at least one segment");
    for (const auto& s : ovc.segments) validate(s);
    for (size_t i = 1; i < ovc.segments.size(); ++i) {
        if (!(ovc.segments[i - 1].t_start < ovc.segments[i].t_start))
            throw GeoError("segments must be sorted by t_start");
        if (ovc.segments[i].t_start < ovc.segments[i - 1].t_end)
            throw GeoError("segment time intervals must not overlap");
    }
    bool low = ovc.priority_class == PriorityClass::LowPriorityNonExclusive;
    if (ovc.exclusive == low)
        throw GeoError("exclusive=false iff priority_class=LowPriorityNonExclusive");
    if (!ovc.exclusive && ovc.capacity_limit < 1)
        throw GeoError("capacity_limit >= 1 required for non-exclusive OVC");
    if (ovc.deposit <= 0) throw GeoError("deposit must be positive");
}

static bool segment_contains(const VolumeSegment& s, const Point4D& p) {
    return s.t_start <= p.t && p.t <= s.t_end &&
           s.box_min.x <= p.x && p.x <= s.box_max.x &&
           s.box_min.y <= p.y && p.y <= s.box_max.y &&
           s.box_min.z <= p.z && p.z <= s.box_max.z;
}

bool contains(const OperatingVolumeContract& ovc, const Point4D& p) {
    for (const auto& s : ovc.segments)
        if (segment_contains(s, p)) return true;
    return false;
}

// Positive-measure overlap of two segments; fills the intersection region.
static bool segment_overlap(const VolumeSegment& a, const VolumeSegment& b,
                            VolumeSegment& out) {
    double t0 = std::max(a.t_start, b.t_start);
    double t1 = std::min(a.t_end, b.t_end);
    if (!(t0 < t1)) return false;
    Vec3 lo{std::max(a.box_min.x, b.box_min.x), std::max(a.box_min.y, b.box_min.y),
            std::max(a.box_min.z, b.box_min.z)};
    Vec3 hi{std::min(a.box_max.x, b.box_max.x), std::min(a.box_max.y, b.box_max.y),
            std::min(a.box_max.z, b.box_max.z)};
    if (!(lo.x < hi.x && lo.y < hi.y && lo.z < hi.z)) return false;
    out = VolumeSegment{t0, t1, lo, hi};
    return true;
}

std::optional<ConflictWitness> find_conflict(const OperatingVolumeContract& a,
                                             const OperatingVolumeContract& b) {
    if (!a.exclusive || !b.exclusive) return std::nullopt;
    for (const auto& sa : a.segments) {
        for (const auto& sb : b.segments) {
            VolumeSegment r;
            if (!segment_overlap(sa, sb, r)) continue;
            Point4D w{(r.t_start + r.t_end) / 2,
                      (r.box_min.x + r.box_max.x) / 2,
                      (r.box_min.y + r.box_max.y) / 2,
                      (r.box_min.z + r.box_max.z) / 2};
            return ConflictWitness{a.ovc_id, b.ovc_id, w};
        }
    }
    return std::nullopt;
}

static bool boxes_overlap(const VolumeSegment& a, const VolumeSegment& b) {
    return a.box_min.x < b.box_max.x && b.box_min.x < a.box_max.x &&
           a.box_min.y < b.box_max.y && b.box_min.y < a.box_max.y &&
           a.box_min.z < b.box_max.z && b.box_min.z < a.box_max.z;
}

int capacity_count(const OperatingVolumeContract& target,
                   const std::vector<OperatingVolumeContract>& others) {
    if (target.exclusive) throw GeoError("capacity_count requires a non-exclusive target");

    std::vector<double> bounds;
    for (const auto& s : target.segments) {
        bounds.push_back(s.t_start);
        bounds.push_back(s.t_end);
    }
    for (const auto& o : others) {
        if (o.exclusive || o.ovc_id == target.ovc_id) continue;
        for (const auto& s : o.segments) {
            bounds.push_back(s.t_start);
            bounds.push_back(s.t_end);
        }
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    // Active sets are constant on each open interval between boundaries;
    // evaluate at midpoints. Occupancy needs positive time measure, so the
    // boundary instants themselves never matter.
    auto active_segment = [](const OperatingVolumeContract& o, double t)
        -> const VolumeSegment* {
        for (const auto& s : o.segments)
            if (s.t_start < t && t < s.t_end) return &s;
        return nullptr;
    };

    int best = 0;
    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
        double mid = bounds[i] + (bounds[i + 1] - bounds[i]) / 2;
        const VolumeSegment* ts = active_segment(target, mid);
        if (!ts) continue;
        int count = 1;  // target occupies its own volume
        for (const auto& o : others) {
            if (o.exclusive || o.ovc_id == target.ovc_id) continue;
            const VolumeSegment* os = active_segment(o, mid);
            if (os && boxes_overlap(*ts, *os)) ++count;
        }
        best = std::max(best, count);
    }
    return best;
}

OperatingVolumeContract buffer(const OperatingVolumeContract& ovc, double margin) {
    if (!(margin >= 0)) throw GeoError("buffer margin must be >= 0");
    OperatingVolumeContract out = ovc;
    Vec3 m{margin, margin, margin};
    for (auto& s : out.segments) {
        s.box_min = s.box_min - m;
        s.box_max = s.box_max + m;
    }
    return out;
}

}  // namespace aam::geo
