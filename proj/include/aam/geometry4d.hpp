#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aam/hash.hpp"

namespace aam::geo {

// All geometry in this module is consensus-relevant: every node must reach
// the same verdict on the same inputs. Comparisons are exact floating-point
// comparisons on values that ingest has already pinned to the 1e-6 grid.

struct GeoError : std::runtime_error {
    explicit GeoError(const std::string& what) : std::runtime_error(what) {}
};

struct Vec3 {
    double x = 0, y = 0, z = 0;
    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(Vec3 a, double s) { return {a.x * s, a.y * s, a.z * s}; }
    friend bool operator==(Vec3 a, Vec3 b) { return a.x == b.x && a.y == b.y && a.z == b.z; }
    double norm() const;
};

struct Point4D {
    double t = 0;  // seconds since scenario epoch
    double x = 0, y = 0;  // meters, local east-north plane
    double z = 0;  // meters above reference
    Vec3 pos() const { return {x, y, z}; }
};

struct VolumeSegment {
    double t_start = 0, t_end = 0;
    Vec3 box_min, box_max;
};

enum class PriorityClass : uint8_t {
    PublicService = 0,
    Commercial = 1,
    LowPriorityNonExclusive = 2,
};

const char* to_string(PriorityClass c);

struct OperatingVolumeContract {
    std::string ovc_id;
    std::string operator_id;
    std::vector<VolumeSegment> segments;  // sorted by t_start, non-overlapping
    bool exclusive = true;
    PriorityClass priority_class = PriorityClass::Commercial;
    uint32_t capacity_limit = 1;  // meaningful only when !exclusive
    int64_t deposit = 0;
    std::optional<Hash256> approval_hash;
    // Exclusive OVCs geometrically included in a non-exclusive volume; the
    // low-priority vehicle must stay out of them while they are in use.
    std::vector<std::string> referenced_exclusive;

    double first_t() const { return segments.front().t_start; }
    double last_t() const { return segments.back().t_end; }
};

struct ConflictWitness {
    std::string ovc_a;
    std::string ovc_b;
    Point4D witness;
};

// Throws GeoError when the contract breaks a type invariant.
void validate(const OperatingVolumeContract& ovc);
void validate(const Point4D& p);

// Closed-box membership: true iff some segment covers p.t and the box
// contains p component-wise (boundaries included).
bool contains(const OperatingVolumeContract& ovc, const Point4D& p);

// Positive-measure 4D overlap between two exclusive OVCs. Returns the
// centroid of the first overlapping segment-pair region (segments scanned in
// order for a, then b). Non-exclusive OVCs never conflict here; their overlap
// is a capacity question.
std::optional<ConflictWitness> find_conflict(const OperatingVolumeContract& a,
                                             const OperatingVolumeContract& b);

// Maximum simultaneous occupancy of target's volume by non-exclusive OVCs
// (target included), exact via an event sweep over segment boundaries.
// Occupancy counts positive-measure overlap only. Rejects exclusive targets.
int capacity_count(const OperatingVolumeContract& target,
                   const std::vector<OperatingVolumeContract>& others);

// Inflates every box by margin on all six faces. Rejects negative margins.
OperatingVolumeContract buffer(const OperatingVolumeContract& ovc, double margin);

}  // namespace aam::geo
