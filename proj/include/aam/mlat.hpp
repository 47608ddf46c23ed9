#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "aam/geometry4d.hpp"
#include "aam/hash.hpp"

namespace aam::mlat {

constexpr double kSpeedOfLight = 299'792'458.0;  // m/s, vacuum

struct BroadcastPayload {
    std::string vehicle_id;
    std::optional<double> reported_altitude;  // meters, vehicle's own sensor
    std::string ovc_id;
    Hash256 approval_hash;
};

struct StationObservation {
    std::string station_id;
    geo::Vec3 station_pos;
    double arrival_time = 0;  // seconds, synchronized station clock
    BroadcastPayload broadcast;
};

enum class FixMode : uint8_t { Full3D = 0, AltitudeAssisted = 1 };

struct PositionFix {
    std::string vehicle_id;
    double emit_time = 0;
    geo::Vec3 position;
    double residual_rms = 0;  // seconds
    FixMode mode = FixMode::Full3D;
    int station_count = 0;
};

enum class MlatErrc {
    TooFewStations,
    DuplicateStations,
    DegenerateGeometry,
    NoConvergence,
    MissingAltitude,
};
const char* to_string(MlatErrc e);

struct MlatError : std::runtime_error {
    MlatErrc code;
    explicit MlatError(MlatErrc c) : std::runtime_error(to_string(c)), code(c) {}
};

// Test-data generator: arrival_i = emit + |true_pos - s_i| / c + noise,
// noise ~ N(0, noise_sigma) from the seeded stream.
std::vector<StationObservation> synthesize_observations(
    const geo::Vec3& true_pos, double emit_time,
    const std::vector<std::pair<std::string, geo::Vec3>>& stations,
    double noise_sigma, uint64_t rng_seed, const BroadcastPayload& broadcast);

// Damped least squares over (x, y, z, t_emit), initialized at the station
// centroid with t_emit = min arrival - (max station spread) / c. Converges
// when the step norm drops below 1e-9 m (emit time scaled by c) or fails
// after 100 iterations. Requires >= 4 observations from non-degenerate
// stations.
PositionFix solve_full3d(const std::vector<StationObservation>& obs);

// Same solver with z pinned to the reported altitude; >= 3 observations.
PositionFix solve_altitude_assisted(const std::vector<StationObservation>& obs,
                                    double reported_altitude);

enum class AltitudeVerdict : uint8_t { Consistent, Spoofed, Undecidable };
const char* to_string(AltitudeVerdict v);

// Cross-checks the broadcast altitude against the full-3D solve: Spoofed
// when the altitude disagrees by more than altitude_gate AND pinning it
// inflates the fit residual beyond residual_ratio_gate x the full residual.
// Fewer than 4 stations (or any solver failure) is Undecidable.
AltitudeVerdict verify_altitude(const std::vector<StationObservation>& obs,
                                double altitude_gate_m,
                                double residual_ratio_gate);

struct AttestedPoint {
    PositionFix fix;
    bool inside_ovc = false;
};

// Per-fix containment verdicts against the OVC; the evidence stream consumed
// by flight-report evaluators and challenge voters.
std::vector<AttestedPoint> attest_track(const std::vector<PositionFix>& fixes,
                                        const geo::OperatingVolumeContract& ovc);

}  // namespace aam::mlat
