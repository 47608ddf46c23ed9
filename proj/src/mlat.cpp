#include "aam/mlat.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "aam/rng.hpp"

namespace aam::mlat {

const char* to_string(MlatErrc e) {
    switch (e) {
        case MlatErrc::TooFewStations: return "TooFewStations";
        case MlatErrc::DuplicateStations: return "DuplicateStations";
        case MlatErrc::DegenerateGeometry: return "DegenerateGeometry";
        case MlatErrc::NoConvergence: return "NoConvergence";
        case MlatErrc::MissingAltitude: return "MissingAltitude";
    }
    return "?";
}

const char* to_string(AltitudeVerdict v) {
    switch (v) {
        case AltitudeVerdict::Consistent: return "Consistent";
        case AltitudeVerdict::Spoofed: return "Spoofed";
        case AltitudeVerdict::Undecidable: return "Undecidable";
    }
    return "?";
}

std::vector<StationObservation> synthesize_observations(
    const geo::Vec3& true_pos, double emit_time,
    const std::vector<std::pair<std::string, geo::Vec3>>& stations,
    double noise_sigma, uint64_t rng_seed, const BroadcastPayload& broadcast) {
    RngStream rng(rng_seed);
    std::vector<StationObservation> obs;
    obs.reserve(stations.size());
    for (const auto& [id, pos] : stations) {
        double dist = (true_pos - pos).norm();
        double noise = noise_sigma > 0 ? rng.normal(noise_sigma) : 0.0;
        obs.push_back(StationObservation{
            id, pos, emit_time + dist / kSpeedOfLight + noise, broadcast});
    }
    return obs;
}

namespace {

constexpr int kMaxIterations = 100;
constexpr double kStepTol = 1e-9;       // meters
constexpr double kCondLimit = 1e14;     // JtJ eigenvalue ratio gate

struct Problem {
    // Unknowns in meters: position components (z optional) and tau = c*t.
    std::vector<Eigen::Vector3d> stations;
    std::vector<double> range_obs;  // c * arrival_time
    bool solve_z = true;
    double fixed_z = 0;

    int dims() const { return solve_z ? 4 : 3; }

    Eigen::Vector3d position(const Eigen::VectorXd& u) const {
        return solve_z ? Eigen::Vector3d(u[0], u[1], u[2])
                       : Eigen::Vector3d(u[0], u[1], fixed_z);
    }
    double tau(const Eigen::VectorXd& u) const { return u[dims() - 1]; }

    // Residuals in meters: c*arrival_i - tau - |p - s_i|.
    Eigen::VectorXd residuals(const Eigen::VectorXd& u) const {
        Eigen::Vector3d p = position(u);
        Eigen::VectorXd r(stations.size());
        for (size_t i = 0; i < stations.size(); ++i)
            r[static_cast<int>(i)] = range_obs[i] - tau(u) - (p - stations[i]).norm();
        return r;
    }

    Eigen::MatrixXd jacobian(const Eigen::VectorXd& u) const {
        Eigen::Vector3d p = position(u);
        Eigen::MatrixXd J(stations.size(), dims());
        for (size_t i = 0; i < stations.size(); ++i) {
            Eigen::Vector3d d = p - stations[i];
            double dist = std::max(d.norm(), 1e-9);
            int row = static_cast<int>(i);
            J(row, 0) = -d.x() / dist;
            J(row, 1) = -d.y() / dist;
            if (solve_z) J(row, 2) = -d.z() / dist;
            J(row, dims() - 1) = -1.0;
        }
        return J;
    }
};

void check_conditioning(const Eigen::MatrixXd& J) {
    Eigen::MatrixXd JtJ = J.transpose() * J;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(JtJ);
    double lo = es.eigenvalues().minCoeff();
    double hi = es.eigenvalues().maxCoeff();
    if (!(lo > 0) || hi / lo > kCondLimit)
        throw MlatError(MlatErrc::DegenerateGeometry);
}

PositionFix solve(const std::vector<StationObservation>& obs, bool solve_z,
                  double fixed_z) {
    size_t min_stations = solve_z ? 4 : 3;
    if (obs.size() < min_stations) throw MlatError(MlatErrc::TooFewStations);
    for (size_t i = 0; i < obs.size(); ++i)
        for (size_t j = i + 1; j < obs.size(); ++j)
            if (obs[i].station_pos == obs[j].station_pos)
                throw MlatError(MlatErrc::DuplicateStations);

    Problem prob;
    prob.solve_z = solve_z;
    prob.fixed_z = fixed_z;
    for (const auto& o : obs) {
        prob.stations.emplace_back(o.station_pos.x, o.station_pos.y, o.station_pos.z);
        prob.range_obs.push_back(o.arrival_time * kSpeedOfLight);
    }

    // Initial guess: station centroid; emit time backed off from the
    // earliest arrival by the largest station spread.
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& s : prob.stations) centroid += s;
    centroid /= static_cast<double>(prob.stations.size());
    double spread = 0;
    for (size_t i = 0; i < prob.stations.size(); ++i)
        for (size_t j = i + 1; j < prob.stations.size(); ++j)
            spread = std::max(spread, (prob.stations[i] - prob.stations[j]).norm());
    double min_range = *std::min_element(prob.range_obs.begin(), prob.range_obs.end());

    Eigen::VectorXd u(prob.dims());
    u[0] = centroid.x();
    u[1] = centroid.y();
    if (solve_z) u[2] = centroid.z();
    u[prob.dims() - 1] = min_range - spread;

    check_conditioning(prob.jacobian(u));

    double lambda = 1e-3;
    Eigen::VectorXd r = prob.residuals(u);
    double cost = r.squaredNorm();
    bool converged = false;
    for (int iter = 0; iter < kMaxIterations && !converged; ++iter) {
        Eigen::MatrixXd J = prob.jacobian(u);
        Eigen::MatrixXd JtJ = J.transpose() * J;
        Eigen::VectorXd g = J.transpose() * r;
        Eigen::MatrixXd damped = JtJ;
        for (int k = 0; k < prob.dims(); ++k)
            damped(k, k) += lambda * std::max(JtJ(k, k), 1e-12);
        Eigen::VectorXd step = damped.ldlt().solve(-g);
        if (!step.allFinite()) throw MlatError(MlatErrc::DegenerateGeometry);

        Eigen::VectorXd candidate = u + step;
        Eigen::VectorXd rc = prob.residuals(candidate);
        double candidate_cost = rc.squaredNorm();
        if (candidate_cost <= cost) {
            u = candidate;
            r = rc;
            cost = candidate_cost;
            lambda = std::max(lambda / 3.0, 1e-12);
            if (step.norm() < kStepTol) converged = true;
        } else {
            lambda *= 10.0;
            if (lambda > 1e12) throw MlatError(MlatErrc::NoConvergence);
        }
    }
    if (!converged) throw MlatError(MlatErrc::NoConvergence);
    check_conditioning(prob.jacobian(u));

    PositionFix fix;
    fix.vehicle_id = obs.front().broadcast.vehicle_id;
    Eigen::Vector3d p = prob.position(u);
    fix.position = geo::Vec3{p.x(), p.y(), p.z()};
    fix.emit_time = prob.tau(u) / kSpeedOfLight;
    fix.residual_rms =
        std::sqrt(cost / static_cast<double>(obs.size())) / kSpeedOfLight;
    fix.mode = solve_z ? FixMode::Full3D : FixMode::AltitudeAssisted;
    fix.station_count = static_cast<int>(obs.size());
    return fix;
}

}  // namespace

PositionFix solve_full3d(const std::vector<StationObservation>& obs) {
    return solve(obs, true, 0.0);
}

PositionFix solve_altitude_assisted(const std::vector<StationObservation>& obs,
                                    double reported_altitude) {
    if (!std::isfinite(reported_altitude)) throw MlatError(MlatErrc::MissingAltitude);
    return solve(obs, false, reported_altitude);
}

AltitudeVerdict verify_altitude(const std::vector<StationObservation>& obs,
                                double altitude_gate_m, double residual_ratio_gate) {
    if (obs.size() < 4) return AltitudeVerdict::Undecidable;
    if (!obs.front().broadcast.reported_altitude)
        return AltitudeVerdict::Undecidable;
    double reported = *obs.front().broadcast.reported_altitude;
    try {
        PositionFix full = solve_full3d(obs);
        PositionFix assisted = solve_altitude_assisted(obs, reported);
        bool altitude_off = std::abs(full.position.z - reported) > altitude_gate_m;
        bool residual_blown =
            assisted.residual_rms > residual_ratio_gate * full.residual_rms;
        return (altitude_off && residual_blown) ? AltitudeVerdict::Spoofed
                                                : AltitudeVerdict::Consistent;
    } catch (const MlatError&) {
        return AltitudeVerdict::Undecidable;
    }
}

std::vector<AttestedPoint> attest_track(const std::vector<PositionFix>& fixes,
                                        const geo::OperatingVolumeContract& ovc) {
    std::vector<AttestedPoint> out;
    out.reserve(fixes.size());
    for (const auto& f : fixes) {
        geo::Point4D p{f.emit_time, f.position.x, f.position.y, f.position.z};
        out.push_back(AttestedPoint{f, geo::contains(ovc, p)});
    }
    return out;
}

}  // namespace aam::mlat
