#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "hydronet/hydraulic_model.hpp"

namespace hydronet {

/// Differential + algebraic state at one instant, in model ordering.
struct HydraulicState {
    Eigen::VectorXd q;    // link flows, m^3/s
    Eigen::VectorXd p_j;  // junction heads, m
    Eigen::VectorXd p_a;  // tank heads, m
    Eigen::VectorXd p_r;  // reservoir heads, m
    double time = 0.0;

    static HydraulicState zero(const HydraulicModel& model);
    Eigen::VectorXd stacked() const;  // [q; p_j; p_a; p_r]
};

/// Time-indexed state sequence. Rows are [q..., pJ..., pA..., pR...]; a hard
/// switch may contribute two rows with the same timestamp (pre- and
/// post-reinitialization values of the algebraic state).
struct Trajectory {
    std::vector<double> times;
    Eigen::MatrixXd states;           // one row per record
    std::vector<std::string> names;   // column names: q:<id>, pJ:<id>, ...

    int rows() const { return static_cast<int>(times.size()); }
    HydraulicState state_at_row(const HydraulicModel& model, int row) const;
    Eigen::VectorXd interpolate(double t) const;  // linear in time

    std::string to_csv() const;  // header: time,<names...>
    static Trajectory from_csv(const std::string& text);

    static std::vector<std::string> state_names(const HydraulicModel& model);
};

}  // namespace hydronet
