#pragma once

#include <Eigen/Core>
#include <map>
#include <string>
#include <vector>

#include "hydronet/network.hpp"

namespace hydronet {

enum class LinkClass { Pipe, Pump, Valve };

struct PipeParams {
    double length = 0.0;
    double diameter = 0.0;
    double roughness = 0.0;   // HW C or DW epsilon (m)
    double minor_loss = 0.0;
};

struct PumpParams {
    double h0 = 0.0;   // shutoff head coefficient (m)
    double r = 0.0;    // curve resistance coefficient
    double nu = 2.0;   // curve exponent
};

struct ValveModelParams {
    ValveType kind = ValveType::TCV;
    double diameter = 0.0;
    double setting = 0.0;
    double r_open = 0.0;  // quadratic loss coefficient in the open mode
};

struct ModelOptions {
    double gravity = 9.80665;        // m/s^2
    double nu_w = 1.004e-6;          // kinematic viscosity of water at 20 C, m^2/s
    double inertance_scale = 1.0;    // factor on the median pipe gamma for pumps/valves
    double epsilon_kappa = 1.0e-8;   // slope floor for link slopes
    double r_shut = 1.0e8;           // loss coefficient cap representing a shut link
    double speed_floor = 1.0e-2;     // minimal admissible active pump speed
    double eps_q = 1.0e-5;           // regularizer in the open-mode valve calibration
};

/// Per-link control values at one instant.
struct LinkControl {
    double speed = 1.0;          // pumps
    double open_fraction = 1.0;  // all links, in [0,1]
    double setting = std::numeric_limits<double>::quiet_NaN();  // valve override
};

/// Immutable executable form of the network: incidence blocks, inertance
/// and storage matrices, and the pipe/pump/valve laws. Node rows are ordered
/// junctions, tanks, reservoirs; link columns pipes, pumps, valves.
class HydraulicModel {
public:
    static HydraulicModel build(const NetworkDescription& net, const ModelOptions& opts = {});

    // Sizes and orderings
    int n_junctions() const { return n_j_; }
    int n_tanks() const { return n_a_; }
    int n_reservoirs() const { return n_r_; }
    int n_nodes() const { return n_j_ + n_a_ + n_r_; }
    int n_pipes() const { return n_pipe_; }
    int n_pumps() const { return n_pump_; }
    int n_valves() const { return n_valve_; }
    int n_links() const { return n_pipe_ + n_pump_ + n_valve_; }
    int n_diff_states() const { return n_links() + n_a_; }     // z = {q, p^A}
    int n_alg_states() const { return n_j_ + n_r_; }           // y = {p^J, p^R}

    const std::vector<std::string>& node_ids() const { return node_ids_; }
    const std::vector<std::string>& link_ids() const { return link_ids_; }
    int node_index(const std::string& id) const;
    int link_index(const std::string& id) const;
    LinkClass link_class(int link) const;

    /// Full signed incidence matrix N (n_nodes x n_links); +1 where the link
    /// leaves the node, -1 where it enters.
    const Eigen::MatrixXd& incidence() const { return incidence_; }
    Eigen::MatrixXd incidence_junctions() const { return incidence_.topRows(n_j_); }
    Eigen::MatrixXd incidence_tanks() const { return incidence_.middleRows(n_j_, n_a_); }
    Eigen::MatrixXd incidence_reservoirs() const { return incidence_.bottomRows(n_r_); }

    /// Class block C^alpha restricted to one node group; rows follow the node
    /// ordering of the group, columns the link ordering within the class.
    Eigen::MatrixXd class_block(LinkClass cls, char node_group /* 'J','A','R' */) const;

    const Eigen::VectorXd& gamma() const { return gamma_; }          // 1/inertance per link
    Eigen::VectorXd lambda() const { return gamma_.cwiseInverse(); } // inertance per link
    const Eigen::VectorXd& tank_area() const { return tank_area_; }
    const Eigen::VectorXd& reservoir_head() const { return reservoir_head_; }
    Eigen::VectorXd initial_tank_head() const;   // elevation + init level
    Eigen::VectorXd initial_open_fraction() const;

    const std::vector<PipeParams>& pipes() const { return pipes_; }
    const std::vector<PumpParams>& pumps() const { return pumps_; }
    const std::vector<ValveModelParams>& valves() const { return valves_; }
    HeadlossLaw headloss_model() const { return headloss_; }
    const ModelOptions& options() const { return opts_; }

    // ---- Component laws ----

    /// Pipe friction headloss (m), odd in q, C1 everywhere.
    double pipe_headloss(int pipe, double q) const;
    double pipe_headloss_slope(int pipe, double q) const;

    /// Speed-scaled pump head gain s^2 (h0 - r (q/s)^nu), extended oddly in q.
    /// Throws SpeedBelowFloor for 0 <= s < speed_floor on an active pump.
    double pump_head_gain(int pump, double q, double s) const;
    double pump_gain_slope(int pump, double q, double s) const;   // d psi / d q
    double pump_gain_speed_grad(int pump, double q, double s) const;  // d psi / d s

    /// Valve quadratic loss r_eff * q|q| with the open-fraction blend between
    /// the open-mode coefficient and the shut cap.
    double valve_headloss(int valve, double q, const LinkControl& u) const;
    double valve_open_coefficient(int valve, double setting_override) const;

    /// Recalibrates a regulating valve's open-mode coefficient from an
    /// operating point: r = |dh*| / (|q*|^2 + eps_q^2).
    void calibrate_valve_open_mode(int valve, double dh_star, double q_star);

    /// Unified signed link law eta: headloss for pipes/valves, negative head
    /// gain for pumps, including the open-fraction blend toward the shut cap.
    double link_eta(int link, double q, const LinkControl& u) const;

    /// Analytic d eta / d q, floored at epsilon_kappa so every link slope is
    /// strictly positive. `floored` reports whether the floor engaged.
    double link_slope(int link, double q, const LinkControl& u, bool* floored = nullptr) const;

    /// d eta / d control-channel, for input-matrix columns: pumps differentiate
    /// in speed, valves in opening.
    double link_eta_speed_grad(int link, double q, const LinkControl& u) const;
    double link_eta_open_grad(int link, double q, const LinkControl& u) const;

    // ---- Hydraulic parameter vector ----

    /// Ordered names: pipe roughnesses, pipe diameters, pump (h0, r) pairs,
    /// valve open coefficients, tank areas.
    const std::vector<std::string>& theta_names() const { return theta_names_; }
    Eigen::VectorXd theta_nominal() const;
    HydraulicModel with_theta(const Eigen::VectorXd& theta) const;

    /// Model summary (counts, gamma statistics, theta names) as JSON.
    std::string summary_json() const;

private:
    HydraulicModel() = default;
    void rebuild_derived();

    int n_j_ = 0, n_a_ = 0, n_r_ = 0;
    int n_pipe_ = 0, n_pump_ = 0, n_valve_ = 0;
    std::vector<std::string> node_ids_, link_ids_;
    std::map<std::string, int> node_index_, link_index_;
    Eigen::MatrixXd incidence_;
    Eigen::VectorXd gamma_, tank_area_, reservoir_head_;
    Eigen::VectorXd tank_init_head_;
    std::vector<double> initial_open_;
    std::vector<PipeParams> pipes_;
    std::vector<PumpParams> pumps_;
    std::vector<ValveModelParams> valves_;
    HeadlossLaw headloss_ = HeadlossLaw::HazenWilliams;
    ModelOptions opts_;
    std::vector<std::string> theta_names_;
};

/// Fits (h0, r, nu) to an EPANET head curve. A single point (q0, h0) expands
/// to the standard three-point rule with shutoff head 4 h0 / 3 and nu = 2;
/// two or more points are fit by least squares on log(h0 - h) vs log(q) with
/// the shutoff head taken as 4/3 of the head at the design (median-flow) point.
PumpParams fit_pump_curve(const std::vector<CurvePoint>& points, const std::string& curve_id);

}  // namespace hydronet
