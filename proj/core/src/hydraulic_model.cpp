#include "hydronet/hydraulic_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "hydronet/errors.hpp"

namespace hydronet {

namespace {

constexpr double kPi = 3.14159265358979323846;

double circle_area(double diameter) { return kPi * diameter * diameter / 4.0; }

/// Swamee-Jain explicit friction factor, valid for Re >= 4000.
double swamee_jain(double rel_rough, double re) {
    double x = rel_rough / 3.7 + 5.74 / std::pow(re, 0.9);
    double u = std::log10(x);
    return 0.25 / (u * u);
}

double swamee_jain_deriv(double rel_rough, double re) {
    double x = rel_rough / 3.7 + 5.74 / std::pow(re, 0.9);
    double u = std::log10(x);
    double dx = -0.9 * 5.74 * std::pow(re, -1.9);
    double du = dx / (x * std::log(10.0));
    return -0.5 / (u * u * u) * du;
}

/// Friction factor and its derivative in Re: laminar 64/Re below 2000,
/// Swamee-Jain above 4000, cubic Hermite blend in between so the law is C1.
void friction_factor(double rel_rough, double re, double* f, double* dfdre) {
    constexpr double re_lo = 2000.0, re_hi = 4000.0;
    if (re <= re_lo) {
        *f = 64.0 / re;
        *dfdre = -64.0 / (re * re);
        return;
    }
    if (re >= re_hi) {
        *f = swamee_jain(rel_rough, re);
        *dfdre = swamee_jain_deriv(rel_rough, re);
        return;
    }
    const double h = re_hi - re_lo;
    const double f0 = 64.0 / re_lo;
    const double d0 = -64.0 / (re_lo * re_lo);
    const double f1 = swamee_jain(rel_rough, re_hi);
    const double d1 = swamee_jain_deriv(rel_rough, re_hi);
    const double t = (re - re_lo) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
    *f = h00 * f0 + h10 * h * d0 + h01 * f1 + h11 * h * d1;
    const double dh00 = 6 * t2 - 6 * t, dh10 = 3 * t2 - 4 * t + 1;
    const double dh01 = -6 * t2 + 6 * t, dh11 = 3 * t2 - 2 * t;
    *dfdre = (dh00 * f0 + dh10 * h * d0 + dh01 * f1 + dh11 * h * d1) / h;
}

}  // namespace

PumpParams fit_pump_curve(const std::vector<CurvePoint>& points, const std::string& curve_id) {
    if (points.empty())
        raise(ErrorCode::UnsupportedFeature, "pump curve '" + curve_id + "' has no points");
    PumpParams p;
    if (points.size() == 1) {
        const double q0 = points[0].flow, h0 = points[0].head;
        if (q0 <= 0.0 || h0 <= 0.0)
            raise(ErrorCode::UnsupportedFeature,
                  "pump curve '" + curve_id + "' needs a positive design point");
        p.h0 = 4.0 * h0 / 3.0;
        p.nu = 2.0;
        p.r = (p.h0 - h0) / (q0 * q0);
        return p;
    }
    std::vector<CurvePoint> pts = points;
    std::sort(pts.begin(), pts.end(), [](const CurvePoint& a, const CurvePoint& b) {
        return a.flow < b.flow;
    });
    const CurvePoint& design = pts[pts.size() / 2];
    p.h0 = 4.0 * design.head / 3.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& pt : pts) {
        if (pt.flow <= 0.0 || pt.head >= p.h0) continue;
        double lx = std::log(pt.flow), ly = std::log(p.h0 - pt.head);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++n;
    }
    if (n < 2)
        raise(ErrorCode::UnsupportedFeature,
              "pump curve '" + curve_id + "' has too few usable points below the shutoff head");
    double denom = n * sxx - sx * sx;
    if (std::abs(denom) < 1e-14)
        raise(ErrorCode::UnsupportedFeature, "pump curve '" + curve_id + "' is degenerate");
    p.nu = (n * sxy - sx * sy) / denom;
    p.r = std::exp((sy - p.nu * sx) / n);
    if (p.nu <= 0.0 || p.r <= 0.0)
        raise(ErrorCode::UnsupportedFeature,
              "pump curve '" + curve_id + "' fit produced a non-decreasing head curve");
    return p;
}

HydraulicModel HydraulicModel::build(const NetworkDescription& net, const ModelOptions& opts) {
    if (net.junctions.empty() && net.tanks.empty() && net.reservoirs.empty())
        raise(ErrorCode::EmptyNetwork, "network has no nodes");
    if (net.pipes.empty() && net.pumps.empty() && net.valves.empty())
        raise(ErrorCode::EmptyNetwork, "network has no links");

    HydraulicModel m;
    m.opts_ = opts;
    m.headloss_ = net.options.headloss_model;
    m.n_j_ = static_cast<int>(net.junctions.size());
    m.n_a_ = static_cast<int>(net.tanks.size());
    m.n_r_ = static_cast<int>(net.reservoirs.size());
    m.n_pipe_ = static_cast<int>(net.pipes.size());
    m.n_pump_ = static_cast<int>(net.pumps.size());
    m.n_valve_ = static_cast<int>(net.valves.size());

    for (const auto& j : net.junctions) m.node_ids_.push_back(j.id);
    for (const auto& t : net.tanks) m.node_ids_.push_back(t.id);
    for (const auto& r : net.reservoirs) m.node_ids_.push_back(r.id);
    for (size_t i = 0; i < m.node_ids_.size(); ++i) m.node_index_[m.node_ids_[i]] = static_cast<int>(i);

    for (const auto& p : net.pipes) m.link_ids_.push_back(p.id);
    for (const auto& q : net.pumps) m.link_ids_.push_back(q.id);
    for (const auto& v : net.valves) m.link_ids_.push_back(v.id);
    for (size_t i = 0; i < m.link_ids_.size(); ++i) m.link_index_[m.link_ids_[i]] = static_cast<int>(i);

    m.incidence_ = Eigen::MatrixXd::Zero(m.n_nodes(), m.n_links());
    auto set_column = [&](int col, const std::string& from, const std::string& to,
                          const std::string& link) {
        auto fi = m.node_index_.find(from);
        auto ti = m.node_index_.find(to);
        if (fi == m.node_index_.end() || ti == m.node_index_.end())
            raise(ErrorCode::UnresolvedReference, "link '" + link + "' has an undeclared endpoint");
        m.incidence_(fi->second, col) = 1.0;
        m.incidence_(ti->second, col) = -1.0;
    };

    int col = 0;
    for (const auto& p : net.pipes) {
        if (p.length <= 0.0)
            raise(ErrorCode::DegenerateGeometry, "pipe '" + p.id + "' has non-positive length");
        if (p.diameter <= 0.0)
            raise(ErrorCode::DegenerateGeometry, "pipe '" + p.id + "' has non-positive diameter");
        set_column(col++, p.from, p.to, p.id);
        m.pipes_.push_back({p.length, p.diameter, p.roughness, p.minor_loss});
        m.initial_open_.push_back(p.initial_status == LinkStatus::Open ? 1.0 : 0.0);
    }
    for (const auto& q : net.pumps) {
        set_column(col++, q.from, q.to, q.id);
        auto it = net.curves.find(q.curve_id);
        if (it == net.curves.end())
            raise(ErrorCode::UnresolvedReference,
                  "pump '" + q.id + "' references undeclared curve '" + q.curve_id + "'");
        m.pumps_.push_back(fit_pump_curve(it->second, q.curve_id));
        m.initial_open_.push_back(q.initial_status == LinkStatus::Open ? 1.0 : 0.0);
    }
    for (const auto& v : net.valves) {
        if ((v.kind == ValveType::FCV || v.kind == ValveType::PRV || v.kind == ValveType::PSV) &&
            v.status == ValveStatus::Active)
            raise(ErrorCode::UnsupportedValveMode,
                  "valve '" + v.id + "' declares an active regulating setpoint; only the open mode "
                  "is supported (set its status to OPEN or CLOSED)");
        set_column(col++, v.from, v.to, v.id);
        ValveModelParams vp;
        vp.kind = v.kind;
        vp.diameter = v.diameter;
        vp.setting = v.setting;
        if (v.kind == ValveType::TCV) {
            double a = circle_area(v.diameter);
            vp.r_open = v.setting / (2.0 * opts.gravity * a * a);
        } else {
            // GPV stays ideally open; open-mode regulating valves start at
            // zero loss until calibrate_valve_open_mode supplies Eq-style data.
            vp.r_open = 0.0;
        }
        m.valves_.push_back(vp);
        m.initial_open_.push_back(v.status == ValveStatus::Closed ? 0.0 : 1.0);
    }

    m.tank_area_.resize(m.n_a_);
    m.tank_init_head_.resize(m.n_a_);
    for (int i = 0; i < m.n_a_; ++i) {
        const Tank& t = net.tanks[static_cast<size_t>(i)];
        if (t.diameter <= 0.0)
            raise(ErrorCode::DegenerateGeometry, "tank '" + t.id + "' has non-positive diameter");
        m.tank_area_(i) = circle_area(t.diameter);
        m.tank_init_head_(i) = t.elevation + t.init_level;
    }
    m.reservoir_head_.resize(m.n_r_);
    for (int i = 0; i < m.n_r_; ++i) m.reservoir_head_(i) = net.reservoirs[static_cast<size_t>(i)].head;

    m.rebuild_derived();

    // Theta ordering: pipe roughnesses, pipe diameters, pump (h0, r) pairs,
    // valve open coefficients, tank areas.
    for (int i = 0; i < m.n_pipe_; ++i) m.theta_names_.push_back("roughness:" + m.link_ids_[i]);
    for (int i = 0; i < m.n_pipe_; ++i) m.theta_names_.push_back("diameter:" + m.link_ids_[i]);
    for (int i = 0; i < m.n_pump_; ++i) {
        m.theta_names_.push_back("pump_h0:" + m.link_ids_[m.n_pipe_ + i]);
        m.theta_names_.push_back("pump_r:" + m.link_ids_[m.n_pipe_ + i]);
    }
    for (int i = 0; i < m.n_valve_; ++i)
        m.theta_names_.push_back("valve_r:" + m.link_ids_[m.n_pipe_ + m.n_pump_ + i]);
    for (int i = 0; i < m.n_a_; ++i)
        m.theta_names_.push_back("tank_area:" + m.node_ids_[m.n_j_ + i]);
    return m;
}

void HydraulicModel::rebuild_derived() {
    gamma_.resize(n_links());
    std::vector<double> pipe_gammas;
    for (int i = 0; i < n_pipe_; ++i) {
        const auto& p = pipes_[static_cast<size_t>(i)];
        double g = opts_.gravity * circle_area(p.diameter) / p.length;
        gamma_(i) = g;
        pipe_gammas.push_back(g);
    }
    double median_gamma = opts_.gravity * circle_area(0.3) / 1000.0;  // fallback if no pipes
    if (!pipe_gammas.empty()) {
        std::sort(pipe_gammas.begin(), pipe_gammas.end());
        median_gamma = pipe_gammas[pipe_gammas.size() / 2];
    }
    for (int i = n_pipe_; i < n_links(); ++i) gamma_(i) = median_gamma * opts_.inertance_scale;
}

int HydraulicModel::node_index(const std::string& id) const {
    auto it = node_index_.find(id);
    if (it == node_index_.end())
        raise(ErrorCode::UnresolvedReference, "unknown node id '" + id + "'");
    return it->second;
}

int HydraulicModel::link_index(const std::string& id) const {
    auto it = link_index_.find(id);
    if (it == link_index_.end())
        raise(ErrorCode::UnresolvedReference, "unknown link id '" + id + "'");
    return it->second;
}

LinkClass HydraulicModel::link_class(int link) const {
    if (link < n_pipe_) return LinkClass::Pipe;
    if (link < n_pipe_ + n_pump_) return LinkClass::Pump;
    return LinkClass::Valve;
}

Eigen::MatrixXd HydraulicModel::class_block(LinkClass cls, char node_group) const {
    int col0 = 0, ncols = n_pipe_;
    if (cls == LinkClass::Pump) { col0 = n_pipe_; ncols = n_pump_; }
    if (cls == LinkClass::Valve) { col0 = n_pipe_ + n_pump_; ncols = n_valve_; }
    int row0 = 0, nrows = n_j_;
    if (node_group == 'A') { row0 = n_j_; nrows = n_a_; }
    if (node_group == 'R') { row0 = n_j_ + n_a_; nrows = n_r_; }
    return incidence_.block(row0, col0, nrows, ncols);
}

Eigen::VectorXd HydraulicModel::initial_tank_head() const { return tank_init_head_; }

Eigen::VectorXd HydraulicModel::initial_open_fraction() const {
    return Eigen::Map<const Eigen::VectorXd>(initial_open_.data(),
                                             static_cast<Eigen::Index>(initial_open_.size()));
}

double HydraulicModel::pipe_headloss(int pipe, double q) const {
    const auto& p = pipes_[static_cast<size_t>(pipe)];
    const double aq = std::abs(q);
    const double sign = q < 0.0 ? -1.0 : 1.0;
    const double area = circle_area(p.diameter);
    const double r_ml = p.minor_loss / (2.0 * opts_.gravity * area * area);
    if (headloss_ == HeadlossLaw::HazenWilliams) {
        const double rc = 10.667 * p.length * std::pow(p.roughness, -1.852) *
                          std::pow(p.diameter, -4.871);
        return sign * (rc * std::pow(aq, 1.852) + r_ml * aq * aq);
    }
    // Darcy-Weisbach; the laminar branch reduces to the linear Hagen-Poiseuille law.
    if (aq == 0.0) return 0.0;
    const double re = 4.0 * aq / (kPi * opts_.nu_w * p.diameter);
    double f, dfdre;
    friction_factor(p.roughness / p.diameter, re, &f, &dfdre);
    const double c = 8.0 * p.length / (opts_.gravity * kPi * kPi * std::pow(p.diameter, 5));
    return sign * ((c * f + r_ml) * aq * aq);
}

double HydraulicModel::pipe_headloss_slope(int pipe, double q) const {
    const auto& p = pipes_[static_cast<size_t>(pipe)];
    const double aq = std::abs(q);
    const double area = circle_area(p.diameter);
    const double r_ml = p.minor_loss / (2.0 * opts_.gravity * area * area);
    if (headloss_ == HeadlossLaw::HazenWilliams) {
        const double rc = 10.667 * p.length * std::pow(p.roughness, -1.852) *
                          std::pow(p.diameter, -4.871);
        return 1.852 * rc * std::pow(aq, 0.852) + 2.0 * r_ml * aq;
    }
    const double k_re = 4.0 / (kPi * opts_.nu_w * p.diameter);
    const double c = 8.0 * p.length / (opts_.gravity * kPi * kPi * std::pow(p.diameter, 5));
    if (aq == 0.0) {
        // Hagen-Poiseuille slope: c * 64 / (k_re) stays finite at q = 0.
        return c * 64.0 / k_re;
    }
    const double re = k_re * aq;
    double f, dfdre;
    friction_factor(p.roughness / p.diameter, re, &f, &dfdre);
    return c * aq * (2.0 * f + re * dfdre) + 2.0 * r_ml * aq;
}

double HydraulicModel::pump_head_gain(int pump, double q, double s) const {
    const auto& p = pumps_[static_cast<size_t>(pump)];
    if (s < opts_.speed_floor)
        raise(ErrorCode::SpeedBelowFloor,
              "pump '" + link_ids_[static_cast<size_t>(n_pipe_ + pump)] + "' evaluated at speed " +
                  std::to_string(s) + " below the floor " + std::to_string(opts_.speed_floor));
    const double sign = q < 0.0 ? -1.0 : 1.0;
    const double aq = std::abs(q);
    return s * s * p.h0 - sign * p.r * std::pow(s, 2.0 - p.nu) * std::pow(aq, p.nu);
}

double HydraulicModel::pump_gain_slope(int pump, double q, double s) const {
    const auto& p = pumps_[static_cast<size_t>(pump)];
    const double aq = std::abs(q);
    return -p.r * p.nu * std::pow(s, 2.0 - p.nu) * std::pow(aq, p.nu - 1.0);
}

double HydraulicModel::pump_gain_speed_grad(int pump, double q, double s) const {
    const auto& p = pumps_[static_cast<size_t>(pump)];
    const double sign = q < 0.0 ? -1.0 : 1.0;
    const double aq = std::abs(q);
    return 2.0 * s * p.h0 - sign * (2.0 - p.nu) * p.r * std::pow(s, 1.0 - p.nu) * std::pow(aq, p.nu);
}

double HydraulicModel::valve_open_coefficient(int valve, double setting_override) const {
    const auto& v = valves_[static_cast<size_t>(valve)];
    if (v.kind == ValveType::TCV && !std::isnan(setting_override)) {
        double a = circle_area(v.diameter);
        return setting_override / (2.0 * opts_.gravity * a * a);
    }
    return v.r_open;
}

double HydraulicModel::valve_headloss(int valve, double q, const LinkControl& u) const {
    const double r_open = valve_open_coefficient(valve, u.setting);
    const double w = u.open_fraction;
    const double r_eff = w * r_open + (1.0 - w) * opts_.r_shut;
    return r_eff * q * std::abs(q);
}

void HydraulicModel::calibrate_valve_open_mode(int valve, double dh_star, double q_star) {
    auto& v = valves_[static_cast<size_t>(valve)];
    v.r_open = std::abs(dh_star) / (q_star * q_star + opts_.eps_q * opts_.eps_q);
}

double HydraulicModel::link_eta(int link, double q, const LinkControl& u) const {
    const double w = u.open_fraction;
    const double shut = (1.0 - w) * opts_.r_shut * q * std::abs(q);
    switch (link_class(link)) {
        case LinkClass::Pipe:
            return w * pipe_headloss(link, q) + shut;
        case LinkClass::Pump:
            // Pump contribution enters eta with a negative sign (head gain).
            return (w > 0.0 ? -w * pump_head_gain(link - n_pipe_, q, u.speed) : 0.0) + shut;
        case LinkClass::Valve:
            return valve_headloss(link - n_pipe_ - n_pump_, q, u);
    }
    return 0.0;
}

double HydraulicModel::link_slope(int link, double q, const LinkControl& u, bool* floored) const {
    const double w = u.open_fraction;
    double slope = (1.0 - w) * 2.0 * opts_.r_shut * std::abs(q);
    switch (link_class(link)) {
        case LinkClass::Pipe:
            slope += w * pipe_headloss_slope(link, q);
            break;
        case LinkClass::Pump:
            if (w > 0.0) slope += w * (-pump_gain_slope(link - n_pipe_, q, u.speed));
            break;
        case LinkClass::Valve:
            slope += w * 2.0 * valve_open_coefficient(link - n_pipe_ - n_pump_, u.setting) * std::abs(q);
            break;
    }
    bool hit = slope < opts_.epsilon_kappa;
    if (floored) *floored = hit;
    return hit ? opts_.epsilon_kappa : slope;
}

double HydraulicModel::link_eta_speed_grad(int link, double q, const LinkControl& u) const {
    if (link_class(link) != LinkClass::Pump || u.open_fraction <= 0.0) return 0.0;
    return -u.open_fraction * pump_gain_speed_grad(link - n_pipe_, q, u.speed);
}

double HydraulicModel::link_eta_open_grad(int link, double q, const LinkControl& u) const {
    const double qq = q * std::abs(q);
    switch (link_class(link)) {
        case LinkClass::Pipe:
            return pipe_headloss(link, q) - opts_.r_shut * qq;
        case LinkClass::Pump:
            return -pump_head_gain(link - n_pipe_, q, u.speed) - opts_.r_shut * qq;
        case LinkClass::Valve:
            return (valve_open_coefficient(link - n_pipe_ - n_pump_, u.setting) - opts_.r_shut) * qq;
    }
    return 0.0;
}

Eigen::VectorXd HydraulicModel::theta_nominal() const {
    Eigen::VectorXd theta(static_cast<Eigen::Index>(theta_names_.size()));
    int k = 0;
    for (const auto& p : pipes_) theta(k++) = p.roughness;
    for (const auto& p : pipes_) theta(k++) = p.diameter;
    for (const auto& p : pumps_) {
        theta(k++) = p.h0;
        theta(k++) = p.r;
    }
    for (const auto& v : valves_) theta(k++) = v.r_open;
    for (int i = 0; i < n_a_; ++i) theta(k++) = tank_area_(i);
    return theta;
}

HydraulicModel HydraulicModel::with_theta(const Eigen::VectorXd& theta) const {
    if (theta.size() != static_cast<Eigen::Index>(theta_names_.size()))
        raise(ErrorCode::InvalidArgument, "theta vector has the wrong dimension");
    HydraulicModel m = *this;
    int k = 0;
    for (auto& p : m.pipes_) p.roughness = theta(k++);
    for (auto& p : m.pipes_) p.diameter = theta(k++);
    for (auto& p : m.pumps_) {
        p.h0 = theta(k++);
        p.r = theta(k++);
    }
    for (auto& v : m.valves_) v.r_open = theta(k++);
    for (int i = 0; i < m.n_a_; ++i) m.tank_area_(i) = theta(k++);
    m.rebuild_derived();
    return m;
}

std::string HydraulicModel::summary_json() const {
    nlohmann::json j;
    j["counts"] = {{"junctions", n_j_}, {"tanks", n_a_},  {"reservoirs", n_r_},
                   {"pipes", n_pipe_},  {"pumps", n_pump_}, {"valves", n_valve_}};
    j["gamma"] = {{"min", gamma_.minCoeff()}, {"max", gamma_.maxCoeff()},
                  {"mean", gamma_.mean()}};
    j["headloss_model"] = headloss_ == HeadlossLaw::HazenWilliams ? "HW" : "DW";
    j["theta_names"] = theta_names_;
    j["options"] = {{"gravity", opts_.gravity},
                    {"nu_w", opts_.nu_w},
                    {"inertance_scale", opts_.inertance_scale},
                    {"epsilon_kappa", opts_.epsilon_kappa},
                    {"r_shut", opts_.r_shut},
                    {"speed_floor", opts_.speed_floor}};
    return j.dump(2);
}

}  // namespace hydronet
