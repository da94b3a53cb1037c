#include "hydronet/trajectory.hpp"

#include <cstdio>
#include <sstream>

#include "hydronet/errors.hpp"

namespace hydronet {

namespace {
std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}
}  // namespace

HydraulicState HydraulicState::zero(const HydraulicModel& model) {
    HydraulicState s;
    s.q = Eigen::VectorXd::Zero(model.n_links());
    s.p_j = Eigen::VectorXd::Zero(model.n_junctions());
    s.p_a = Eigen::VectorXd::Zero(model.n_tanks());
    s.p_r = Eigen::VectorXd::Zero(model.n_reservoirs());
    return s;
}

Eigen::VectorXd HydraulicState::stacked() const {
    Eigen::VectorXd x(q.size() + p_j.size() + p_a.size() + p_r.size());
    x << q, p_j, p_a, p_r;
    return x;
}

std::vector<std::string> Trajectory::state_names(const HydraulicModel& model) {
    std::vector<std::string> names;
    for (int e = 0; e < model.n_links(); ++e) names.push_back("q:" + model.link_ids()[e]);
    for (int j = 0; j < model.n_junctions(); ++j) names.push_back("pJ:" + model.node_ids()[j]);
    for (int a = 0; a < model.n_tanks(); ++a)
        names.push_back("pA:" + model.node_ids()[model.n_junctions() + a]);
    for (int r = 0; r < model.n_reservoirs(); ++r)
        names.push_back("pR:" + model.node_ids()[model.n_junctions() + model.n_tanks() + r]);
    return names;
}

HydraulicState Trajectory::state_at_row(const HydraulicModel& model, int row) const {
    HydraulicState s;
    const Eigen::RowVectorXd x = states.row(row);
    int off = 0;
    s.q = x.segment(off, model.n_links()).transpose(); off += model.n_links();
    s.p_j = x.segment(off, model.n_junctions()).transpose(); off += model.n_junctions();
    s.p_a = x.segment(off, model.n_tanks()).transpose(); off += model.n_tanks();
    s.p_r = x.segment(off, model.n_reservoirs()).transpose();
    s.time = times[static_cast<size_t>(row)];
    return s;
}

Eigen::VectorXd Trajectory::interpolate(double t) const {
    if (times.empty()) raise(ErrorCode::GridMismatch, "empty trajectory");
    if (t <= times.front()) return states.row(0).transpose();
    if (t >= times.back()) return states.row(rows() - 1).transpose();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    int hi = static_cast<int>(std::distance(times.begin(), it));
    int lo = hi - 1;
    double t0 = times[static_cast<size_t>(lo)], t1 = times[static_cast<size_t>(hi)];
    if (t1 <= t0) return states.row(hi).transpose();  // duplicated switch row
    double w = (t - t0) / (t1 - t0);
    return ((1.0 - w) * states.row(lo) + w * states.row(hi)).transpose();
}

std::string Trajectory::to_csv() const {
    std::ostringstream os;
    os << "time";
    for (const auto& n : names) os << "," << n;
    os << "\n";
    for (int r = 0; r < rows(); ++r) {
        os << fmt(times[static_cast<size_t>(r)]);
        for (int c = 0; c < states.cols(); ++c) os << "," << fmt(states(r, c));
        os << "\n";
    }
    return os.str();
}

Trajectory Trajectory::from_csv(const std::string& text) {
    Trajectory traj;
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) raise(ErrorCode::MalformedLine, "empty trajectory CSV");
    {
        std::istringstream hs(line);
        std::string cell;
        bool first = true;
        while (std::getline(hs, cell, ',')) {
            if (first) {
                if (cell != "time")
                    raise(ErrorCode::MalformedLine, "trajectory CSV must start with a 'time' column");
                first = false;
            } else {
                traj.names.push_back(cell);
            }
        }
    }
    std::vector<std::vector<double>> rows;
    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream rs(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(rs, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != traj.names.size() + 1)
            raise(ErrorCode::MalformedLine,
                  "trajectory CSV row " + std::to_string(lineno) + " has wrong arity");
        rows.push_back(std::move(row));
    }
    traj.states.resize(static_cast<Eigen::Index>(rows.size()),
                       static_cast<Eigen::Index>(traj.names.size()));
    for (size_t r = 0; r < rows.size(); ++r) {
        traj.times.push_back(rows[r][0]);
        for (size_t c = 0; c < traj.names.size(); ++c)
            traj.states(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c + 1];
    }
    return traj;
}

}  // namespace hydronet
