#include "hydronet/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "hydronet/errors.hpp"

namespace hydronet {

StepSeries::StepSeries(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
    if (times_.empty() || times_.size() != values_.size())
        raise(ErrorCode::InvalidArgument, "breakpoint series needs matching nonempty times/values");
    for (size_t i = 1; i < times_.size(); ++i)
        if (times_[i] <= times_[i - 1])
            raise(ErrorCode::InvalidArgument, "breakpoint times must be strictly increasing");
}

double StepSeries::at(double t) const {
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    if (it == times_.begin()) return values_.front();
    return values_[static_cast<size_t>(std::distance(times_.begin(), it)) - 1];
}

ScheduleInput::ScheduleInput(const HydraulicModel& model) : model_(&model) {
    default_open_ = model.initial_open_fraction();
    base_demand_ = Eigen::VectorXd::Zero(model.n_junctions());
}

void ScheduleInput::set_speed(int link, StepSeries series) { speed_[link] = std::move(series); }
void ScheduleInput::set_open_fraction(int link, StepSeries series) { open_[link] = std::move(series); }
void ScheduleInput::set_setting(int link, StepSeries series) { setting_[link] = std::move(series); }
void ScheduleInput::set_junction_demand(int junction, StepSeries series) {
    demand_j_[junction] = std::move(series);
}
void ScheduleInput::set_tank_demand(int tank, StepSeries series) {
    demand_a_[tank] = std::move(series);
}

InputSample ScheduleInput::sample(double t) const {
    const auto& m = *model_;
    InputSample s;
    s.speed = Eigen::VectorXd::Ones(m.n_links());
    s.open_fraction = default_open_;
    s.setting = Eigen::VectorXd::Constant(m.n_links(), std::numeric_limits<double>::quiet_NaN());
    s.demand_junction = base_demand_;
    s.demand_tank = Eigen::VectorXd::Zero(m.n_tanks());
    for (const auto& [link, series] : speed_) s.speed(link) = series.at(t);
    for (const auto& [link, series] : open_) s.open_fraction(link) = series.at(t);
    for (const auto& [link, series] : setting_) s.setting(link) = series.at(t);
    for (const auto& [j, series] : demand_j_) s.demand_junction(j) = series.at(t);
    for (const auto& [a, series] : demand_a_) s.demand_tank(a) = series.at(t);
    return s;
}

std::vector<double> ScheduleInput::control_breakpoints() const {
    std::set<double> pts;
    auto collect = [&](const std::map<int, StepSeries>& channels) {
        for (const auto& [link, series] : channels) {
            const auto& ts = series.times();
            const auto& vs = series.values();
            for (size_t i = 1; i < ts.size(); ++i)
                if (vs[i] != vs[i - 1]) pts.insert(ts[i]);
        }
    };
    collect(speed_);
    collect(open_);
    collect(setting_);
    return {pts.begin(), pts.end()};
}

double ScheduleInput::min_breakpoint_gap() const {
    auto pts = control_breakpoints();
    double gap = std::numeric_limits<double>::infinity();
    for (size_t i = 1; i < pts.size(); ++i) gap = std::min(gap, pts[i] - pts[i - 1]);
    return gap;
}

ScheduleInput ScheduleInput::from_network(const NetworkDescription& net,
                                          const HydraulicModel& model, double horizon) {
    ScheduleInput sched(model);

    // Pattern-modulated junction demands become explicit breakpoint series.
    for (int j = 0; j < model.n_junctions(); ++j) {
        const Junction& junc = net.junctions[static_cast<size_t>(j)];
        if (!junc.pattern_id) {
            sched.set_junction_demand(j, StepSeries::constant(junc.base_demand));
            continue;
        }
        auto it = net.patterns.find(*junc.pattern_id);
        if (it == net.patterns.end())
            raise(ErrorCode::UnresolvedReference,
                  "junction '" + junc.id + "' uses undeclared pattern '" + *junc.pattern_id + "'");
        const Pattern& pat = it->second;
        if (pat.multipliers.empty()) {
            sched.set_junction_demand(j, StepSeries::constant(junc.base_demand));
            continue;
        }
        std::vector<double> times, values;
        int slots = std::max<int>(1, static_cast<int>(std::ceil(horizon / pat.period)) + 1);
        for (int k = 0; k < slots; ++k) {
            times.push_back(k * pat.period);
            values.push_back(junc.base_demand *
                             pat.multipliers[static_cast<size_t>(k) % pat.multipliers.size()]);
        }
        sched.set_junction_demand(j, StepSeries(std::move(times), std::move(values)));
    }

    // Initial pump speeds from the network description.
    for (int i = 0; i < model.n_pumps(); ++i) {
        const Pump& pump = net.pumps[static_cast<size_t>(i)];
        if (pump.speed != 1.0)
            sched.set_speed(model.n_pipes() + i, StepSeries::constant(pump.speed));
    }

    // Time-indexed control entries; later entries on the same channel append
    // breakpoints in time order.
    struct ChannelEdit {
        std::vector<std::pair<double, double>> points;
    };
    std::map<std::pair<int, int>, ChannelEdit> edits;  // (link, attribute) -> points
    for (const auto& c : net.controls) {
        int link = model.link_index(c.link_id);
        edits[{link, static_cast<int>(c.attribute)}].points.push_back({c.time, c.value});
    }
    for (auto& [key, edit] : edits) {
        auto [link, attr_i] = key;
        auto attr = static_cast<ControlAttribute>(attr_i);
        std::sort(edit.points.begin(), edit.points.end());
        std::vector<double> times{0.0};
        std::vector<double> values;
        double initial;
        if (attr == ControlAttribute::Speed) {
            initial = net.pumps[static_cast<size_t>(link - model.n_pipes())].speed;
        } else if (attr == ControlAttribute::Status) {
            initial = model.initial_open_fraction()(link);
        } else {
            initial = std::numeric_limits<double>::quiet_NaN();
            if (model.link_class(link) == LinkClass::Valve)
                initial = model.valves()[static_cast<size_t>(link - model.n_pipes() -
                                                             model.n_pumps())].setting;
        }
        values.push_back(initial);
        for (const auto& [t, v] : edit.points) {
            if (t <= times.back()) {
                values.back() = v;
                continue;
            }
            times.push_back(t);
            values.push_back(v);
        }
        StepSeries series(std::move(times), std::move(values));
        if (attr == ControlAttribute::Speed) sched.set_speed(link, std::move(series));
        else if (attr == ControlAttribute::Status) sched.set_open_fraction(link, std::move(series));
        else sched.set_setting(link, std::move(series));
    }
    return sched;
}

}  // namespace hydronet
