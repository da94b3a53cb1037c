#pragma once

#include <Eigen/Core>
#include <map>
#include <memory>
#include <vector>

#include "hydronet/hydraulic_model.hpp"

namespace hydronet {

/// Piecewise-constant breakpoint series: value(t) is the entry of the last
/// breakpoint at or before t. Breakpoint times must be strictly increasing.
class StepSeries {
public:
    StepSeries() = default;
    StepSeries(std::vector<double> times, std::vector<double> values);
    static StepSeries constant(double value) { return StepSeries({0.0}, {value}); }

    double at(double t) const;
    /// Values on both sides of the k-th transition plus its time.
    int segments() const { return static_cast<int>(times_.size()); }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> times_{0.0};
    std::vector<double> values_{0.0};
};

/// All exogenous inputs evaluated at one instant, sized for a model.
struct InputSample {
    Eigen::VectorXd speed;          // n_links; meaningful on pump columns
    Eigen::VectorXd open_fraction;  // n_links, in [0, 1]
    Eigen::VectorXd setting;        // n_links; NaN = model default
    Eigen::VectorXd demand_junction;  // n_J, positive = withdrawal
    Eigen::VectorXd demand_tank;      // n_A

    LinkControl link_control(int link) const {
        return {speed(link), open_fraction(link), setting(link)};
    }
};

/// Piecewise-constant control and demand schedule over the simulation horizon.
/// Channels without an explicit series fall back to the model defaults
/// (speed 1, initial open fraction, parsed setting, constant base demand).
class ScheduleInput {
public:
    explicit ScheduleInput(const HydraulicModel& model);

    void set_speed(int link, StepSeries series);
    void set_open_fraction(int link, StepSeries series);
    void set_setting(int link, StepSeries series);
    void set_junction_demand(int junction, StepSeries series);
    void set_tank_demand(int tank, StepSeries series);

    InputSample sample(double t) const;

    /// Sorted distinct times at which any control channel switches.
    std::vector<double> control_breakpoints() const;
    /// Smallest gap between consecutive control breakpoints (inf if < 2).
    double min_breakpoint_gap() const;

    const HydraulicModel& model() const { return *model_; }

    /// Builds the schedule an INP file describes: base demands modulated by
    /// their patterns, plus time-indexed [CONTROLS] entries.
    static ScheduleInput from_network(const NetworkDescription& net, const HydraulicModel& model,
                                      double horizon);

    // Exposed for the smoothing evaluator.
    const std::map<int, StepSeries>& speed_series() const { return speed_; }
    const std::map<int, StepSeries>& open_series() const { return open_; }
    const std::map<int, StepSeries>& setting_series() const { return setting_; }

private:
    const HydraulicModel* model_;
    std::map<int, StepSeries> speed_, open_, setting_;
    std::map<int, StepSeries> demand_j_, demand_a_;
    Eigen::VectorXd default_open_;
    Eigen::VectorXd base_demand_;
};

/// Common interface for hard and smoothed input evaluation.
class InputEvaluator {
public:
    virtual ~InputEvaluator() = default;
    virtual InputSample sample(double t) const = 0;
    virtual std::vector<double> breakpoints() const = 0;
};

class HardScheduleEvaluator final : public InputEvaluator {
public:
    explicit HardScheduleEvaluator(const ScheduleInput& schedule) : schedule_(&schedule) {}
    InputSample sample(double t) const override { return schedule_->sample(t); }
    std::vector<double> breakpoints() const override { return schedule_->control_breakpoints(); }

private:
    const ScheduleInput* schedule_;
};

}  // namespace hydronet
