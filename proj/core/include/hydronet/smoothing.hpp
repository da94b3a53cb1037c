#pragma once

#include <vector>

#include "hydronet/schedule.hpp"

namespace hydronet {

/// Quintic smoothstep chi(a) = 10 a^3 - 15 a^4 + 6 a^5 on [0, 1]: the unique
/// quintic with chi(0)=0, chi(1)=1 and zero first and second derivatives at
/// both endpoints. Out-of-range arguments are rejected.
double smoothstep(double alpha);
double smoothstep_deriv(double alpha);
double smoothstep_second_deriv(double alpha);

/// Schedule wrapper replacing every hard control transition at t_k by the
/// quintic blend (1 - chi(a)) u_k + chi(a) u_{k+1} over [t_k, t_k + tau_s].
/// Demands are left piecewise constant. Construction fails with WindowTooWide
/// when tau_s is not strictly below every inter-switch gap.
class SmoothedSchedule final : public InputEvaluator {
public:
    SmoothedSchedule(const ScheduleInput& base, double tau_s);

    InputSample sample(double t) const override;
    std::vector<double> breakpoints() const override { return {}; }  // no hard switches remain

    double tau_s() const { return tau_s_; }
    const ScheduleInput& base() const { return *base_; }

    /// Smoothed scalar evaluation of one step series (exposed for tests).
    static double smooth_series_at(const StepSeries& series, double t, double tau_s);

private:
    const ScheduleInput* base_;
    double tau_s_;
};

/// Factory matching the operation naming: validates the window invariant and
/// wraps the schedule.
SmoothedSchedule smooth_controls(const ScheduleInput& base, double tau_s);

struct ConvergenceRow {
    double tau_s;
    double sup_error;  // sup over the compact interval of the state mismatch, inf-norm
};

struct ConvergenceTable {
    std::vector<ConvergenceRow> rows;
    double interval_start = 0.0;
    double interval_end = 0.0;
    std::string to_csv() const;  // tau_s,sup_error,interval_start,interval_end
};

struct SimulateOptions;  // defined in dae.hpp

/// Integrates the hard-switch reference and one smoothed run per tau value,
/// then reports the sup-norm mismatch over a compact interval that must lie
/// strictly inside one inter-switch interval (positive distance from every
/// switching window). tau = 0 entries reproduce the hard schedule exactly.
ConvergenceTable convergence_sweep(const HydraulicModel& model, const ScheduleInput& schedule,
                                   const std::vector<double>& tau_list, double interval_start,
                                   double interval_end, double horizon,
                                   const SimulateOptions& options);

}  // namespace hydronet
