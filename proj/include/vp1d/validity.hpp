#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

namespace vp1d {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x) const { return x >= lo && x <= hi; }
    double half_width() const { return 0.5 * (hi - lo); }
};

/// Tracks the cumulative maximum speed P^n = Σ S^{k+1/2} and the shrinking
/// interval [-L + P·dt, L - P·dt] on which the truncated run is provably
/// unaffected by particles that began outside [-L, L]. An empty interval is
/// a value (exhaustion), not an error.
class ValidityTracker {
public:
    ValidityTracker(double initial_half_length, double dt)
        : initial_half_length_(initial_half_length), dt_(dt) {
        if (!(initial_half_length > 0.0) || !(dt > 0.0))
            throw std::invalid_argument("ValidityTracker: L and dt must be positive");
    }

    void record_step(double max_speed) {
        if (max_speed < 0.0)
            throw std::invalid_argument("record_step: speed must be nonnegative");
        speed_history_.push_back(max_speed);
        cumulative_ += max_speed;
    }

    double cumulative() const { return cumulative_; }
    const std::vector<double>& speed_history() const { return speed_history_; }
    double initial_half_length() const { return initial_half_length_; }
    double dt() const { return dt_; }

    double half_width() const { return initial_half_length_ - cumulative_ * dt_; }
    bool exhausted() const { return half_width() <= 0.0; }

    std::optional<Interval> valid_interval() const {
        const double w = half_width();
        if (w <= 0.0)
            return std::nullopt;
        return Interval{-w, w};
    }

    /// Earliest recorded time at which the valid half-width drops below
    /// `inner_half_width`; nullopt while that has not happened yet.
    std::optional<double> validity_time(double inner_half_width) const {
        if (!(inner_half_width > 0.0) || inner_half_width > initial_half_length_)
            throw std::invalid_argument("validity_time: need 0 < I <= L");
        double partial = 0.0;
        for (std::size_t k = 0; k < speed_history_.size(); ++k) {
            partial += speed_history_[k];
            if (initial_half_length_ - partial * dt_ < inner_half_width)
                return static_cast<double>(k) * dt_;
        }
        return std::nullopt;
    }

private:
    double initial_half_length_;
    double dt_;
    double cumulative_ = 0.0;
    std::vector<double> speed_history_;
};

} // namespace vp1d
