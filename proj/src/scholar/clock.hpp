#pragma once

#include "scholar/timestamp.hpp"

#include <chrono>

namespace scholar {

/// Time source for fetching and rendering. Wall time stamps snapshots;
/// the monotonic reading drives request pacing.
class Clock {
public:
    virtual ~Clock() = default;

    virtual Timestamp now() = 0;
    virtual std::chrono::milliseconds monotonic() = 0;
    virtual void sleep_for(std::chrono::milliseconds duration) = 0;
};

class SystemClock final : public Clock {
public:
    Timestamp now() override;
    std::chrono::milliseconds monotonic() override;
    void sleep_for(std::chrono::milliseconds duration) override;
};

/// Deterministic clock: time only moves through sleep_for() or advance().
class ManualClock final : public Clock {
public:
    explicit ManualClock(Timestamp start) : start_(start) {}

    Timestamp now() override;
    std::chrono::milliseconds monotonic() override { return elapsed_; }
    void sleep_for(std::chrono::milliseconds duration) override;

    /// Moves time forward without counting it as sleep (e.g. simulated
    /// request latency inside a stub transport).
    void advance(std::chrono::milliseconds duration) { elapsed_ += duration; }
    std::chrono::milliseconds total_slept() const { return slept_; }

private:
    Timestamp start_;
    std::chrono::milliseconds elapsed_{0};
    std::chrono::milliseconds slept_{0};
};

} // namespace scholar
