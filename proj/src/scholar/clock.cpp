#include "scholar/clock.hpp"

#include <thread>

namespace scholar {

Timestamp SystemClock::now()
{
    return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
}

std::chrono::milliseconds SystemClock::monotonic()
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now().time_since_epoch());
}

void SystemClock::sleep_for(std::chrono::milliseconds duration)
{
    if (duration.count() > 0)
        std::this_thread::sleep_for(duration);
}

Timestamp ManualClock::now()
{
    return start_ + std::chrono::floor<std::chrono::seconds>(elapsed_);
}

void ManualClock::sleep_for(std::chrono::milliseconds duration)
{
    if (duration.count() <= 0)
        return;
    elapsed_ += duration;
    slept_ += duration;
}

} // namespace scholar
