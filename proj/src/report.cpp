#include "pwtest/report.hpp"

namespace pwtest {

std::string_view to_string(Verdict v) noexcept { return v == Verdict::Accept ? "accept" : "reject"; }

std::string_view to_string(FailureEvent e) noexcept {
    switch (e) {
    case FailureEvent::InsufficientPairs:
        return "insufficient-pairs";
    case FailureEvent::NeighborPoolExhausted:
        break;
    }
    return "neighbor-pool-exhausted";
}

Verdict decide(double statistic, double threshold, std::optional<FailureEvent> failure) noexcept {
    if (failure) {
        return Verdict::Accept;
    }
    return statistic <= threshold ? Verdict::Accept : Verdict::Reject;
}

} // namespace pwtest
