#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace pwtest {

enum class Verdict { Accept, Reject };

/// Events on which a tester may answer arbitrarily. Testers answer Accept
/// with the event recorded; harnesses count these trials separately.
enum class FailureEvent { NeighborPoolExhausted, InsufficientPairs };

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(FailureEvent e) noexcept;

struct TesterReport {
    std::string tester;
    Verdict verdict = Verdict::Accept;
    /// Unlabeled points drawn.
    std::size_t samples_used = 0;
    /// Distinct sample points whose label was requested (the charged count).
    std::size_t queries_used = 0;
    /// Label requests counted once per use, including repeats.
    std::size_t query_calls = 0;
    double statistic = 0.0;
    double threshold = 0.0;
    std::optional<FailureEvent> failure;
};

/// Accept iff statistic <= threshold. Failure events force Accept.
Verdict decide(double statistic, double threshold, std::optional<FailureEvent> failure) noexcept;

} // namespace pwtest
