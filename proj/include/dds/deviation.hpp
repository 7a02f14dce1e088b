#ifndef DDS_DEVIATION_HPP
#define DDS_DEVIATION_HPP

#include <string>
#include <vector>

namespace dds {

/// One entry of the paper-deviation ledger: a printed formula checked against
/// the construction that generates it, with the measured gap.
struct DeviationEntry {
    std::string equation;     // e.g. "eq9"
    std::string description;  // what was compared
    std::string printed;      // the printed form / value, as text
    std::string computed;     // what the construction yields
    double magnitude = 0.0;   // max abs deviation observed (0 when consistent)
    bool consistent = false;
};

using DeviationLedger = std::vector<DeviationEntry>;

inline void add_deviation(DeviationLedger& led, std::string eq, std::string desc,
                          std::string printed, std::string computed, double mag) {
    led.push_back({std::move(eq), std::move(desc), std::move(printed), std::move(computed),
                   mag, mag <= 1e-10});
}

}  // namespace dds

#endif
