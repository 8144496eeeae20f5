#pragma once

// Reference values computed independently by tests/oracles/oracle.py
// (numpy / scipy) and frozen here.

namespace oracle {

inline constexpr double kAtiyahFourPoints = 1.2185051565785205;
inline constexpr double kAtiyahSixPoints = 3.3394638398441026;
inline constexpr double kThomson5 = 6.474691494688163;
inline constexpr double kThomson6 = 9.985281374238573;
inline constexpr double kCentral2Radius = 0.6299605312420425;
inline constexpr double kMonopole2Separation = 2.0;
inline constexpr double kCentral13 = 53.31157652757317;
inline constexpr double kLennardJones13 = -44.326801419534014;
inline constexpr double kIcosahedronEdge = 1.0514622242382672;
inline constexpr int kOrderOh = 48;
inline constexpr int kOrderY = 60;
inline constexpr double kTammes6 = 1.414213558077431;

} // namespace oracle
