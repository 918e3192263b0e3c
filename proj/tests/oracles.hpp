#pragma once

// Values frozen from tests/oracles/frozen_values.py (mpmath / sympy, 40 digits).

namespace oracle {

inline constexpr double sqrt_7_over_pi = 1.4927053303604615657;
inline constexpr double sqrt_7_over_5pi = 0.66755811781245454356;
inline constexpr double row1_hprime_at_2 = -0.40556981681414771979;  // c1 = 7
inline constexpr double row1_rho_c1_0_r1 = -0.040314418041499361481;  // -5/(4 pi^3)

inline constexpr double row2_root_c1_0 = 1.1306920636323020531;
inline constexpr double row2_c1_for_r0_2 = 16.017762909582375615;
inline constexpr double row2_critical_lo = 1.7273790912166981897;  // pi - sqrt(2)
inline constexpr double row2_critical_hi = 4.5558062159628882873;  // pi + sqrt(2)

inline constexpr double cubic5[3] = {1.14623226047798, -1.3516809218258, 0.205448661347824};
inline constexpr double cubic1_real = -0.836078655666974;
inline constexpr double cubic1_re = 0.418039327833487;
inline constexpr double cubic1_im = 0.453828990548897;
inline constexpr double cubic0_real = -0.682784063255296;
inline constexpr double cubic0_re = 0.341392031627648;
inline constexpr double cubic0_im = 0.591308344078247;
inline constexpr double sec33_critical = 2.7679052229660426286;  // (81 pi/12)^(1/3)

// constant density c = 1/(100 pi) at r = 1
inline constexpr double const_A = -4.3604093997779544046e-5;
inline constexpr double const_B = -0.054794520547945205479;
inline constexpr double const_C = -12.910654740779972213;
// row 1 at (c1, c2) = (7, 1), r = 3
inline constexpr double row1_A = 1.122490048937091974e-9;
inline constexpr double row1_B = 0.00043524519451884479145;
inline constexpr double row1_C = -37.717630946255246975;

// row 4, c1 = c2 = 1, r = 2: table integration constant and base point 1
inline constexpr double row4_M_table_2 = -0.020847665438657740331;
inline constexpr double row4_M_base1_2 = -0.020685582930052033426;

// constant-density interior pressure, c = 0.001, R = 5
inline constexpr double interior_p_1 = 6.3811682293947449337e-5;
inline constexpr double interior_p_2_5 = 4.9785473449565265486e-5;

inline constexpr double row7_lambda1_limit = 0.0016736004453349980142;  // 1/(36 pi (2 pi - 1))

}  // namespace oracle
