// Generated by tests/oracles/generate.py; do not edit.
#pragma once

namespace oracle {

// gamma = 0.2, lambda = 1.4
inline constexpr double EX1_GAMMA = 0.2;
inline constexpr double EX1_LAMBDA = 1.4;
inline constexpr double EX1_P0SQ = 0.0059440229244219617778;
inline constexpr double EX1_ALPHA_C = 1.7161475715626043132;
inline constexpr double EX1_ALPHA_S = 0.5699245172534297111;
inline constexpr double EX1_BETA_C = 0.036059353035850804818;
inline constexpr double EX1_C_HAT = 0.32057585138230768183;
inline constexpr double EX1_C_HAT_QUAD = 0.32057585138230768183;
inline constexpr double EX1_C_ZERO = 5.3981739938528592813;
inline constexpr double EX1_H0_NORM_SQ = 1.0;
inline constexpr double EX1_Z1 = -0.06229866291173711304;
inline constexpr double EX1_Z2 = -0.061006564617595812114;
inline constexpr double EX1_O1 = -19.313521080626466497;
inline constexpr double EX1_G2E4G = 0.089021637139698704183;
inline constexpr double EX1_H_TOP = 0.22140275816016983392;
inline constexpr double EX1_O1_SPECTRAL = -19.313521080645426;
inline constexpr double EX1_O2_SPECTRAL = 2876.5265633964727;

// gamma = 0.3, lambda = 1.15
inline constexpr double EX2_GAMMA = 0.3;
inline constexpr double EX2_LAMBDA = 1.15;
inline constexpr double EX2_P0SQ = 0.0079436675734531566555;
inline constexpr double EX2_ALPHA_C = 1.5089278341140255396;
inline constexpr double EX2_ALPHA_S = 0.65698688033004999364;
inline constexpr double EX2_BETA_C = 0.035212200530546463543;
inline constexpr double EX2_C_HAT = 0.42738179207572874763;
inline constexpr double EX2_C_HAT_QUAD = 0.42738179207572874763;
inline constexpr double EX2_C_ZERO = 6.14217149433241132;
inline constexpr double EX2_H0_NORM_SQ = 1.0;
inline constexpr double EX2_Z1 = -0.036111971778224332627;
inline constexpr double EX2_Z2 = -0.032877772032656109945;
inline constexpr double EX2_O1 = 2.0405385386658774429;
inline constexpr double EX2_G2E4G = 0.29881052304628927406;
inline constexpr double EX2_H_TOP = 0.34985880757600310398;
inline constexpr double EX2_O1_SPECTRAL = 2.0405385386529233;
inline constexpr double EX2_O2_SPECTRAL = 25.49133253699529;

}  // namespace oracle
