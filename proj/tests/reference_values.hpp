#pragma once

// Frozen high-precision reference values used as independent oracles.
// Airy rows were produced with 25-digit arbitrary-precision evaluation of
// Ai, Ai', Bi, Bi' and rounded to double.

#include <array>

namespace refvals {

struct AiryRow {
    double z, ai, ai_prime, bi, bi_prime;
};

inline constexpr std::array<AiryRow, 26> airy_table{{
    {-5.0, 0.35076100902411432, 0.327192818554443137, -0.138369134901600577, 0.778411773001899246},
    {-2.0, 0.227407428201685576, 0.618259020741691041, -0.412302587956398488, 0.278795166921169523},
    {-1.0, 0.535560883292352119, -0.0101605671166452094, 0.103997389496944612, 0.592375626422792351},
    {-0.5, 0.475728091610539589, -0.204081670339547386, 0.38035265975105385, 0.505933713623847167},
    {0.5, 0.23169360648083349, -0.224910532664683893, 0.854277043103155493, 0.544572564140592302},
    {1.0, 0.135292416312881416, -0.159147441296793213, 1.20742359495287126, 0.932435933392775633},
    {2.0, 0.0349241304232743791, -0.0530903844336536317, 3.29809499997821471, 4.10068204993288989},
    {3.0, 0.00659113935746071914, -0.0119129767059513185, 14.037328963730232, 22.9222149663821702},
    {4.0, 0.000951563851204801874, -0.0019586409502041789, 83.8470714084681399, 161.926683504613402},
    {4.4, 0.000409973586386962156, -0.000881892086491768072, 185.427548398557588, 377.5433437007779},
    {4.5, 0.000330250323514308984, -0.000717866567557508889, 227.588081835599718, 469.135077327966398},
    {4.6, 0.000265432123924450243, -0.000582914177810333171, 280.036398801291454, 584.227322325565711},
    {5.0, 0.000108344428136074417, -0.000247413890868462476, 657.792044171171182, 1435.81908021798252},
    {6.0, 9.94769436025288957e-6, -2.47652003970349548e-5, 6536.44610480986345, 15725.6026219304768},
    {7.0, 7.49212886399716708e-7, -2.00815089473879199e-6, 80327.790709430247, 209552.67087397132},
    {8.0, 4.69220761609923163e-8, -1.34143929790678657e-7, 1199586.00412445993, 3354342.31274453888},
    {9.0, 2.47116843087248984e-9, -7.48064138965894641e-9, 21472868.8914353491, 63807489.7809082139},
    {9.4, 7.2674117707792015e-10, -2.24707555705066912e-9, 71442803.588713037, 217095870.563978843},
    {9.5, 5.33026370461749163e-10, -1.65663945937406663e-9, 96892265.5804510928, 296034763.868005039},
    {9.6, 3.90323353041513515e-10, -1.21933377816811229e-9, 131624577.044260558, 404320141.561829413},
    {10.0, 1.10475325528986859e-10, -3.52063367673892364e-10, 455641153.548225141, 1429236134.48286578},
    {12.0, 1.39318468887536084e-13, -4.85473655498530846e-13, 329807225829.074176, 1135507502443.37074},
    {15.0, 2.1649625207379923e-18, -8.42056795401777277e-18, 1.89820995674935897e16, 7.31974920340701050e16},
    {20.0, 1.69167286867054031e-27, -7.58639162574835496e-27, 2.10376504965110381e25, 9.38183933613396435e25},
    {25.0, 8.11602682469138668e-38, -4.06608933724328101e-37, 3.92203077804138177e35, 1.9570735083233309e36},
    {30.0, 3.20821759155049557e-49, -1.75987658143272598e-48, 9.05728851215130695e46, 4.95330451289129904e47},
}};

// Gamma(1/3), Gamma(2/3) to 19 significant digits.
inline constexpr double gamma_one_third = 2.678938534707747633;
inline constexpr double gamma_two_thirds = 1.354117939426400417;

// First negative zero of Ai'.
inline constexpr double ai_prime_first_zero = -1.0187929716474710890;

// -6^(1/3) Gamma(2/3) / Gamma(1/3): the nu-independent limit of
// eps^(2/3) * log_derivative_ratio as eps -> 0.
inline constexpr double up_limit_const = -0.9184964720079211798;

// pi Gamma(1/3) / (2 * 6^(1/3) Gamma(2/3)): the delta_ratio limit constant.
inline constexpr double delta_ratio_const = 1.7101822104563837220;

// 2^(1/3) Ai'(t)/Ai(t) at t = 2^(1/3)/100, i.e. eps = 1e-6, nu = 2.
inline constexpr double ldr_eps1em6_nu2_scaled = -0.9269104162462970200;

} // namespace refvals
