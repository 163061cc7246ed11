#pragma once

// Reference values for the instance a = 1, x0 = 3, y0 = 1, z0 = 1
// (A = 7, B = 2), frozen at quad precision from an independent
// arbitrary-precision evaluation of the closed-form expressions.

#include <complex>

namespace refvals {

using C = std::complex<double>;

inline constexpr double kX1 = 3.135032236635883477595;
inline constexpr double kX2 = 2.042442869520175808434;
inline constexpr double kModulusK = 1.534942437519628635575;
inline constexpr double kKsq = 2.356048286498699057718;
inline constexpr double kLambda1 = -0.5462946835578538345802;
inline constexpr double kLambda2 = 2.588737553078029643015;
inline constexpr double kK1 = -0.2110274496185621787595;
inline constexpr double kK1sq = 0.04453258449251479864562;
inline constexpr double kLhat1 = -0.3819660112501051517954;
inline constexpr double kLhat2 = -2.618033988749894848205;

inline const C kCompleteK{1.169333473644487010277, -1.253469348658507133521};
inline constexpr double kCompleteKprime = 1.253469348658507133521;
inline constexpr double kComplete_K1 = 1.588736323022268660604;
inline constexpr double kComplete_K1prime = 2.964193045953650330889;
inline constexpr double kCompleteK_quarter = 1.169333473644487010277;
inline constexpr double kCompleteK_m025 = 1.685750354812596042871;

inline const C kU0{1.169333473644487010277, -0.9938121270761062224066};
inline const C kWDyn{0.0, 0.3123475237772121310482};
inline const C kVStar{2.519256535846871631509, 2.964193045953650330889};
inline constexpr double kXi0 = 7.766212659234088929;
inline constexpr double kMuXi = 10.0;

inline const C kT00{1.100290984522156836663, 0.5725171024828687453734};
inline const C kTNearest{-0.127130714624787181187, 0.5725171024828687453734};
inline constexpr double kStepRe = 1.22742169914694401785;
inline constexpr double kStepIm = 1.145034204965737490747;
inline constexpr int kCountInW = 42;

inline const C kXTaylor01{2.75426801843935335578, 0.0};
inline const C kXTrue01{2.754268018464995371541, 0.0};

}  // namespace refvals
