#pragma once

#include <utility>
#include <vector>

#include "normfiber/norm.hpp"

namespace normfiber::testing {

inline NormExprPtr cross_l1_l2l2() {
    return NormExpr::cross(NormExpr::lp(1.0, 2), {NormExpr::lp(2.0, 2), NormExpr::lp(2.0, 2)});
}

inline NormExprPtr cross_l1_l3l3() {
    return NormExpr::cross(NormExpr::lp(1.0, 2), {NormExpr::lp(3.0, 2), NormExpr::lp(3.0, 2)});
}

// l_1^2(l_inf^2) = l_1^2(E_1(2)), the p = 1 exceptional space
inline NormExprPtr l1_of_linf() {
    return NormExpr::cross(NormExpr::lp(1.0, 2), {NormExpr::lp_inf(2), NormExpr::lp_inf(2)});
}

// l_3(l_3^3, E_3(2)) on R^5, the nested mixed example
inline NormExprPtr example4_p3() {
    return NormExpr::cross(NormExpr::lp(3.0, 2), {NormExpr::lp(3.0, 3), NormExpr::ep2(3.0)});
}

// l_p^2(E_p(2)) for the exceptional family
inline NormExprPtr lp2_of_ep2(double p) {
    return NormExpr::cross(NormExpr::lp(p, 2), {NormExpr::ep2(p), NormExpr::ep2(p)});
}
inline NormExprPtr lpinf_of_epinf() {
    return NormExpr::cross(NormExpr::lp_inf(2), {NormExpr::ep2_inf(), NormExpr::ep2_inf()});
}

// non-l_p outer over unequal factors (dim 5)
inline NormExprPtr cross_ep3_outer() {
    return NormExpr::cross(NormExpr::ep2(3.0), {NormExpr::lp(1.0, 3), NormExpr::lp(2.0, 2)});
}

/// The shared test corpus: named compositional norms with dim <= 8.
inline std::vector<std::pair<const char*, NormExprPtr>> corpus() {
    return {
        {"l1^4", NormExpr::lp(1.0, 4)},
        {"l1.5^3", NormExpr::lp(1.5, 3)},
        {"l2^4", NormExpr::lp(2.0, 4)},
        {"l3^4", NormExpr::lp(3.0, 4)},
        {"linf^3", NormExpr::lp_inf(3)},
        {"E1(2)", NormExpr::ep2(1.0)},
        {"E1.5(2)", NormExpr::ep2(1.5)},
        {"E3(2)", NormExpr::ep2(3.0)},
        {"Einf(2)", NormExpr::ep2_inf()},
        {"l1(l2^2,l2^2)", cross_l1_l2l2()},
        {"l1(l3^2,l3^2)", cross_l1_l3l3()},
        {"l1^2(linf^2)", l1_of_linf()},
        {"l3(l3^3,E3(2))", example4_p3()},
        {"E3(l1^3,l2^2)", cross_ep3_outer()},
    };
}

}  // namespace normfiber::testing
