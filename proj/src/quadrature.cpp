#include "lfem/quadrature.hpp"

#include <cmath>

namespace lfem::quadrature {

namespace {

void add_orbit3(TriangleRule& rule, double a, double w) {
    const double b = 1.0 - 2.0 * a;
    rule.points.push_back({a, a, b});
    rule.points.push_back({a, b, a});
    rule.points.push_back({b, a, a});
    for (int i = 0; i < 3; ++i) rule.weights.push_back(w);
}

void add_orbit6(TriangleRule& rule, double a, double b, double w) {
    const double c = 1.0 - a - b;
    rule.points.push_back({a, b, c});
    rule.points.push_back({a, c, b});
    rule.points.push_back({b, a, c});
    rule.points.push_back({b, c, a});
    rule.points.push_back({c, a, b});
    rule.points.push_back({c, b, a});
    for (int i = 0; i < 6; ++i) rule.weights.push_back(w);
}

TriangleRule make_centroid() {
    TriangleRule r;
    r.degree = 1;
    r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    r.weights.push_back(1.0);
    return r;
}

// Dunavant (1985) rules.
TriangleRule make_degree4() {
    TriangleRule r;
    r.degree = 4;
    add_orbit3(r, 0.445948490915964886318329253883, 0.223381589678011465944691807856);
    add_orbit3(r, 0.091576213509770743459571463402, 0.109951743655321867388641525478);
    return r;
}

TriangleRule make_degree6() {
    TriangleRule r;
    r.degree = 6;
    add_orbit3(r, 0.249286745170910421291638553107, 0.116786275726379366030690271497);
    add_orbit3(r, 0.063089014491502228340331602870, 0.050844906370206816920936809107);
    add_orbit6(r, 0.053145049844816947353249671631, 0.310352451033784405416607733956,
               0.082851075618373575193553456421);
    return r;
}

LineRule make_gauss2() {
    LineRule r;
    r.degree = 3;
    const double d = 0.5 / std::sqrt(3.0);
    r.points = {0.5 - d, 0.5 + d};
    r.weights = {0.5, 0.5};
    return r;
}

}  // namespace

const TriangleRule& centroid_rule() {
    static const TriangleRule rule = make_centroid();
    return rule;
}

const TriangleRule& degree4_rule() {
    static const TriangleRule rule = make_degree4();
    return rule;
}

const TriangleRule& degree6_rule() {
    static const TriangleRule rule = make_degree6();
    return rule;
}

const LineRule& gauss2_line_rule() {
    static const LineRule rule = make_gauss2();
    return rule;
}

}  // namespace lfem::quadrature
