#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tubealg/lowweight.hpp"

namespace tubealg {

// weight m with t in [-delta, delta] for m = 0, omega on the unit circle for m > 0
struct CharacterPoint {
    int m = 0;
    cplx param;
};

bool admissible(int k, const CharacterPoint& p, const QParam& P);
bool same_point(const CharacterPoint& a, const CharacterPoint& b, double tol = 1e-12);
std::string point_str(const CharacterPoint& p);

// character of weight m on x^k_l as a Laurent polynomial, cached
Scalar char_poly(int k, int m, const CornerLabel& l, const QParam& P);
cplx char_numeric(int k, const CharacterPoint& p, const CornerElement& x, const QParam& P);
// all ranks, |winding| <= max_winding
std::vector<CornerLabel> spectrum_labels(int k, int max_winding = 3);

struct Separation {
    CharacterPoint a, b;
    bool identical = false;
    std::optional<CornerLabel> witness;
    double gap = 0;
    bool counterexample() const { return !identical && !witness; }
};
std::vector<Separation> separation_check(int k, const std::vector<std::pair<CharacterPoint, CharacterPoint>>& pairs,
                                         const std::vector<CornerLabel>& labels, const QParam& P, double tol = 1e-6);

// sup over labels of |chi_{approach[n]} - chi_target|, one entry per step
std::vector<double> gluing_limit_check(int k, const std::vector<CharacterPoint>& approach, const CharacterPoint& target,
                                       const std::vector<CornerLabel>& labels, const QParam& P);
// 1 - 2^{-n} steps towards p from inside its component, n = 1..steps
std::vector<CharacterPoint> approach_sequence(const CharacterPoint& p, const QParam& P, int steps = 30);

// zeros of B^k_{m,m} in the admissible region of weight m
std::vector<cplx> removed_points(int k, int m, const QParam& P);
// the character at a point read back as a point: weight = lowest rank it does not kill
std::optional<CharacterPoint> identify_character(int k, const CharacterPoint& p, const QParam& P, double tol = 1e-9);

struct Component {
    int weight = 0;
    bool circle = false;
    std::vector<cplx> removed;
};

struct Gluing {
    CharacterPoint source, target;
    std::vector<double> deviations;
    bool confirmed = false;
};

struct SpectrumReport {
    int k = 0;
    std::string q;
    double delta = 0;
    std::vector<Component> components;
    std::vector<Gluing> gluings;
    std::vector<CharacterPoint> unresolved;
    int separation_pairs = 0;
    std::vector<Separation> separation_failures;
};

SpectrumReport spectrum_report(int k, const QParam& P, int resolution = 8);
std::vector<CharacterPoint> sample_points(const SpectrumReport& r, int resolution);
nlohmann::json to_json(const SpectrumReport& r);
// columns weight, parameter, basis label, re, im
std::string spectrum_csv(const SpectrumReport& r, int resolution, const QParam& P);

}  // namespace tubealg
