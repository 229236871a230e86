#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tubealg/spectrum.hpp"

namespace tubealg {

enum class Provenance { trivial, character, box_product, explicit_values };
std::string provenance_str(Provenance p);

// a weight 0 functional, stored through the rule that produces phi(f_j)
class Weight0State {
  public:
    static Weight0State trivial(const QParam& P);
    static Weight0State from_t(const Rational& t, const QParam& P);
    // values[0] must be 1; phi(f_j) = 0 past the end
    static Weight0State explicit_values(std::vector<Rational> values, const QParam& P);
    static Weight0State box(const Weight0State& a, const Weight0State& b);

    Rational value(int j) const;
    // psi(f_j) = phi(f_j) / [j+1]
    Rational normalized(int j) const;
    std::vector<Rational> values(int horizon) const;

    Provenance provenance() const { return prov_; }
    const QParam& q() const { return P_; }
    std::optional<Rational> parameter() const;
    // only meaningful for characters: |t| <= delta
    bool admissible_flag() const;
    std::string str() const;

  private:
    explicit Weight0State(const QParam& P) : P_(P) {}
    QParam P_;
    Provenance prov_ = Provenance::trivial;
    Rational t_;
    std::vector<Rational> explicit_;
    std::shared_ptr<const Weight0State> a_, b_;
};

Weight0State trivial_state(const QParam& P);
Weight0State state_from_t(const Rational& t, const QParam& P);
Weight0State box_product(const Weight0State& a, const Weight0State& b);

// [phi(f_i f_j)]_{i,j <= depth}
RMatrix moment_matrix(const Weight0State& phi, int depth);
bool is_annular_state(const Weight0State& phi, int depth = 3, double tol = 1e-9);

// a linear functional on the weight k corner
struct CornerFunctional {
    int k = 0;
    std::function<cplx(const CornerElement&)> eval;
    cplx operator()(const CornerElement& x) const { return eval(x); }
};
CornerFunctional character_functional(int k, const CharacterPoint& p, const QParam& P);
// the grade j parts of x, each again an element of the corner
std::map<int, CornerElement> grade_parts(const CornerElement& x, const QParam& P);
CornerFunctional box_corner(const CornerFunctional& phi, const Weight0State& psi);

// weight 0 profile |phi(f_j)/[j+1]|, j <= horizon
std::vector<Rational> decay_profile(const Weight0State& phi, int horizon);
// grade m profile of a corner functional: largest |phi(b_m)| / |b_m| over the basis, the norm taken as
// the largest character value over the sample
double corner_profile(const CornerFunctional& phi, int m, const std::vector<CornerElement>& basis,
                      const std::vector<CharacterPoint>& sample, const QParam& P);
std::vector<CharacterPoint> character_sample(int k, const QParam& P, int resolution = 6);

// multiplier for the weights psi = phi/d on alpha (x) beta strands
TLElement cp_channel(int alpha, int beta, const TLElement& x, int k, const QParam& P);
TLElement cp_apply(const Weight0State& phi, int alpha, int beta, const TLElement& x);
// nested caps over nested cups on 2 alpha strands
TLElement rbar_rbar_star(int alpha);
double cp_positivity_check(const Weight0State& phi, int alpha);

enum class DecayClass { c_c, c_0, bounded };
std::string decay_str(DecayClass c);
DecayClass decay_classify(const Weight0State& phi, int horizon, double eps = 1e-3);

struct WitnessStep {
    int n = 0;
    Rational t;
    bool annular = false;
    DecayClass decay = DecayClass::bounded;
    double deviation = 0;  // max_j |phi_n(f_j)/[j+1] - 1|
    bool passed() const { return annular && decay != DecayClass::bounded; }
};
struct WitnessReport {
    std::string q;
    int steps = 0;
    int horizon = 0;
    std::vector<WitnessStep> sequence;
    bool monotone = true;
    bool passed() const;
};
WitnessReport haagerup_witness(const QParam& P, int steps, int horizon, int jobs = 1);
nlohmann::json to_json(const WitnessReport& r);

// [t+1]^2 omega(y y#) chi(x# x) - chi(x# y# y x) for y of pure grade t
double grade_bound_margin(int k, const CharacterPoint& chi, const CornerElement& x, const CornerElement& y, int t,
                        const QParam& P);

}  // namespace tubealg
