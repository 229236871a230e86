#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tubealg/gvec.hpp"
#include "tubealg/states.hpp"

namespace tubealg {

inline constexpr int schema_version = 1;

struct Check {
    Check() = default;
    explicit Check(std::string n) : name(std::move(n)) {}

    std::string name;
    nlohmann::json inputs = nlohmann::json::object();
    long long cases = 0;
    long long failed = 0;
    std::vector<nlohmann::json> failures;  // first few, with their inputs
    nlohmann::json measured = nlohmann::json::object();

    void expect(bool ok, const nlohmann::json& where);
    bool passed() const { return cases > 0 && failed == 0; }
};
nlohmann::json to_json(const Check& c);

Check check_catalan(int max_points);
Check check_jones_wenzl(const QParam& P, int kmax);
Check check_quantum_identity(int kmax);
Check check_b_recursion(const QParam& P, int kmax);
Check check_commutativity(const QParam& P, int kmax, int max_winding);
Check check_characters(const QParam& P, int kmax, int samples = 100);
Check check_degeneracy(const QParam& P, int kmax);
// at_step = 0 asks only for the last step of the approach to be within tolerance
Check check_gluing(const QParam& P, int kmax, int at_step = 0, double tol = 1e-6);
Check check_spectrum(const QParam& P, int kmax, int resolution = 32);
Check check_gvec(const std::vector<std::string>& groups);
Check check_states(const QParam& P, double tol = 1e-6);

struct VerifyReport {
    std::string profile;
    std::string q;
    int kmax = 0;
    std::vector<Check> checks;
    bool passed() const;
};
VerifyReport verify_all(const std::string& profile, const QParam& P, int jobs = 1);
nlohmann::json to_json(const VerifyReport& r);

}  // namespace tubealg
