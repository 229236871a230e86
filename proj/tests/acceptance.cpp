#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "tubealg/verify.hpp"

using namespace tubealg;

namespace {

struct Outcome {
    bool passed = false;
    std::string summary;
    std::vector<std::string> notes;
};

Outcome from_checks(const std::vector<Check>& checks)
{
    Outcome o{true, ""};
    long long cases = 0, failed = 0;
    for (auto& c : checks) {
        o.passed = o.passed && c.passed();
        cases += c.cases;
        failed += c.failed;
        for (auto& f : c.failures) o.notes.push_back(c.name + " (q=" + c.inputs.value("q", std::string("-")) + "): " + f.dump());
    }
    o.summary = std::to_string(cases) + " cases, " + std::to_string(failed) + " failed";
    return o;
}

Outcome run_cli(const std::string& cli, const std::string& q)
{
    std::string cmd = cli + " --q " + q + " --jobs 4 --out /dev/null verify-all --profile full";
    auto t0 = std::chrono::steady_clock::now();
    int status = std::system(cmd.c_str());
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    Outcome o;
    o.passed = status == 0 && s < 900;
    char buf[128];
    std::snprintf(buf, sizeof buf, "q=%s exit %d in %.1f s", q.c_str(), status, s);
    o.summary = buf;
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    std::string cli = argc > 1 ? argv[1] : "tubealg";
    const QParam one(1), two(2);

    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Catalan dimensions", [] { return from_checks({check_catalan(16)}); }},
        {"Jones-Wenzl projectors",
         [&] { return from_checks({check_jones_wenzl(one, 6), check_jones_wenzl(two, 6)}); }},
        {"quantum integer identity", [] { return from_checks({check_quantum_identity(8)}); }},
        {"B recursion against the inner product",
         [&] { return from_checks({check_b_recursion(one, 6), check_b_recursion(two, 6)}); }},
        {"corner commutativity",
         [&] { return from_checks({check_commutativity(one, 3, 2), check_commutativity(two, 3, 2)}); }},
        {"character consistency",
         [&] { return from_checks({check_characters(one, 5), check_characters(two, 5)}); }},
        {"degeneracy loci", [&] { return from_checks({check_degeneracy(one, 6), check_degeneracy(two, 6)}); }},
        {"gluing limits", [&] { return from_checks({check_gluing(two, 4, 25), check_gluing(one, 4)}); }},
        {"spectrum structure", [&] { return from_checks({check_spectrum(one, 4), check_spectrum(two, 4)}); }},
        {"group tube algebras", [] { return from_checks({check_gvec({"trivial", "Z2", "Z6", "S3", "D4", "S4"})}); }},
        {"annular states",
         [&] {
             Check q1{"haagerup witness"};
             q1.inputs = {{"q", "1"}};
             auto w = haagerup_witness(one, 10, 12);
             q1.expect(w.passed(), to_json(w));
             return from_checks({check_states(two), q1});
         }},
        {"end-to-end verify-all",
         [&] {
             Outcome a = run_cli(cli, "1"), b = run_cli(cli, "2");
             return Outcome{a.passed && b.passed, a.summary + "; " + b.summary, {}};
         }},
    };

    int failed = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o = criteria[i].second();
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char time[32];
        std::snprintf(time, sizeof time, "%.2f s", s);
        std::cout << "criterion " << i + 1 << ": " << (o.passed ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
                  << o.summary << ", " << time << ")\n";
        for (auto& n : o.notes) std::cout << "    " << n << "\n";
        if (!o.passed) ++failed;
    }
    std::cout << failed << " of " << criteria.size() << " criteria failed\n";
    return failed ? 1 : 0;
}
