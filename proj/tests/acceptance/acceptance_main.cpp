// Runs every acceptance criterion at full size and prints one verdict line
// per criterion, followed by the failing checks. Exit status 0 iff all pass.
//
//   wasep_acceptance [--quick] [--report FILE] [ID ...]

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "wasep/harness/verify.hpp"

int main(int argc, char** argv) {
    bool quick = false;
    std::string report_path;
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--quick") {
            quick = true;
        } else if (arg == "--report" && i + 1 < argc) {
            report_path = argv[++i];
        } else {
            const int id = std::atoi(arg.c_str());
            if (id < 1 || id > wasep::kCriterionCount) {
                std::cerr << "usage: wasep_acceptance [--quick] [--report FILE] [ID ...]\n";
                return 2;
            }
            ids.push_back(id);
        }
    }
    if (ids.empty())
        for (int id = 1; id <= wasep::kCriterionCount; ++id) ids.push_back(id);

    nlohmann::json all = nlohmann::json::array();
    bool ok = true;
    for (int id : ids) {
        const wasep::CriterionReport r = wasep::run_criterion(id, quick);
        ok = ok && r.pass();
        std::cout << wasep::summary_line(r) << std::endl;
        if (!r.error.empty()) std::cout << "    error: " << r.error << '\n';
        for (const auto& c : r.checks) {
            if (c.pass && c.gating) continue;
            std::cout << "    " << (c.gating ? "failed" : "info  ") << ": " << c.name << "  value " << c.value
                      << "  reference " << c.reference << "  tolerance " << c.tolerance;
            if (!c.note.empty()) std::cout << "  [" << c.note << "]";
            std::cout << '\n';
        }
        all.push_back(wasep::to_json(r));
    }
    if (!report_path.empty()) std::ofstream(report_path) << all.dump(2) << '\n';
    std::cout << (ok ? "all criteria pass" : "some criteria fail") << std::endl;
    return ok ? 0 : 1;
}
