// Acceptance runner for ctest: `acceptance [--quick] [criterion ...]`.
// Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "bbox/acceptance.hpp"

int main(int argc, char** argv)
{
    bool quick = false;
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--quick") {
            quick = true;
            continue;
        }
        char* end = nullptr;
        const long id = std::strtol(arg.c_str(), &end, 10);
        if (*end != '\0' || id < 1 || id > bbox::acceptance_criteria) {
            std::cerr << "usage: acceptance [--quick] [criterion 1.." << bbox::acceptance_criteria << " ...]\n";
            return 1;
        }
        ids.push_back(static_cast<int>(id));
    }
    if (ids.empty())
        for (int id = 1; id <= bbox::acceptance_criteria; ++id)
            ids.push_back(id);

    bool all = true;
    for (int id : ids) {
        const auto r = bbox::run_criterion(id, quick);
        std::cout << bbox::format_result(r) << std::endl;
        all = all && r.passed;
    }
    return all ? 0 : 2;
}
