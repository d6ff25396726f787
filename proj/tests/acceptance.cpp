// Acceptance runner: one line per criterion, nonzero exit if any fails.

#include <cstdlib>
#include <iostream>
#include <string>

#include "feynid/acceptance.hpp"

int main(int argc, char **argv)
{
    const std::string preset = argc > 1 ? argv[1] : "desk";
    feynid::acceptance::Scale scale;
    try {
        scale = feynid::acceptance::scale_by_name(preset);
    } catch (const std::exception &e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    int failed = 0;
    feynid::acceptance::run_acceptance(scale, [&](const feynid::acceptance::CriterionResult &c) {
        failed += c.pass ? 0 : 1;
        std::cout << "criterion " << c.id << ": " << (c.pass ? "PASS" : "FAIL") << " - " << c.name << " [" << c.elapsed_ms << " ms] "
                  << c.detail << std::endl;
    });
    std::cout << (failed == 0 ? "all 13 criteria pass" : std::to_string(failed) + " criteria failed") << " (preset " << preset << ")" << std::endl;
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
