#include <laplace/laplace.hpp>

#include <cstdio>
#include <exception>

int main()
{
    using namespace laplace;
    int failed = 0;
    try {
        for (const SuiteResult &r : run_suites("all")) {
            std::printf("%s criterion %2d %-22s checks=%ld failures=%ld time=%.2fs budget=%.0fs\n",
                        r.passed() ? "PASS" : "FAIL", r.criterion, r.name.c_str(), r.checks, r.failures,
                        r.seconds, r.budget);
            if (!r.passed()) {
                ++failed;
                if (!r.counterexample.empty()) {
                    std::printf("     counterexample: %s\n", r.counterexample.c_str());
                }
                if (!r.within_budget()) {
                    std::printf("     over budget\n");
                }
            }
        }
    } catch (const std::exception &e) {
        std::printf("FAIL acceptance aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%s: %d criteria failed\n", failed ? "FAIL" : "PASS", failed);
    return failed ? 1 : 0;
}
