#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

// Assertion kit for the test executables: every check prints on failure,
// done() prints one summary line and yields the process exit code.
namespace testkit {

inline int failures = 0;
inline int checks = 0;

inline bool report(bool ok, const char* file, int line, const std::string& what) {
    ++checks;
    if (!ok) {
        ++failures;
        std::printf("[FAIL] %s:%d  %s\n", file, line, what.c_str());
        std::fflush(stdout);
    }
    return ok;
}

inline bool report_near(double a, double b, double tol, const char* file, int line,
                        const char* expr) {
    bool ok = std::abs(a - b) <= tol;
    if (!ok) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%s  (%.17g vs %.17g, tol %.3g)", expr, a, b, tol);
        return report(false, file, line, buf);
    }
    return report(true, file, line, expr);
}

inline int done(const char* name) {
    if (failures) {
        std::printf("[FAIL] %s: %d of %d checks failed\n", name, failures, checks);
        return 1;
    }
    std::printf("[PASS] %s: %d checks\n", name, checks);
    return 0;
}

}  // namespace testkit

#define CHECK(cond) testkit::report((cond), __FILE__, __LINE__, #cond)
#define CHECK_NEAR(a, b, tol) \
    testkit::report_near((a), (b), (tol), __FILE__, __LINE__, #a " ~ " #b)
#define REQUIRE(cond)                                                   \
    do {                                                                \
        if (!testkit::report((cond), __FILE__, __LINE__, #cond)) {      \
            std::printf("[FAIL] fatal, aborting this test binary\n");   \
            std::exit(1);                                               \
        }                                                               \
    } while (0)

#define CHECK_THROWS(kind, expr)                                            \
    do {                                                                    \
        bool threw_ = false;                                                \
        try {                                                               \
            (void)(expr);                                                   \
        } catch (const kind&) {                                             \
            threw_ = true;                                                  \
        } catch (...) {                                                     \
        }                                                                   \
        testkit::report(threw_, __FILE__, __LINE__, "throws " #kind ": " #expr); \
    } while (0)
