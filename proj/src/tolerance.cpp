#include "triconic/tolerance.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <string>

namespace triconic {

namespace {
std::atomic<double> g_tol{1e-9};
}

double default_tol() { return g_tol.load(std::memory_order_relaxed); }

void set_default_tol(double tol) { g_tol.store(tol, std::memory_order_relaxed); }

bool load_tol_from_env() {
    const char* s = std::getenv("TRICONIC_TOL");
    if (!s || !*s) return false;
    try {
        double v = std::stod(s);
        if (!(v > 0) || !std::isfinite(v)) return false;
        set_default_tol(v);
        return true;
    } catch (...) {
        return false;
    }
}

}  // namespace triconic
