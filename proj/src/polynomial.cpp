#include "hodgelab/polynomial.hpp"

#include <sstream>

namespace hodgelab {

std::string toString(const PolyCoeff& p) {
    if (p.isZero()) return "0";
    std::ostringstream os;
    bool first = true;
    int n = p.vars();
    for (const auto& [e, v] : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << toString(v) << ")";
        for (int i = 0; i < n; ++i) {
            if (e[i] > 0) {
                os << "*z" << (i + 1);
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        for (int i = 0; i < n; ++i) {
            if (e[n + i] > 0) {
                os << "*w" << (i + 1);
                if (e[n + i] > 1) os << "^" << e[n + i];
            }
        }
    }
    return os.str();
}

} // namespace hodgelab
