#include "rootdens/family.hpp"

#include "rootdens/errors.hpp"

#include <sstream>

namespace rootdens {

namespace {

std::vector<Int> surjectivity_coeffs(long r) {
    std::vector<Int> q(static_cast<std::size_t>(r) + 1);
    q.back() = 1;
    return q;
}

std::vector<Int> simultaneous_coeffs(long n) {
    // 1 - (1-x)^n: coefficient of x^k is (-1)^(k+1) C(n,k) for k >= 1.
    std::vector<Int> q(static_cast<std::size_t>(n) + 1);
    Int binom = 1;
    for (long k = 1; k <= n; ++k) {
        binom = binom * (n - k + 1) / k;
        q[static_cast<std::size_t>(k)] = (k % 2 == 1) ? binom : Int(-binom);
    }
    return q;
}

std::string render_q(const std::vector<Int>& q) {
    std::ostringstream os;
    os << "F[";
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (i)
            os << ",";
        os << q[i];
    }
    os << "]";
    return os.str();
}

} // namespace

Rat EulerFamily::q_at(const Rat& x) const {
    Rat v = 0;
    for (std::size_t i = q_coeffs.size(); i-- > 0;)
        v = v * x + q_coeffs[i];
    return v;
}

Rat EulerFamily::local_factor(const Int& p) const {
    if (p < 2)
        throw invalid_input_error("Euler factors are indexed by primes");
    Rat x = make_rational(1, p);
    return 1 - q_at(x) / (p - 1);
}

EulerFamily EulerFamily::surjectivity(long r) {
    if (r < 0)
        throw invalid_input_error("surjectivity family needs rank >= 0");
    EulerFamily f;
    f.q_coeffs = surjectivity_coeffs(r);
    f.name = "C_" + std::to_string(r);
    return f;
}

EulerFamily EulerFamily::simultaneous(long n) {
    if (n < 0)
        throw invalid_input_error("simultaneous family needs n >= 0");
    EulerFamily f;
    f.q_coeffs = simultaneous_coeffs(n);
    f.name = "D_" + std::to_string(n);
    return f;
}

EulerFamily EulerFamily::from_q(std::vector<Int> q) {
    while (!q.empty() && q.back() == 0)
        q.pop_back();
    if (q.empty())
        return simultaneous(0); // Q = 0: no conditions at odd primes
    long deg = static_cast<long>(q.size()) - 1;
    if (deg >= 0) {
        if (q == surjectivity_coeffs(deg)) {
            EulerFamily f = surjectivity(deg);
            return f;
        }
        if (q == simultaneous_coeffs(deg)) {
            EulerFamily f = simultaneous(deg);
            return f;
        }
    }
    EulerFamily f;
    f.q_coeffs = q;
    f.name = render_q(q);
    return f;
}

} // namespace rootdens
