#include "qhm/norm.hpp"

#include "qhm/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qhm {

NormSpec NormSpec::p_norm(double p) {
    if (std::isnan(p) || p < 1.0) {
        throw Error(ErrorCode::invalid_input, "p-norm exponent must satisfy p >= 1");
    }
    return NormSpec(Kind::p_norm, p);
}

bool NormSpec::is_euclidean() const noexcept { return kind_ == Kind::euclidean || p_ == 2.0; }

double NormSpec::operator()(std::span<const double> v) const {
    if (v.empty()) throw Error(ErrorCode::invalid_input, "norm of an empty vector");
    double max_abs = 0.0;
    for (double c : v) {
        if (!std::isfinite(c)) throw Error(ErrorCode::invalid_input, "non-finite coordinate");
        max_abs = std::max(max_abs, std::abs(c));
    }
    if (std::isinf(p_)) return max_abs;
    if (p_ == 1.0) {
        double s = 0.0;
        for (double c : v) s += std::abs(c);
        return s;
    }
    if (p_ == 2.0) {
        if (v.size() == 2) return std::hypot(v[0], v[1]);
        double s = 0.0;
        for (double c : v) s += c * c;
        return std::sqrt(s);
    }
    if (max_abs == 0.0) return 0.0;
    // Scale by the largest entry so the power sum cannot overflow.
    double s = 0.0;
    for (double c : v) s += std::pow(std::abs(c) / max_abs, p_);
    return max_abs * std::pow(s, 1.0 / p_);
}

std::string NormSpec::describe() const {
    if (kind_ == Kind::euclidean) return "euclidean";
    if (std::isinf(p_)) return "p=inf";
    std::ostringstream os;
    os << "p=" << p_;
    return os.str();
}

}  // namespace qhm
