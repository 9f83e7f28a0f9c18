#include "crr/level.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace crr {

Level Level::neg(double a) {
    if (std::isnan(a) || a < 0) throw std::invalid_argument("level magnitude must be >= 0");
    return Level{Branch::Neg, a};
}

Level Level::pos(double a) {
    if (std::isnan(a) || a < 0) throw std::invalid_argument("level magnitude must be >= 0");
    return Level{Branch::Pos, a};
}

std::string Level::str() const {
    std::string s = is_neg() ? "-" : "+";
    if (std::isinf(magnitude)) return s + "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", magnitude);
    return s + buf;
}

Level Level::parse(const std::string& token) {
    if (token.empty()) throw std::invalid_argument("empty level token");
    Branch b = Branch::Pos;
    std::size_t i = 0;
    if (token[0] == '-') { b = Branch::Neg; i = 1; }
    else if (token[0] == '+') { i = 1; }
    std::string body = token.substr(i);
    if (body.empty()) throw std::invalid_argument("bad level token '" + token + "'");
    double mag;
    if (body == "inf" || body == "Inf" || body == "INF") {
        mag = std::numeric_limits<double>::infinity();
    } else {
        std::size_t pos = 0;
        try {
            mag = std::stod(body, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad level token '" + token + "'");
        }
        if (pos != body.size() || std::isnan(mag) || mag < 0)
            throw std::invalid_argument("bad level token '" + token + "'");
    }
    return Level{b, mag};
}

bool operator==(const Level& a, const Level& b) {
    return a.branch == b.branch && a.magnitude == b.magnitude;
}
bool operator!=(const Level& a, const Level& b) { return !(a == b); }

bool operator<(const Level& a, const Level& b) {
    if (a.branch != b.branch) return a.is_neg();
    if (a.is_neg()) return a.magnitude > b.magnitude;
    return a.magnitude < b.magnitude;
}
bool operator<=(const Level& a, const Level& b) { return a < b || a == b; }
bool operator>(const Level& a, const Level& b) { return b < a; }
bool operator>=(const Level& a, const Level& b) { return b <= a; }

}  // namespace crr
