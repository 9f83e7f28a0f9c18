#pragma once

#include <limits>
#include <string>

namespace crr {

// A point of the totally ordered level set (-inf,-0] | [0,inf].  Levels on
// the negative branch are ordered by decreasing magnitude, every negative
// level precedes every positive one, and the two zeros are distinct:
//   NEG(inf) < ... < NEG(1) < NEG(0) < POS(0) < POS(1) < ... < POS(inf)
struct Level {
    enum class Branch { Neg, Pos };

    Branch branch = Branch::Pos;
    double magnitude = 0.0;  // >= 0, may be +inf

    static Level neg(double a);
    static Level pos(double a);
    static Level neg_inf() { return neg(std::numeric_limits<double>::infinity()); }
    static Level pos_inf() { return pos(std::numeric_limits<double>::infinity()); }

    bool is_neg() const { return branch == Branch::Neg; }
    bool is_pos() const { return branch == Branch::Pos; }

    // Weakly monotone numeric embedding: embed(NEG(a)) = -a, embed(POS(a)) = a.
    double embed() const { return is_neg() ? -magnitude : magnitude; }

    // Signed token, e.g. "-0.5", "-0", "+0", "+0.25", "+inf".
    std::string str() const;

    // Inverse of str().  A token without sign is positive; "-0" and "+0"
    // parse to distinct levels.  Throws std::invalid_argument on bad input.
    static Level parse(const std::string& token);
};

bool operator==(const Level& a, const Level& b);
bool operator!=(const Level& a, const Level& b);
bool operator<(const Level& a, const Level& b);
bool operator<=(const Level& a, const Level& b);
bool operator>(const Level& a, const Level& b);
bool operator>=(const Level& a, const Level& b);

}  // namespace crr
