#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "curvekit/error.hpp"

namespace curvekit {

// Column j (0-based) is the intersection point p_{j+1}. Labels are 1-based.
struct Ladder {
    int n = 0;
    std::vector<int> top;
    std::vector<int> bottom;

    // k such that {top[j], bottom[j]} = {k, k+1 mod n}
    int k_at(int j) const;
    friend bool operator==(const Ladder&, const Ladder&) = default;
    friend auto operator<=>(const Ladder& a, const Ladder& b) {
        if (auto c = a.top <=> b.top; c != 0) return c;
        return a.bottom <=> b.bottom;
    }
};

// one-based label arithmetic
inline int wrap(int x, int n) { return ((x - 1) % n + n) % n + 1; }

void validate(const Ladder& l);
Ladder make_ladder(std::vector<int> top, std::vector<int> bottom);
Ladder parse_ladder(std::string_view text);
std::string serialize(const Ladder& l);

// v travels from arc s to arc s+1 through column `column`; up means label s
// sits on the bottom and s+1 on top.
struct Crossing {
    int column = 0;
    bool up = true;
    friend bool operator==(const Crossing&, const Crossing&) = default;
};

// entry s-1 describes c_s
std::vector<Crossing> v_sequence(const Ladder& l);
Ladder from_v_sequence(const std::vector<Crossing>& seq);

Ladder rotate_labels(const Ladder& l, int r);
Ladder rotate_columns(const Ladder& l, int t);
Ladder mirror(const Ladder& l);
// ladder of the pair (w, v): w becomes the horizontal curve
Ladder swap_curves(const Ladder& l);

struct CanonicalOptions {
    bool mirror = false;
    bool swap_vw = false;
};

struct CanonicalClass {
    Ladder canonical_ladder;
    int applied_rotation_v = 0;
    int applied_rotation_w = 0;
    bool mirrored = false;
    bool swapped = false;
};

CanonicalClass canonical_form(const Ladder& l, CanonicalOptions opt = {});

}  // namespace curvekit
