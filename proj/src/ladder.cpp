#include "curvekit/ladder.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace curvekit {

namespace {

// k with {a,b} = {k, k+1 mod n}, or 0
int consecutive_k(int a, int b, int n) {
    if (b == a + 1) return a;
    if (a == b + 1) return b;
    if (n > 2 && ((a == n && b == 1) || (b == n && a == 1))) return n;
    return 0;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<int> parse_row(std::string_view line, int lineno) {
    std::vector<int> out;
    auto fail = [&](const std::string& why) {
        throw Error(Errc::syntax, "line " + std::to_string(lineno) + ": " + why);
    };
    size_t pos = 0;
    while (true) {
        size_t comma = line.find(',', pos);
        auto tok = trim(line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos));
        if (tok.empty()) fail("empty entry");
        int v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size()) fail("bad integer '" + std::string(tok) + "'");
        if (v <= 0) fail("labels must be positive");
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

int Ladder::k_at(int j) const { return consecutive_k(top[j], bottom[j], n); }

void validate(const Ladder& l) {
    if (l.top.size() != l.bottom.size())
        throw Error(Errc::length_mismatch, "top has " + std::to_string(l.top.size()) +
                                               " entries, bottom has " + std::to_string(l.bottom.size()));
    int n = static_cast<int>(l.top.size());
    if (n != l.n) throw Error(Errc::length_mismatch, "n does not match vector length");
    if (n == 0) throw Error(Errc::syntax, "empty ladder");
    std::vector<int> count(n + 1, 0);
    for (const auto* row : {&l.top, &l.bottom})
        for (int x : *row) {
            if (x < 1 || x > n) throw Error(Errc::label_count, "label " + std::to_string(x) + " out of range");
            ++count[x];
        }
    for (int x = 1; x <= n; ++x)
        if (count[x] != 2)
            throw Error(Errc::label_count, "label " + std::to_string(x) + " appears " +
                                               std::to_string(count[x]) + " times");
    std::vector<int> seen(n + 1, 0);
    for (int j = 0; j < n; ++j) {
        int k = l.k_at(j);
        if (k == 0)
            throw Error(Errc::consecutivity, "column " + std::to_string(j + 1) + " is not {k,k+1}");
        if (seen[k]++) throw Error(Errc::not_bijective, "k=" + std::to_string(k) + " occurs twice");
    }
}

Ladder make_ladder(std::vector<int> top, std::vector<int> bottom) {
    Ladder l{static_cast<int>(top.size()), std::move(top), std::move(bottom)};
    validate(l);
    return l;
}

Ladder parse_ladder(std::string_view text) {
    std::vector<std::vector<int>> rows;
    int lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        auto line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
        ++lineno;
        auto t = trim(line);
        if (!t.empty() && t.front() != '#') {
            if (rows.size() == 2) throw Error(Errc::syntax, "more than two data lines");
            rows.push_back(parse_row(t, lineno));
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    if (rows.size() != 2) throw Error(Errc::syntax, "expected two data lines");
    if (rows[0].size() != rows[1].size())
        throw Error(Errc::length_mismatch, "top has " + std::to_string(rows[0].size()) +
                                               " entries, bottom has " + std::to_string(rows[1].size()));
    return make_ladder(std::move(rows[0]), std::move(rows[1]));
}

std::string serialize(const Ladder& l) {
    std::ostringstream os;
    for (const auto* row : {&l.top, &l.bottom}) {
        for (size_t j = 0; j < row->size(); ++j) os << (j ? "," : "") << (*row)[j];
        os << '\n';
    }
    return os.str();
}

std::vector<Crossing> v_sequence(const Ladder& l) {
    std::vector<Crossing> seq(l.n);
    for (int j = 0; j < l.n; ++j) {
        int k = l.k_at(j);
        seq[k - 1] = {j, l.bottom[j] == k};
    }
    return seq;
}

Ladder from_v_sequence(const std::vector<Crossing>& seq) {
    int n = static_cast<int>(seq.size());
    Ladder l{n, std::vector<int>(n, 0), std::vector<int>(n, 0)};
    for (int s = 1; s <= n; ++s) {
        const auto& c = seq[s - 1];
        if (c.column < 0 || c.column >= n || l.top[c.column] != 0)
            throw Error(Errc::not_bijective, "crossing columns are not a permutation");
        l.bottom[c.column] = c.up ? s : wrap(s + 1, n);
        l.top[c.column] = c.up ? wrap(s + 1, n) : s;
    }
    validate(l);
    return l;
}

Ladder rotate_labels(const Ladder& l, int r) {
    Ladder o = l;
    for (auto* row : {&o.top, &o.bottom})
        for (int& x : *row) x = wrap(x + r, l.n);
    return o;
}

Ladder rotate_columns(const Ladder& l, int t) {
    Ladder o = l;
    for (int j = 0; j < l.n; ++j) {
        int src = ((j + t) % l.n + l.n) % l.n;
        o.top[j] = l.top[src];
        o.bottom[j] = l.bottom[src];
    }
    return o;
}

Ladder mirror(const Ladder& l) { return Ladder{l.n, l.bottom, l.top}; }

Ladder swap_curves(const Ladder& l) {
    auto seq = v_sequence(l);
    Ladder o{l.n, std::vector<int>(l.n), std::vector<int>(l.n)};
    for (int s = 0; s < l.n; ++s) {
        int j = seq[s].column + 1;
        o.top[s] = seq[s].up ? j : wrap(j + 1, l.n);
        o.bottom[s] = seq[s].up ? wrap(j + 1, l.n) : j;
    }
    validate(o);
    return o;
}

CanonicalClass canonical_form(const Ladder& src, CanonicalOptions opt) {
    validate(src);
    CanonicalClass best{src, 0, 0, false, false};
    bool have = false;
    for (int sw = 0; sw < (opt.swap_vw ? 2 : 1); ++sw) {
        Ladder base = sw ? swap_curves(src) : src;
        for (int mi = 0; mi < (opt.mirror ? 2 : 1); ++mi) {
            Ladder b = mi ? mirror(base) : base;
            for (int r = 0; r < b.n; ++r) {
                Ladder lr = rotate_labels(b, r);
                for (int t = 0; t < b.n; ++t) {
                    Ladder c = rotate_columns(lr, t);
                    if (!have || c < best.canonical_ladder) {
                        best = {std::move(c), r, t, mi == 1, sw == 1};
                        have = true;
                    }
                }
            }
        }
    }
    return best;
}

}  // namespace curvekit
