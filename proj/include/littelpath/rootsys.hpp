#pragma once

#include "littelpath/rational.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace littelpath {

enum class Family { A, B, C, D, G2 };

inline char family_letter(Family f) {
    switch (f) {
        case Family::A: return 'A';
        case Family::B: return 'B';
        case Family::C: return 'C';
        case Family::D: return 'D';
        case Family::G2: return 'G';
    }
    return '?';
}

// Finite-type root system in the standard (Bourbaki) coordinates.  Type A is
// realized in the gl ambient lattice Z^{n+1}; G2 lives in the sum-zero plane
// of Z^3.  Immutable after construction.
//
// Simple-root indices are 1-based throughout the public interface.
struct RootSystem {
    Family family;
    int rank;
    int ambient_dim;
    std::vector<Vec> simple_roots;        // alpha_i
    std::vector<Vec> simple_coroots;      // alpha_i^vee = 2 alpha_i / <alpha_i,alpha_i>
    std::vector<Vec> fundamental_weights; // omega_i, <omega_i, alpha_j^vee> = delta_ij
    std::vector<std::vector<long>> cartan;  // cartan[i][j] = <alpha_j, alpha_i^vee>
    std::vector<Vec> positive_roots;
    std::vector<int> w0_word;             // reduced word for the longest element
    std::vector<int> star;                // star[i-1] = i*, alpha_{i*} = -w0(alpha_i)

    const Vec& root(int i) const { return simple_roots.at(i - 1); }
    const Vec& coroot(int i) const { return simple_coroots.at(i - 1); }
    const Vec& fundamental(int i) const { return fundamental_weights.at(i - 1); }

    std::string name() const {
        if (family == Family::G2) return "G2";
        return std::string(1, family_letter(family)) + std::to_string(rank);
    }
};

inline Rat pairing(const RootSystem& rs, const Vec& x, int i) {
    return dot(x, rs.coroot(i));
}

/// s_i(x) = x - <x, alpha_i^vee> alpha_i.
inline Vec reflect(const RootSystem& rs, int i, const Vec& x) {
    if (i < 1 || i > rs.rank) throw std::out_of_range("simple root index out of range");
    return x - pairing(rs, x, i) * rs.root(i);
}

inline bool in_chamber(const RootSystem& rs, const Vec& x, bool strict = false) {
    for (int i = 1; i <= rs.rank; ++i) {
        Rat p = pairing(rs, x, i);
        if (strict ? p <= 0 : p < 0) return false;
    }
    return true;
}

/// Applies s_{word[0]} ∘ s_{word[1]} ∘ ... ∘ s_{word.back()} to x.
inline Vec apply_word(const RootSystem& rs, const std::vector<int>& word, Vec x) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) x = reflect(rs, *it, x);
    return x;
}

inline Vec w0_action(const RootSystem& rs, const Vec& x) {
    return apply_word(rs, rs.w0_word, x);
}

/// x expressed on the fundamental-weight basis: c_i = <x, alpha_i^vee>.
inline std::vector<Rat> fundamental_coords(const RootSystem& rs, const Vec& x) {
    std::vector<Rat> c(rs.rank);
    for (int i = 1; i <= rs.rank; ++i) c[i - 1] = pairing(rs, x, i);
    return c;
}

/// Solves x = sum beta_i alpha_i; nullopt when x is outside the root span
/// (possible in type A and G2 where the ambient space is larger).
inline std::optional<std::vector<Rat>> root_coords(const RootSystem& rs, const Vec& x) {
    int n = rs.rank, d = rs.ambient_dim;
    // Gaussian elimination on the d x (n+1) system [alpha_1 ... alpha_n | x].
    std::vector<std::vector<Rat>> m(d, std::vector<Rat>(n + 1));
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < n; ++c) m[r][c] = rs.simple_roots[c][r];
        m[r][n] = x[r];
    }
    int row = 0;
    std::vector<int> pivot_of_col(n, -1);
    for (int col = 0; col < n && row < d; ++col) {
        int p = -1;
        for (int r = row; r < d; ++r)
            if (m[r][col] != 0) { p = r; break; }
        if (p < 0) continue;
        std::swap(m[p], m[row]);
        Rat inv = m[row][col];
        for (int c = col; c <= n; ++c) m[row][c] /= inv;
        for (int r = 0; r < d; ++r) {
            if (r == row || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (int c = col; c <= n; ++c) m[r][c] -= f * m[row][c];
        }
        pivot_of_col[col] = row;
        ++row;
    }
    for (int r = row; r < d; ++r)
        if (m[r][n] != 0) return std::nullopt;  // inconsistent
    std::vector<Rat> beta(n, Rat(0));
    for (int col = 0; col < n; ++col)
        if (pivot_of_col[col] >= 0) beta[col] = m[pivot_of_col[col]][n];
    return beta;
}

inline Vec weight_from_fundamental(const RootSystem& rs, const std::vector<long>& c) {
    if (static_cast<int>(c.size()) != rs.rank)
        throw std::invalid_argument("expected " + std::to_string(rs.rank) + " fundamental coordinates");
    Vec x = zero_vec(rs.ambient_dim);
    for (int i = 1; i <= rs.rank; ++i) x += Rat(c[i - 1]) * rs.fundamental(i);
    return x;
}

inline bool is_integer(const Rat& r) { return denominator(r) == 1; }
inline bool is_half_integer(const Rat& r) { return denominator(r) == 2; }

inline bool in_weight_lattice(const RootSystem& rs, const Vec& x) {
    switch (rs.family) {
        case Family::A:
        case Family::C:
            return std::all_of(x.begin(), x.end(), is_integer);
        case Family::B:
        case Family::D: {
            bool all_int = std::all_of(x.begin(), x.end(), is_integer);
            bool all_half = std::all_of(x.begin(), x.end(), is_half_integer);
            return all_int || all_half;
        }
        case Family::G2: {
            Rat s(0);
            for (const auto& c : x) {
                if (!is_integer(c)) return false;
                s += c;
            }
            return s == 0;
        }
    }
    return false;
}

namespace detail {

inline Vec basis_vec(int dim, int i) {
    Vec v = zero_vec(dim);
    v[i] = 1;
    return v;
}

// Positive roots by reflection closure from the simple roots.  A root is
// positive iff its root-basis coordinates are all >= 0.
inline std::vector<Vec> close_positive_roots(const RootSystem& rs) {
    std::set<std::vector<Rat>> seen;
    std::vector<Vec> queue = rs.simple_roots, out;
    for (const auto& a : queue) seen.insert(a);
    while (!queue.empty()) {
        Vec b = queue.back();
        queue.pop_back();
        out.push_back(b);
        for (int i = 1; i <= rs.rank; ++i) {
            Vec g = reflect(rs, i, b);
            auto coords = root_coords(rs, g);
            if (!coords) continue;
            bool positive = std::all_of(coords->begin(), coords->end(),
                                        [](const Rat& c) { return c >= 0; });
            if (positive && seen.insert(g).second) queue.push_back(g);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Greedy descent from rho: repeatedly applies the lowest-index s_i with
/// <v, alpha_i^vee> > 0 until v is anti-dominant.  The resulting word is a
/// reduced word for w0 of length |R+|.
inline std::vector<int> longest_element_word(const RootSystem& rs) {
    Vec v = zero_vec(rs.ambient_dim);
    for (int i = 1; i <= rs.rank; ++i) v += rs.fundamental(i);  // rho
    std::vector<int> word;
    for (;;) {
        int pick = 0;
        for (int i = 1; i <= rs.rank; ++i)
            if (pairing(rs, v, i) > 0) { pick = i; break; }
        if (!pick) break;
        v = reflect(rs, pick, v);
        word.push_back(pick);
    }
    return word;
}

/// R+ = {alpha_{i_1}} ∪ {s_{i_1}...s_{i_a}(alpha_{i_{a+1}})}.  Throws when the
/// word is not a reduced word for w0 (duplicate or negative root produced, or
/// wrong length).
inline std::vector<Vec> positive_roots_from_word(const RootSystem& rs,
                                                 const std::vector<int>& word) {
    if (word.size() != rs.positive_roots.size())
        throw std::invalid_argument("word length " + std::to_string(word.size()) +
                                    " != number of positive roots " +
                                    std::to_string(rs.positive_roots.size()));
    std::set<std::vector<Rat>> seen;
    std::vector<Vec> out;
    for (std::size_t a = 0; a < word.size(); ++a) {
        Vec g = rs.root(word[a]);
        for (std::size_t b = a; b-- > 0;) g = reflect(rs, word[b], g);
        auto coords = root_coords(rs, g);
        bool positive = coords && std::all_of(coords->begin(), coords->end(),
                                              [](const Rat& c) { return c >= 0; });
        if (!positive)
            throw std::invalid_argument("word is not reduced: negative root at position " +
                                        std::to_string(a + 1));
        if (!seen.insert(g).second)
            throw std::invalid_argument("word is not reduced: duplicate root at position " +
                                        std::to_string(a + 1));
        out.push_back(g);
    }
    return out;
}

/// Order of the Weyl group, computed as the orbit size of rho under BFS
/// closure by simple reflections.
inline std::size_t weyl_order(const RootSystem& rs) {
    Vec rho = zero_vec(rs.ambient_dim);
    for (int i = 1; i <= rs.rank; ++i) rho += rs.fundamental(i);
    std::set<std::vector<Rat>> orbit{rho};
    std::vector<Vec> queue{rho};
    while (!queue.empty()) {
        Vec v = queue.back();
        queue.pop_back();
        for (int i = 1; i <= rs.rank; ++i) {
            Vec w = reflect(rs, i, v);
            if (orbit.insert(w).second) queue.push_back(w);
        }
    }
    return orbit.size();
}

inline RootSystem build_root_system(Family family, int rank) {
    RootSystem rs;
    rs.family = family;
    rs.rank = rank;
    using detail::basis_vec;
    switch (family) {
        case Family::A: {
            if (rank < 1) throw std::invalid_argument("type A requires rank >= 1");
            int d = rank + 1;
            rs.ambient_dim = d;
            for (int i = 0; i < rank; ++i)
                rs.simple_roots.push_back(basis_vec(d, i) - basis_vec(d, i + 1));
            for (int i = 1; i <= rank; ++i) {
                Vec w = zero_vec(d);
                for (int j = 0; j < i; ++j) w += Rat(1) * basis_vec(d, j);
                rs.fundamental_weights.push_back(w);
            }
            break;
        }
        case Family::B: {
            if (rank < 2) throw std::invalid_argument("type B requires rank >= 2");
            int d = rank;
            rs.ambient_dim = d;
            for (int i = 0; i + 1 < rank; ++i)
                rs.simple_roots.push_back(basis_vec(d, i) - basis_vec(d, i + 1));
            rs.simple_roots.push_back(basis_vec(d, rank - 1));
            for (int i = 1; i < rank; ++i) {
                Vec w = zero_vec(d);
                for (int j = 0; j < i; ++j) w += Rat(1) * basis_vec(d, j);
                rs.fundamental_weights.push_back(w);
            }
            Vec wn = zero_vec(d);
            for (int j = 0; j < rank; ++j) wn += Rat(1, 2) * basis_vec(d, j);
            rs.fundamental_weights.push_back(wn);
            break;
        }
        case Family::C: {
            if (rank < 2) throw std::invalid_argument("type C requires rank >= 2");
            int d = rank;
            rs.ambient_dim = d;
            for (int i = 0; i + 1 < rank; ++i)
                rs.simple_roots.push_back(basis_vec(d, i) - basis_vec(d, i + 1));
            rs.simple_roots.push_back(Rat(2) * basis_vec(d, rank - 1));
            for (int i = 1; i <= rank; ++i) {
                Vec w = zero_vec(d);
                for (int j = 0; j < i; ++j) w += Rat(1) * basis_vec(d, j);
                rs.fundamental_weights.push_back(w);
            }
            break;
        }
        case Family::D: {
            if (rank < 4) throw std::invalid_argument("type D requires rank >= 4");
            int d = rank;
            rs.ambient_dim = d;
            for (int i = 0; i + 1 < rank; ++i)
                rs.simple_roots.push_back(basis_vec(d, i) - basis_vec(d, i + 1));
            rs.simple_roots.push_back(basis_vec(d, rank - 2) + basis_vec(d, rank - 1));
            for (int i = 1; i <= rank - 2; ++i) {
                Vec w = zero_vec(d);
                for (int j = 0; j < i; ++j) w += Rat(1) * basis_vec(d, j);
                rs.fundamental_weights.push_back(w);
            }
            Vec wa = zero_vec(d), wb = zero_vec(d);
            for (int j = 0; j < rank; ++j) {
                Rat h(1, 2);
                wa += (j == rank - 1 ? -h : h) * basis_vec(d, j);
                wb += h * basis_vec(d, j);
            }
            rs.fundamental_weights.push_back(wa);
            rs.fundamental_weights.push_back(wb);
            break;
        }
        case Family::G2: {
            if (rank != 2) throw std::invalid_argument("type G2 has rank 2");
            rs.ambient_dim = 3;
            rs.simple_roots.push_back(basis_vec(3, 0) - basis_vec(3, 1));
            Vec a2 = zero_vec(3);
            a2[0] = -2, a2[1] = 1, a2[2] = 1;
            rs.simple_roots.push_back(a2);
            Vec w1 = zero_vec(3), w2 = zero_vec(3);
            w1[1] = -1, w1[2] = 1;       // 2 alpha_1 + alpha_2
            w2[0] = -1, w2[1] = -1, w2[2] = 2;  // 3 alpha_1 + 2 alpha_2
            rs.fundamental_weights.push_back(w1);
            rs.fundamental_weights.push_back(w2);
            break;
        }
    }

    for (const auto& a : rs.simple_roots) {
        Rat len2 = norm_sq(a);
        rs.simple_coroots.push_back(Rat(2) / len2 * a);
    }
    rs.cartan.assign(rank, std::vector<long>(rank));
    for (int i = 1; i <= rank; ++i)
        for (int j = 1; j <= rank; ++j) {
            Rat e = dot(rs.root(j), rs.coroot(i));
            if (!is_integer(e)) throw std::logic_error("non-integral Cartan entry");
            rs.cartan[i - 1][j - 1] = static_cast<long>(numerator(e).convert_to<long long>());
        }
    for (int i = 1; i <= rank; ++i)
        for (int j = 1; j <= rank; ++j)
            if ((pairing(rs, rs.fundamental(i), j) != 0) != (i == j))
                throw std::logic_error("fundamental weight pairing violated");

    rs.positive_roots = detail::close_positive_roots(rs);
    rs.w0_word = longest_element_word(rs);
    if (rs.w0_word.size() != rs.positive_roots.size())
        throw std::logic_error("longest word length != number of positive roots");

    rs.star.assign(rank, 0);
    for (int i = 1; i <= rank; ++i) {
        Vec target = -w0_action(rs, rs.root(i));
        for (int j = 1; j <= rank; ++j)
            if (rs.root(j) == target) { rs.star[i - 1] = j; break; }
        if (!rs.star[i - 1]) throw std::logic_error("star involution not found");
    }
    for (int i = 1; i <= rank; ++i)
        if (rs.star[rs.star[i - 1] - 1] != i) throw std::logic_error("star is not an involution");
    return rs;
}

/// "C2" -> build_root_system(C, 2).
inline RootSystem parse_root_system(const std::string& name) {
    if (name.size() < 2) throw std::invalid_argument("algebra name too short: '" + name + "'");
    char f = name[0];
    int rank;
    try {
        rank = std::stoi(name.substr(1));
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed algebra name '" + name + "'");
    }
    switch (f) {
        case 'A': case 'a': return build_root_system(Family::A, rank);
        case 'B': case 'b': return build_root_system(Family::B, rank);
        case 'C': case 'c': return build_root_system(Family::C, rank);
        case 'D': case 'd': return build_root_system(Family::D, rank);
        case 'G': case 'g':
            if (rank != 2) throw std::invalid_argument("type G2 has rank 2");
            return build_root_system(Family::G2, 2);
        default:
            throw std::invalid_argument("unsupported family '" + std::string(1, f) +
                                        "' (supported: A, B, C, D, G2)");
    }
}

}  // namespace littelpath
