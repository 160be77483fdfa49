#pragma once

// Contact singularity names and multisingularities (multisets with a
// distinguished element).

#include "quadpt/rational.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace quadpt {

enum class Singularity { A0, A1, A2, A3, A4, A5, A6, I22, III22 };

struct UnknownSingularity : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularityInfo {
    Singularity sing;
    std::string_view name;  // CLI spelling
    std::string_view latex;
    int delta;              // dimension of the local algebra
    int corank;             // r of the Sigma^r class
    int codim_slope;        // codim = slope*l + offset
    int codim_offset;

    int codim(int ell) const { return codim_slope * ell + codim_offset; }
};

inline const std::array<SingularityInfo, 9>& singularity_table() {
    static const std::array<SingularityInfo, 9> table{{
        {Singularity::A0, "A0", "A_0", 1, 0, 0, 0},
        {Singularity::A1, "A1", "A_1", 2, 1, 1, 1},
        {Singularity::A2, "A2", "A_2", 3, 1, 2, 2},
        {Singularity::A3, "A3", "A_3", 4, 1, 3, 3},
        {Singularity::A4, "A4", "A_4", 5, 1, 4, 4},
        {Singularity::A5, "A5", "A_5", 6, 1, 5, 5},
        {Singularity::A6, "A6", "A_6", 7, 1, 6, 6},
        {Singularity::I22, "I22", "I_{2,2}", 4, 2, 3, 4},
        {Singularity::III22, "III22", "III_{2,2}", 3, 2, 2, 4},
    }};
    return table;
}

inline const SingularityInfo& info(Singularity s) {
    return singularity_table()[static_cast<std::size_t>(s)];
}

inline Singularity parse_singularity(std::string_view name) {
    for (const auto& row : singularity_table())
        if (row.name == name) return row.sing;
    throw UnknownSingularity("unknown singularity '" + std::string(name) + "'");
}

/// A_k for k = 0..6.
inline Singularity A(int k) {
    if (k < 0 || k > 6) throw UnknownSingularity("A" + std::to_string(k) + " is not tabulated");
    return static_cast<Singularity>(k);
}

/// Multiset of singularities; parts[0] is the distinguished element, the rest
/// is kept sorted so equal multisingularities compare equal.
class MultiSingularity {
public:
    MultiSingularity() = default;

    MultiSingularity(Singularity first, std::vector<Singularity> rest) {
        parts_.push_back(first);
        std::sort(rest.begin(), rest.end());
        parts_.insert(parts_.end(), rest.begin(), rest.end());
    }

    explicit MultiSingularity(std::vector<Singularity> parts) {
        if (parts.empty()) throw std::invalid_argument("empty multisingularity");
        Singularity first = parts.front();
        parts.erase(parts.begin());
        *this = MultiSingularity(first, std::move(parts));
    }

    /// A_0^r
    static MultiSingularity A0_power(int r) {
        if (r < 1) throw std::invalid_argument("A0^r needs r >= 1");
        return MultiSingularity(std::vector<Singularity>(static_cast<std::size_t>(r), Singularity::A0));
    }

    /// Parses "A0^4", "A0A1", "III22A0", "A1A0^2". The first factor is the
    /// distinguished element.
    static MultiSingularity parse(std::string_view text) {
        std::vector<Singularity> parts;
        std::size_t pos = 0;
        auto fail = [&](const std::string& what) {
            throw std::invalid_argument("bad multisingularity '" + std::string(text) + "': " + what);
        };
        while (pos < text.size()) {
            std::size_t start = pos;
            while (pos < text.size() && std::isalpha(static_cast<unsigned char>(text[pos]))) ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            if (start == pos) fail("expected a singularity name");
            Singularity s = parse_singularity(text.substr(start, pos - start));
            int mult = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                std::size_t ds = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                if (ds == pos) fail("expected exponent");
                mult = std::stoi(std::string(text.substr(ds, pos - ds)));
                if (mult < 1) fail("exponent must be positive");
            }
            parts.insert(parts.end(), static_cast<std::size_t>(mult), s);
        }
        if (parts.empty()) fail("empty");
        return MultiSingularity(std::move(parts));
    }

    const std::vector<Singularity>& parts() const { return parts_; }
    int size() const { return static_cast<int>(parts_.size()); }
    Singularity distinguished() const { return parts_.front(); }

    /// All parts sorted: the order-free key used for residue lookup.
    std::vector<Singularity> multiset() const {
        auto m = parts_;
        std::sort(m.begin(), m.end());
        return m;
    }

    /// k if this is A_0^k, otherwise 0.
    int a0_power() const {
        for (auto s : parts_)
            if (s != Singularity::A0) return 0;
        return size();
    }

    /// Sub-multisingularity on the given positions; the smallest position
    /// becomes the distinguished element.
    MultiSingularity restrict(const std::vector<int>& positions) const {
        std::vector<Singularity> sub;
        for (int p : positions) sub.push_back(parts_.at(static_cast<std::size_t>(p)));
        return MultiSingularity(std::move(sub));
    }

    /// Run-length label in canonical order: "A0^4", "III22A0", "A1A0^2".
    std::string label() const { return render(false); }
    std::string latex() const { return render(true); }

    auto operator<=>(const MultiSingularity&) const = default;
    bool operator==(const MultiSingularity&) const = default;

private:
    std::string render(bool tex) const {
        std::string out;
        for (std::size_t i = 0; i < parts_.size();) {
            std::size_t j = i;
            while (j < parts_.size() && parts_[j] == parts_[i]) ++j;
            out += tex ? std::string(info(parts_[i]).latex) : std::string(info(parts_[i]).name);
            if (j - i > 1) out += tex ? "^{" + std::to_string(j - i) + "}" : "^" + std::to_string(j - i);
            i = j;
        }
        return out;
    }

    std::vector<Singularity> parts_;
};

/// (r-1)*l + sum of codimensions of the parts.
inline int codim(const MultiSingularity& m, int ell) {
    int c = (m.size() - 1) * ell;
    for (auto s : m.parts()) c += info(s).codim(ell);
    return c;
}

/// Number of permutations of the parts preserving the multiset: prod k_j!.
inline mpz_class aut_count(const MultiSingularity& m) {
    std::map<Singularity, long> mult;
    for (auto s : m.parts()) ++mult[s];
    mpz_class out = 1;
    for (const auto& [s, k] : mult) out *= factorial(k);
    return out;
}

}  // namespace quadpt
