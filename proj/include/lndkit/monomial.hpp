#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace lndkit {

inline constexpr std::size_t kMaxVars = 32;

// Dense exponent vector; slots past the owning VarTable's size stay zero.
struct Monomial {
    std::array<std::uint16_t, kMaxVars> exp{};
    std::uint32_t degree = 0;

    std::uint16_t operator[](std::size_t i) const { return exp[i]; }
    void set(std::size_t i, unsigned e);
    bool is_one() const { return degree == 0; }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }
};

Monomial operator*(const Monomial& a, const Monomial& b);
// Requires divides(b, a).
Monomial operator/(const Monomial& a, const Monomial& b);
bool divides(const Monomial& d, const Monomial& m);
Monomial lcm(const Monomial& a, const Monomial& b);
bool coprime(const Monomial& a, const Monomial& b);

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const;
};

// Monomial order given as an ordered list of variable blocks. Blocks are compared
// lexicographically by their partial degree; ties inside a block are broken by
// reverse lexicographic order on the block's variables, listed from largest to
// smallest. One block holding every variable is grevlex; singleton blocks give lex.
class MonomialOrder {
public:
    static MonomialOrder grevlex(std::size_t nvars);
    static MonomialOrder lex(std::size_t nvars);
    // Block order with `eliminated` variables larger than all others (grevlex inside).
    static MonomialOrder elimination(std::size_t nvars, const std::vector<std::size_t>& eliminated);
    static MonomialOrder from_blocks(std::vector<std::vector<std::size_t>> blocks);

    // Negative, zero or positive as a is smaller, equal or larger than b.
    int compare(const Monomial& a, const Monomial& b) const;
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

    std::size_t nvars() const { return nvars_; }
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
    const std::string& key() const { return key_; }

    bool operator==(const MonomialOrder& o) const { return key_ == o.key_; }

private:
    explicit MonomialOrder(std::vector<std::vector<std::size_t>> blocks);

    std::vector<std::vector<std::size_t>> blocks_;
    std::size_t nvars_ = 0;
    bool plain_grevlex_ = false;
    std::string key_;
};

}  // namespace lndkit
