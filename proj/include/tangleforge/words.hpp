#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    using Error::Error;
};

// Generator families, ordered h < t < a < b < p.
enum class Family : uint8_t { H = 0, T = 1, A = 2, B = 3, P = 4 };

char family_char(Family f);

struct Gen {
    Family fam{Family::H};
    int32_t idx{1};  // 1-based

    auto operator<=>(const Gen&) const = default;
    std::string str() const;
};

inline Gen gen_h(int i) { return {Family::H, i}; }
inline Gen gen_t(int i) { return {Family::T, i}; }
inline Gen gen_a(int i) { return {Family::A, i}; }
inline Gen gen_b(int i) { return {Family::B, i}; }
inline Gen gen_p(int i) { return {Family::P, i}; }

struct Letter {
    Gen gen;
    int8_t sign{1};  // +1 or -1

    auto operator<=>(const Letter&) const = default;
    Letter inverse() const { return {gen, static_cast<int8_t>(-sign)}; }
};

// Records one canonical (stack-based) free reduction. `matching` pairs
// cancelled positions (i, j) with i < j; the pairing is non-crossing.
struct CancellationTrace {
    std::vector<std::pair<int32_t, int32_t>> matching;
    std::vector<int32_t> survivors;
};

// A freely reduced word. Unreduced letter sequences exist only as raw
// vectors passed through reduce()/from_letters().
class Word {
public:
    Word() = default;

    static std::pair<Word, CancellationTrace> reduce(std::span<const Letter> raw);
    static Word from_letters(std::vector<Letter> raw);
    // Caller guarantees `ls` is already reduced.
    static Word trusted(std::vector<Letter> ls);
    static Word parse(std::string_view text);

    const std::vector<Letter>& letters() const { return ls_; }
    size_t size() const { return ls_.size(); }
    bool empty() const { return ls_.empty(); }

    Word inverse() const;
    Word operator*(const Word& rhs) const;
    bool operator==(const Word&) const = default;
    bool operator<(const Word& rhs) const { return ls_ < rhs.ls_; }

    // Canonical text form: maximal runs compressed to name^k, "e" if empty.
    std::string str() const;

private:
    std::vector<Letter> ls_;
};

std::vector<Letter> parse_letters(std::string_view text);

// w = conjugator * core * conjugator^-1 with core cyclically reduced.
std::pair<Word, Word> cyclic_reduce(const Word& w);

long exponent_sum(const Word& w, Gen g);

// Reduced image of w under the endomorphism killing every generator in `kill`.
Word delete_letters(const Word& w, const std::set<Gen>& kill);

// Replaces each letter g^e by images.at(g)^e and reduces. Throws if some
// generator of w has no image.
Word substitute(const Word& w, const std::map<Gen, Word>& images);

bool is_conjugate(const Word& w1, const Word& w2);

}  // namespace tf
