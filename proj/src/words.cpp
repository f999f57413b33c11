#include "tangleforge/words.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <sstream>

namespace tf {

char family_char(Family f) {
    switch (f) {
        case Family::H: return 'h';
        case Family::T: return 't';
        case Family::A: return 'a';
        case Family::B: return 'b';
        case Family::P: return 'p';
    }
    return '?';
}

std::string Gen::str() const {
    return family_char(fam) + std::to_string(idx);
}

std::pair<Word, CancellationTrace> Word::reduce(std::span<const Letter> raw) {
    CancellationTrace trace;
    std::vector<int32_t> stack;
    stack.reserve(raw.size());
    for (int32_t i = 0; i < static_cast<int32_t>(raw.size()); ++i) {
        if (!stack.empty() && raw[stack.back()] == raw[i].inverse()) {
            trace.matching.emplace_back(stack.back(), i);
            stack.pop_back();
        } else {
            stack.push_back(i);
        }
    }
    trace.survivors = stack;
    std::sort(trace.matching.begin(), trace.matching.end());
    Word out;
    out.ls_.reserve(stack.size());
    for (int32_t i : stack) out.ls_.push_back(raw[i]);
    return {std::move(out), std::move(trace)};
}

Word Word::from_letters(std::vector<Letter> raw) {
    return reduce(raw).first;
}

Word Word::trusted(std::vector<Letter> ls) {
#ifndef NDEBUG
    for (size_t i = 1; i < ls.size(); ++i) assert(ls[i] != ls[i - 1].inverse());
#endif
    Word w;
    w.ls_ = std::move(ls);
    return w;
}

std::vector<Letter> parse_letters(std::string_view text) {
    std::vector<Letter> out;
    std::istringstream in{std::string(text)};
    std::string term;
    bool any = false;
    while (in >> term) {
        any = true;
        if (term == "e") {
            continue;  // empty word marker; contributes nothing
        }
        size_t caret = term.find('^');
        std::string name = term.substr(0, caret);
        long expo = 1;
        if (caret != std::string::npos) {
            std::string es = term.substr(caret + 1);
            auto res = std::from_chars(es.data(), es.data() + es.size(), expo);
            if (res.ec != std::errc{} || res.ptr != es.data() + es.size() || expo == 0)
                throw ParseError("bad exponent in term '" + term + "'");
        }
        if (name.size() < 2) throw ParseError("bad term '" + term + "'");
        Family fam;
        switch (name[0]) {
            case 'h': fam = Family::H; break;
            case 't': fam = Family::T; break;
            case 'a': fam = Family::A; break;
            case 'b': fam = Family::B; break;
            case 'p': fam = Family::P; break;
            default: throw ParseError("unknown generator family in '" + term + "'");
        }
        int idx = 0;
        std::string_view digits(name.data() + 1, name.size() - 1);
        auto res = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
        if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size() || idx < 1)
            throw ParseError("bad generator index in '" + term + "'");
        Letter l{{fam, idx}, static_cast<int8_t>(expo > 0 ? 1 : -1)};
        for (long k = 0; k < (expo > 0 ? expo : -expo); ++k) out.push_back(l);
    }
    if (!any) throw ParseError("empty word text (use 'e' for the empty word)");
    return out;
}

Word Word::parse(std::string_view text) {
    return from_letters(parse_letters(text));
}

Word Word::inverse() const {
    std::vector<Letter> ls(ls_.rbegin(), ls_.rend());
    for (auto& l : ls) l = l.inverse();
    return trusted(std::move(ls));
}

Word Word::operator*(const Word& rhs) const {
    std::vector<Letter> raw = ls_;
    raw.insert(raw.end(), rhs.ls_.begin(), rhs.ls_.end());
    return from_letters(std::move(raw));
}

std::string Word::str() const {
    if (ls_.empty()) return "e";
    std::string out;
    size_t i = 0;
    while (i < ls_.size()) {
        size_t j = i;
        while (j < ls_.size() && ls_[j] == ls_[i]) ++j;
        long run = static_cast<long>(j - i) * ls_[i].sign;
        if (!out.empty()) out += ' ';
        out += ls_[i].gen.str();
        if (run != 1) out += "^" + std::to_string(run);
        i = j;
    }
    return out;
}

std::pair<Word, Word> cyclic_reduce(const Word& w) {
    const auto& ls = w.letters();
    size_t lo = 0, hi = ls.size();
    while (hi - lo >= 2 && ls[lo] == ls[hi - 1].inverse()) {
        ++lo;
        --hi;
    }
    Word conj = Word::trusted({ls.begin(), ls.begin() + lo});
    Word core = Word::trusted({ls.begin() + lo, ls.begin() + hi});
    return {std::move(conj), std::move(core)};
}

long exponent_sum(const Word& w, Gen g) {
    long s = 0;
    for (const auto& l : w.letters())
        if (l.gen == g) s += l.sign;
    return s;
}

Word delete_letters(const Word& w, const std::set<Gen>& kill) {
    std::vector<Letter> raw;
    raw.reserve(w.size());
    for (const auto& l : w.letters())
        if (!kill.count(l.gen)) raw.push_back(l);
    return Word::from_letters(std::move(raw));
}

Word substitute(const Word& w, const std::map<Gen, Word>& images) {
    std::vector<Letter> raw;
    for (const auto& l : w.letters()) {
        auto it = images.find(l.gen);
        if (it == images.end())
            throw Error("substitute: no image for generator '" + l.gen.str() + "'");
        const auto& img = it->second.letters();
        if (l.sign > 0) {
            raw.insert(raw.end(), img.begin(), img.end());
        } else {
            for (auto r = img.rbegin(); r != img.rend(); ++r) raw.push_back(r->inverse());
        }
    }
    return Word::from_letters(std::move(raw));
}

bool is_conjugate(const Word& w1, const Word& w2) {
    Word c1 = cyclic_reduce(w1).second;
    Word c2 = cyclic_reduce(w2).second;
    if (c1.size() != c2.size()) return false;
    if (c1.empty()) return true;
    const auto& a = c1.letters();
    const auto& b = c2.letters();
    std::vector<Letter> doubled = a;
    doubled.insert(doubled.end(), a.begin(), a.end());
    auto it = std::search(doubled.begin(), doubled.end(), b.begin(), b.end());
    return it != doubled.end();
}

}  // namespace tf
