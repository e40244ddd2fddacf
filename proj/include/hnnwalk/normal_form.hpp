#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hnnwalk/presentation.hpp"

namespace hnnwalk {

// One letter of the extended alphabet G0 u {t, t^-1}.
struct Letter {
    enum Kind : std::int8_t { Base, T, Tinv };
    Kind kind = Base;
    ElementId g = 0; // only meaningful for Base

    static Letter base(ElementId g) { return {Base, g}; }
    static Letter t() { return {T, 0}; }
    static Letter t_inv() { return {Tinv, 0}; }
};

struct Syllable {
    ElementId rep = 0;
    std::int8_t sign = 1; // +1: rep in X followed by t, -1: rep in Y followed by t^-1

    friend bool operator==(const Syllable&, const Syllable&) = default;
};

// Canonical representation g1 t1 g2 t2 ... gn tn g_{n+1}: coset-representative
// syllables plus a trailing base-group element.
struct NormalForm {
    std::vector<Syllable> syllables;
    ElementId trailing = 0;

    friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

inline NormalForm identity_form(const HnnPresentation& pres) {
    return NormalForm{{}, pres.identity()};
}

// Appends one letter on the right and restores normal form. Constant
// amortized work per letter.
void push_letter(const HnnPresentation& pres, NormalForm& w, const Letter& x);

NormalForm normalize(const HnnPresentation& pres, std::span<const Letter> word);

inline std::int64_t t_length(const NormalForm& w) {
    return static_cast<std::int64_t>(w.syllables.size());
}

// 2n plus one for a nontrivial trailing element: counts every syllable slot
// and every t-letter, dropping only a trailing identity.
std::int64_t word_length(const HnnPresentation& pres, const NormalForm& w);

// The bracket operation [g]: same syllables, trailing reset to the identity.
NormalForm strip_trailing(const HnnPresentation& pres, NormalForm w);

// Signed syllable count; in the A=B=G0 regime this is the projection onto Z.
std::int64_t signed_depth(const NormalForm& w);

// Throws if w violates a normal-form invariant (used by tests and debug
// assertions, not on the hot path).
void check_normal_form(const HnnPresentation& pres, const NormalForm& w);

// Letter parsing for the nf subcommand and config-driven words: element name,
// "t" or "t^-1". Throws UnknownLetter.
Letter parse_letter(const HnnPresentation& pres, const std::string& token);
std::vector<Letter> parse_word(const HnnPresentation& pres, const std::string& line);

// Renders a normal form, omitting identity slots the way the literature does
// (e.g. "t t" rather than "e t e t e"); the pure identity prints as the
// identity's name.
std::string to_string(const HnnPresentation& pres, const NormalForm& w);

// Inverse of a letter sequence (reversed word of letter inverses).
std::vector<Letter> inverse_letters(const HnnPresentation& pres, std::span<const Letter> word);

} // namespace hnnwalk
