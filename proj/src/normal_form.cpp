#include "hnnwalk/normal_form.hpp"

#include <algorithm>
#include <sstream>

namespace hnnwalk {

void push_letter(const HnnPresentation& pres, NormalForm& w, const Letter& x) {
    switch (x.kind) {
    case Letter::Base:
        w.trailing = pres.mul(w.trailing, x.g);
        return;
    case Letter::T: {
        const auto [rep, rem] = pres.coset_a(w.trailing);
        if (rep == pres.identity() && !w.syllables.empty() && w.syllables.back().sign == -1) {
            // ... g t^-1 a t  ->  ... g phi(a)
            const Syllable popped = w.syllables.back();
            w.syllables.pop_back();
            w.trailing = pres.mul(popped.rep, pres.phi(rem));
        } else {
            w.syllables.push_back(Syllable{rep, +1});
            w.trailing = pres.phi(rem);
        }
        return;
    }
    case Letter::Tinv: {
        const auto [rep, rem] = pres.coset_b(w.trailing);
        if (rep == pres.identity() && !w.syllables.empty() && w.syllables.back().sign == +1) {
            // ... g t b t^-1  ->  ... g phi^-1(b)
            const Syllable popped = w.syllables.back();
            w.syllables.pop_back();
            w.trailing = pres.mul(popped.rep, pres.phi_inv(rem));
        } else {
            w.syllables.push_back(Syllable{rep, -1});
            w.trailing = pres.phi_inv(rem);
        }
        return;
    }
    }
}

NormalForm normalize(const HnnPresentation& pres, std::span<const Letter> word) {
    NormalForm w = identity_form(pres);
    for (const Letter& x : word) push_letter(pres, w, x);
    return w;
}

std::int64_t word_length(const HnnPresentation& pres, const NormalForm& w) {
    return 2 * t_length(w) + (w.trailing != pres.identity() ? 1 : 0);
}

NormalForm strip_trailing(const HnnPresentation& pres, NormalForm w) {
    w.trailing = pres.identity();
    return w;
}

std::int64_t signed_depth(const NormalForm& w) {
    std::int64_t d = 0;
    for (const Syllable& s : w.syllables) d += s.sign;
    return d;
}

void check_normal_form(const HnnPresentation& pres, const NormalForm& w) {
    const ElementId e0 = pres.identity();
    for (std::size_t i = 0; i < w.syllables.size(); ++i) {
        const Syllable& s = w.syllables[i];
        const auto& reps = s.sign > 0 ? pres.X() : pres.Y();
        if (std::find(reps.begin(), reps.end(), s.rep) == reps.end())
            throw Error("normal form: syllable representative not in " +
                        std::string(s.sign > 0 ? "X" : "Y"));
        if (i > 0 && s.rep == e0 && s.sign == -w.syllables[i - 1].sign)
            throw Error("normal form: forbidden t e0 t^-1 / t^-1 e0 t subword");
    }
}

Letter parse_letter(const HnnPresentation& pres, const std::string& token) {
    if (token == "t") return Letter::t();
    if (token == "t^-1" || token == "t-1" || token == "T^-1") return Letter::t_inv();
    return Letter::base(pres.base().id_of(token));
}

std::vector<Letter> parse_word(const HnnPresentation& pres, const std::string& line) {
    std::vector<Letter> word;
    std::istringstream in(line);
    std::string token;
    while (in >> token) word.push_back(parse_letter(pres, token));
    return word;
}

std::string to_string(const HnnPresentation& pres, const NormalForm& w) {
    const ElementId e0 = pres.identity();
    std::string out;
    auto append = [&out](const std::string& s) {
        if (!out.empty()) out += ' ';
        out += s;
    };
    for (const Syllable& s : w.syllables) {
        if (s.rep != e0) append(pres.base().name_of(s.rep));
        append(s.sign > 0 ? "t" : "t^-1");
    }
    if (w.trailing != e0 || w.syllables.empty()) append(pres.base().name_of(w.trailing));
    return out;
}

std::vector<Letter> inverse_letters(const HnnPresentation& pres, std::span<const Letter> word) {
    std::vector<Letter> inv;
    inv.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        switch (it->kind) {
        case Letter::Base:
            inv.push_back(Letter::base(pres.inverse(it->g)));
            break;
        case Letter::T:
            inv.push_back(Letter::t_inv());
            break;
        case Letter::Tinv:
            inv.push_back(Letter::t());
            break;
        }
    }
    return inv;
}

} // namespace hnnwalk
