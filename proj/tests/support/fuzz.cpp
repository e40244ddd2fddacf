#include "fuzz.hpp"

namespace hnnwalk::testing {

std::vector<Letter> random_word(const HnnPresentation& pres, Rng& rng, std::size_t max_len) {
    const std::size_t len = rng.next_u64() % (max_len + 1);
    const auto n = static_cast<std::uint64_t>(pres.base().order());
    std::vector<Letter> word;
    word.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        switch (rng.next_u64() % 3) {
        case 0: word.push_back(Letter::base(static_cast<ElementId>(rng.next_u64() % n))); break;
        case 1: word.push_back(Letter::t()); break;
        default: word.push_back(Letter::t_inv()); break;
        }
    }
    return word;
}

std::vector<Letter> relator_mutate(const HnnPresentation& pres, std::vector<Letter> word,
                                   Rng& rng, int moves) {
    const auto n = static_cast<std::uint64_t>(pres.base().order());
    auto random_pos = [&](std::size_t size) {
        return static_cast<std::size_t>(rng.next_u64() % (size + 1));
    };
    for (int m = 0; m < moves; ++m) {
        const std::uint64_t kind = rng.next_u64() % 6;
        bool applied = false;
        for (int attempt = 0; attempt < 8 && !applied; ++attempt) {
            switch (kind) {
            case 0: { // insert g g^-1
                const auto g = static_cast<ElementId>(rng.next_u64() % n);
                const std::size_t pos = random_pos(word.size());
                word.insert(word.begin() + static_cast<std::ptrdiff_t>(pos),
                            {Letter::base(g), Letter::base(pres.inverse(g))});
                applied = true;
                break;
            }
            case 1: { // insert t t^-1 or t^-1 t
                const std::size_t pos = random_pos(word.size());
                if (rng.next_u64() & 1)
                    word.insert(word.begin() + static_cast<std::ptrdiff_t>(pos),
                                {Letter::t(), Letter::t_inv()});
                else
                    word.insert(word.begin() + static_cast<std::ptrdiff_t>(pos),
                                {Letter::t_inv(), Letter::t()});
                applied = true;
                break;
            }
            case 2: { // slide a t -> t phi(a) / b t^-1 -> t^-1 phi^-1(b)
                if (word.size() < 2) break;
                const std::size_t pos = static_cast<std::size_t>(rng.next_u64() % (word.size() - 1));
                if (word[pos].kind != Letter::Base) break;
                if (word[pos + 1].kind == Letter::T && pres.in_A(word[pos].g)) {
                    const ElementId image = pres.phi(word[pos].g);
                    word[pos] = Letter::t();
                    word[pos + 1] = Letter::base(image);
                    applied = true;
                } else if (word[pos + 1].kind == Letter::Tinv && pres.in_B(word[pos].g)) {
                    const ElementId image = pres.phi_inv(word[pos].g);
                    word[pos] = Letter::t_inv();
                    word[pos + 1] = Letter::base(image);
                    applied = true;
                }
                break;
            }
            case 3: { // reverse slide t phi(a) -> a t / t^-1 phi^-1(b) -> b t^-1
                if (word.size() < 2) break;
                const std::size_t pos = static_cast<std::size_t>(rng.next_u64() % (word.size() - 1));
                if (word[pos + 1].kind != Letter::Base) break;
                if (word[pos].kind == Letter::T && pres.in_B(word[pos + 1].g)) {
                    const ElementId pre = pres.phi_inv(word[pos + 1].g);
                    word[pos] = Letter::base(pre);
                    word[pos + 1] = Letter::t();
                    applied = true;
                } else if (word[pos].kind == Letter::Tinv && pres.in_A(word[pos + 1].g)) {
                    const ElementId pre = pres.phi(word[pos + 1].g);
                    word[pos] = Letter::base(pre);
                    word[pos + 1] = Letter::t_inv();
                    applied = true;
                }
                break;
            }
            case 4: { // merge adjacent base letters
                if (word.size() < 2) break;
                const std::size_t pos = static_cast<std::size_t>(rng.next_u64() % (word.size() - 1));
                if (word[pos].kind == Letter::Base && word[pos + 1].kind == Letter::Base) {
                    word[pos] = Letter::base(pres.mul(word[pos].g, word[pos + 1].g));
                    word.erase(word.begin() + static_cast<std::ptrdiff_t>(pos + 1));
                    applied = true;
                }
                break;
            }
            default: { // split a base letter g -> h, h^-1 g
                if (word.empty()) break;
                const std::size_t pos = static_cast<std::size_t>(rng.next_u64() % word.size());
                if (word[pos].kind != Letter::Base) break;
                const auto h = static_cast<ElementId>(rng.next_u64() % n);
                const ElementId rest = pres.mul(pres.inverse(h), word[pos].g);
                word[pos] = Letter::base(h);
                word.insert(word.begin() + static_cast<std::ptrdiff_t>(pos + 1),
                            Letter::base(rest));
                applied = true;
                break;
            }
            }
        }
    }
    return word;
}

} // namespace hnnwalk::testing
