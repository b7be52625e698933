#include "ncd/word.hpp"

#include <algorithm>

namespace ncd {

Word Word::prefix(std::size_t len) const
{
    return Word(std::vector<int>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(len)));
}

Word Word::suffix_from(std::size_t pos) const
{
    return Word(std::vector<int>(letters_.begin() + static_cast<std::ptrdiff_t>(pos), letters_.end()));
}

std::vector<int> Word::letter_counts(int n) const
{
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    for (int l : letters_) {
        ++counts[static_cast<std::size_t>(l - 1)];
    }
    return counts;
}

bool Word::uses_only_letters_up_to(int n) const
{
    return std::all_of(letters_.begin(), letters_.end(), [n](int l) { return l >= 1 && l <= n; });
}

Word operator+(const Word &a, const Word &b)
{
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.letters_.begin(), a.letters_.end());
    out.insert(out.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(out));
}

std::strong_ordering operator<=>(const Word &a, const Word &b)
{
    if (auto c = a.size() <=> b.size(); c != 0) {
        return c;
    }
    return a.letters_ <=> b.letters_;
}

std::string to_string(const Word &w)
{
    if (w.empty()) {
        return "g0";
    }
    std::string s = "[";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) {
            s += ',';
        }
        s += std::to_string(w[i]);
    }
    return s + "]";
}

std::vector<Word> words_of_length(int n, int len)
{
    std::vector<Word> out;
    if (len == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> cur(static_cast<std::size_t>(len), 1);
    while (true) {
        out.emplace_back(cur);
        int pos = len - 1;
        while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == n) {
            cur[static_cast<std::size_t>(pos)] = 1;
            --pos;
        }
        if (pos < 0) {
            break;
        }
        ++cur[static_cast<std::size_t>(pos)];
    }
    return out;
}

std::vector<Word> words_up_to(int n, int max_len)
{
    std::vector<Word> out;
    out.reserve(count_words_up_to(n, max_len));
    for (int len = 0; len <= max_len; ++len) {
        auto level = words_of_length(n, len);
        out.insert(out.end(), std::make_move_iterator(level.begin()), std::make_move_iterator(level.end()));
    }
    return out;
}

std::size_t count_words_up_to(int n, int max_len)
{
    std::size_t total = 0;
    std::size_t level = 1;
    for (int len = 0; len <= max_len; ++len) {
        total += level;
        level *= static_cast<std::size_t>(n);
    }
    return total;
}

std::size_t length_lex_index(const Word &w, int n)
{
    std::size_t offset = w.empty() ? 0 : count_words_up_to(n, static_cast<int>(w.size()) - 1);
    std::size_t rank = 0;
    for (int l : w) {
        rank = rank * static_cast<std::size_t>(n) + static_cast<std::size_t>(l - 1);
    }
    return offset + rank;
}

} // namespace ncd
