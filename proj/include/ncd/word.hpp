#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace ncd {

// An element of the free semigroup on generators 1..n. The empty word is the
// identity g_0. Letters are 1-based throughout the library.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> letters) : letters_(letters) {}
    explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    int operator[](std::size_t i) const { return letters_[i]; }
    const std::vector<int> &letters() const noexcept { return letters_; }
    auto begin() const noexcept { return letters_.begin(); }
    auto end() const noexcept { return letters_.end(); }

    Word prefix(std::size_t len) const;
    Word suffix_from(std::size_t pos) const;

    // |alpha|_i for i = 1..n, returned 0-based.
    std::vector<int> letter_counts(int n) const;

    bool uses_only_letters_up_to(int n) const;

    friend Word operator+(const Word &a, const Word &b);
    friend bool operator==(const Word &, const Word &) = default;
    // Length-lexicographic: shorter words first, then letter by letter.
    friend std::strong_ordering operator<=>(const Word &a, const Word &b);

private:
    std::vector<int> letters_;
};

// "g0" for the empty word, otherwise "[1,2,1]".
std::string to_string(const Word &w);

std::vector<Word> words_of_length(int n, int len);

// All words with |w| <= max_len in length-lex order.
std::vector<Word> words_up_to(int n, int max_len);

std::size_t count_words_up_to(int n, int max_len);

// Position of w in the sequence produced by words_up_to(n, *).
std::size_t length_lex_index(const Word &w, int n);

} // namespace ncd
