#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace crooked {

/// One generator letter (i, j) with i in {1..m} and j = ±1; (i,-1) denotes
/// the inverse of generator i.
struct GeneratorIndex {
    int i = 1;
    int sign = +1;

    GeneratorIndex() = default;
    GeneratorIndex(int index, int s) : i(index), sign(s) {
        if (index < 1) throw std::invalid_argument("GeneratorIndex: index must be >= 1");
        if (s != 1 && s != -1) throw std::invalid_argument("GeneratorIndex: sign must be ±1");
    }

    GeneratorIndex inverse() const { return {i, -sign}; }

    bool operator==(const GeneratorIndex& o) const { return i == o.i && sign == o.sign; }
    bool operator!=(const GeneratorIndex& o) const { return !(*this == o); }
    bool operator<(const GeneratorIndex& o) const {
        if (i != o.i) return i < o.i;
        return sign > o.sign;  // "+" sorts before "-"
    }

    std::string str() const { return std::to_string(i) + (sign > 0 ? "+" : "-"); }
};

/// A reduced word over the generator alphabet; adjacent inverse pairs are
/// rejected at construction.  The empty word is the identity.
class Word {
   public:
    Word() = default;

    explicit Word(std::vector<GeneratorIndex> letters) : letters_(std::move(letters)) {
        for (std::size_t k = 1; k < letters_.size(); ++k)
            if (letters_[k] == letters_[k - 1].inverse())
                throw std::invalid_argument("Word: not reduced at position " + std::to_string(k));
    }

    static Word single(GeneratorIndex l) { return Word(std::vector<GeneratorIndex>{l}); }

    /// Concatenate and freely reduce.
    static Word concat_reduce(const Word& a, const Word& b) {
        std::vector<GeneratorIndex> out = a.letters_;
        for (const auto& l : b.letters_) {
            if (!out.empty() && out.back() == l.inverse())
                out.pop_back();
            else
                out.push_back(l);
        }
        return Word(std::move(out));
    }

    Word inverse() const {
        std::vector<GeneratorIndex> out;
        out.reserve(letters_.size());
        for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->inverse());
        return Word(std::move(out));
    }

    /// Append one letter with free reduction.
    void push_reduce(GeneratorIndex l) {
        if (!letters_.empty() && letters_.back() == l.inverse())
            letters_.pop_back();
        else
            letters_.push_back(l);
    }

    bool empty() const { return letters_.empty(); }
    std::size_t size() const { return letters_.size(); }
    const GeneratorIndex& operator[](std::size_t k) const { return letters_[k]; }
    const std::vector<GeneratorIndex>& letters() const { return letters_; }
    GeneratorIndex front() const { return letters_.front(); }
    GeneratorIndex back() const { return letters_.back(); }

    bool is_cyclically_reduced() const {
        if (letters_.size() < 2) return !letters_.empty();
        return letters_.back() != letters_.front().inverse();
    }

    /// Letters never step (i,j) -> (i,-j); every word a point-location
    /// descent emits satisfies this.
    bool has_no_immediate_backtrack() const {
        for (std::size_t k = 1; k < letters_.size(); ++k)
            if (letters_[k] == letters_[k - 1].inverse()) return false;
        return true;
    }

    bool operator==(const Word& o) const { return letters_ == o.letters_; }
    bool operator<(const Word& o) const {
        if (letters_.size() != o.letters_.size()) return letters_.size() < o.letters_.size();
        for (std::size_t k = 0; k < letters_.size(); ++k) {
            if (letters_[k] != o.letters_[k]) return letters_[k] < o.letters_[k];
        }
        return false;
    }

    std::string str() const {
        if (letters_.empty()) return "[]";
        std::string s;
        for (const auto& l : letters_) s += "[" + l.str() + "]";
        return s;
    }

   private:
    std::vector<GeneratorIndex> letters_;
};

/// All reduced words of length exactly len over m generators.
std::vector<Word> reduced_words_of_length(int m, int len);

/// All reduced words of length <= maxlen (including the empty word).
std::vector<Word> reduced_words_up_to(int m, int maxlen);

}  // namespace crooked
