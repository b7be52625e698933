#include "ncd/symbol.hpp"

#include <algorithm>
#include <cctype>

#include "ncd/errors.hpp"

namespace ncd {

FreePolynomial::FreePolynomial(int n, TermMap terms) : n_(n)
{
    if (n < 1) {
        throw InvalidInput("symbol needs at least one indeterminate");
    }
    for (auto &[w, c] : terms) {
        if (!w.uses_only_letters_up_to(n)) {
            throw InvalidInput("word " + to_string(w) + " uses a letter outside 1.." + std::to_string(n));
        }
        if (c != 0) {
            terms_.emplace(w, c);
        }
    }
}

Rational FreePolynomial::coefficient(const Word &w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

int FreePolynomial::degree() const
{
    return terms_.empty() ? 0 : static_cast<int>(terms_.rbegin()->first.size());
}

// ---------------------------------------------------------------------------
// Text grammar

namespace {

class SymbolParser {
public:
    explicit SymbolParser(std::string_view text) : text_(text) {}

    TermMap parse(int &max_index)
    {
        TermMap terms;
        skip_ws();
        if (at_end()) {
            throw ParseError("empty symbol", pos_);
        }
        while (true) {
            auto [w, c] = term(max_index);
            terms[w] += c;
            skip_ws();
            if (at_end()) {
                break;
            }
            expect('+');
        }
        return terms;
    }

private:
    std::pair<Word, Rational> term(int &max_index)
    {
        skip_ws();
        Rational c(1);
        if (!at_end() && (std::isdigit(peek()) || peek() == '.')) {
            c = coeff();
            skip_ws();
        }
        std::vector<int> letters;
        letters.push_back(factor(max_index));
        while (true) {
            skip_ws();
            if (at_end() || peek() != '*') {
                break;
            }
            ++pos_;
            letters.push_back(factor(max_index));
        }
        return {Word(std::move(letters)), c};
    }

    Rational coeff()
    {
        std::size_t start = pos_;
        while (!at_end() && (std::isdigit(peek()) || peek() == '.')) {
            ++pos_;
        }
        std::size_t mid = pos_;
        skip_ws();
        if (!at_end() && peek() == '/') {
            ++pos_;
            skip_ws();
            std::size_t dstart = pos_;
            while (!at_end() && std::isdigit(peek())) {
                ++pos_;
            }
            if (dstart == pos_) {
                throw ParseError("expected denominator", pos_);
            }
            std::string num(text_.substr(start, mid - start));
            if (num.find('.') != std::string::npos) {
                throw ParseError("decimal numerator in fraction", start);
            }
            Rational d = parse_rational(text_.substr(dstart, pos_ - dstart));
            if (d == 0) {
                throw ParseError("zero denominator", dstart);
            }
            Rational r = parse_rational(num) / d;
            r.canonicalize();
            return r;
        }
        pos_ = mid;
        try {
            return parse_rational(text_.substr(start, mid - start));
        } catch (const InvalidInput &) {
            throw ParseError("malformed coefficient", start);
        }
    }

    int factor(int &max_index)
    {
        skip_ws();
        if (at_end()) {
            throw ParseError("expected variable", pos_);
        }
        if (peek() != 'X') {
            throw ParseError(std::string("unknown variable starting with '") + text_[pos_] + "'", pos_);
        }
        std::size_t var_pos = pos_;
        ++pos_;
        std::size_t start = pos_;
        while (!at_end() && std::isdigit(peek())) {
            ++pos_;
        }
        if (start == pos_) {
            throw ParseError("expected variable index after 'X'", pos_);
        }
        if (pos_ - start > 6) {
            throw ParseError("variable index too large", var_pos);
        }
        int idx = std::stoi(std::string(text_.substr(start, pos_ - start)));
        if (idx < 1) {
            throw ParseError("unknown variable X" + std::to_string(idx), var_pos);
        }
        max_index = std::max(max_index, idx);
        index_positions_.emplace_back(idx, var_pos);
        return idx;
    }

    void expect(char c)
    {
        skip_ws();
        if (at_end() || text_[pos_] != c) {
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
        ++pos_;
    }

    void skip_ws()
    {
        while (!at_end() && std::isspace(peek())) {
            ++pos_;
        }
    }

    bool at_end() const { return pos_ >= text_.size(); }
    int peek() const { return static_cast<unsigned char>(text_[pos_]); }

public:
    std::vector<std::pair<int, std::size_t>> index_positions_;

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

FreePolynomial parse_symbol(std::string_view text, std::optional<int> n)
{
    SymbolParser parser(text);
    int max_index = 0;
    TermMap terms = parser.parse(max_index);
    if (n) {
        for (auto [idx, pos] : parser.index_positions_) {
            if (idx > *n) {
                throw ParseError("index X" + std::to_string(idx) + " exceeds declared n=" + std::to_string(*n), pos);
            }
        }
    }
    return FreePolynomial(n.value_or(max_index), std::move(terms));
}

std::string to_text(const FreePolynomial &f)
{
    std::string out;
    for (const auto &[w, c] : f.terms()) {
        if (!out.empty()) {
            out += " + ";
        }
        if (c != 1 || w.empty()) {
            out += to_string(c);
            if (!w.empty()) {
                out += ' ';
            }
        }
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) {
                out += '*';
            }
            out += 'X' + std::to_string(w[i]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const FreePolynomial &f)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[w, c] : f.terms()) {
        terms.push_back({{"word", w.letters()}, {"coeff", to_string(c)}});
    }
    return {{"n", f.n()}, {"terms", terms}};
}

namespace {

Rational coeff_from_json(const nlohmann::json &c)
{
    if (c.is_string()) {
        return parse_rational(c.get<std::string>());
    }
    if (c.is_number_integer()) {
        return Rational(mpz_class(c.dump(), 10));
    }
    if (c.is_number_float()) {
        // The shortest round-trip decimal is read exactly.
        return parse_rational(c.dump());
    }
    throw InvalidInput("coefficient must be a string \"p/q\" or a number");
}

} // namespace

FreePolynomial symbol_from_json(const nlohmann::json &j)
{
    if (!j.is_object() || !j.contains("n") || !j.contains("terms")) {
        throw InvalidInput("symbol JSON needs fields \"n\" and \"terms\"");
    }
    if (!j["n"].is_number_integer()) {
        throw InvalidInput("\"n\" must be an integer");
    }
    int n = j["n"].get<int>();
    if (!j["terms"].is_array()) {
        throw InvalidInput("\"terms\" must be an array");
    }
    TermMap terms;
    for (const auto &t : j["terms"]) {
        if (!t.is_object() || !t.contains("word") || !t.contains("coeff") || !t["word"].is_array()) {
            throw InvalidInput("each term needs \"word\" (array) and \"coeff\"");
        }
        std::vector<int> letters;
        for (const auto &l : t["word"]) {
            if (!l.is_number_integer()) {
                throw InvalidInput("word letters must be integers");
            }
            letters.push_back(l.get<int>());
        }
        terms[Word(std::move(letters))] += coeff_from_json(t["coeff"]);
    }
    return FreePolynomial(n, std::move(terms));
}

FreePolynomial read_symbol(std::string_view text, std::optional<int> n)
{
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error &e) {
            throw InvalidInput(std::string("malformed JSON: ") + e.what());
        }
        FreePolynomial f = symbol_from_json(j);
        if (n && *n != f.n()) {
            throw InvalidInput("declared n does not match the JSON symbol");
        }
        return f;
    }
    return parse_symbol(text, n);
}

// ---------------------------------------------------------------------------
// Validation and transformations

ValidationReport validate_regular_positive(const FreePolynomial &f)
{
    ValidationReport report;
    if (Rational c = f.coefficient(Word{}); c != 0) {
        report.issues.push_back({"a_{g_0}=0", "constant term " + to_string(c)});
    }
    for (int i = 1; i <= f.n(); ++i) {
        if (Rational c = f.coefficient(Word{i}); c <= 0) {
            report.issues.push_back({"a_{g_i}>0", "coefficient of X" + std::to_string(i) + " is " + to_string(c)});
        }
    }
    for (const auto &[w, c] : f.terms()) {
        if (c < 0 && w.size() > 1) {
            report.issues.push_back({"a_alpha>=0", "coefficient of " + to_string(w) + " is " + to_string(c)});
        }
    }
    return report;
}

void require_regular_positive(const FreePolynomial &f)
{
    ValidationReport r = validate_regular_positive(f);
    if (!r.ok()) {
        std::string msg = "symbol is not regular positive:";
        for (const auto &issue : r.issues) {
            msg += " [" + issue.clause + ": " + issue.detail + "]";
        }
        throw InvalidInput(msg);
    }
}

void require_permutation(std::span<const int> sigma, int n)
{
    if (static_cast<int>(sigma.size()) != n) {
        throw InvalidInput("permutation has " + std::to_string(sigma.size()) + " entries, expected " +
                           std::to_string(n));
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int s : sigma) {
        if (s < 1 || s > n || seen[static_cast<std::size_t>(s - 1)]) {
            throw InvalidInput("sigma is not a permutation of 1.." + std::to_string(n));
        }
        seen[static_cast<std::size_t>(s - 1)] = true;
    }
}

FreePolynomial apply_permutation_rescaling(const FreePolynomial &g, std::span<const int> sigma,
                                           std::span<const Rational> lambda)
{
    require_permutation(sigma, g.n());
    if (static_cast<int>(lambda.size()) != g.n()) {
        throw InvalidInput("lambda must have one entry per indeterminate");
    }
    for (const Rational &l : lambda) {
        if (l <= 0) {
            throw InvalidInput("rescaling factors must be positive");
        }
    }
    TermMap out;
    for (const auto &[w, c] : g.terms()) {
        std::vector<int> letters;
        letters.reserve(w.size());
        Rational coeff = c;
        for (int l : w) {
            letters.push_back(sigma[static_cast<std::size_t>(l - 1)]);
            coeff *= lambda[static_cast<std::size_t>(l - 1)];
        }
        out.emplace(Word(std::move(letters)), coeff);
    }
    return FreePolynomial(g.n(), std::move(out));
}

Normalization normalize_degree_one(const FreePolynomial &f)
{
    require_regular_positive(f);
    std::vector<int> id(static_cast<std::size_t>(f.n()));
    std::vector<Rational> lambda;
    for (int i = 1; i <= f.n(); ++i) {
        id[static_cast<std::size_t>(i - 1)] = i;
        lambda.push_back(Rational(1) / f.coefficient(Word{i}));
    }
    for (auto &l : lambda) {
        l.canonicalize();
    }
    return {apply_permutation_rescaling(f, id, lambda), lambda};
}

bool is_degree_one_normalized(const FreePolynomial &f)
{
    for (int i = 1; i <= f.n(); ++i) {
        if (f.coefficient(Word{i}) != 1) {
            return false;
        }
    }
    return true;
}

CollapsedPolynomial collapse(const FreePolynomial &f)
{
    CollapsedPolynomial p(f.n());
    for (const auto &[w, c] : f.terms()) {
        p.add_term(w.letter_counts(f.n()), c);
    }
    return p;
}

Restriction restrict_variables(const FreePolynomial &f, std::span<const int> subset)
{
    if (subset.empty()) {
        throw InvalidInput("restriction needs a nonempty variable set");
    }
    std::vector<int> kept(subset.begin(), subset.end());
    std::sort(kept.begin(), kept.end());
    if (std::adjacent_find(kept.begin(), kept.end()) != kept.end() || kept.front() < 1 || kept.back() > f.n()) {
        throw InvalidInput("restriction set must be distinct indices within 1..n");
    }
    std::vector<int> rename(static_cast<std::size_t>(f.n()) + 1, 0);
    for (std::size_t i = 0; i < kept.size(); ++i) {
        rename[static_cast<std::size_t>(kept[i])] = static_cast<int>(i) + 1;
    }
    TermMap out;
    for (const auto &[w, c] : f.terms()) {
        std::vector<int> letters;
        bool keep = true;
        for (int l : w) {
            if (rename[static_cast<std::size_t>(l)] == 0) {
                keep = false;
                break;
            }
            letters.push_back(rename[static_cast<std::size_t>(l)]);
        }
        if (keep) {
            out.emplace(Word(std::move(letters)), c);
        }
    }
    return {FreePolynomial(static_cast<int>(kept.size()), std::move(out)), kept};
}

} // namespace ncd
