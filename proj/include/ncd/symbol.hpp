#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncd/commutative.hpp"
#include "ncd/rational.hpp"
#include "ncd/word.hpp"

namespace ncd {

using TermMap = std::map<Word, Rational>;

/// A free polynomial sum a_alpha X_alpha in n noncommuting indeterminates.
///
/// Construction only enforces that every word is over the alphabet 1..n and
/// drops zero coefficients. Regular positivity (no constant term, positive
/// linear part, nonnegative coefficients) is a separate check so that
/// offending input can be reported clause by clause; operations that need a
/// symbol call require_regular_positive() on entry.
class FreePolynomial {
public:
    FreePolynomial(int n, TermMap terms);

    int n() const noexcept { return n_; }
    const TermMap &terms() const noexcept { return terms_; }
    Rational coefficient(const Word &w) const;
    int degree() const;

    friend bool operator==(const FreePolynomial &, const FreePolynomial &) = default;

private:
    int n_;
    TermMap terms_;
};

using CollapsedPolynomial = CommutativePolynomial<Rational>;

struct ValidationIssue {
    std::string clause; // e.g. "a_{g_i}>0"
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    // The growth condition on sum |a_alpha|^2 over each length is automatic
    // for finitely supported symbols.
    bool growth_condition_vacuous = true;

    bool ok() const noexcept { return issues.empty(); }
};

struct Normalization {
    FreePolynomial symbol;
    std::vector<Rational> lambda;
};

struct Restriction {
    FreePolynomial symbol;
    // kept[i] is the original index of new variable i+1.
    std::vector<int> kept;
};

// Grammar: poly := term ('+' term)*; term := coeff? factor ('*' factor)*;
// factor := 'X' int; coeff := int | int '/' int | decimal.
// When n is omitted it is the largest index that occurs.
FreePolynomial parse_symbol(std::string_view text, std::optional<int> n = std::nullopt);

std::string to_text(const FreePolynomial &f);

nlohmann::json to_json(const FreePolynomial &f);
FreePolynomial symbol_from_json(const nlohmann::json &j);

// JSON object when the text starts with '{', the text grammar otherwise.
FreePolynomial read_symbol(std::string_view text, std::optional<int> n = std::nullopt);

ValidationReport validate_regular_positive(const FreePolynomial &f);
void require_regular_positive(const FreePolynomial &f);

void require_permutation(std::span<const int> sigma, int n);

// Substitutes X_i -> lambda_i X_{sigma(i)}; sigma holds 1-based images.
FreePolynomial apply_permutation_rescaling(const FreePolynomial &g, std::span<const int> sigma,
                                           std::span<const Rational> lambda);

Normalization normalize_degree_one(const FreePolynomial &f);
bool is_degree_one_normalized(const FreePolynomial &f);

// Commutative image: coefficient of a multidegree is the sum of a_alpha over
// the words with those letter counts.
CollapsedPolynomial collapse(const FreePolynomial &f);

// Sets every variable outside `subset` to zero and renumbers the survivors
// 1..|subset| in increasing order.
Restriction restrict_variables(const FreePolynomial &f, std::span<const int> subset);

} // namespace ncd
