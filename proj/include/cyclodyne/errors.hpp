#pragma once

#include <stdexcept>
#include <string>

namespace cyclodyne {

// Rejected construction input: non-prime p/q, p >= q, gcd(p-1,q-1) != 2,
// an invalid primitive-root override, or a malformed sequence file.
class invalid_params : public std::invalid_argument {
public:
    explicit invalid_params(const std::string& what) : std::invalid_argument(what) {}
};

// A machine check of one of the numbered lemma identities failed.
class lemma_violation : public std::runtime_error {
public:
    lemma_violation(int lemma, const std::string& what)
        : std::runtime_error("lemma " + std::to_string(lemma) + ": " + what), lemma_(lemma) {}
    int lemma() const { return lemma_; }

private:
    int lemma_;
};

// A determinant or coprimality check contradicted one of the numbered theorems.
class theorem_violation : public std::runtime_error {
public:
    theorem_violation(int theorem, const std::string& what)
        : std::runtime_error("theorem " + std::to_string(theorem) + ": " + what), theorem_(theorem) {}
    int theorem() const { return theorem_; }

private:
    int theorem_;
};

// A character-sum expression could not be collapsed to a single integer:
// the convolution coefficients were not constant on the residue classes,
// or the two unit-class coefficients disagreed. Signals a broken partition.
class not_reducible : public std::runtime_error {
public:
    explicit not_reducible(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cyclodyne
