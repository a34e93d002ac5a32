#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace saxmine {

struct Token {
    enum class Kind { Terminal, Rule };
    Kind kind = Kind::Terminal;
    int id = 0;

    bool operator==(const Token&) const = default;
};

// Sequitur output. Rule ids are dense, 0..rules.size()-1, numbered in
// first-appearance order of a top-down traversal.
struct Grammar {
    std::vector<Token> sequence;                // compressed top-level string
    std::map<int, std::vector<Token>> rules;    // ruleId -> body (length >= 2)
    std::map<int, int> useCount;                // ruleId -> reference count
};

struct UnwrappedToken {
    int terminalId = 0;
    int depth = 0;  // number of rule indirections above this terminal

    bool operator==(const UnwrappedToken&) const = default;
};

struct CorruptGrammar : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Online Sequitur: digram uniqueness and rule utility hold on the result.
Grammar inferGrammar(std::span<const int> tokens);

// Full decompression; inverse of inferGrammar.
std::vector<int> expandGrammar(const Grammar& g);

// Depth-annotated decompression: terminals sitting directly in the
// top-level sequence get depth 0, each rule nesting adds 1.
std::vector<UnwrappedToken> unwrapGrammar(const Grammar& g);

// Debug text dump, top-level sequence first, one rule per line.
// Terminal ids are printed through `name` when given.
std::string dumpGrammar(const Grammar& g,
                        const std::vector<std::string>* names = nullptr);

}  // namespace saxmine
