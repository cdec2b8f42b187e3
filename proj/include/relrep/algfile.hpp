#pragma once

#include <cctype>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "relrep/algebra.hpp"
#include "relrep/chain.hpp"
#include "relrep/model.hpp"
#include "relrep/relation.hpp"

namespace relrep {

struct parse_error : std::runtime_error {
    int line;
    int column;

    parse_error(int line_, int column_, const std::string& what_)
        : std::runtime_error("line " + std::to_string(line_) + ", col " +
                             std::to_string(column_) + ": " + what_),
          line(line_),
          column(column_) {}
};

struct AlgebraSpecFile {
    FiniteAlgebra algebra;
    int elements_line = 0;
    std::vector<int> comp_row_lines;
    std::vector<int> meet_row_lines;
};

namespace detail {

struct Token {
    std::string text;
    int column;  // 1-based
};

/// Tokens of one line, comments ('#' to end of line) stripped.
inline std::vector<Token> tokenize_line(const std::string& raw) {
    std::vector<Token> out;
    std::size_t end = raw.find('#');
    if (end == std::string::npos) end = raw.size();
    std::size_t i = 0;
    while (i < end) {
        if (std::isspace(static_cast<unsigned char>(raw[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < end && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
        out.push_back({raw.substr(start, i - start), static_cast<int>(start) + 1});
    }
    return out;
}

struct Line {
    int number;  // 1-based
    std::vector<Token> tokens;
};

inline std::vector<Line> logical_lines(const std::string& text) {
    std::vector<Line> out;
    std::istringstream is(text);
    std::string raw;
    int number = 0;
    while (std::getline(is, raw)) {
        ++number;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        auto toks = tokenize_line(raw);
        if (!toks.empty()) out.push_back({number, std::move(toks)});
    }
    return out;
}

inline int parse_int_token(const Token& tok, int line, const char* what) {
    std::size_t pos = 0;
    int value = 0;
    try {
        value = std::stoi(tok.text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != tok.text.size())
        throw parse_error(line, tok.column, std::string(what) + " expected, got '" +
                                                tok.text + "'");
    return value;
}

}  // namespace detail

/// Grammar: '#' starts a comment; "elements:" lists the names in index
/// order; "table comp:" and "table meet:" are each followed by m rows of m
/// names, row i column j giving op(i,j). Sections may come in either order
/// but not twice.
inline AlgebraSpecFile parse_algebra(const std::string& text) {
    using detail::Line;
    auto lines = detail::logical_lines(text);
    std::size_t at = 0;

    AlgebraSpecFile out;
    if (at >= lines.size()) throw parse_error(1, 1, "elements: line absent");
    {
        const Line& line = lines[at];
        if (line.tokens[0].text != "elements:")
            throw parse_error(line.number, line.tokens[0].column,
                              "expected 'elements:', got '" + line.tokens[0].text + "'");
        if (line.tokens.size() < 2)
            throw parse_error(line.number, line.tokens[0].column, "no element names given");
        for (std::size_t i = 1; i < line.tokens.size(); ++i) {
            const auto& tok = line.tokens[i];
            if (tok.text.find(':') != std::string::npos)
                throw parse_error(line.number, tok.column,
                                  "element name may not contain ':'");
            for (const auto& prev : out.algebra.elements)
                if (prev == tok.text)
                    throw parse_error(line.number, tok.column,
                                      "duplicate element name '" + tok.text + "'");
            out.algebra.elements.push_back(tok.text);
        }
        out.elements_line = line.number;
        ++at;
    }
    const int m = out.algebra.size();

    auto index_of = [&](const detail::Token& tok, int line_no) {
        for (int i = 0; i < m; ++i)
            if (out.algebra.elements[i] == tok.text) return i;
        throw parse_error(line_no, tok.column, "unknown element name '" + tok.text + "'");
    };

    auto parse_table = [&](std::vector<std::vector<int>>& table,
                           std::vector<int>& row_lines, const std::string& label) {
        if (!table.empty())
            throw parse_error(lines[at].number, lines[at].tokens[0].column,
                              "duplicate section 'table " + label + ":'");
        ++at;
        for (int row = 0; row < m; ++row) {
            if (at >= lines.size())
                throw parse_error(lines.back().number, 1,
                                  "table " + label + ": only " + std::to_string(row) +
                                      " of " + std::to_string(m) + " rows present");
            const Line& line = lines[at];
            if (static_cast<int>(line.tokens.size()) != m)
                throw parse_error(line.number, line.tokens[0].column,
                                  "table " + label + ": row of " +
                                      std::to_string(line.tokens.size()) + " entries, " +
                                      std::to_string(m) + " expected");
            std::vector<int> entries;
            for (const auto& tok : line.tokens) entries.push_back(index_of(tok, line.number));
            table.push_back(std::move(entries));
            row_lines.push_back(line.number);
            ++at;
        }
    };

    while (at < lines.size()) {
        const Line& line = lines[at];
        if (line.tokens.size() == 2 && line.tokens[0].text == "table" &&
            line.tokens[1].text == "comp:") {
            parse_table(out.algebra.comp, out.comp_row_lines, "comp");
        } else if (line.tokens.size() == 2 && line.tokens[0].text == "table" &&
                   line.tokens[1].text == "meet:") {
            parse_table(out.algebra.meet, out.meet_row_lines, "meet");
        } else {
            throw parse_error(line.number, line.tokens[0].column,
                              "unexpected content '" + line.tokens[0].text + "'");
        }
    }
    if (out.algebra.comp.empty())
        throw parse_error(lines.back().number, 1, "table comp: absent");
    if (out.algebra.meet.empty())
        throw parse_error(lines.back().number, 1, "table meet: absent");
    check_well_formed(out.algebra);
    return out;
}

/// Canonical form of the parse_algebra grammar: single spaces, comp before
/// meet, one row per line, trailing newline. Output re-parses to an equal
/// algebra.
inline void print_algebra(std::ostream& os, const FiniteAlgebra& alg) {
    os << "elements:";
    for (const auto& name : alg.elements) os << " " << name;
    os << "\n";
    auto table = [&](const char* label, const std::vector<std::vector<int>>& rows) {
        os << "table " << label << ":\n";
        for (const auto& row : rows) {
            for (std::size_t j = 0; j < row.size(); ++j)
                os << (j ? " " : "") << alg.elements[row[j]];
            os << "\n";
        }
    };
    table("comp", alg.comp);
    table("meet", alg.meet);
}

inline std::string print_algebra(const FiniteAlgebra& alg) {
    std::ostringstream os;
    print_algebra(os, alg);
    return os.str();
}

struct ModelFile {
    int base_size = 1;
    std::vector<NamedRelation> relations;
};

/// Grammar: "base <n>" first, then "rel <name>:" sections each holding zero
/// or more "x y" pair lines. Comments as in parse_algebra.
inline ModelFile parse_model_file(const std::string& text) {
    auto lines = detail::logical_lines(text);
    if (lines.empty()) throw parse_error(1, 1, "base line absent");

    ModelFile out;
    {
        const auto& line = lines[0];
        if (line.tokens[0].text != "base" || line.tokens.size() != 2)
            throw parse_error(line.number, line.tokens[0].column,
                              "expected 'base <n>' on the first line");
        out.base_size = detail::parse_int_token(line.tokens[1], line.number, "base size");
        if (out.base_size < 1 || out.base_size > Relation::kMaxBase)
            throw parse_error(line.number, line.tokens[1].column,
                              "base size must be between 1 and " +
                                  std::to_string(Relation::kMaxBase));
    }

    Relation* current = nullptr;
    for (std::size_t at = 1; at < lines.size(); ++at) {
        const auto& line = lines[at];
        if (line.tokens[0].text == "rel") {
            if (line.tokens.size() != 2 || line.tokens[1].text.empty() ||
                line.tokens[1].text.back() != ':')
                throw parse_error(line.number, line.tokens[0].column,
                                  "expected 'rel <name>:'");
            std::string name = line.tokens[1].text.substr(0, line.tokens[1].text.size() - 1);
            if (name.empty())
                throw parse_error(line.number, line.tokens[1].column, "empty relation name");
            for (const auto& prev : out.relations)
                if (prev.name == name)
                    throw parse_error(line.number, line.tokens[1].column,
                                      "duplicate relation '" + name + "'");
            out.relations.push_back({std::move(name), Relation(out.base_size)});
            current = &out.relations.back().rel;
            continue;
        }
        if (!current)
            throw parse_error(line.number, line.tokens[0].column,
                              "pair line before any 'rel <name>:' section");
        if (line.tokens.size() != 2)
            throw parse_error(line.number, line.tokens[0].column,
                              "expected 'x y' pair line");
        int x = detail::parse_int_token(line.tokens[0], line.number, "pair coordinate");
        int y = detail::parse_int_token(line.tokens[1], line.number, "pair coordinate");
        if (x < 0 || x >= out.base_size)
            throw parse_error(line.number, line.tokens[0].column,
                              "coordinate " + std::to_string(x) + " outside base");
        if (y < 0 || y >= out.base_size)
            throw parse_error(line.number, line.tokens[1].column,
                              "coordinate " + std::to_string(y) + " outside base");
        current->insert(x, y);
    }
    return out;
}

/// The z, e, r triple of a model file; exactly those three relations must
/// be present (any order).
inline FiniteTriple triple_from_model_file(const ModelFile& file) {
    std::optional<Relation> z, e, r;
    for (const auto& named : file.relations) {
        if (named.name == "z")
            z = named.rel;
        else if (named.name == "e")
            e = named.rel;
        else if (named.name == "r")
            r = named.rel;
        else
            throw std::invalid_argument("model file: unexpected relation '" + named.name +
                                        "' (z, e, r expected)");
    }
    if (!z || !e || !r)
        throw std::invalid_argument("model file: relations z, e, r must all be present");
    return FiniteTriple(*z, *e, *r);
}

}  // namespace relrep
