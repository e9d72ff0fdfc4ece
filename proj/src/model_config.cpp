// Copyright 2026 The pulsekit Authors.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pulsekit/model_config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pulsekit/errors.hpp"

namespace pulsekit {

namespace {

using nlohmann::json;

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, LParen, RParen, End } kind;
    double number = 0.0;
    std::string text;
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> tokens;
    auto push = [&tokens](Token::Kind kind, double number = 0.0,
                          std::string ident = {}) {
        tokens.push_back(Token{kind, number, std::move(ident)});
    };
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '+') {
            push(Token::Plus);
            ++i;
        } else if (c == '-') {
            push(Token::Minus);
            ++i;
        } else if (c == '*') {
            push(Token::Star);
            ++i;
        } else if (c == '(') {
            push(Token::LParen);
            ++i;
        } else if (c == ')') {
            push(Token::RParen);
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            char* end = nullptr;
            const double value = std::strtod(text.c_str() + i, &end);
            push(Token::Number, value);
            i = static_cast<std::size_t>(end - text.c_str());
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string ident;
            while (i < text.size() &&
                   std::isalpha(static_cast<unsigned char>(text[i]))) {
                ident.push_back(text[i]);
                ++i;
            }
            push(Token::Ident, 0.0, std::move(ident));
        } else {
            throw ConfigError("operator expression: unexpected character '" +
                              std::string(1, c) + "' in \"" + text + "\"");
        }
    }
    push(Token::End);
    return tokens;
}

struct Factor {
    std::string name; // X, Y, Z, I, Jx, Jy, Jz
    int argument = 0; // site for Paulis, dimension for J operators
    bool is_spin() const { return name.size() == 2 && name[0] == 'J'; }
};

struct Term {
    double coefficient = 1.0;
    std::vector<Factor> factors;
};

class ExprParser {
  public:
    explicit ExprParser(const std::string& text)
        : text_(text), tokens_(tokenize(text)) {}

    std::vector<Term> parse() {
        std::vector<Term> terms;
        double sign = 1.0;
        if (peek().kind == Token::Minus) {
            advance();
            sign = -1.0;
        }
        terms.push_back(parse_term(sign));
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            const double s = peek().kind == Token::Minus ? -1.0 : 1.0;
            advance();
            terms.push_back(parse_term(s));
        }
        expect(Token::End, "end of expression");
        return terms;
    }

  private:
    Term parse_term(double sign) {
        Term term;
        term.coefficient = sign;
        bool saw_factor = false;
        if (peek().kind == Token::Number) {
            term.coefficient *= advance().number;
            if (peek().kind == Token::Star) {
                advance();
            } else {
                return term; // pure scalar term (times identity)
            }
        }
        term.factors.push_back(parse_factor());
        saw_factor = true;
        while (peek().kind == Token::Star) {
            advance();
            if (peek().kind == Token::Number) {
                term.coefficient *= advance().number;
            } else {
                term.factors.push_back(parse_factor());
            }
        }
        (void)saw_factor;
        return term;
    }

    Factor parse_factor() {
        const Token t = expect(Token::Ident, "operator name");
        Factor f;
        f.name = t.text;
        const bool pauli = f.name == "X" || f.name == "Y" || f.name == "Z" || f.name == "I";
        const bool spin = f.name == "Jx" || f.name == "Jy" || f.name == "Jz";
        if (!pauli && !spin) {
            throw ConfigError("operator expression: unknown operator \"" + f.name +
                              "\" in \"" + text_ + "\" (expected X/Y/Z/I(site) or "
                              "Jx/Jy/Jz(dim))");
        }
        expect(Token::LParen, "'('");
        const Token arg = expect(Token::Number, "integer argument");
        f.argument = static_cast<int>(arg.number);
        if (f.argument != arg.number || f.argument < 1) {
            throw ConfigError("operator expression: argument of " + f.name +
                              " must be a positive integer in \"" + text_ + "\"");
        }
        expect(Token::RParen, "')'");
        return f;
    }

    const Token& peek() const { return tokens_[pos_]; }
    Token advance() { return tokens_[pos_++]; }
    Token expect(Token::Kind kind, const std::string& what) {
        if (peek().kind != kind) {
            throw ConfigError("operator expression: expected " + what + " in \"" +
                              text_ + "\"");
        }
        return advance();
    }

    std::string text_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

struct ExprShape {
    int max_site = 0;
    int spin_dim = 0;
};

ExprShape scan_shape(const std::vector<Term>& terms, const std::string& text) {
    ExprShape shape;
    for (const Term& term : terms) {
        for (const Factor& f : term.factors) {
            if (f.is_spin()) {
                if (shape.spin_dim != 0 && shape.spin_dim != f.argument) {
                    throw ConfigError("operator expression: mixed spin dimensions in \"" +
                                      text + "\"");
                }
                shape.spin_dim = f.argument;
            } else {
                shape.max_site = std::max(shape.max_site, f.argument);
            }
        }
        if (shape.spin_dim != 0 && shape.max_site != 0) {
            throw ConfigError("operator expression: cannot mix Pauli and spin "
                              "operators in \"" +
                              text + "\"");
        }
    }
    return shape;
}

Matrix evaluate_pauli_terms(const std::vector<Term>& terms, int n_qubits,
                            const std::string& text) {
    const Eigen::Index dim = Eigen::Index(1) << n_qubits;
    Matrix total = Matrix::Zero(dim, dim);
    for (const Term& term : terms) {
        // Per-site 2x2 products, applied left to right within the term.
        std::map<int, Matrix> site_ops;
        for (const Factor& f : term.factors) {
            if (f.argument > n_qubits) {
                throw ConfigError("operator expression: site " +
                                  std::to_string(f.argument) + " exceeds n_qubits = " +
                                  std::to_string(n_qubits) + " in \"" + text + "\"");
            }
            Matrix op;
            if (f.name == "I") {
                op = Matrix::Identity(2, 2);
            } else {
                op = pauli_matrix(f.name == "X"   ? PauliAxis::X
                                  : f.name == "Y" ? PauliAxis::Y
                                                  : PauliAxis::Z);
            }
            auto [it, inserted] = site_ops.try_emplace(f.argument, op);
            if (!inserted) {
                it->second = (it->second * op).eval();
            }
        }
        Matrix product = Matrix::Identity(1, 1);
        for (int site = 1; site <= n_qubits; ++site) {
            const auto it = site_ops.find(site);
            product = kron(product, it == site_ops.end() ? Matrix::Identity(2, 2)
                                                         : it->second);
        }
        total += term.coefficient * product;
    }
    return total;
}

Matrix evaluate_spin_terms(const std::vector<Term>& terms, int d) {
    const SpinOperators spin = spin_irrep(d);
    Matrix total = Matrix::Zero(d, d);
    for (const Term& term : terms) {
        Matrix product = Matrix::Identity(d, d);
        for (const Factor& f : term.factors) {
            const Matrix& op = f.name == "Jx"   ? spin.jx.matrix()
                               : f.name == "Jy" ? spin.jy.matrix()
                                                : spin.jz.matrix();
            product = (product * op).eval();
        }
        total += term.coefficient * product;
    }
    return total;
}

StateVector parse_ket(const std::string& text, Eigen::Index dim) {
    if (text.size() < 3 || text.front() != '|' || text.back() != '>') {
        throw ConfigError("initial_state: malformed ket \"" + text + "\"");
    }
    const std::string body = text.substr(1, text.size() - 2);
    Vector state = Vector::Ones(1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (char c : body) {
        Vector site(2);
        switch (c) {
        case '0':
            site << 1, 0;
            break;
        case '1':
            site << 0, 1;
            break;
        case '+':
            site << inv_sqrt2, inv_sqrt2;
            break;
        case '-':
            site << inv_sqrt2, -inv_sqrt2;
            break;
        default:
            throw ConfigError("initial_state: unsupported ket symbol '" +
                              std::string(1, c) + "' in \"" + text + "\"");
        }
        Vector next(state.size() * 2);
        for (Eigen::Index i = 0; i < state.size(); ++i) {
            next[2 * i] = state[i] * site[0];
            next[2 * i + 1] = state[i] * site[1];
        }
        state = std::move(next);
    }
    if (state.size() != dim) {
        throw ConfigError("initial_state: ket \"" + text + "\" has dimension " +
                          std::to_string(state.size()) + ", model has dimension " +
                          std::to_string(dim));
    }
    return StateVector(std::move(state));
}

FamilyKind parse_family_kind(const std::string& name) {
    if (name == "two_qubit_zz") {
        return FamilyKind::TwoQubitZZ;
    }
    if (name == "spin_irrep") {
        return FamilyKind::SpinIrrep;
    }
    if (name == "ring") {
        return FamilyKind::RingCoupled;
    }
    throw ConfigError("model.family: unknown family \"" + name +
                      "\" (expected two_qubit_zz, spin_irrep or ring)");
}

InitialStateChoice parse_state_choice(const std::string& name) {
    if (name == "zero_zero") {
        return InitialStateChoice::ZeroZero;
    }
    if (name == "zero_plus") {
        return InitialStateChoice::ZeroPlus;
    }
    if (name == "highest_weight") {
        return InitialStateChoice::HighestWeight;
    }
    if (name == "all_zeros") {
        return InitialStateChoice::AllZeros;
    }
    throw ConfigError("model.initial_state: unknown choice \"" + name + "\"");
}

std::vector<std::string> string_list(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_array() || j[key].empty()) {
        throw ConfigError("model." + key + ": expected a nonempty array of "
                          "operator expressions");
    }
    std::vector<std::string> out;
    for (const auto& item : j[key]) {
        if (!item.is_string()) {
            throw ConfigError("model." + key + ": entries must be strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

} // namespace

Matrix parse_operator_expr(const std::string& text, int n_qubits) {
    ExprParser parser(text);
    const std::vector<Term> terms = parser.parse();
    const ExprShape shape = scan_shape(terms, text);
    if (shape.spin_dim != 0) {
        return evaluate_spin_terms(terms, shape.spin_dim);
    }
    if (n_qubits <= 0) {
        n_qubits = std::max(shape.max_site, 1);
    }
    return evaluate_pauli_terms(terms, n_qubits, text);
}

StateVector parse_state(const json& state_json, Eigen::Index dim) {
    if (state_json.is_string()) {
        const std::string text = state_json.get<std::string>();
        if (text == "highest_weight") {
            Vector psi = Vector::Zero(dim);
            psi[0] = 1.0;
            return StateVector(std::move(psi));
        }
        return parse_ket(text, dim);
    }
    if (state_json.is_array()) {
        if (static_cast<Eigen::Index>(state_json.size()) != dim) {
            throw ConfigError("initial_state: amplitude list length " +
                              std::to_string(state_json.size()) +
                              " does not match dimension " + std::to_string(dim));
        }
        Vector psi(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            const auto& entry = state_json[static_cast<std::size_t>(i)];
            if (entry.is_number()) {
                psi[i] = entry.get<double>();
            } else if (entry.is_array() && entry.size() == 2) {
                psi[i] = Complex(entry[0].get<double>(), entry[1].get<double>());
            } else {
                throw ConfigError("initial_state: amplitudes must be numbers or "
                                  "[re, im] pairs");
            }
        }
        return StateVector(std::move(psi));
    }
    throw ConfigError("initial_state: expected a ket string, \"highest_weight\" "
                      "or an amplitude array");
}

ResolvedModel resolve_model(const json& model_json) {
    if (!model_json.is_object()) {
        throw ConfigError("model: expected an object");
    }
    if (model_json.contains("family")) {
        ModelFamily family;
        family.kind = parse_family_kind(model_json["family"].get<std::string>());
        if (!model_json.contains("size")) {
            throw ConfigError("model.size: required for family models");
        }
        family.size = model_json["size"].get<int>();
        if (model_json.contains("initial_state")) {
            family.initial_state =
                parse_state_choice(model_json["initial_state"].get<std::string>());
        }
        ModelSpec spec = build_family(family);
        return ResolvedModel{std::move(spec), family,
                             family_name(family.kind) + "(size=" +
                                 std::to_string(family.size) + ")"};
    }

    if (!model_json.contains("encoders") && !model_json.contains("controls")) {
        throw ConfigError("model: needs either a \"family\" name or explicit "
                          "\"encoders\"/\"controls\" operator lists");
    }
    const auto encoder_texts = string_list(model_json, "encoders");
    const auto control_texts = string_list(model_json, "controls");
    if (!model_json.contains("observable") || !model_json["observable"].is_string()) {
        throw ConfigError("model.observable: expected an operator expression string");
    }
    const std::string observable_text = model_json["observable"].get<std::string>();

    // One scan over all expressions decides the dimension context.
    int spin_dim = 0;
    int max_site = 0;
    std::vector<std::string> all_texts = encoder_texts;
    all_texts.insert(all_texts.end(), control_texts.begin(), control_texts.end());
    all_texts.push_back(observable_text);
    for (const std::string& text : all_texts) {
        ExprParser parser(text);
        const ExprShape shape = scan_shape(parser.parse(), text);
        if (shape.spin_dim != 0) {
            if (spin_dim != 0 && spin_dim != shape.spin_dim) {
                throw ConfigError("model: spin operator dimensions disagree (" +
                                  std::to_string(spin_dim) + " vs " +
                                  std::to_string(shape.spin_dim) + ")");
            }
            spin_dim = shape.spin_dim;
        }
        max_site = std::max(max_site, shape.max_site);
    }
    if (spin_dim != 0 && max_site != 0) {
        throw ConfigError("model: cannot mix spin and Pauli operators across the "
                          "operator lists");
    }

    int n_qubits = 0;
    Eigen::Index dim = 0;
    if (spin_dim != 0) {
        dim = spin_dim;
    } else {
        n_qubits = model_json.value("n_qubits", max_site);
        if (n_qubits < 1) {
            throw ConfigError("model.n_qubits: could not infer a positive qubit count");
        }
        if (max_site > n_qubits) {
            throw ConfigError("model.n_qubits: operator site " +
                              std::to_string(max_site) + " exceeds n_qubits = " +
                              std::to_string(n_qubits));
        }
        dim = Eigen::Index(1) << n_qubits;
    }

    auto parse_list = [&](const std::vector<std::string>& texts,
                          const std::string& key) {
        std::vector<HermitianOperator> ops;
        ops.reserve(texts.size());
        for (const std::string& text : texts) {
            try {
                ops.emplace_back(parse_operator_expr(text, n_qubits));
            } catch (const std::invalid_argument& err) {
                throw ConfigError("model." + key + ": \"" + text + "\": " + err.what());
            }
        }
        return ops;
    };

    std::vector<HermitianOperator> encoders = parse_list(encoder_texts, "encoders");
    std::vector<HermitianOperator> controls = parse_list(control_texts, "controls");
    HermitianOperator observable =
        parse_list({observable_text}, "observable").front();
    if (model_json.value("rescale_observable", true)) {
        observable = rescale_observable(observable);
    }

    if (!model_json.contains("initial_state")) {
        throw ConfigError("model.initial_state: required for explicit models");
    }
    StateVector psi = parse_state(model_json["initial_state"], dim);

    ModelSpec spec(std::move(encoders), std::move(controls), std::move(observable),
                   std::move(psi));
    return ResolvedModel{std::move(spec), std::nullopt,
                         "explicit(dim=" + std::to_string(dim) + ")"};
}

} // namespace pulsekit
