#include "narlasso/dictionary.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <set>
#include <stdexcept>
#include <tuple>

namespace narlasso {

namespace {

std::tuple<int, int, int> order_key(const Factor& f) {
    return {static_cast<int>(f.kind), f.channel, f.lag};
}

}  // namespace

RegressorTerm::RegressorTerm(std::vector<Factor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
        throw std::invalid_argument("RegressorTerm: factor list is empty");
    }
    for (const Factor& f : factors_) {
        if (f.lag < 1) throw std::invalid_argument("RegressorTerm: lag must be >= 1");
        if (f.exponent < 1) throw std::invalid_argument("RegressorTerm: exponent must be >= 1");
        if (f.kind != FactorKind::Input && f.channel != 0) {
            throw std::invalid_argument("RegressorTerm: channel is only valid for input factors");
        }
    }
    std::sort(factors_.begin(), factors_.end(),
              [](const Factor& a, const Factor& b) { return order_key(a) < order_key(b); });
    // merge repeated (kind, channel, lag) into the exponent
    std::vector<Factor> merged;
    for (const Factor& f : factors_) {
        if (!merged.empty() && order_key(merged.back()) == order_key(f)) {
            merged.back().exponent += f.exponent;
        } else {
            merged.push_back(f);
        }
    }
    factors_ = std::move(merged);
}

int RegressorTerm::degree() const {
    int d = 0;
    for (const Factor& f : factors_) d += f.exponent;
    return d;
}

int RegressorTerm::max_lag() const {
    int lag = 0;
    for (const Factor& f : factors_) lag = std::max(lag, f.lag);
    return lag;
}

int RegressorTerm::max_lag_of(FactorKind kind) const {
    int lag = 0;
    for (const Factor& f : factors_) {
        if (f.kind == kind) lag = std::max(lag, f.lag);
    }
    return lag;
}

bool RegressorTerm::has_error_factor() const {
    return std::any_of(factors_.begin(), factors_.end(),
                       [](const Factor& f) { return f.kind == FactorKind::Error; });
}

Dictionary::Dictionary(std::vector<RegressorTerm> terms, LagBounds bounds, int max_degree)
    : terms_(std::move(terms)), bounds_(std::move(bounds)), max_degree_(max_degree) {
    validate_and_index();
}

Dictionary Dictionary::from_terms(std::vector<RegressorTerm> terms) {
    LagBounds bounds;
    int degree = 1;
    int channels = 0;
    for (const RegressorTerm& t : terms) {
        degree = std::max(degree, t.degree());
        for (const Factor& f : t.factors()) {
            if (f.kind == FactorKind::Input) channels = std::max(channels, f.channel + 1);
        }
    }
    bounds.input_max_lag.assign(channels, 0);
    bounds.input_min_lag.assign(channels, 1);
    for (const RegressorTerm& t : terms) {
        for (const Factor& f : t.factors()) {
            switch (f.kind) {
                case FactorKind::Output:
                    bounds.output_max_lag = std::max(bounds.output_max_lag, f.lag);
                    break;
                case FactorKind::Input:
                    bounds.input_max_lag[f.channel] = std::max(bounds.input_max_lag[f.channel], f.lag);
                    break;
                case FactorKind::Error:
                    bounds.error_max_lag = std::max(bounds.error_max_lag, f.lag);
                    break;
            }
        }
    }
    return Dictionary(std::move(terms), std::move(bounds), degree);
}

void Dictionary::validate_and_index() {
    if (terms_.empty()) throw std::invalid_argument("Dictionary: no terms");
    if (bounds_.input_min_lag.size() != bounds_.input_max_lag.size()) {
        throw std::invalid_argument("Dictionary: input lag bound size mismatch");
    }
    std::set<std::string> seen;
    for (std::size_t j = 0; j < terms_.size(); ++j) {
        const RegressorTerm& t = terms_[j];
        if (t.degree() > max_degree_) {
            throw std::invalid_argument("Dictionary: term exceeds max degree: " + format_term(t));
        }
        for (const Factor& f : t.factors()) {
            int bound = 0;
            int min_lag = 1;
            switch (f.kind) {
                case FactorKind::Output:
                    bound = bounds_.output_max_lag;
                    break;
                case FactorKind::Input:
                    if (f.channel < 0 ||
                        static_cast<std::size_t>(f.channel) >= bounds_.input_max_lag.size()) {
                        throw std::invalid_argument("Dictionary: input channel out of range");
                    }
                    bound = bounds_.input_max_lag[f.channel];
                    min_lag = bounds_.input_min_lag[f.channel];
                    break;
                case FactorKind::Error:
                    bound = bounds_.error_max_lag;
                    break;
            }
            if (f.lag < min_lag || f.lag > bound) {
                throw std::invalid_argument("Dictionary: lag out of bounds in term " + format_term(t));
            }
        }
        if (!seen.insert(format_term(t)).second) {
            throw std::invalid_argument("Dictionary: duplicate term " + format_term(t));
        }
        max_lag_ = std::max(max_lag_, t.max_lag());
        max_output_lag_ = std::max(max_output_lag_, t.max_lag_of(FactorKind::Output));
        if (t.has_error_factor()) error_terms_.push_back(j);
    }
}

Dictionary generate_polynomial_dictionary(int n_y, const std::vector<int>& n_u, int n_e,
                                          int n_degree) {
    if (n_degree < 1) throw std::invalid_argument("generate_polynomial_dictionary: n_degree < 1");
    if (n_y < 0 || n_e < 0) {
        throw std::invalid_argument("generate_polynomial_dictionary: negative lag bound");
    }
    int total = n_y + n_e;
    for (int b : n_u) {
        if (b < 0) throw std::invalid_argument("generate_polynomial_dictionary: negative lag bound");
        total += b;
    }
    if (total == 0) {
        throw std::invalid_argument("generate_polynomial_dictionary: all lag bounds are zero");
    }

    // flat variable list in canonical order: y lags, then each input channel, then e lags
    std::vector<Factor> variables;
    for (int lag = 1; lag <= n_y; ++lag) {
        variables.push_back({FactorKind::Output, 0, lag, 1});
    }
    for (std::size_t c = 0; c < n_u.size(); ++c) {
        for (int lag = 1; lag <= n_u[c]; ++lag) {
            variables.push_back({FactorKind::Input, static_cast<int>(c), lag, 1});
        }
    }
    for (int lag = 1; lag <= n_e; ++lag) {
        variables.push_back({FactorKind::Error, 0, lag, 1});
    }

    // all multisets of size 1..n_degree over the variables, degree-major then
    // lexicographic in variable index
    std::vector<RegressorTerm> terms;
    std::vector<std::size_t> pick;
    auto emit = [&]() {
        std::vector<Factor> factors;
        factors.reserve(pick.size());
        for (std::size_t v : pick) factors.push_back(variables[v]);
        terms.emplace_back(std::move(factors));
    };
    auto recurse = [&](auto&& self, std::size_t start, int remaining) -> void {
        if (remaining == 0) {
            emit();
            return;
        }
        for (std::size_t v = start; v < variables.size(); ++v) {
            pick.push_back(v);
            self(self, v, remaining - 1);
            pick.pop_back();
        }
    };
    for (int degree = 1; degree <= n_degree; ++degree) {
        recurse(recurse, 0, degree);
    }

    LagBounds bounds;
    bounds.output_max_lag = n_y;
    bounds.input_max_lag = n_u;
    bounds.input_min_lag.assign(n_u.size(), 1);
    bounds.error_max_lag = n_e;
    return Dictionary(std::move(terms), std::move(bounds), n_degree);
}

Fraction error_term_fraction(const Dictionary& d) {
    return {d.error_term_indices().size(), d.size()};
}

Vector evaluate_column(const RegressorTerm& term, const TimeSeriesData& data,
                       const Vector& residual, Index first_row, Index length) {
    const Index n = data.length();
    if (residual.size() != n) {
        throw std::invalid_argument("evaluate_column: residual length does not match data");
    }
    if (first_row < term.max_lag() || first_row + length > n) {
        throw std::invalid_argument("evaluate_column: range exceeds available history");
    }
    Eigen::ArrayXd col = Eigen::ArrayXd::Ones(length);
    for (const Factor& f : term.factors()) {
        const Vector* signal = nullptr;
        Vector input_col;
        switch (f.kind) {
            case FactorKind::Output:
                signal = &data.output;
                break;
            case FactorKind::Input:
                if (f.channel >= data.input_channels()) {
                    throw std::invalid_argument("evaluate_column: input channel missing from data");
                }
                input_col = data.inputs.col(f.channel);
                signal = &input_col;
                break;
            case FactorKind::Error:
                signal = &residual;
                break;
        }
        auto shifted = signal->segment(first_row - f.lag, length).array();
        for (int e = 0; e < f.exponent; ++e) col *= shifted;
    }
    return col.matrix();
}

Matrix build_matrix(const Dictionary& d, const TimeSeriesData& data, const Vector& residual) {
    const Index n = data.length();
    const Index lag = d.max_lag();
    if (n <= lag) {
        throw std::invalid_argument("build_matrix: series shorter than the dictionary max lag");
    }
    if (!data.output.allFinite() || (data.inputs.size() > 0 && !data.inputs.allFinite())) {
        throw std::invalid_argument("build_matrix: data contains non-finite samples");
    }
    const Index rows = n - lag;
    Matrix x(rows, static_cast<Index>(d.size()));
    for (std::size_t j = 0; j < d.size(); ++j) {
        x.col(static_cast<Index>(j)) = evaluate_column(d.term(j), data, residual, lag, rows);
    }
    return x;
}

std::string format_term(const RegressorTerm& term) {
    std::string out;
    for (const Factor& f : term.factors()) {
        switch (f.kind) {
            case FactorKind::Output: out += 'y'; break;
            case FactorKind::Input:
                out += 'u';
                if (f.channel > 0) out += std::to_string(f.channel + 1);
                break;
            case FactorKind::Error: out += 'e'; break;
        }
        out += "[k-" + std::to_string(f.lag) + "]";
        if (f.exponent > 1) out += "^" + std::to_string(f.exponent);
    }
    return out;
}

RegressorTerm parse_term(const std::string& text) {
    std::vector<Factor> factors;
    std::size_t i = 0;
    auto fail = [&text]() -> void {
        throw std::invalid_argument("parse_term: malformed term '" + text + "'");
    };
    auto read_int = [&]() -> int {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) fail();
        return std::stoi(text.substr(start, i - start));
    };
    while (i < text.size()) {
        Factor f;
        switch (text[i]) {
            case 'y': f.kind = FactorKind::Output; ++i; break;
            case 'e': f.kind = FactorKind::Error; ++i; break;
            case 'u':
                f.kind = FactorKind::Input;
                ++i;
                if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                    f.channel = read_int() - 1;
                    if (f.channel < 1) fail();  // channel suffix only used from "u2" on
                }
                break;
            default: fail();
        }
        if (text.compare(i, 3, "[k-") != 0) fail();
        i += 3;
        f.lag = read_int();
        if (i >= text.size() || text[i] != ']') fail();
        ++i;
        if (i < text.size() && text[i] == '^') {
            ++i;
            f.exponent = read_int();
        }
        factors.push_back(f);
    }
    if (factors.empty()) fail();
    return RegressorTerm(std::move(factors));
}

void write_dictionary(std::ostream& os, const Dictionary& d) {
    const LagBounds& b = d.lag_bounds();
    os << "# n_y=" << b.output_max_lag << " n_u=";
    if (b.input_max_lag.empty()) {
        os << "0";
    } else {
        for (std::size_t c = 0; c < b.input_max_lag.size(); ++c) {
            if (c > 0) os << ',';
            os << b.input_max_lag[c];
        }
    }
    os << " n_e=" << b.error_max_lag << " n_degree=" << d.max_degree() << "\n";
    for (const RegressorTerm& t : d.terms()) {
        os << format_term(t) << "\n";
    }
}

}  // namespace narlasso
