#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "narlasso/types.hpp"

namespace narlasso {

/// Which signal a monomial factor is read from.
enum class FactorKind { Output, Input, Error };

/// One factor of a monomial regressor: signal[k - lag] ^ exponent.
/// `channel` is meaningful only for Input factors (0-based).
struct Factor {
    FactorKind kind = FactorKind::Output;
    int channel = 0;
    int lag = 1;
    int exponent = 1;

    friend bool operator==(const Factor&, const Factor&) = default;
};

/// A monomial over lagged outputs, inputs and residual (error) values,
/// e.g. y[k-1]^2 u[k-2] e[k-1]. Factors are kept in canonical order
/// (kind, channel, lag) and repeated variables are merged into the exponent.
class RegressorTerm {
public:
    RegressorTerm() = default;
    explicit RegressorTerm(std::vector<Factor> factors);

    const std::vector<Factor>& factors() const { return factors_; }
    int degree() const;
    int max_lag() const;
    int max_lag_of(FactorKind kind) const;
    bool has_error_factor() const;

    friend bool operator==(const RegressorTerm&, const RegressorTerm&) = default;

private:
    std::vector<Factor> factors_;
};

/// Lag bounds per variable family. `input_max_lag` carries one bound per
/// input channel; `input_min_lag` carries the matching minimum lag (the
/// input-output delay), 1 unless set otherwise.
struct LagBounds {
    int output_max_lag = 0;               // n_y
    std::vector<int> input_max_lag;       // n_u, per channel
    std::vector<int> input_min_lag;       // tau_d, per channel (defaults to 1)
    int error_max_lag = 0;                // n_e
};

/// Numerator/denominator pair for exact term-count ratios.
struct Fraction {
    std::size_t numerator = 0;
    std::size_t denominator = 1;
    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
};

/// Ordered set of regressor terms defining a model structure.
class Dictionary {
public:
    Dictionary() = default;
    Dictionary(std::vector<RegressorTerm> terms, LagBounds bounds, int max_degree);

    /// Builds a dictionary directly from a term list, inferring the lag
    /// bounds and degree from the terms themselves.
    static Dictionary from_terms(std::vector<RegressorTerm> terms);

    const std::vector<RegressorTerm>& terms() const { return terms_; }
    const RegressorTerm& term(std::size_t j) const { return terms_[j]; }
    std::size_t size() const { return terms_.size(); }
    const LagBounds& lag_bounds() const { return bounds_; }
    int max_degree() const { return max_degree_; }

    int max_lag() const { return max_lag_; }
    int max_output_lag() const { return max_output_lag_; }

    /// Indices of terms containing at least one error factor; the matching
    /// regressor-matrix columns are the only ones that depend on the residual.
    const std::vector<std::size_t>& error_term_indices() const { return error_terms_; }
    bool term_has_error(std::size_t j) const { return terms_[j].has_error_factor(); }

private:
    std::vector<RegressorTerm> terms_;
    LagBounds bounds_;
    int max_degree_ = 1;
    int max_lag_ = 0;
    int max_output_lag_ = 0;
    std::vector<std::size_t> error_terms_;

    void validate_and_index();
};

/// All monomials of total degree 1..n_degree over the lagged variables
/// {y[k-1..n_y], u_c[k-1..n_u_c], e[k-1..n_e]}, in a deterministic canonical
/// order (by degree, then lexicographically by variable). No constant term is
/// generated. Term count is C(v + n_degree, n_degree) - 1 with
/// v = n_y + sum(n_u_c) + n_e.
Dictionary generate_polynomial_dictionary(int n_y, const std::vector<int>& n_u, int n_e,
                                          int n_degree);

/// Fraction of dictionary terms containing at least one error factor.
Fraction error_term_fraction(const Dictionary& d);

/// Evaluates one regressor column over rows k = first_row..first_row+length-1
/// (0-based sample indices). Error factors read from `residual`, which must
/// cover all data samples. Requires first_row >= term.max_lag().
Vector evaluate_column(const RegressorTerm& term, const TimeSeriesData& data,
                       const Vector& residual, Index first_row, Index length);

/// N' x p regressor matrix over the effective range, N' = N - max_lag.
/// Columns without error factors do not depend on `residual`.
Matrix build_matrix(const Dictionary& d, const TimeSeriesData& data, const Vector& residual);

/// Stable display form, e.g. "y[k-1]^2u[k-2]e[k-1]". Input channels beyond
/// the first are numbered: "u2[k-1]".
std::string format_term(const RegressorTerm& term);

/// Inverse of format_term. Throws std::invalid_argument on malformed input.
RegressorTerm parse_term(const std::string& text);

/// One term per line in format_term notation, preceded by a header line with
/// the generating bounds.
void write_dictionary(std::ostream& os, const Dictionary& d);

}  // namespace narlasso
