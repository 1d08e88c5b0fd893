#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace projcoords {

// Vertices sorted ascending.
using Simplex = std::vector<int>;

inline int simplex_dim(const Simplex& s) { return static_cast<int>(s.size()) - 1; }

// Sorts the vertices; returns the sign of the sorting permutation, or 0 on a repeated vertex.
int sort_with_sign(Simplex& s);

// Facet obtained by dropping vertex j.
Simplex facet(const Simplex& s, int j);

std::string to_string(const Simplex& s);

class SimplicialComplex {
public:
    explicit SimplicialComplex(int max_dim = 3);

    int max_dim() const { return max_dim_; }

    // Inserts s together with all its faces, truncated at max_dim.
    void insert(Simplex s);
    bool contains(const Simplex& s) const;

    // Sorted lexicographically.
    const std::vector<Simplex>& simplices(int dim) const;
    std::size_t count(int dim) const;
    // Position inside simplices(dim), or -1.
    int index_of(const Simplex& s) const;

private:
    int max_dim_;
    mutable std::vector<std::map<Simplex, int>> index_;
    mutable std::vector<std::vector<Simplex>> lists_;
    mutable bool dirty_ = false;
    void refresh() const;
};

struct FilteredSimplex {
    Simplex vertices;
    double birth = 0.0;
};

// Total order used everywhere: (birth, dim, lex).
bool filtration_less(const FilteredSimplex& a, const FilteredSimplex& b);

class Filtration {
public:
    Filtration() = default;
    // Sorts, and checks that faces are present and born no later than cofaces.
    explicit Filtration(std::vector<FilteredSimplex> simplices);

    const std::vector<FilteredSimplex>& simplices() const { return simplices_; }
    std::size_t size() const { return simplices_.size(); }
    int max_dim() const;

    // Simplices with birth <= alpha, truncated at max_dim (negative: no cap).
    SimplicialComplex complex_at(double alpha, int max_dim = -1) const;
    // Largest birth strictly below alpha, if any.
    std::optional<double> previous_birth(double alpha) const;

    std::string to_text() const;
    static Filtration from_text(const std::string& text);

    double sparsity = 0.0;

private:
    std::vector<FilteredSimplex> simplices_;
};

// A complex as a filtration with every simplex born at 0.
Filtration constant_filtration(const SimplicialComplex& K);

} // namespace projcoords
