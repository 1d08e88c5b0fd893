#include "projcoords/complex.hpp"

#include "projcoords/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <set>
#include <sstream>

namespace projcoords {

int sort_with_sign(Simplex& s) {
    int sign = 1;
    // insertion sort, counting transpositions
    for (std::size_t i = 1; i < s.size(); ++i) {
        for (std::size_t j = i; j > 0 && s[j - 1] > s[j]; --j) {
            std::swap(s[j - 1], s[j]);
            sign = -sign;
        }
    }
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] == s[i - 1]) return 0;
    return sign;
}

Simplex facet(const Simplex& s, int j) {
    Simplex f;
    f.reserve(s.size() - 1);
    for (int i = 0; i < static_cast<int>(s.size()); ++i)
        if (i != j) f.push_back(s[i]);
    return f;
}

std::string to_string(const Simplex& s) {
    std::string out = "{";
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    return out + "}";
}

SimplicialComplex::SimplicialComplex(int max_dim) : max_dim_(max_dim), index_(max_dim + 1), lists_(max_dim + 1) {
    if (max_dim < 0) throw InvalidInput("complex max_dim must be nonnegative");
}

void SimplicialComplex::insert(Simplex s) {
    if (s.empty()) return;
    if (sort_with_sign(s) == 0) throw InvalidInput("simplex " + to_string(s) + " repeats a vertex");
    const int d = simplex_dim(s);
    if (d > max_dim_) {
        for (int j = 0; j <= d; ++j) insert(facet(s, j));
        return;
    }
    auto [it, fresh] = index_[d].emplace(std::move(s), 0);
    if (!fresh) return;
    dirty_ = true;
    if (d > 0)
        for (int j = 0; j <= d; ++j) insert(facet(it->first, j));
}

bool SimplicialComplex::contains(const Simplex& s) const {
    const int d = simplex_dim(s);
    if (d < 0 || d > max_dim_) return false;
    return index_[d].count(s) > 0;
}

void SimplicialComplex::refresh() const {
    if (!dirty_) return;
    for (int d = 0; d <= max_dim_; ++d) {
        lists_[d].clear();
        int i = 0;
        for (auto& [s, pos] : index_[d]) {
            pos = i++;
            lists_[d].push_back(s);
        }
    }
    dirty_ = false;
}

const std::vector<Simplex>& SimplicialComplex::simplices(int dim) const {
    static const std::vector<Simplex> empty;
    if (dim < 0 || dim > max_dim_) return empty;
    refresh();
    return lists_[dim];
}

std::size_t SimplicialComplex::count(int dim) const {
    if (dim < 0 || dim > max_dim_) return 0;
    return index_[dim].size();
}

int SimplicialComplex::index_of(const Simplex& s) const {
    const int d = simplex_dim(s);
    if (d < 0 || d > max_dim_) return -1;
    refresh();
    auto it = index_[d].find(s);
    return it == index_[d].end() ? -1 : it->second;
}

bool filtration_less(const FilteredSimplex& a, const FilteredSimplex& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
    return a.vertices < b.vertices;
}

Filtration::Filtration(std::vector<FilteredSimplex> simplices) : simplices_(std::move(simplices)) {
    std::map<Simplex, double> birth;
    for (auto& fs : simplices_) {
        if (fs.vertices.empty()) throw InvalidInput("filtration contains an empty simplex");
        if (sort_with_sign(fs.vertices) == 0) throw InvalidInput("simplex " + to_string(fs.vertices) + " repeats a vertex");
        if (!std::isfinite(fs.birth) || fs.birth < 0) throw InvalidInput("filtration births must be finite and >= 0");
        if (!birth.emplace(fs.vertices, fs.birth).second)
            throw InvalidInput("simplex " + to_string(fs.vertices) + " appears twice");
    }
    for (auto& fs : simplices_) {
        if (fs.vertices.size() < 2) continue;
        for (int j = 0; j < static_cast<int>(fs.vertices.size()); ++j) {
            auto it = birth.find(facet(fs.vertices, j));
            if (it == birth.end())
                throw InvalidInput("filtration is missing a face of " + to_string(fs.vertices));
            if (it->second > fs.birth)
                throw InvalidInput("face of " + to_string(fs.vertices) + " is born after it");
        }
    }
    std::sort(simplices_.begin(), simplices_.end(), filtration_less);
}

int Filtration::max_dim() const {
    int d = -1;
    for (auto& fs : simplices_) d = std::max(d, simplex_dim(fs.vertices));
    return d;
}

SimplicialComplex Filtration::complex_at(double alpha, int max_dim) const {
    int cap = max_dim < 0 ? std::max(0, this->max_dim()) : max_dim;
    SimplicialComplex K(cap);
    for (auto& fs : simplices_) {
        if (fs.birth > alpha) break;
        if (simplex_dim(fs.vertices) <= cap) K.insert(fs.vertices);
    }
    return K;
}

std::optional<double> Filtration::previous_birth(double alpha) const {
    std::optional<double> best;
    for (auto& fs : simplices_) {
        if (fs.birth >= alpha) break;
        best = fs.birth;
    }
    return best;
}

std::string Filtration::to_text() const {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (auto& fs : simplices_) {
        os << fs.birth;
        for (int v : fs.vertices) os << ' ' << v;
        os << '\n';
    }
    return os.str();
}

Filtration Filtration::from_text(const std::string& text) {
    std::vector<FilteredSimplex> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        FilteredSimplex fs;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (!(ls >> fs.birth)) throw InvalidInput("filtration line " + std::to_string(lineno) + ": malformed birth");
        int v;
        while (ls >> v) {
            if (v < 0) throw InvalidInput("filtration line " + std::to_string(lineno) + ": negative vertex");
            fs.vertices.push_back(v);
        }
        if (!ls.eof()) throw InvalidInput("filtration line " + std::to_string(lineno) + ": malformed");
        if (fs.vertices.empty()) throw InvalidInput("filtration line " + std::to_string(lineno) + ": no vertices");
        out.push_back(std::move(fs));
    }
    return Filtration(std::move(out));
}

Filtration constant_filtration(const SimplicialComplex& K) {
    std::vector<FilteredSimplex> out;
    for (int d = 0; d <= K.max_dim(); ++d)
        for (auto& s : K.simplices(d)) out.push_back({s, 0.0});
    return Filtration(std::move(out));
}

} // namespace projcoords
