#include "torussym/lattice.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <numeric>

namespace torussym {
namespace {

using boost::multiprecision::cpp_int;
using Mat = std::vector<std::vector<cpp_int>>;  // row major

Mat zeros(size_t rows, size_t cols) { return Mat(rows, std::vector<cpp_int>(cols, 0)); }

void col_swap(Mat& m, size_t a, size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
}

void col_negate(Mat& m, size_t c) {
    for (auto& row : m) row[c] = -row[c];
}

// col[dst] -= q * col[src]
void col_axpy(Mat& m, size_t dst, size_t src, const cpp_int& q) {
    for (auto& row : m) row[dst] -= q * row[src];
}

cpp_int floor_div(const cpp_int& a, const cpp_int& b) {
    cpp_int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

/// Column-style Hermite reduction of M (rows processed top to bottom),
/// mirroring every column operation onto U. After the call, columns
/// [0, rank) of M are an echelon basis of the column space and columns
/// [rank, cols) are zero; U stays unimodular.
size_t column_echelon(Mat& m, Mat* u) {
    if (m.empty()) return 0;
    const size_t rows = m.size();
    const size_t cols = m[0].size();
    size_t lead = 0;
    for (size_t row = 0; row < rows && lead < cols; ++row) {
        // gcd-eliminate row entries among columns [lead, cols)
        for (;;) {
            size_t best = cols;
            for (size_t c = lead; c < cols; ++c) {
                if (m[row][c] == 0) continue;
                if (best == cols || abs(m[row][c]) < abs(m[row][best])) best = c;
            }
            if (best == cols) break;  // row clear, no pivot here
            if (best != lead) {
                col_swap(m, lead, best);
                if (u) col_swap(*u, lead, best);
            }
            bool done = true;
            for (size_t c = lead + 1; c < cols; ++c) {
                if (m[row][c] == 0) continue;
                cpp_int q = m[row][c] / m[row][lead];
                col_axpy(m, c, lead, q);
                if (u) col_axpy(*u, c, lead, q);
                if (m[row][c] != 0) done = false;
            }
            if (done) {
                if (m[row][lead] < 0) {
                    col_negate(m, lead);
                    if (u) col_negate(*u, lead);
                }
                // reduce earlier columns against this pivot (HNF range)
                for (size_t c = 0; c < lead; ++c) {
                    if (m[row][c] == 0) continue;
                    cpp_int q = floor_div(m[row][c], m[row][lead]);
                    if (q != 0) {
                        col_axpy(m, c, lead, q);
                        if (u) col_axpy(*u, c, lead, q);
                    }
                }
                ++lead;
                break;
            }
        }
    }
    return lead;  // rank
}

Mat action_matrix(const TorusAction& A) {
    Mat m = zeros(static_cast<size_t>(A.n), static_cast<size_t>(A.rank()));
    for (int c = 0; c < A.rank(); ++c)
        for (int r = 0; r < A.n; ++r)
            m[static_cast<size_t>(r)][static_cast<size_t>(c)] =
                A.columns[static_cast<size_t>(c)][static_cast<size_t>(r)];
    return m;
}

TorusAction action_from_columns(const Mat& m, size_t first_col, size_t last_col) {
    const size_t rows = m.size();
    std::vector<std::vector<std::int64_t>> cols;
    for (size_t c = first_col; c < last_col; ++c) {
        std::vector<std::int64_t> col(rows);
        for (size_t r = 0; r < rows; ++r) {
            if (m[r][c] > std::numeric_limits<std::int64_t>::max() ||
                m[r][c] < std::numeric_limits<std::int64_t>::min())
                throw std::overflow_error("lattice basis entry exceeds 64 bits");
            col[r] = m[r][c].convert_to<std::int64_t>();
        }
        cols.push_back(std::move(col));
    }
    return TorusAction(static_cast<int>(rows), std::move(cols));
}

}  // namespace

DifferenceSet difference_set(const GramData& gram, const DecisionPolicy& policy) {
    DifferenceSet out;
    out.n = gram.dimension();
    for (const auto& [key, est] : gram.triangle()) {
        const auto& [alpha, beta] = key;
        if (alpha == beta) continue;  // diagonal pairs are never evidence
        Decision d = decide_nonzero(est, policy);
        if (d == Decision::nonzero) {
            out.provenance[DifferenceVector(alpha, beta).canonical()].emplace_back(alpha, beta);
        } else if (d == Decision::inconclusive) {
            ++out.inconclusive_count;
            if (out.inconclusive_pairs.size() < 32) out.inconclusive_pairs.emplace_back(alpha, beta);
        }
    }
    return out;
}

TorusAction integer_kernel(const std::vector<DifferenceVector>& diffs, int n) {
    const size_t cols = static_cast<size_t>(n);
    Mat m = zeros(diffs.size(), cols);
    for (size_t r = 0; r < diffs.size(); ++r)
        for (int c = 0; c < n; ++c) m[r][static_cast<size_t>(c)] = diffs[r][c];
    Mat u = zeros(cols, cols);
    for (size_t i = 0; i < cols; ++i) u[i][i] = 1;
    size_t rank = diffs.empty() ? 0 : column_echelon(m, &u);
    // kernel = the U columns that map to zero columns of M
    Mat kernel = zeros(cols, cols - rank);
    for (size_t c = rank; c < cols; ++c)
        for (size_t r = 0; r < cols; ++r) kernel[r][c - rank] = u[r][c];
    // canonical echelon form of the kernel basis
    column_echelon(kernel, nullptr);
    return action_from_columns(kernel, 0, cols - rank);
}

TorusAction integer_kernel(const DifferenceSet& diffs) {
    return integer_kernel(diffs.diffs(), diffs.n);
}

bool lattice_membership(const TorusAction& A, const std::vector<std::int64_t>& v) {
    if (static_cast<int>(v.size()) != A.n)
        throw std::invalid_argument("lattice_membership: length mismatch");
    Mat m = action_matrix(A);
    column_echelon(m, nullptr);
    std::vector<cpp_int> x(v.begin(), v.end());
    const size_t cols = m.empty() ? 0 : m[0].size();
    size_t col = 0;
    for (size_t row = 0; row < static_cast<size_t>(A.n); ++row) {
        if (col < cols && m[row][col] != 0) {
            cpp_int q = x[row] / m[row][col];
            if (x[row] % m[row][col] != 0) return false;
            for (size_t r = row; r < static_cast<size_t>(A.n); ++r) x[r] -= q * m[r][col];
            ++col;
        }
        if (x[row] != 0) return false;
    }
    return true;
}

bool lattice_contains(const TorusAction& A, const TorusAction& B) {
    for (const auto& col : B.columns)
        if (!lattice_membership(A, col)) return false;
    return true;
}

bool lattice_equal(const TorusAction& A, const TorusAction& B) {
    return lattice_contains(A, B) && lattice_contains(B, A);
}

SymmetryClassification classify(const TorusAction& A) {
    SymmetryClassification out;
    out.detected_action = A;
    const int n = A.n;
    out.is_reinhardt = (A.rank() == n);
    std::vector<std::int64_t> ones(static_cast<size_t>(n), 1);
    out.is_circular = A.rank() > 0 && lattice_membership(A, ones);
    for (int j = 0; j < n; ++j) {
        std::vector<std::int64_t> e(static_cast<size_t>(n), 0);
        e[static_cast<size_t>(j)] = 1;
        if (lattice_membership(A, e)) out.hartogs_coords.push_back(j + 1);
    }
    if (out.is_reinhardt) {
        out.quasi_circular_weights = ones;
        return out;
    }
    if (A.rank() == 0) return out;

    // bounded search for a strictly positive primitive lattice vector
    const std::int64_t B = 12;
    std::optional<std::vector<std::int64_t>> best;
    auto consider = [&](std::vector<std::int64_t> v) {
        for (std::int64_t x : v)
            if (x <= 0) return;
        std::int64_t g = 0;
        for (std::int64_t x : v) g = std::gcd(g, x);
        for (auto& x : v) x /= g;
        if (!best) {
            best = v;
            return;
        }
        std::int64_t mv = *std::max_element(v.begin(), v.end());
        std::int64_t mb = *std::max_element(best->begin(), best->end());
        if (mv < mb || (mv == mb && v < *best)) best = v;
    };
    const int r = A.rank();
    std::vector<std::int64_t> coeff(static_cast<size_t>(r), -B);
    for (;;) {
        std::vector<std::int64_t> v(static_cast<size_t>(n), 0);
        for (int k = 0; k < r; ++k)
            for (int j = 0; j < n; ++j)
                v[static_cast<size_t>(j)] +=
                    coeff[static_cast<size_t>(k)] * A.columns[static_cast<size_t>(k)][static_cast<size_t>(j)];
        consider(std::move(v));
        int k = 0;
        while (k < r && coeff[static_cast<size_t>(k)] == B) coeff[static_cast<size_t>(k++)] = -B;
        if (k == r) break;
        ++coeff[static_cast<size_t>(k)];
    }
    if (best)
        out.quasi_circular_weights = *best;
    else
        out.caveats.push_back("no strictly positive weight vector found (search bound 12)");
    return out;
}

nlohmann::ordered_json torus_action_to_json(const TorusAction& A) {
    nlohmann::ordered_json j;
    j["n"] = A.n;
    j["r"] = A.rank();
    j["columns"] = A.columns;
    return j;
}

TorusAction torus_action_from_json(const nlohmann::ordered_json& j) {
    TorusAction a(j.at("n").get<int>(),
                  j.at("columns").get<std::vector<std::vector<std::int64_t>>>());
    if (j.at("r").get<int>() != a.rank())
        throw std::invalid_argument("torus action json: r does not match columns");
    return a;
}

nlohmann::ordered_json classification_to_json(const SymmetryClassification& c) {
    nlohmann::ordered_json j;
    j["is_reinhardt"] = c.is_reinhardt;
    j["is_circular"] = c.is_circular;
    j["hartogs_coords"] = c.hartogs_coords;
    if (c.quasi_circular_weights)
        j["quasi_circular_weights"] = *c.quasi_circular_weights;
    else
        j["quasi_circular_weights"] = nullptr;
    j["detected_action"] = torus_action_to_json(c.detected_action);
    j["caveats"] = c.caveats;
    return j;
}

}  // namespace torussym
