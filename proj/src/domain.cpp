#include "torussym/domain.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace torussym {
namespace {

double abs_sq(const Complex& z) { return std::norm(z); }

struct InverseResult {
    std::vector<std::vector<Complex>> inverse;
    Complex det;
};

InverseResult invert(std::vector<std::vector<Complex>> m) {
    const size_t n = m.size();
    std::vector<std::vector<Complex>> inv(n, std::vector<Complex>(n, Complex(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = Complex(1);
    Complex det(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) == 0.0)
            throw std::invalid_argument("linear_image_ball: singular matrix");
        if (piv != col) {
            std::swap(m[piv], m[col]);
            std::swap(inv[piv], inv[col]);
            det = -det;
        }
        det *= m[col][col];
        Complex p = m[col][col];
        for (size_t c = 0; c < n; ++c) {
            m[col][c] /= p;
            inv[col][c] /= p;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            Complex f = m[r][col];
            if (f == Complex(0)) continue;
            for (size_t c = 0; c < n; ++c) {
                m[r][c] -= f * m[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return {std::move(inv), det};
}

bool in_open_polydisk(const std::vector<double>& radii, const Point& z) {
    for (size_t j = 0; j < radii.size(); ++j)
        if (std::abs(z[j]) >= radii[j]) return false;
    return true;
}

bool in_closed_polydisk(const std::vector<double>& radii, const Point& z) {
    for (size_t j = 0; j < radii.size(); ++j)
        if (std::abs(z[j]) > radii[j]) return false;
    return true;
}

double ball_radius_sq(const Point& z) {
    double s = 0;
    for (const Complex& c : z) s += abs_sq(c);
    return s;
}

}  // namespace

DomainSpec::DomainSpec(std::string name, int dimension, Shape shape)
    : name_(std::move(name)), dimension_(dimension), shape_(std::move(shape)) {
    if (dimension_ < 1) throw std::invalid_argument("DomainSpec: dimension < 1");
    modulus_bounds_.assign(static_cast<size_t>(dimension_), std::nullopt);
}

bool DomainSpec::bounded() const {
    for (int j = 0; j < dimension_; ++j)
        if (!coordinate_bounded(j)) return false;
    return true;
}

bool DomainSpec::contains(const Point& z) const {
    if (static_cast<int>(z.size()) != dimension_)
        throw std::invalid_argument("membership: dimension mismatch");
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Polydisk>) {
                return in_open_polydisk(s.radii, z);
            } else if constexpr (std::is_same_v<T, Ball>) {
                return ball_radius_sq(z) < s.radius * s.radius;
            } else if constexpr (std::is_same_v<T, LinearImageBall>) {
                double sum = 0;
                for (size_t r = 0; r < s.inverse.size(); ++r) {
                    Complex w(0);
                    for (size_t c = 0; c < s.inverse.size(); ++c) w += s.inverse[r][c] * z[c];
                    sum += abs_sq(w);
                }
                return sum < 1.0;
            } else if constexpr (std::is_same_v<T, ProfileDomain>) {
                return std::abs(z[1]) < s.f(std::abs(z[0]));
            } else if constexpr (std::is_same_v<T, ExpProfileFamily>) {
                double r = std::abs(z[0]);
                double cutoff = std::exp(-(s.k == 0 ? r : std::sqrt(r)));
                return std::abs(z[1]) < cutoff;
            } else if constexpr (std::is_same_v<T, TranslatedDiskProduct>) {
                return std::abs(z[0] - s.center) < s.r1 && std::abs(z[1]) < s.r2;
            } else if constexpr (std::is_same_v<T, QuasiCircularCubic>) {
                return std::abs(z[0] * z[0] - z[1]) < 1.0 && std::abs(z[0]) < 2.0;
            } else if constexpr (std::is_same_v<T, MixedQuasiReinhardt>) {
                return std::abs(z[0] * z[0] - z[1]) < 1.0 && std::abs(z[0]) < 2.0 &&
                       std::abs(z[2]) < 1.0;
            } else if constexpr (std::is_same_v<T, PolydiskDifference>) {
                return in_open_polydisk(s.outer, z) && !in_closed_polydisk(s.inner, z);
            } else if constexpr (std::is_same_v<T, PuncturedBall>) {
                if (ball_radius_sq(z) >= s.radius * s.radius) return false;
                return z != s.removed;
            } else {
                return s.membership(z);
            }
        },
        shape_);
}

// --- catalog -------------------------------------------------------------

DomainSpec DomainSpec::polydisk(std::vector<double> radii) {
    int n = static_cast<int>(radii.size());
    for (double r : radii)
        if (r <= 0) throw std::invalid_argument("polydisk: nonpositive radius");
    DomainSpec d("polydisk", n, Polydisk{radii});
    for (int j = 0; j < n; ++j) d.modulus_bounds_[static_cast<size_t>(j)] = radii[static_cast<size_t>(j)];
    d.declared_action_ = TorusAction::identity(n);
    return d;
}

DomainSpec DomainSpec::ball(int n, double radius) {
    if (radius <= 0) throw std::invalid_argument("ball: nonpositive radius");
    DomainSpec d("ball", n, Ball{radius, n});
    for (int j = 0; j < n; ++j) d.modulus_bounds_[static_cast<size_t>(j)] = radius;
    d.declared_action_ = TorusAction::identity(n);
    return d;
}

DomainSpec DomainSpec::linear_image_ball(std::vector<std::vector<Complex>> matrix) {
    int n = static_cast<int>(matrix.size());
    for (const auto& row : matrix)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("linear_image_ball: matrix not square");
    InverseResult inv = invert(matrix);
    LinearImageBall s{std::move(matrix), std::move(inv.inverse), abs_sq(inv.det)};
    DomainSpec d("linear_image_ball", n, s);
    // |z_j| <= row_j euclidean norm on the unit ball
    for (int j = 0; j < n; ++j) {
        double row = 0;
        for (int c = 0; c < n; ++c)
            row += abs_sq(std::get<LinearImageBall>(d.shape_).matrix[static_cast<size_t>(j)][static_cast<size_t>(c)]);
        d.modulus_bounds_[static_cast<size_t>(j)] = std::sqrt(row);
    }
    return d;
}

DomainSpec DomainSpec::sheared_ball() {
    DomainSpec d = linear_image_ball({{Complex(1), Complex(1)}, {Complex(0), Complex(1)}});
    d.name_ = "sheared_ball";
    d.declared_action_ = TorusAction::weights({1, 1});
    return d;
}

DomainSpec DomainSpec::profile_domain(ProfileFunction f) {
    DomainSpec d("profile", 2, ProfileDomain{f});
    // z1 unbounded; z2 bounded when f stays below a finite probe ceiling.
    double fmax = 0;
    double argmax = 0;
    for (double r = 0; r <= 64.0; r += 1.0 / 64.0) {
        double v = f(r);
        if (v > fmax) {
            fmax = v;
            argmax = r;
        }
    }
    if (argmax < 63.0 && f(1e4) <= fmax && f(1e8) <= fmax)
        d.modulus_bounds_[1] = fmax;
    d.declared_action_ = TorusAction::identity(2);
    return d;
}

DomainSpec DomainSpec::exp_profile_family(int k) {
    if (k != 0 && k != 1) throw std::invalid_argument("exp_profile_family: k must be 0 or 1");
    DomainSpec d(k == 0 ? "omega0" : "omega1", 2, ExpProfileFamily{k});
    d.modulus_bounds_[1] = 1.0;  // |z2| < e^0 = 1
    d.declared_action_ = TorusAction::identity(2);
    return d;
}

DomainSpec DomainSpec::translated_disk_product(Complex center, double r1, double r2) {
    if (r1 <= 0 || r2 <= 0)
        throw std::invalid_argument("translated_disk_product: nonpositive radius");
    DomainSpec d("translated_disk_product", 2, TranslatedDiskProduct{center, r1, r2});
    d.modulus_bounds_[0] = std::abs(center) + r1;
    d.modulus_bounds_[1] = r2;
    if (center == Complex(0))
        d.declared_action_ = TorusAction::identity(2);
    else
        d.declared_action_ = TorusAction(2, {{0, 1}});
    return d;
}

DomainSpec DomainSpec::quasi_circular_cubic() {
    DomainSpec d("quasi_circular_cubic", 2, QuasiCircularCubic{});
    d.modulus_bounds_[0] = 2.0;
    d.modulus_bounds_[1] = 5.0;  // |z2| <= |z1|^2 + 1 < 5
    d.declared_action_ = TorusAction::weights({1, 2});
    return d;
}

DomainSpec DomainSpec::mixed_quasi_reinhardt() {
    DomainSpec d("mixed_quasi_reinhardt", 3, MixedQuasiReinhardt{});
    d.modulus_bounds_[0] = 2.0;
    d.modulus_bounds_[1] = 5.0;
    d.modulus_bounds_[2] = 1.0;
    d.declared_action_ = TorusAction(3, {{1, 2, 0}, {0, 0, 1}});
    return d;
}

DomainSpec DomainSpec::polydisk_difference(std::vector<double> outer, std::vector<double> inner) {
    if (outer.size() != inner.size())
        throw std::invalid_argument("polydisk_difference: radii length mismatch");
    for (size_t j = 0; j < outer.size(); ++j)
        if (inner[j] <= 0 || outer[j] <= inner[j])
            throw std::invalid_argument("polydisk_difference: need 0 < inner < outer");
    int n = static_cast<int>(outer.size());
    DomainSpec d("polydisk_difference", n, PolydiskDifference{outer, inner});
    for (int j = 0; j < n; ++j) d.modulus_bounds_[static_cast<size_t>(j)] = outer[static_cast<size_t>(j)];
    d.declared_action_ = TorusAction::identity(n);
    return d;
}

DomainSpec DomainSpec::punctured_ball(int n, double radius, Point removed) {
    if (static_cast<int>(removed.size()) != n)
        throw std::invalid_argument("punctured_ball: removed point dimension mismatch");
    DomainSpec d("punctured_ball", n, PuncturedBall{radius, n, std::move(removed)});
    for (int j = 0; j < n; ++j) d.modulus_bounds_[static_cast<size_t>(j)] = radius;
    d.equals_int_closure_ = false;  // int(closure) is the full ball
    return d;
}

DomainSpec DomainSpec::predicate(int n, std::function<bool(const Point&)> membership,
                                 std::vector<std::optional<double>> modulus_bounds) {
    if (static_cast<int>(modulus_bounds.size()) != n)
        throw std::invalid_argument("predicate: bounds length mismatch");
    DomainSpec d("predicate", n, Predicate{std::move(membership), modulus_bounds});
    d.modulus_bounds_ = std::move(modulus_bounds);
    return d;
}

// --- config --------------------------------------------------------------

Complex parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw ConfigError("empty complex literal");
    // split a(+|-)bi at the sign separating the two parts (not an exponent sign)
    size_t split = std::string::npos;
    for (size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') split = i;
    }
    auto to_double = [&](std::string part) -> double {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        try {
            size_t used = 0;
            double v = std::stod(part, &used);
            if (used != part.size()) throw ConfigError("bad number: " + part);
            return v;
        } catch (const std::invalid_argument&) {
            throw ConfigError("bad number: " + part);
        }
    };
    if (s.back() == 'i') {
        std::string imag = s.substr(0, s.size() - 1);
        if (split == std::string::npos) return Complex(0.0, to_double(imag));
        return Complex(to_double(s.substr(0, split)), to_double(imag.substr(split)));
    }
    return Complex(to_double(s), 0.0);
}

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, ',')) out.push_back(cur);
    return out;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    for (const std::string& p : split_commas(s)) {
        try {
            out.push_back(std::stod(p));
        } catch (const std::exception&) {
            throw ConfigError("bad numeric list entry: " + p);
        }
    }
    return out;
}

std::vector<Complex> parse_complexes(const std::string& s) {
    std::vector<Complex> out;
    for (const std::string& p : split_commas(s)) out.push_back(parse_complex(p));
    return out;
}

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

}  // namespace

DomainSpec parse_domain_config(const std::string& text) {
    static const std::vector<std::string> known = {"type",   "dim", "radii",        "matrix",
                                                   "profile", "center", "k", "removed_point"};
    std::map<std::string, std::string> kv;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        size_t eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("expected `key = value`: " + t);
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError("unknown config key: " + key);
        if (kv.count(key)) throw ConfigError("duplicate config key: " + key);
        kv[key] = value;
    }
    auto require = [&](const std::string& k) -> const std::string& {
        auto it = kv.find(k);
        if (it == kv.end()) throw ConfigError("missing config key: " + k);
        return it->second;
    };
    auto dim_or = [&](int dflt) {
        auto it = kv.find("dim");
        return it == kv.end() ? dflt : std::stoi(it->second);
    };

    const std::string& type = require("type");
    if (type == "polydisk") return DomainSpec::polydisk(parse_doubles(require("radii")));
    if (type == "ball") {
        std::vector<double> r = parse_doubles(require("radii"));
        if (r.size() != 1) throw ConfigError("ball: radii must be a single value");
        return DomainSpec::ball(dim_or(2), r[0]);
    }
    if (type == "linear_image_ball") {
        int n = dim_or(2);
        std::vector<Complex> flat = parse_complexes(require("matrix"));
        if (static_cast<int>(flat.size()) != n * n)
            throw ConfigError("linear_image_ball: matrix must have dim*dim entries");
        std::vector<std::vector<Complex>> m(static_cast<size_t>(n));
        for (int r = 0; r < n; ++r)
            m[static_cast<size_t>(r)] = {flat.begin() + r * n, flat.begin() + (r + 1) * n};
        return DomainSpec::linear_image_ball(std::move(m));
    }
    if (type == "profile")
        return DomainSpec::profile_domain(ProfileFunction::parse(require("profile")));
    if (type == "exp_profile") return DomainSpec::exp_profile_family(std::stoi(require("k")));
    if (type == "translated_disk_product") {
        std::vector<double> r = parse_doubles(require("radii"));
        if (r.size() != 2) throw ConfigError("translated_disk_product: radii must be r1,r2");
        return DomainSpec::translated_disk_product(parse_complex(require("center")), r[0], r[1]);
    }
    if (type == "quasi_circular_cubic") return DomainSpec::quasi_circular_cubic();
    if (type == "mixed_quasi_reinhardt") return DomainSpec::mixed_quasi_reinhardt();
    if (type == "polydisk_difference") {
        int n = dim_or(2);
        std::vector<double> r = parse_doubles(require("radii"));
        if (static_cast<int>(r.size()) != 2 * n)
            throw ConfigError("polydisk_difference: radii must list outer then inner (2*dim values)");
        return DomainSpec::polydisk_difference({r.begin(), r.begin() + n},
                                               {r.begin() + n, r.end()});
    }
    if (type == "punctured_ball") {
        std::vector<double> r = parse_doubles(require("radii"));
        if (r.size() != 1) throw ConfigError("punctured_ball: radii must be a single value");
        std::vector<Complex> p = parse_complexes(require("removed_point"));
        return DomainSpec::punctured_ball(static_cast<int>(p.size()), r[0],
                                          Point(p.begin(), p.end()));
    }
    throw ConfigError("unknown domain type: " + type);
}

DomainSpec load_domain_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_domain_config(buf.str());
}

}  // namespace torussym
