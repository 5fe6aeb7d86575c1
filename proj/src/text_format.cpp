#include "pmod/text_format.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <regex>
#include <sstream>

#include "pmod/errors.hpp"

namespace pmod {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Lines with comments removed, paired with their 1-based numbers; blank lines dropped.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
    std::vector<std::pair<std::size_t, std::string>> out;
    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        ++number;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty()) out.emplace_back(number, std::string(line));
        if (end == std::string_view::npos) break;
        pos = end + 1;
    }
    return out;
}

std::vector<std::string> split_ws(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::optional<int> parse_int(std::string_view s) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return value;
}

// Exact value of an integer, a fraction p/q, or a decimal with optional exponent.
std::optional<mpq_class> parse_exact(const std::string& s) {
    static const std::regex fraction(R"(([+-]?\d+)/(\d+))");
    static const std::regex decimal(R"(([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?)");
    std::smatch m;
    if (std::regex_match(s, m, fraction)) {
        mpz_class den(m[2].str(), 10);
        if (den == 0) return std::nullopt;
        std::string num = m[1].str();
        if (num.front() == '+') num.erase(0, 1);
        mpq_class q(mpz_class(num, 10), den);
        q.canonicalize();
        return q;
    }
    if (!std::regex_match(s, m, decimal)) return std::nullopt;
    const std::string whole = m[2].str(), frac = m[3].str();
    if (whole.empty() && frac.empty()) return std::nullopt;
    mpz_class num(whole + frac, 10);
    mpz_class den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    if (m[4].matched) {
        if (m[4].str().size() > 5) return std::nullopt;  // keeps 10^e small enough to build
        const long e = std::stol(m[4].str());
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(e)));
        if (e > 0) num *= p;
        else den *= p;
    }
    mpq_class q(num, den);
    q.canonicalize();
    if (m[1].str() == "-") q = -q;
    return q;
}

}  // namespace

// ---- complexes ---------------------------------------------------------------

std::vector<Simplex> parse_simplices(std::string_view text, std::vector<std::pair<std::string, int>>* value_map) {
    struct Raw {
        std::vector<int> vertices;
        std::pair<mpq_class, std::string> birth;
        std::optional<std::pair<mpq_class, std::string>> removal;
    };
    std::vector<Raw> raws;
    bool integral = true;
    for (const auto& [number, line] : content_lines(text)) {
        std::vector<std::string> fields;
        std::string cur;
        for (char ch : line) {
            if (ch == ';') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        fields.push_back(cur);
        if (fields.size() < 2 || fields.size() > 3)
            throw ParseError(number, "expected `vertices ; birth [; removal]`");
        Raw raw;
        const auto verts = split_ws(fields[0]);
        if (verts.empty()) throw ParseError(number, "no vertices");
        for (const auto& v : verts) {
            auto x = parse_int(v);
            if (!x || *x < 0) throw ParseError(number, "bad vertex '" + v + "'");
            raw.vertices.push_back(*x);
        }
        auto value = [&, number = number](const std::string& field) {
            const std::string s(trim(field));
            auto q = parse_exact(s);
            if (!q) throw ParseError(number, "bad value '" + s + "'");
            if (q->get_den() != 1 || *q < 0) integral = false;
            return std::pair{*q, s};
        };
        raw.birth = value(fields[1]);
        if (fields.size() == 3) {
            std::string s(trim(fields[2]));
            std::string lower = s;
            std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
            if (lower != "inf") raw.removal = value(s);
        }
        raws.push_back(std::move(raw));
    }

    std::map<mpq_class, std::string> distinct;
    for (const auto& r : raws) {
        distinct.emplace(r.birth.first, r.birth.second);
        if (r.removal) distinct.emplace(r.removal->first, r.removal->second);
    }
    std::map<mpq_class, int> rank;
    for (const auto& [q, spelling] : distinct) {
        const int r = static_cast<int>(rank.size());
        rank.emplace(q, r);
        if (!integral && value_map) value_map->emplace_back(spelling, r);
    }
    auto grade = [&](const mpq_class& q) {
        if (!integral) return rank.at(q);
        if (!q.get_num().fits_sint_p()) throw ValidationError("filtration value out of range");
        return static_cast<int>(q.get_num().get_si());
    };

    std::vector<Simplex> out;
    for (const auto& r : raws) {
        Simplex s{r.vertices, grade(r.birth.first), std::nullopt};
        if (r.removal) s.removal = grade(r.removal->first);
        out.push_back(std::move(s));
    }
    return out;
}

ParsedComplex parse_complex(std::string_view text) {
    ParsedComplex out;
    out.complex = FilteredComplex(parse_simplices(text, &out.value_map));
    return out;
}

std::string print_complex(const FilteredComplex& c) {
    std::string out;
    for (const auto& s : c.simplices()) {
        for (std::size_t i = 0; i < s.vertices.size(); ++i) {
            if (i) out += ' ';
            out += std::to_string(s.vertices[i]);
        }
        out += " ; " + std::to_string(s.birth);
        if (s.removal) out += " ; " + std::to_string(*s.removal);
        out += '\n';
    }
    return out;
}

// ---- presentations -----------------------------------------------------------

namespace {

struct ParsedTerm {
    Scalar coeff;
    int exponent;
    std::size_t index;
};

ParsedTerm parse_term(std::size_t line, std::string_view raw, const GradedBasis& basis, Field field) {
    const std::string term(trim(raw));
    const auto t = term.find("t^");
    const auto star = term.find('*', t == std::string::npos ? 0 : t);
    if (t == std::string::npos || star == std::string::npos)
        throw ParseError(line, "term '" + term + "' is not of the form [coeff]t^<e>*<name>");
    std::string coeff = std::string(trim(std::string_view(term).substr(0, t)));
    if (coeff.empty() || coeff == "+") coeff = "1";
    else if (coeff == "-") coeff = "-1";
    Scalar c;
    try {
        c = parse_scalar(field, coeff);
    } catch (const std::exception& e) {
        throw ParseError(line, "term '" + term + "': " + e.what());
    }
    const auto e = parse_int(trim(std::string_view(term).substr(t + 2, star - t - 2)));
    if (!e || *e < 0) throw ParseError(line, "term '" + term + "' needs a nonnegative exponent");
    const std::string name(trim(std::string_view(term).substr(star + 1)));
    auto idx = basis.find(name);
    if (!idx) throw ParseError(line, "unknown generator '" + name + "' in term '" + term + "'");
    return ParsedTerm{std::move(c), *e, *idx};
}

// Parses `<term> + <term> ...` or `0`. The degree is checked against `degree`
// when given and inferred otherwise.
HomogeneousElement parse_terms(std::size_t line, std::string_view text, const BasisPtr& basis, Field field,
                               std::optional<int> degree) {
    const std::string body(trim(text));
    if (body == "0") {
        if (!degree) throw ParseError(line, "a zero relation needs an explicit degree");
        return HomogeneousElement(field, basis, *degree);
    }
    SparseVector coords;
    std::string first_term;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        const auto plus = body.find('+', pos);
        const std::string_view piece =
            std::string_view(body).substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
        // a leading '+' sign on a coefficient leaves an empty piece
        if (!trim(piece).empty()) {
            const ParsedTerm term = parse_term(line, piece, *basis, field);
            const int d = basis->degree(term.index) + term.exponent;
            if (!degree) {
                degree = d;
                first_term = std::string(trim(piece));
            } else if (d != *degree) {
                throw ValidationError("line " + std::to_string(line) + ": non-homogeneous terms: '" +
                                      std::string(trim(piece)) + "' has degree " + std::to_string(d) +
                                      ", expected " + std::to_string(*degree));
            }
            coords.add(term.index, term.coeff);
        }
        if (plus == std::string::npos) break;
        pos = plus + 1;
    }
    if (!degree) throw ParseError(line, "empty term list");
    return HomogeneousElement(field, basis, *degree, std::move(coords));
}

struct RawRelation {
    std::size_t line;
    std::optional<std::string> label;
    std::optional<int> degree;
    std::string terms;
};

// Parses gen/rel lines of one presentation; other keywords are errors.
Presentation build_presentation(const std::vector<std::pair<std::size_t, std::string>>& lines, Field field) {
    GradedBasis gens;
    std::vector<RawRelation> raw_rels;
    for (const auto& [number, line] : lines) {
        const auto tokens = split_ws(line);
        if (tokens[0] == "gen") {
            if (tokens.size() != 3) throw ParseError(number, "expected `gen <name> <degree>`");
            auto d = parse_int(tokens[2]);
            if (!d) throw ParseError(number, "bad degree '" + tokens[2] + "'");
            if (gens.find(tokens[1])) throw ParseError(number, "duplicate generator '" + tokens[1] + "'");
            gens.add(tokens[1], *d);
        } else if (tokens[0] == "rel") {
            const std::string rest(trim(std::string_view(line).substr(3)));
            const auto colon = std::find(tokens.begin(), tokens.end(), ":");
            if (colon != tokens.end()) {
                if (colon - tokens.begin() != 3) throw ParseError(number, "expected `rel <label> <degree> : <terms>`");
                auto d = parse_int(tokens[2]);
                if (!d) throw ParseError(number, "bad degree '" + tokens[2] + "'");
                raw_rels.push_back({number, tokens[1], *d, rest.substr(rest.find(':') + 1)});
            } else {
                raw_rels.push_back({number, std::nullopt, std::nullopt, rest});
            }
        } else {
            throw ParseError(number, "unknown keyword '" + tokens[0] + "'");
        }
    }
    BasisPtr gen_basis = std::make_shared<const GradedBasis>(std::move(gens));
    GradedBasis rels;
    std::vector<SparseVector> cols;
    for (const auto& r : raw_rels) {
        HomogeneousElement e = parse_terms(r.line, r.terms, gen_basis, field, r.degree);
        std::string label = r.label ? *r.label : rels.unique_label("r" + std::to_string(rels.size() + 1));
        if (rels.find(label)) throw ParseError(r.line, "duplicate relation label '" + label + "'");
        rels.add(label, e.degree());
        cols.push_back(e.coords());
    }
    return Presentation(GradedMatrix::from_columns(field, std::make_shared<const GradedBasis>(std::move(rels)),
                                                   gen_basis, std::move(cols)));
}

}  // namespace

Presentation parse_presentation(std::string_view text, Field field) {
    return build_presentation(content_lines(text), field);
}

std::string print_presentation(const Presentation& p) {
    std::string out;
    for (const auto& g : p.gens()->elements()) out += "gen " + g.label + " " + std::to_string(g.degree) + "\n";
    for (std::size_t j = 0; j < p.rels()->size(); ++j)
        out += "rel " + p.rels()->label(j) + " " + std::to_string(p.rels()->degree(j)) + " : " +
               p.incl().column_element(j).to_string() + "\n";
    return out;
}

PresentationMorphism parse_morphism(std::string_view text, Field field) {
    std::vector<std::pair<std::size_t, std::string>> src_lines, dst_lines, map_lines;
    enum { none, source, target } section = none;
    for (auto& entry : content_lines(text)) {
        const auto tokens = split_ws(entry.second);
        if (tokens.size() == 1 && tokens[0] == "source") section = source;
        else if (tokens.size() == 1 && tokens[0] == "target") section = target;
        else if (tokens[0] == "map") map_lines.push_back(std::move(entry));
        else if (section == source) src_lines.push_back(std::move(entry));
        else if (section == target) dst_lines.push_back(std::move(entry));
        else throw ParseError(entry.first, "expected a `source` or `target` section first");
    }
    Presentation src = build_presentation(src_lines, field);
    Presentation dst = build_presentation(dst_lines, field);
    GradedMatrix phi(field, src.gens(), dst.gens());
    std::vector<bool> mapped(src.gens()->size(), false);
    for (const auto& [number, line] : map_lines) {
        const auto arrow = line.find("->");
        if (arrow == std::string::npos) throw ParseError(number, "expected `map <name> -> <terms>`");
        const std::string name(trim(std::string_view(line).substr(3, arrow - 3)));
        auto idx = src.gens()->find(name);
        if (!idx) throw ParseError(number, "unknown source generator '" + name + "'");
        if (mapped[*idx]) throw ParseError(number, "generator '" + name + "' mapped twice");
        mapped[*idx] = true;
        HomogeneousElement img =
            parse_terms(number, std::string_view(line).substr(arrow + 2), dst.gens(), field, src.gens()->degree(*idx));
        phi.set_column(*idx, img.coords());
    }
    PresentationMorphism f{std::move(src), std::move(dst), std::move(phi)};
    if (!validate_morphism(f)) throw ValidationError("morphism does not map relations into relations");
    return f;
}

std::string print_morphism(const PresentationMorphism& f) {
    std::string out = "source\n" + print_presentation(f.src) + "target\n" + print_presentation(f.dst);
    for (std::size_t j = 0; j < f.phi.cols(); ++j)
        out += "map " + f.src.gens()->label(j) + " -> " + f.phi.column_element(j).to_string() + "\n";
    return out;
}

std::string print_barcode(const Barcode& b) {
    std::string out;
    for (const auto& bar : b.bars()) {
        out += bar.dim ? std::to_string(*bar.dim) : "-";
        out += " " + std::to_string(bar.birth) + " ";
        out += bar.death ? std::to_string(*bar.death) : "inf";
        out += '\n';
    }
    return out;
}

}  // namespace pmod
