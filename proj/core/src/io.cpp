#include "hammology/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

namespace hammology {

std::string letters_to_text(const DiscreteString& s) {
    std::string out;
    if (s.alphabet <= 9) {
        for (int symbol : s.symbols) out += static_cast<char>('0' + symbol);
        return out;
    }
    out = "[";
    for (std::size_t i = 0; i < s.symbols.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s.symbols[i]);
    }
    return out + "]";
}

DiscreteString text_to_letters(const std::string& text, int alphabet) {
    DiscreteString s;
    if (!text.empty() && text.front() == '[') {
        if (text.back() != ']') throw InputError("unterminated letter list '" + text + "'");
        std::stringstream body(text.substr(1, text.size() - 2));
        std::string token;
        while (std::getline(body, token, ',')) {
            try {
                s.symbols.push_back(std::stoi(token));
            } catch (const std::exception&) {
                throw InputError("bad letter '" + token + "' in '" + text + "'");
            }
        }
    } else {
        for (char c : text) {
            if (!std::isdigit(static_cast<unsigned char>(c)) || c == '0')
                throw InputError("letters in digit strings must be 1..9, got '" + text + "'");
            s.symbols.push_back(c - '0');
        }
    }
    if (s.symbols.empty()) throw InputError("empty string literal");
    int largest = 0;
    for (int symbol : s.symbols) {
        if (symbol < 1) throw InputError("letters must be positive in '" + text + "'");
        largest = std::max(largest, symbol);
    }
    s.alphabet = alphabet > 0 ? alphabet : largest;
    if (largest > s.alphabet)
        throw InputError("letter " + std::to_string(largest) + " exceeds alphabet size " +
                         std::to_string(s.alphabet));
    return s;
}

namespace {

Mode parse_mode(const std::string& text) {
    if (text == "discrete") return Mode::Discrete;
    if (text == "generalized") return Mode::Generalized;
    throw InputError("mode must be 'discrete' or 'generalized', got '" + text + "'");
}

DiscreteString discrete_from_json(const Json& value, int alphabet) {
    if (value.is_string()) return text_to_letters(value.get<std::string>(), alphabet);
    if (value.is_array()) {
        DiscreteString s;
        s.alphabet = alphabet;
        for (const auto& item : value) {
            if (!item.is_number_integer()) throw InputError("letters must be integers");
            s.symbols.push_back(item.get<int>());
        }
        return s;
    }
    throw InputError("discrete strings are digit strings or integer arrays");
}

GeneralizedString generalized_from_json(const Json& value, int alphabet) {
    if (!value.is_array()) throw InputError("a generalized string is an array of distributions");
    GeneralizedString s;
    s.alphabet = alphabet;
    for (const auto& position : value) {
        if (!position.is_object())
            throw InputError("each position is an object mapping letters to rationals");
        std::vector<Rational> weights(alphabet, Rational(0));
        for (const auto& [key, weight] : position.items()) {
            int letter;
            try {
                letter = std::stoi(key);
            } catch (const std::exception&) {
                throw InputError("bad letter key '" + key + "'");
            }
            if (letter < 1 || letter > alphabet)
                throw InputError("letter key " + key + " outside 1..n");
            if (!weight.is_string()) throw InputError("weights are rational strings like \"7/15\"");
            weights[letter - 1] = parse_rational(weight.get<std::string>());
        }
        s.positions.push_back(std::move(weights));
    }
    return s;
}

} // namespace

InputDocument parse_input_json(const Json& document) {
    if (!document.is_object()) throw InputError("input document must be a JSON object");
    for (const char* key : {"n", "l", "mode", "strings"})
        if (!document.contains(key))
            throw InputError(std::string("input document is missing '") + key + "'");

    InputDocument input;
    input.alphabet = document["n"].get<int>();
    input.length = document["l"].get<int>();
    input.mode = parse_mode(document["mode"].get<std::string>());

    const Json& strings = document["strings"];
    if (!strings.is_array() || strings.empty())
        throw InputError("'strings' must be a nonempty array");

    if (input.mode == Mode::Discrete) {
        std::vector<DiscreteString> elements;
        for (const auto& value : strings)
            elements.push_back(discrete_from_json(value, input.alphabet));
        input.set = StringSet::discrete(input.alphabet, input.length, std::move(elements));
    } else {
        std::vector<GeneralizedString> elements;
        for (const auto& value : strings)
            elements.push_back(generalized_from_json(value, input.alphabet));
        input.set = StringSet::generalized(input.alphabet, input.length, std::move(elements));
    }
    return input;
}

InputDocument parse_input_text(const std::string& content, std::optional<int> alphabet) {
    std::vector<DiscreteString> elements;
    std::istringstream stream(content);
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        try {
            elements.push_back(text_to_letters(line, alphabet.value_or(0)));
        } catch (const InputError& error) {
            throw InputError("line " + std::to_string(line_number) + ": " + error.what());
        }
    }
    if (elements.empty()) throw InputError("no strings in input");

    int n = alphabet.value_or(0), l = elements.front().length();
    for (const auto& s : elements) {
        if (s.length() != l)
            throw InputError("strings of different lengths (" + std::to_string(l) + " vs " +
                             std::to_string(s.length()) + ")");
        for (int symbol : s.symbols) n = std::max(n, symbol);
    }
    for (auto& s : elements) s.alphabet = n;

    InputDocument input;
    input.alphabet = n;
    input.length = l;
    input.mode = Mode::Discrete;
    input.set = StringSet::discrete(n, l, std::move(elements));
    return input;
}

InputDocument load_input(const std::string& path, std::optional<int> alphabet) {
    std::ifstream file(path);
    if (!file) throw InputError("cannot open input file '" + path + "'");
    std::stringstream buffer;
    buffer << file.rdbuf();
    const std::string content = buffer.str();

    const std::size_t first = content.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw InputError("empty input file '" + path + "'");
    if (content[first] == '{') {
        try {
            return parse_input_json(Json::parse(content));
        } catch (const Json::parse_error& error) {
            throw InputError(std::string("JSON parse error in '") + path + "': " + error.what());
        }
    }
    return parse_input_text(content, alphabet);
}

Json input_to_json(const InputDocument& input) {
    Json document;
    document["n"] = input.alphabet;
    document["l"] = input.length;
    document["mode"] = input.mode == Mode::Discrete ? "discrete" : "generalized";
    Json strings = Json::array();
    for (int v = 0; v < input.set.size(); ++v) {
        if (input.mode == Mode::Discrete) {
            strings.push_back(letters_to_text(input.set.discrete_element(v)));
        } else {
            Json positions = Json::array();
            const GeneralizedString& s = input.set.element(v);
            for (int i = 0; i < s.length(); ++i) {
                Json distribution = Json::object();
                for (int j = 0; j < s.alphabet; ++j)
                    if (s.positions[i][j] != 0)
                        distribution[std::to_string(j + 1)] = rational_str(s.positions[i][j]);
                positions.push_back(std::move(distribution));
            }
            strings.push_back(std::move(positions));
        }
    }
    document["strings"] = std::move(strings);
    return document;
}

Simplex parse_simplex_spec(const std::string& text, int set_size) {
    std::vector<int> vertices;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        while (!token.empty() && token.front() == ' ') token.erase(token.begin());
        while (!token.empty() && token.back() == ' ') token.pop_back();
        if (!token.empty() && (token.front() == 's' || token.front() == 'S')) token.erase(token.begin());
        int id;
        try {
            id = std::stoi(token);
        } catch (const std::exception&) {
            throw InputError("bad vertex '" + token + "' in simplex spec");
        }
        if (id < 1 || id > set_size)
            throw InputError("vertex s" + std::to_string(id) + " outside 1.." +
                             std::to_string(set_size));
        vertices.push_back(id - 1);
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (vertices.empty()) throw InputError("empty simplex spec");
    return Simplex::of(std::move(vertices));
}

Json rational_json(const Rational& value) { return rational_str(value); }

Json simplex_json(const Simplex& simplex) {
    Json vertices = Json::array();
    for (int v : simplex.vertices) vertices.push_back(v + 1);
    return vertices;
}

Json filtration_json(const Filtration& filtration) {
    Json table = Json::array();
    for (const auto& entry : filtration.entries()) {
        Json row;
        row["simplex"] = simplex_json(entry.simplex);
        row["radius"] = rational_json(entry.radius);
        table.push_back(std::move(row));
    }
    Json levels = Json::array();
    for (const auto& level : filtration.levels()) levels.push_back(rational_json(level));
    Json out;
    out["entries"] = std::move(table);
    out["levels"] = std::move(levels);
    out["mode"] = filtration.mode() == Mode::Discrete ? "discrete" : "generalized";
    return out;
}

Json barcodes_json(const BarcodeSet& barcodes, const Filtration& filtration,
                   std::optional<int> max_dimension) {
    const int top = max_dimension ? std::min(*max_dimension, barcodes.max_dimension())
                                  : barcodes.max_dimension();
    Json out = Json::object();
    for (int k = 0; k <= top; ++k) {
        Json bars = Json::array();
        for (const Bar& bar : barcodes.dimension(k)) {
            Json row;
            row["birth"] = rational_json(bar.birth);
            row["death"] = bar.finite() ? rational_json(*bar.death) : Json("inf");
            row["birth_simplex"] = simplex_json(filtration.entries()[bar.birth_entry].simplex);
            if (bar.death_entry)
                row["death_simplex"] = simplex_json(filtration.entries()[*bar.death_entry].simplex);
            row["zero_length"] = bar.zero_length();
            Json representative = Json::array();
            for (int e : bar.representative.entries)
                representative.push_back(simplex_json(filtration.entries()[e].simplex));
            row["representative"] = std::move(representative);
            bars.push_back(std::move(row));
        }
        out[std::to_string(k)] = std::move(bars);
    }
    return out;
}

Json matching_json(const BarMatching& matching) {
    Json out;
    out["delta"] = rational_json(matching.delta);
    Json pairs = Json::array();
    for (const auto& [left, right] : matching.pairs) pairs.push_back(Json::array({left, right}));
    out["pairs"] = std::move(pairs);
    out["left_diagonal"] = matching.left_unmatched;
    out["right_diagonal"] = matching.right_unmatched;
    return out;
}

Json separation_json(const SeparationResult& result) {
    Json out;
    out["epsilon"] = rational_json(result.epsilon);
    out["appended_positions"] = result.appended_positions();
    Json steps = Json::array();
    for (const auto& step : result.steps) {
        Json row;
        row["moved_vertex"] = step.moved_vertex + 1;
        row["j"] = step.denominator.get_str();
        row["appended_position"] = step.appended_position + 1;
        row["kept"] = simplex_json(Simplex::from_mask(step.kept));
        row["raised"] = simplex_json(Simplex::from_mask(step.raised));
        Json bounds;
        bounds["epsilon_share"] = rational_json(step.epsilon_share);
        bounds["min_radius_gap"] = rational_json(step.min_radius_gap);
        if (step.min_generator_margin)
            bounds["min_generator_margin"] = rational_json(*step.min_generator_margin);
        row["bounds"] = std::move(bounds);
        steps.push_back(std::move(row));
    }
    out["steps"] = std::move(steps);

    Json table = Json::array();
    const VertexMask all = (VertexMask(1) << result.separated.size()) - 1;
    for (VertexMask mask = 1; mask <= all; ++mask) {
        Json row;
        row["simplex"] = simplex_json(Simplex::from_mask(mask));
        row["radius"] = rational_json(result.separated_radii[mask]);
        row["original_radius"] = rational_json(result.original_radii[mask]);
        table.push_back(std::move(row));
    }
    out["radius_table"] = std::move(table);
    return out;
}

std::vector<SeparationStep> parse_separation_trace(const Json& steps) {
    if (!steps.is_array()) throw InputError("separation trace must be an array of steps");
    std::vector<SeparationStep> out;
    for (const auto& row : steps) {
        SeparationStep step;
        step.moved_vertex = row.at("moved_vertex").get<int>() - 1;
        step.denominator = Integer(row.at("j").get<std::string>());
        step.appended_position = row.at("appended_position").get<int>() - 1;
        out.push_back(std::move(step));
    }
    return out;
}

Json similarity_json(const SimilarityReport& report) {
    Json out;
    out["epsilon"] = rational_json(report.epsilon);
    out["k0"] = report.k0;

    Json distances;
    distances["d0"] = rational_json(report.d0);
    for (const auto& dim : report.higher)
        distances["d" + std::to_string(dim.dimension)] = rational_json(dim.value);
    distances["d_new"] = rational_json(report.d_new);
    out["distances"] = std::move(distances);

    Json weights = Json::object();
    for (std::size_t k = 0; k < report.weights.size(); ++k)
        weights[std::to_string(k)] = rational_json(report.weights[k]);
    out["weights"] = std::move(weights);

    Json dims = Json::array();
    for (const auto& dim : report.higher) {
        Json d;
        d["dimension"] = dim.dimension;
        d["value"] = rational_json(dim.value);
        auto bars_json = [](const std::vector<ReportedBar>& bars) {
            Json array = Json::array();
            for (const auto& bar : bars) {
                Json row;
                row["bar"] = bar.bar_index;
                row["reported"] = Json::array(
                    {rational_json(bar.reported.birth), rational_json(bar.reported.death)});
                row["separated"] = Json::array(
                    {rational_json(bar.separated.birth), rational_json(bar.separated.death)});
                array.push_back(std::move(row));
            }
            return array;
        };
        d["left_bars"] = bars_json(dim.left_bars);
        d["right_bars"] = bars_json(dim.right_bars);
        Json registered = Json::array();
        for (const auto& pair : dim.registration.pairs)
            registered.push_back(Json{{"left", pair.left_bar},
                                      {"right", pair.right_bar},
                                      {"union_death", rational_json(pair.union_death)}});
        d["registered"] = std::move(registered);
        d["residual_left"] = dim.registration.residual_left;
        d["residual_right"] = dim.registration.residual_right;
        d["residual_matching"] = matching_json(dim.residual_matching);
        dims.push_back(std::move(d));
    }
    out["dimensions"] = std::move(dims);
    out["separation"] = separation_json(report.separation.unioned);

    Json a_ids = Json::array(), b_ids = Json::array();
    for (int v : report.separation.a_vertices) a_ids.push_back(v + 1);
    for (int v : report.separation.b_vertices) b_ids.push_back(v + 1);
    out["union_vertices_a"] = std::move(a_ids);
    out["union_vertices_b"] = std::move(b_ids);
    return out;
}

Json isometry_json(const HammingIsometry& isometry) {
    Json out;
    Json positions = Json::array();
    for (int i : isometry.source_position) positions.push_back(i + 1);
    out["source_position"] = std::move(positions);
    Json maps = Json::array();
    for (const auto& map : isometry.letter_map) maps.push_back(map);
    out["letter_map"] = std::move(maps);
    return out;
}

namespace {

// Exact fixed-point coordinates keep the SVG byte-deterministic.
std::string svg_coord(const Rational& value) {
    Rational scaled = value * 100;
    Integer rounded;
    mpz_fdiv_q(rounded.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    const bool negative = rounded < 0;
    Integer magnitude = negative ? Integer(-rounded) : rounded;
    std::string digits = magnitude.get_str();
    while (digits.size() < 3) digits.insert(digits.begin(), '0');
    std::string out = (negative ? "-" : "") + digits.substr(0, digits.size() - 2) + "." +
                      digits.substr(digits.size() - 2);
    return out;
}

const char* dimension_color(int k) {
    switch (k) {
        case 0: return "#d62728";
        case 1: return "#1f77b4";
        case 2: return "#2ca02c";
        default: return "#7f7f7f";
    }
}

} // namespace

void write_svg_barcode(const BarcodeSet& barcodes, const std::vector<Rational>& levels,
                       std::ostream& out, std::optional<int> max_dimension) {
    const int top = max_dimension ? std::min(*max_dimension, barcodes.max_dimension())
                                  : barcodes.max_dimension();
    Rational max_level = levels.empty() ? Rational(1) : levels.back();
    if (max_level == 0) max_level = 1;

    const Rational margin_left(60);
    const Rational plot_width(760);
    const int margin_top = 30, bar_height = 14, group_gap = 22;

    struct Row {
        int dimension;
        Rational birth;
        std::optional<Rational> death;
    };
    std::vector<Row> rows;
    std::vector<std::pair<int, int>> group_spans;  // (dimension, first row)
    for (int k = 0; k <= top; ++k) {
        const auto& bars = barcodes.dimension(k);
        std::vector<Row> group;
        for (const Bar& bar : bars) {
            if (bar.zero_length()) continue;
            group.push_back(Row{k, bar.birth, bar.death});
        }
        if (group.empty()) continue;  // empty dimension: group omitted
        std::sort(group.begin(), group.end(), [](const Row& a, const Row& b) {
            if (a.birth != b.birth) return a.birth < b.birth;
            const Rational da = a.death ? *a.death : Rational(-1);
            const Rational db = b.death ? *b.death : Rational(-1);
            return da < db;
        });
        group_spans.push_back({k, static_cast<int>(rows.size())});
        rows.insert(rows.end(), group.begin(), group.end());
    }

    const int height = margin_top + 40 + static_cast<int>(rows.size()) * bar_height +
                       static_cast<int>(group_spans.size()) * group_gap;
    auto x_of = [&](const Rational& r) -> Rational {
        return margin_left + plot_width * r / max_level;
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"880\" height=\"" << height
        << "\" viewBox=\"0 0 880 " << height << "\">\n";
    out << "<rect width=\"880\" height=\"" << height << "\" fill=\"white\"/>\n";

    // Axis and level ticks.
    const int axis_y = height - 28;
    out << "<line x1=\"" << svg_coord(margin_left) << "\" y1=\"" << axis_y << "\" x2=\""
        << svg_coord(margin_left + plot_width) << "\" y2=\"" << axis_y
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (const auto& level : levels) {
        const std::string x = svg_coord(x_of(level));
        out << "<line x1=\"" << x << "\" y1=\"" << axis_y - 4 << "\" x2=\"" << x << "\" y2=\""
            << axis_y + 4 << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << x << "\" y=\"" << axis_y + 18
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">"
            << rational_str(level) << "</text>\n";
    }

    int y = margin_top;
    std::size_t row_index = 0;
    for (std::size_t g = 0; g < group_spans.size(); ++g) {
        const int dimension = group_spans[g].first;
        out << "<text x=\"8\" y=\"" << y + 12
            << "\" font-family=\"sans-serif\" font-size=\"12\">dim " << dimension << "</text>\n";
        y += 16;
        while (row_index < rows.size() && rows[row_index].dimension == dimension) {
            const Row& row = rows[row_index];
            const std::string x1 = svg_coord(x_of(row.birth));
            const std::string x2 =
                row.death ? svg_coord(x_of(*row.death)) : svg_coord(margin_left + plot_width + 20);
            out << "<line x1=\"" << x1 << "\" y1=\"" << y << "\" x2=\"" << x2 << "\" y2=\"" << y
                << "\" stroke=\"" << dimension_color(dimension) << "\" stroke-width=\"4\"";
            if (!row.death) out << " stroke-dasharray=\"8,3\"";
            out << "/>\n";
            y += bar_height;
            ++row_index;
        }
        y += group_gap - 16;
    }
    out << "</svg>\n";
}

} // namespace hammology
