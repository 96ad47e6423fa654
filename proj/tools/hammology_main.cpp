// hammology: persistence barcodes and similarity measures for string sets
// under the Hamming and generalized Hamming metrics.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "hammology/io.hpp"
#include "hammology/matching.hpp"
#include "hammology/persistence.hpp"
#include "hammology/separation.hpp"

namespace {

using namespace hammology;

struct CommonOptions {
    std::string output;
    std::optional<int> alphabet;
    int max_set_size = 12;
    int max_iso_size = 9;
    bool i_know = false;
    std::string epsilon_text;
    std::string mode_text;
    std::optional<int> max_dim;

    void attach(CLI::App* cmd, bool wants_epsilon, bool wants_mode) {
        cmd->add_option("--output", output, "Write the result document to a file");
        cmd->add_option("--alphabet", alphabet, "Alphabet size for plain-text inputs");
        cmd->add_option("--max-set-size", max_set_size, "Filtration/separation size cap");
        cmd->add_option("--max-iso-size", max_iso_size, "Isomorphism search size cap");
        cmd->add_flag("--i-know", i_know, "Acknowledge caps beyond twice the default");
        cmd->add_option("--max-dim", max_dim, "Highest dimension to report");
        if (wants_epsilon)
            cmd->add_option("--epsilon", epsilon_text, "Separation budget as a rational, e.g. 1/10");
        if (wants_mode)
            cmd->add_option("--mode", mode_text, "discrete or generalized (default: input mode)");
    }

    void check_caps() const {
        if (max_set_size > 24 && !i_know)
            throw InputError("--max-set-size beyond 24 needs --i-know (2^m filtrations)");
        if (max_iso_size > 18 && !i_know)
            throw InputError("--max-iso-size beyond 18 needs --i-know (m! search)");
        if (max_set_size < 1 || max_iso_size < 1)
            throw InputError("caps must be positive");
    }

    std::optional<Rational> epsilon() const {
        if (epsilon_text.empty()) return std::nullopt;
        Rational value = parse_rational(epsilon_text);
        if (value <= 0) throw InputError("--epsilon must be positive");
        return value;
    }

    Mode mode_or(Mode fallback) const {
        if (mode_text.empty()) return fallback;
        if (mode_text == "discrete") return Mode::Discrete;
        if (mode_text == "generalized") return Mode::Generalized;
        throw InputError("--mode must be 'discrete' or 'generalized'");
    }
};

Json config_json(const std::string& command, const CommonOptions& options, Mode mode,
                 const std::optional<Rational>& epsilon) {
    Json config;
    config["command"] = command;
    config["mode"] = mode == Mode::Discrete ? "discrete" : "generalized";
    config["epsilon"] = epsilon ? Json(rational_str(*epsilon)) : Json(nullptr);
    config["max_set_size"] = options.max_set_size;
    config["max_iso_size"] = options.max_iso_size;
    config["max_dim"] = options.max_dim ? Json(*options.max_dim) : Json(nullptr);
    config["tie_break"] = Json{{"pair_order", "side-class,radius,dimension,lex"},
                               {"moved_vertex", "lex-smaller-generator-set-difference,min-id"},
                               {"denominator", "least-power-of-two"}};
    return config;
}

void emit(const Json& document, const CommonOptions& options) {
    const std::string text = document.dump(2) + "\n";
    if (options.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(options.output);
    if (!file) throw InputError("cannot write output file '" + options.output + "'");
    file << text;
}

void emit_svg(const std::string& path, const BarcodeSet& barcodes,
              const std::vector<Rational>& levels, std::optional<int> max_dim) {
    std::ofstream file(path);
    if (!file) throw InputError("cannot write SVG file '" + path + "'");
    write_svg_barcode(barcodes, levels, file, max_dim);
}

int run(int argc, char** argv) {
    CLI::App app{"persistence barcodes and similarity measures for string sets"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string input_a, input_b, simplex_spec, iso_kind = "filtration", svg_path, replay_path;

    auto* cmd_barcode = app.add_subcommand("barcode", "Filtration radius table and barcodes");
    cmd_barcode->add_option("input", input_a, "String set file")->required();
    cmd_barcode->add_option("--svg", svg_path, "Write an SVG barcode plot");
    opt.attach(cmd_barcode, false, true);

    auto* cmd_dnew = app.add_subcommand("dnew", "Hybrid barcode-matching distance d_new");
    cmd_dnew->add_option("input_a", input_a, "First string set")->required();
    cmd_dnew->add_option("input_b", input_b, "Second string set")->required();
    opt.attach(cmd_dnew, true, false);

    auto* cmd_separate = app.add_subcommand("separate", "Separation of simplex radii");
    cmd_separate->add_option("input", input_a, "String set file")->required();
    cmd_separate->add_option("--replay", replay_path, "Re-apply a recorded separation trace");
    opt.attach(cmd_separate, true, false);

    auto* cmd_hausdorff = app.add_subcommand("hausdorff", "Hausdorff distance between two sets");
    cmd_hausdorff->add_option("input_a", input_a)->required();
    cmd_hausdorff->add_option("input_b", input_b)->required();
    opt.attach(cmd_hausdorff, false, false);

    auto* cmd_iso = app.add_subcommand("iso", "Filtration isomorphism / d_H-isomorphism search");
    cmd_iso->add_option("input_a", input_a)->required();
    cmd_iso->add_option("input_b", input_b)->required();
    cmd_iso->add_option("--kind", iso_kind, "filtration or hamming")->required();
    opt.attach(cmd_iso, false, true);

    auto* cmd_radius = app.add_subcommand("radius", "Radius and center of one simplex");
    cmd_radius->add_option("input", input_a)->required();
    cmd_radius->add_option("--simplex", simplex_spec, "Vertices, e.g. \"s1,s3\" or \"1,3\"")
        ->required();
    opt.attach(cmd_radius, false, true);

    auto* cmd_register = app.add_subcommand("register", "Cycle registration between two sets");
    cmd_register->add_option("input_a", input_a)->required();
    cmd_register->add_option("input_b", input_b)->required();
    opt.attach(cmd_register, true, false);

    CLI11_PARSE(app, argc, argv);
    opt.check_caps();

    const BuildOptions build{opt.max_set_size};
    const IsoOptions iso{opt.max_iso_size};

    if (cmd_barcode->parsed()) {
        InputDocument input = load_input(input_a, opt.alphabet);
        const Mode mode = opt.mode_or(input.mode);
        const Filtration filtration = build_filtration(input.set, mode, build);
        const PersistenceResult persistence = compute_persistence(filtration);

        Json document;
        document["config"] = config_json("barcode", opt, mode, std::nullopt);
        document["input"] = input_to_json(input);
        document["filtration"] = filtration_json(filtration);
        document["barcodes"] = barcodes_json(persistence.barcodes, filtration, opt.max_dim);
        if (!svg_path.empty())
            emit_svg(svg_path, persistence.barcodes, filtration.levels(), opt.max_dim);
        emit(document, opt);
        return 0;
    }

    if (cmd_dnew->parsed() || cmd_register->parsed()) {
        const bool full = cmd_dnew->parsed();
        InputDocument a = load_input(input_a, opt.alphabet);
        InputDocument b = load_input(input_b, opt.alphabet);
        SimilarityOptions options{opt.epsilon(), opt.max_set_size};
        const SimilarityReport report = d_new_distance(a.set, b.set, options);

        Json document;
        document["config"] =
            config_json(full ? "dnew" : "register", opt, Mode::Generalized, report.epsilon);
        document["input_a"] = input_to_json(a);
        document["input_b"] = input_to_json(b);
        Json similarity = similarity_json(report);
        if (full) {
            similarity["distances"]["hausdorff"] =
                rational_json(hausdorff_distance(a.set, b.set));
            document["similarity"] = std::move(similarity);
        } else {
            Json registration;
            registration["k0"] = report.k0;
            registration["dimensions"] = similarity["dimensions"];
            registration["epsilon"] = similarity["epsilon"];
            document["registration"] = std::move(registration);
        }
        emit(document, opt);
        return 0;
    }

    if (cmd_separate->parsed()) {
        InputDocument input = load_input(input_a, opt.alphabet);
        Json document;
        document["input"] = input_to_json(input);

        if (!replay_path.empty()) {
            std::ifstream file(replay_path);
            if (!file) throw InputError("cannot open trace file '" + replay_path + "'");
            Json trace;
            try {
                trace = Json::parse(file);
            } catch (const Json::parse_error& error) {
                throw InputError(std::string("JSON parse error in trace: ") + error.what());
            }
            const Json* steps = nullptr;
            if (trace.is_array()) steps = &trace;
            else if (trace.contains("steps")) steps = &trace["steps"];
            else if (trace.contains("separation")) steps = &trace["separation"]["steps"];
            if (!steps) throw InputError("trace file carries no steps array");

            const StringSet replayed =
                replay_separation(input.set, parse_separation_trace(*steps));
            document["config"] = config_json("separate", opt, Mode::Generalized, std::nullopt);
            InputDocument out{replayed.alphabet(), replayed.length(), Mode::Generalized, replayed};
            document["separated"] = input_to_json(out);
            emit(document, opt);
            return 0;
        }

        std::optional<Rational> epsilon = opt.epsilon();
        if (!epsilon) {
            // Same default policy as the d_new pipeline.
            const UnionSeparation self = separate_union(input.set, input.set, std::nullopt,
                                                        SeparationOptions{opt.max_set_size});
            epsilon = self.epsilon;
        }
        const SeparationResult result =
            separate_radii(input.set, *epsilon, SeparationOptions{opt.max_set_size});
        document["config"] = config_json("separate", opt, Mode::Generalized, *epsilon);
        document["separation"] = separation_json(result);
        InputDocument out{result.separated.alphabet(), result.separated.length(),
                          Mode::Generalized, result.separated};
        document["separated"] = input_to_json(out);
        emit(document, opt);
        return 0;
    }

    if (cmd_hausdorff->parsed()) {
        InputDocument a = load_input(input_a, opt.alphabet);
        InputDocument b = load_input(input_b, opt.alphabet);
        Json document;
        document["config"] = config_json("hausdorff", opt,
                                         a.mode == Mode::Discrete && b.mode == Mode::Discrete
                                             ? Mode::Discrete
                                             : Mode::Generalized,
                                         std::nullopt);
        document["input_a"] = input_to_json(a);
        document["input_b"] = input_to_json(b);
        document["distances"] = Json{{"hausdorff", rational_json(hausdorff_distance(a.set, b.set))}};
        emit(document, opt);
        return 0;
    }

    if (cmd_iso->parsed()) {
        InputDocument a = load_input(input_a, opt.alphabet);
        InputDocument b = load_input(input_b, opt.alphabet);
        Json document;
        document["input_a"] = input_to_json(a);
        document["input_b"] = input_to_json(b);

        if (iso_kind == "filtration") {
            const Mode mode = opt.mode_or(a.mode);
            document["config"] = config_json("iso", opt, mode, std::nullopt);
            const Filtration fa = build_filtration(a.set, mode, build);
            const Filtration fb = build_filtration(b.set, mode, build);
            const auto mapping = filtration_isomorphism(fa, fb, iso);
            document["kind"] = "filtration";
            document["found"] = mapping.has_value();
            if (mapping) {
                Json image = Json::array();
                for (int w : *mapping) image.push_back(w + 1);
                document["mapping"] = std::move(image);
            }
        } else if (iso_kind == "hamming") {
            document["config"] = config_json("iso", opt, Mode::Discrete, std::nullopt);
            const auto isometry = hamming_isomorphism(a.set, b.set, iso);
            document["kind"] = "hamming";
            document["found"] = isometry.has_value();
            if (isometry) document["isometry"] = isometry_json(*isometry);
        } else {
            throw InputError("--kind must be 'filtration' or 'hamming'");
        }
        emit(document, opt);
        return 0;
    }

    if (cmd_radius->parsed()) {
        InputDocument input = load_input(input_a, opt.alphabet);
        const Mode mode = opt.mode_or(input.mode);
        const Simplex simplex = parse_simplex_spec(simplex_spec, input.set.size());
        const RadiusCertificate certificate =
            mode == Mode::Discrete ? discrete_simplex_radius(input.set, simplex)
                                   : generalized_simplex_radius(input.set.embedded(), simplex);

        Json document;
        document["config"] = config_json("radius", opt, mode, std::nullopt);
        document["input"] = input_to_json(input);
        document["simplex"] = simplex_json(simplex);
        document["radius"] = rational_json(certificate.radius);
        if (certificate.discrete_center)
            document["center"] = letters_to_text(*certificate.discrete_center);
        else {
            InputDocument center{certificate.center.alphabet, certificate.center.length(),
                                 Mode::Generalized,
                                 StringSet::generalized(certificate.center.alphabet,
                                                        certificate.center.length(),
                                                        {certificate.center})};
            document["center"] = input_to_json(center)["strings"][0];
        }
        emit(document, opt);
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InputError& error) {
        std::cerr << "input error: " << error.what() << "\n";
        return 2;
    } catch (const CapError& error) {
        std::cerr << "cap exceeded: " << error.what() << "\n";
        return 3;
    } catch (const InternalError& error) {
        std::cerr << "internal invariant violation: " << error.what() << "\n";
        return 4;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 4;
    }
}
