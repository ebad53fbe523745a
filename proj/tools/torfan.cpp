// torfan: command-line surface over the fan library. Exit codes: 0 = checks
// pass, 1 = a mathematical check failed, 2 = input error.
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "torfan/birational.hpp"
#include "torfan/catalog.hpp"
#include "torfan/io.hpp"
#include "torfan/mori.hpp"
#include "torfan/structure.hpp"

using nlohmann::json;
using namespace torfan;

namespace {

bool json_mode = false;

Fan load_fan(const std::string& arg) {
    if (std::filesystem::exists(arg)) return parse_fan(arg);
    try {
        return catalog(arg).fan;
    } catch (const InputError&) {
        throw InputError("no such file, and not a catalog name: " + arg);
    }
}

void emit(const json& j, const std::string& text) {
    if (json_mode)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

json relation_to_json(const PrimitiveRelation& r) {
    json j;
    j["collection"] = r.collection;
    j["focus_cone"] = r.focus_cone;
    json coeffs = json::array();
    for (const Int& c : r.coefficients) coeffs.push_back(static_cast<long long>(c));
    j["coefficients"] = coeffs;
    j["degree"] = static_cast<long long>(r.degree);
    return j;
}

std::string relation_to_text(const PrimitiveRelation& r) {
    std::string s = "{";
    for (size_t i = 0; i < r.collection.size(); ++i)
        s += (i ? "," : "") + std::to_string(r.collection[i]);
    s += "} -> {";
    for (size_t i = 0; i < r.focus_cone.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(r.focus_cone[i]) + ":" + r.coefficients[i].str();
    }
    s += "} degree " + r.degree.str();
    return s;
}

std::vector<int> parse_index_list(const std::string& s) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t comma = s.find(',', pos);
        std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos
                                                                   : comma - pos);
        if (tok.empty()) throw InputError("empty entry in index list");
        out.push_back(std::stoi(tok));
        pos = comma == std::string::npos ? s.size() : comma + 1;
    }
    if (out.empty()) throw InputError("empty index list");
    return out;
}

const char* case_name(DivisorCase c) {
    switch (c) {
        case DivisorCase::case0: return "case0";
        case DivisorCase::case1: return "case1";
        case DivisorCase::case1_unclassified: return "case1-unclassified";
        case DivisorCase::case2a: return "case2a";
        case DivisorCase::case2b: return "case2b";
        case DivisorCase::case3: return "case3";
    }
    return "?";
}

int run(int argc, char** argv) {
    CLI::App app{"smooth complete toric fan calculator"};
    app.add_flag("--json", json_mode, "machine-readable output");
    app.require_subcommand(1);

    std::string file, file2, ray_str, class_json, collection_str, emit_dir, out_file;
    int ray_index = -1, dim = 0, bound = 0;

    auto* c_primcoll = app.add_subcommand("primcoll", "list primitive collections and relations");
    c_primcoll->add_option("FILE", file)->required();

    auto* c_fano = app.add_subcommand("fano", "test the Fano condition");
    c_fano->add_option("FILE", file)->required();

    auto* c_picard = app.add_subcommand("picard", "print the Picard number");
    c_picard->add_option("FILE", file)->required();

    auto* c_rhodiff = app.add_subcommand("rhodiff", "Picard drop to the divisor fan of a ray");
    c_rhodiff->add_option("FILE", file)->required();
    c_rhodiff->add_option("--ray", ray_index)->required();

    auto* c_proj = app.add_subcommand("projective", "test projectivity (exact LP)");
    c_proj->add_option("FILE", file)->required();

    auto* c_extremal = app.add_subcommand("extremal", "test extremality of a curve class");
    c_extremal->add_option("FILE", file)->required();
    c_extremal->add_option("--class", class_json, "JSON array of intersection numbers")->required();

    auto* c_decomp = app.add_subcommand("decompose", "decompose a collection's class into contractibles");
    c_decomp->add_option("FILE", file)->required();
    c_decomp->add_option("--collection", collection_str, "comma-separated ray indices")->required();

    auto* c_classify = app.add_subcommand("classify", "divisor structure case of a ray");
    c_classify->add_option("FILE", file)->required();
    c_classify->add_option("--ray", ray_index)->required();

    auto* c_s3 = app.add_subcommand("s3bundle", "detect a hexagon bundle structure");
    c_s3->add_option("FILE", file)->required();

    auto* c_basic = app.add_subcommand("basic-construction", "flip/blow-down pipeline to a P1-bundle");
    c_basic->add_option("FILE", file)->required();
    c_basic->add_option("--ray", ray_index)->required();
    c_basic->add_option("--emit-steps", emit_dir, "write intermediate fans to DIR");

    auto* c_refine = app.add_subcommand("refine", "refinement map between two fans");
    c_refine->add_option("X", file)->required();
    c_refine->add_option("Y", file2)->required();

    auto* c_subdiv = app.add_subcommand("classify-subdiv", "per-cone subdivision types");
    c_subdiv->add_option("X", file)->required();
    c_subdiv->add_option("Y", file2)->required();

    auto* c_facto = app.add_subcommand("factorize", "blow-up factorization of a refinement");
    c_facto->add_option("X", file)->required();
    c_facto->add_option("Y", file2)->required();
    c_facto->add_option("--emit-steps", emit_dir, "write intermediate fans to DIR");

    auto* c_catalog = app.add_subcommand("catalog", "print or export a built-in fan");
    c_catalog->add_option("NAME", file)->required();
    c_catalog->add_option("--out", out_file, "write the fan file here");

    auto* c_enum = app.add_subcommand("enumerate", "enumerate smooth Fano classes");
    c_enum->add_option("DIM", dim)->required();
    c_enum->add_option("--bound", bound, "coordinate box bound");

    auto* c_iso = app.add_subcommand("isomorphic", "lattice isomorphism test");
    c_iso->add_option("A", file)->required();
    c_iso->add_option("B", file2)->required();

    CLI11_PARSE(app, argc, argv);

    if (c_primcoll->parsed()) {
        Fan fan = load_fan(file);
        auto rels = primitive_relations(fan);
        json j;
        j["count"] = rels.size();
        j["relations"] = json::array();
        std::string text;
        for (const auto& r : rels) {
            j["relations"].push_back(relation_to_json(r));
            text += relation_to_text(r) + "\n";
        }
        emit(j, text + std::to_string(rels.size()) + " primitive collections\n");
        return 0;
    }
    if (c_fano->parsed()) {
        bool f = is_fano(load_fan(file));
        emit(json{{"fano", f}}, std::string(f ? "fano\n" : "not fano\n"));
        return f ? 0 : 1;
    }
    if (c_picard->parsed()) {
        int rho = picard_number(load_fan(file));
        emit(json{{"picard", rho}}, "picard " + std::to_string(rho) + "\n");
        return 0;
    }
    if (c_rhodiff->parsed()) {
        int d = rho_diff(load_fan(file), ray_index);
        emit(json{{"ray", ray_index}, {"rho_diff", d}},
             "rho_diff " + std::to_string(d) + "\n");
        return 0;
    }
    if (c_proj->parsed()) {
        bool p = is_projective(load_fan(file));
        emit(json{{"projective", p}}, std::string(p ? "projective\n" : "not projective\n"));
        return p ? 0 : 1;
    }
    if (c_extremal->parsed()) {
        Fan fan = load_fan(file);
        json arr = json::parse(class_json, nullptr, false);
        if (arr.is_discarded() || !arr.is_array())
            throw InputError("--class must be a JSON array of integers");
        RelationClass cls;
        cls.degree = 0;
        for (const json& v : arr) {
            if (!v.is_number_integer()) throw InputError("--class entries must be integers");
            cls.entries.push_back(Int(v.get<long long>()));
            cls.degree += cls.entries.back();
        }
        if (cls.entries.size() != fan.rays.size())
            throw InputError("--class length must equal the ray count");
        for (int i = 0; i < fan.dim; ++i) {
            Int s = 0;
            for (size_t r = 0; r < fan.rays.size(); ++r)
                s += cls.entries[r] * fan.rays[r][i];
            if (s != 0)
                throw InputError("--class is not a curve class: entries do not "
                                 "sum against the rays to zero");
        }
        bool e = is_extremal(fan, cls);
        emit(json{{"extremal", e}}, std::string(e ? "extremal\n" : "not extremal\n"));
        return e ? 0 : 1;
    }
    if (c_decomp->parsed()) {
        Fan fan = load_fan(file);
        Cone p = parse_index_list(collection_str);
        std::sort(p.begin(), p.end());
        RelationClass cls = relation_class(fan, primitive_relation(fan, p));
        auto dec = decompose_into_contractibles(fan, cls);
        if (!dec) {
            emit(json{{"decomposed", false}}, "no decomposition into contractibles\n");
            return 1;
        }
        json terms = json::array();
        std::string text;
        for (const auto& [term, mult] : dec->terms) {
            json entries = json::array();
            std::string row = mult.str() + " * [";
            for (size_t i = 0; i < term.entries.size(); ++i) {
                entries.push_back(static_cast<long long>(term.entries[i]));
                row += (i ? "," : "") + term.entries[i].str();
            }
            terms.push_back({{"multiplicity", static_cast<long long>(mult)},
                             {"entries", entries}});
            text += row + "]\n";
        }
        emit(json{{"decomposed", true}, {"terms", terms}}, text);
        return 0;
    }
    if (c_classify->parsed()) {
        auto rep = classify_divisor_case(load_fan(file), ray_index);
        json j{{"case", case_name(rep.kind)}, {"ray", rep.ray_index},
               {"evidence", rep.evidence}};
        std::string text = std::string(case_name(rep.kind)) + " at ray " +
                           std::to_string(rep.ray_index) + "\n";
        for (const auto& e : rep.evidence) text += "  " + e + "\n";
        emit(j, text);
        return 0;
    }
    if (c_s3->parsed()) {
        auto bundle = detect_s3_bundle(load_fan(file));
        if (!bundle) {
            emit(json{{"s3bundle", false}}, "no hexagon bundle structure\n");
            return 1;
        }
        emit(json{{"s3bundle", true},
                  {"hexagon", bundle->hexagon},
                  {"base_picard", picard_number(bundle->base)}},
             "hexagon bundle over a base with picard " +
                 std::to_string(picard_number(bundle->base)) + "\n");
        return 0;
    }
    if (c_basic->parsed()) {
        Fan fan = load_fan(file);
        auto bc = basic_construction(fan, ray_index);
        int flips = 0, downs = 0, step_no = 0;
        for (const auto& step : bc.steps) {
            if (step.kind == StepKind::flip) ++flips;
            else ++downs;
            if (!emit_dir.empty()) {
                std::filesystem::create_directories(emit_dir);
                char name[32];
                snprintf(name, sizeof(name), "step-%03d.json", ++step_no);
                serialize_fan(step.fan_after,
                              (std::filesystem::path(emit_dir) / name).string());
            }
        }
        emit(json{{"flips", flips}, {"blow_downs", downs},
                  {"base_picard", picard_number(bc.base)}},
             std::to_string(flips) + " flips, " + std::to_string(downs) +
                 " blow-downs, base picard " +
                 std::to_string(picard_number(bc.base)) + "\n");
        return 0;
    }
    if (c_refine->parsed()) {
        RefinementMap map = build_refinement(load_fan(file), load_fan(file2));
        json rays = json::array();
        std::string text;
        for (size_t i = 0; i < map.ray_to_cone.size(); ++i) {
            rays.push_back(map.ray_to_cone[i]);
            text += "ray " + std::to_string(i) + " -> target cone {";
            for (size_t k = 0; k < map.ray_to_cone[i].size(); ++k)
                text += (k ? "," : "") + std::to_string(map.ray_to_cone[i][k]);
            text += "}\n";
        }
        emit(json{{"ray_to_cone", rays}}, text);
        return 0;
    }
    if (c_subdiv->parsed()) {
        RefinementMap map = build_refinement(load_fan(file), load_fan(file2));
        json cones = json::array();
        std::string text;
        for (const Cone& sigma : map.target.max_cones) {
            SubdivisionReport rep = classify_subdivision(map, sigma);
            json centers = json::array();
            for (const Cone& c : rep.centers) centers.push_back(c);
            cones.push_back({{"cone", sigma}, {"type", rep.type},
                             {"centers", centers}, {"generalized", rep.generalized}});
            text += "cone {";
            for (size_t k = 0; k < sigma.size(); ++k)
                text += (k ? "," : "") + std::to_string(sigma[k]);
            text += "}: type " + std::to_string(rep.type) + "\n";
        }
        emit(json{{"cones", cones}}, text);
        return 0;
    }
    if (c_facto->parsed()) {
        RefinementMap map = build_refinement(load_fan(file), load_fan(file2));
        auto steps = factorize(map);
        json arr = json::array();
        std::string text;
        int step_no = 0;
        for (const auto& step : steps) {
            arr.push_back({{"center", step.center}});
            text += "blow up center {";
            for (size_t k = 0; k < step.center.size(); ++k)
                text += (k ? "," : "") + std::to_string(step.center[k]);
            text += "}\n";
            if (!emit_dir.empty()) {
                std::filesystem::create_directories(emit_dir);
                char name[32];
                snprintf(name, sizeof(name), "step-%03d.json", ++step_no);
                serialize_fan(step.fan,
                              (std::filesystem::path(emit_dir) / name).string());
            }
        }
        emit(json{{"steps", arr}}, text + std::to_string(steps.size()) + " blow-ups\n");
        return 0;
    }
    if (c_catalog->parsed()) {
        CatalogEntry entry = catalog(file);
        if (!out_file.empty()) serialize_fan(entry.fan, out_file);
        json j{{"name", entry.name}, {"dim", entry.fan.dim},
               {"picard", entry.picard}, {"fano", entry.fano}};
        if (json_mode)
            std::cout << j.dump(2) << "\n";
        else if (out_file.empty())
            std::cout << serialize_fan_text(entry.fan);
        else
            std::cout << entry.name << ": dim " << entry.fan.dim << ", picard "
                      << entry.picard << (entry.fano ? ", fano" : ", not fano") << "\n";
        return 0;
    }
    if (c_enum->parsed()) {
        auto classes = enumerate_smooth_fano(dim, bound);
        json arr = json::array();
        std::string text;
        for (const auto& e : classes) {
            arr.push_back({{"name", e.name}, {"picard", e.picard},
                           {"rays", e.fan.rays.size()}});
            text += e.name + ": picard " + std::to_string(e.picard) + "\n";
        }
        emit(json{{"count", classes.size()}, {"classes", arr}},
             text + std::to_string(classes.size()) + " classes\n");
        return 0;
    }
    if (c_iso->parsed()) {
        bool iso = lattice_isomorphic(load_fan(file), load_fan(file2));
        emit(json{{"isomorphic", iso}},
             std::string(iso ? "isomorphic\n" : "not isomorphic\n"));
        return iso ? 0 : 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const FanError& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
