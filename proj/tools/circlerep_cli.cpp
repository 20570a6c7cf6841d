#include "circlerep/formats.hpp"
#include "circlerep/recognize.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace circlerep;
using Json = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string rat_str(const Rat& r) {
    std::ostringstream out;
    out << r;
    return out.str();
}

Json matrix_json(const ExactMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.row_count(); ++i) {
        Json row;
        row["label"] = m.row_labels()[i];
        Json vals;
        for (std::size_t j = 0; j < m.col_count(); ++j)
            vals[m.col_labels()[j]] = rat_str(m.at_pos(i, j));
        row["values"] = std::move(vals);
        rows.push_back(std::move(row));
    }
    return rows;
}

void print_matrix(const ExactMatrix& m) {
    std::size_t width = 2;
    for (std::size_t i = 0; i < m.row_count(); ++i)
        for (std::size_t j = 0; j < m.col_count(); ++j)
            width = std::max(width, rat_str(m.at_pos(i, j)).size() + 1);
    std::cout << "  columns:";
    for (const auto& c : m.col_labels()) std::cout << " " << c;
    std::cout << "\n";
    for (std::size_t i = 0; i < m.row_count(); ++i) {
        std::cout << "  " << m.row_labels()[i] << " |";
        for (std::size_t j = 0; j < m.col_count(); ++j) {
            std::string s = rat_str(m.at_pos(i, j));
            std::cout << std::string(width - s.size(), ' ') << s;
        }
        std::cout << "\n";
    }
}

struct Output {
    bool json = false;
    bool no_timing = false;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void finish(Json& doc) const {
        if (!json) {
            if (!no_timing) {
                auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
                std::cout << "elapsed: " << ms << " ms\n";
            }
            return;
        }
        if (!no_timing) {
            auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
            doc["timing_ms"] = ms;
        }
        std::cout << doc.dump(2) << "\n";
    }
};

Json header(const std::string& command) {
    Json doc;
    doc["schema"] = 1;
    doc["command"] = command;
    return doc;
}

const char* move_kind_name(Move::Kind k) {
    switch (k) {
        case Move::Kind::loop_complement: return "loop_complement";
        case Move::Kind::local_simple: return "local_simple";
        default: return "local_nonsimple";
    }
}

// ---- recognize ---------------------------------------------------------------

int cmd_recognize(const std::string& path, bool want_obstruction, bool want_realize,
                  std::size_t budget, const Output& out) {
    LoopedGraph g = read_graph_text(slurp(path));
    CircleCheck r = is_circle(g);

    Json doc = header("recognize");
    doc["vertices"] = g.vertex_count();
    doc["circle"] = r.circle;
    if (!out.json) std::cout << "circle: " << (r.circle ? "yes" : "no") << "\n";

    if (r.circle) {
        Json sol = Json::array();
        for (const auto& [pair, bit] : r.beta)
            sol.push_back({{"v", pair.first}, {"w", pair.second}, {"beta", bit}});
        doc["naji_solution"] = std::move(sol);
        if (!out.json) std::cout << "naji solution over " << r.beta.size() << " variables\n";
    } else {
        Json conflict;
        conflict["family"] = r.conflict->family;
        conflict["rhs"] = r.conflict->rhs;
        Json terms = Json::array();
        for (const auto& [v, w] : r.conflict->terms) terms.push_back({v, w});
        conflict["terms"] = std::move(terms);
        doc["conflict"] = std::move(conflict);
        if (!out.json)
            std::cout << "inconsistent equation of family " << r.conflict->family << "\n";
    }

    if (want_obstruction) {
        ObstructionScan scan = find_obstruction(g, budget);
        doc["obstruction_conclusive"] = scan.conclusive;
        if (scan.found) {
            Json ob;
            ob["name"] = scan.found->name;
            Json moves = Json::array();
            for (const auto& m : scan.found->witness.moves)
                moves.push_back({{"kind", move_kind_name(m.kind)}, {"vertex", m.vertex}});
            ob["moves"] = std::move(moves);
            ob["deleted"] = scan.found->witness.deleted;
            Json iso;
            for (const auto& [from, to] : scan.found->witness.iso) iso[from] = to;
            ob["iso"] = std::move(iso);
            doc["obstruction"] = std::move(ob);
            if (!out.json) std::cout << "obstruction: " << scan.found->name << "\n";
        } else {
            doc["obstruction"] = nullptr;
            if (!out.json)
                std::cout << "obstruction: none ("
                          << (scan.conclusive ? "conclusive" : "budget limited") << ")\n";
        }
    }

    if (want_realize) {
        auto words = realize(g);
        if (words)
            doc["realization"] = *words;
        else
            doc["realization"] = nullptr;
        if (!out.json) {
            std::cout << "realization:";
            if (words)
                for (const auto& w : *words) std::cout << " " << w;
            else
                std::cout << " none";
            std::cout << "\n";
        }
    }

    out.finish(doc);
    return r.circle ? 0 : 1;
}

// ---- signed-ias ---------------------------------------------------------------

std::vector<int> resolve_base(const EulerSystem& es, const std::string& spec) {
    const FourRegular& g = es.graph();
    auto vertex_index = [&](const std::string& name) {
        for (int v = 0; v < g.vertex_count(); ++v)
            if (g.vertex_labels[static_cast<std::size_t>(v)] == name) return v;
        throw std::invalid_argument("no vertex named " + name);
    };
    std::vector<int> base;
    std::istringstream items(spec);
    std::string item;
    while (std::getline(items, item, ',')) {
        int pick = 1;
        if (auto colon = item.find(':'); colon != std::string::npos) {
            pick = std::stoi(item.substr(colon + 1));
            item = item.substr(0, colon);
        }
        std::string u, v;
        if (auto dash = item.find('-'); dash != std::string::npos) {
            u = item.substr(0, dash);
            v = item.substr(dash + 1);
        } else if (item.size() == 2) {
            u = item.substr(0, 1);
            v = item.substr(1, 1);
        } else {
            throw std::invalid_argument("base edge must look like `ad`, `a-d`, or `a-d:2`");
        }
        int ui = vertex_index(u), vi = vertex_index(v);
        int found = -1, seen = 0;
        for (int e = 0; e < g.edge_count(); ++e) {
            int x = g.vertex_of(2 * e), y = g.vertex_of(2 * e + 1);
            if ((x == ui && y == vi) || (x == vi && y == ui)) {
                if (++seen == pick) {
                    found = e;
                    break;
                }
            }
        }
        if (found < 0)
            throw std::invalid_argument("no such edge " + u + "-" + v + " (wanted #" +
                                        std::to_string(pick) + ")");
        base.push_back(found);
    }
    return base;
}

int cmd_signed_ias(const std::string& path, const std::string& base_spec,
                   const FieldSpec& field, const Output& out) {
    EulerSystem es = parse_dow(read_dow_text(slurp(path)));
    FundamentalCircuits fc =
        base_spec.empty() ? based_fundamentals(es) : based_fundamentals(es, resolve_base(es, base_spec));
    SignedIas s = signed_ias(es, fc);
    const FourRegular& g = es.graph();
    const int n = g.vertex_count();

    Json doc = header("signed-ias");
    doc["field"] = field.name();
    Json base = Json::array();
    for (int e : fc.base_edges)
        base.push_back({{"edge", e},
                        {"ends", {g.vertex_labels[static_cast<std::size_t>(g.vertex_of(2 * e))],
                                  g.vertex_labels[static_cast<std::size_t>(g.vertex_of(2 * e + 1))]}}});
    doc["base_edges"] = std::move(base);
    doc["matrix"] = matrix_json(s.matrix);
    if (!out.json) {
        std::cout << "signed matrix (" << s.matrix.row_count() << "x" << s.matrix.col_count()
                  << "), base edges:";
        for (int e : fc.base_edges) std::cout << " " << e;
        std::cout << "\n";
        print_matrix(s.matrix);
    }

    TransversalDeterminants dets = transversal_determinants(s);
    std::map<std::string, int> counts;
    for (const auto& [key, d] : dets.by_kinds) ++counts[rat_str(d)];
    doc["transversal_determinants"] = {{"total", dets.by_kinds.size()},
                                       {"unimodular", dets.transversely_unimodular},
                                       {"counts", counts}};
    if (!out.json) {
        std::cout << "transversal determinants: " << dets.by_kinds.size()
                  << (dets.transversely_unimodular ? ", all in {-1,0,1}" : ", NOT unimodular")
                  << "\n";
    }

    if (n <= 8) {
        auto triples = three_circuits(s, field);
        Json tri = Json::array();
        for (const auto& t : triples) tri.push_back({t[0], t[1], t[2]});
        doc["three_circuits"] = std::move(tri);
        if (!out.json) std::cout << "three-element circuits over " << field.name() << ": "
                                 << triples.size() << "\n";
    }

    bool sheltered = shelters(s.matrix.to_field(field), interlacement(es), 3, true);
    doc["shelters"] = sheltered;
    if (!out.json) std::cout << "shelters the order-3 system: " << (sheltered ? "yes" : "no") << "\n";

    out.finish(doc);
    return sheltered ? 0 : 1;
}

// ---- paper-example -------------------------------------------------------------

ExactMatrix worked_matrix(const std::vector<std::vector<int>>& entries) {
    const std::vector<std::string> names = {"a", "b", "c", "d"};
    std::vector<std::string> cols;
    for (auto kind : {VarKind::phi, VarKind::chi, VarKind::psi})
        for (const auto& v : names) cols.push_back(ground_label(kind, v));
    std::vector<std::vector<Rat>> rows;
    for (const auto& r : entries) {
        std::vector<Rat> row;
        for (int e : r) row.emplace_back(e);
        rows.push_back(std::move(row));
    }
    return ExactMatrix::from_rows(FieldSpec::rational(), names, cols, rows);
}

ExactMatrix relabel_columns(const ExactMatrix& m, const EulerSystem& base, const EulerSystem& other) {
    const FourRegular& g = base.graph();
    const int n = g.vertex_count();
    std::vector<std::string> cols;
    std::vector<std::vector<Rat>> rows(m.row_count());
    for (auto tk : {TransitionKind::phi, TransitionKind::chi, TransitionKind::psi})
        for (int w = 0; w < n; ++w) {
            auto other_kind = kind_of(other, transition_of(base, w, tk));
            if (!other_kind) throw std::logic_error("transition missing from the other system");
            cols.push_back(ground_label(var_kind(tk), g.vertex_labels[static_cast<std::size_t>(w)]));
            std::size_t src =
                m.col_index(ground_label(var_kind(*other_kind), g.vertex_labels[static_cast<std::size_t>(w)]));
            for (std::size_t i = 0; i < m.row_count(); ++i) rows[i].push_back(m.at_pos(i, src));
        }
    return ExactMatrix::from_rows(m.field(), m.row_labels(), cols, rows);
}

ExactMatrix subtract_last_row(const ExactMatrix& m) {
    std::size_t last = m.row_count() - 1;
    std::vector<std::vector<Rat>> rows(m.row_count(), std::vector<Rat>(m.col_count()));
    for (std::size_t i = 0; i < m.row_count(); ++i)
        for (std::size_t j = 0; j < m.col_count(); ++j)
            rows[i][j] = i == last ? m.at_pos(i, j) : m.at_pos(i, j) - m.at_pos(last, j);
    return ExactMatrix::from_rows(m.field(), m.row_labels(), m.col_labels(), rows);
}

ExactMatrix negate_last_row_and_its_columns(const ExactMatrix& m) {
    std::size_t last = m.row_count() - 1;
    std::vector<std::vector<Rat>> rows(m.row_count(), std::vector<Rat>(m.col_count()));
    for (std::size_t i = 0; i < m.row_count(); ++i)
        for (std::size_t j = 0; j < m.col_count(); ++j) {
            Rat v = i == last ? -m.at_pos(i, j) : m.at_pos(i, j);
            if (m.at_pos(last, j) != 0) v = -v;
            rows[i][j] = v;
        }
    return ExactMatrix::from_rows(m.field(), m.row_labels(), m.col_labels(), rows);
}

int cmd_paper_example(const FieldSpec& field, const Output& out) {
    std::vector<std::pair<std::string, bool>> checks;
    auto check = [&](const std::string& name, bool pass) { checks.emplace_back(name, pass); };

    auto es = parse_dow("abcdbacd");
    auto fc_ad = based_fundamentals(es, {7});
    auto first = signed_ias(es, fc_ad).matrix;
    check("first system, base ad", first == worked_matrix({
        {1, 0, 0, 0,  0, 0, -1, -1,  1, 2, 1, 1},
        {0, 1, 0, 0,  0, 0, -1, -1,  0, 1, 1, 1},
        {0, 0, 1, 0,  1, 1, 0, -1,  1, 1, 1, 1},
        {0, 0, 0, 1,  1, 1, 1, 0,  1, 1, 1, 1},
    }));

    auto es2 = kappa_transform(es, "d", fc_ad);
    check("transformed word", canonical_word(to_words(es2)[0]) == canonical_word(word_tokens("abcdcabd")));
    auto second = signed_ias(es2, based_fundamentals(es2, {7})).matrix;
    check("transformed system, base ad", second == worked_matrix({
        {1, 0, 0, 0,  0, -1, 0, -1,  1, 1, 2, 1},
        {0, 1, 0, 0,  1, 0, 0, -1,  1, 1, 2, 1},
        {0, 0, 1, 0,  0, 0, 0, -1,  0, 0, 1, 1},
        {0, 0, 0, 1,  1, 1, 1, 0,  1, 1, 1, 1},
    }));

    auto s_cd = signed_ias(es, based_fundamentals(es, {6}));
    check("first system, base cd", s_cd.matrix == worked_matrix({
        {1, 0, 0, 0,  0, 0, -1, 1,  1, 2, 1, 1},
        {0, 1, 0, 0,  0, 0, -1, 1,  0, 1, 1, 1},
        {0, 0, 1, 0,  1, 1, 0, 1,  1, 1, 1, 1},
        {0, 0, 0, 1,  -1, -1, -1, 0,  1, 1, 1, 1},
    }));

    auto es2r = reverse_euler(es2);
    check("transformed system, base cd", signed_ias(es2r, based_fundamentals(es2r, {6})).matrix ==
        worked_matrix({
            {1, 0, 0, 0,  0, 1, 0, 1,  1, 1, 0, 1},
            {0, 1, 0, 0,  -1, 0, 0, 1,  1, 1, 0, 1},
            {0, 0, 1, 0,  0, 0, 0, 1,  2, 2, 1, 1},
            {0, 0, 0, 1,  -1, -1, -1, 0,  1, 1, 1, 1},
        }));

    auto renamed = relabel_columns(second, es, es2);
    auto reduced = subtract_last_row(renamed);
    check("subtracting the d row relates the systems",
          negate_last_row_and_its_columns(reduced) == first);

    auto phi = [](const char* v) { return ground_label(VarKind::phi, v); };
    auto chi = [](const char* v) { return ground_label(VarKind::chi, v); };
    auto psi = [](const char* v) { return ground_label(VarKind::psi, v); };
    using Triple = std::array<std::string, 3>;
    std::set<Triple> expected_ad = {
        {phi("a"), chi("a"), psi("a")}, {phi("a"), chi("b"), psi("a")},
        {phi("d"), chi("d"), psi("c")}, {phi("d"), chi("d"), psi("d")},
        {phi("a"), psi("b"), psi("c")}, {phi("a"), psi("b"), psi("d")},
        {phi("b"), psi("a"), psi("c")}, {phi("b"), psi("a"), psi("d")},
        {phi("c"), phi("d"), chi("a")}, {phi("c"), phi("d"), chi("b")},
        {chi("a"), chi("c"), chi("d")}, {chi("b"), chi("c"), chi("d")},
    };
    std::set<Triple> expected_cd = {
        {phi("a"), psi("b"), psi("c")}, {phi("a"), psi("b"), psi("d")},
        {phi("b"), psi("a"), psi("c")}, {phi("b"), psi("a"), psi("d")},
        {phi("c"), phi("d"), chi("a")}, {phi("c"), phi("d"), chi("b")},
        {phi("c"), chi("c"), psi("c")}, {phi("c"), chi("c"), psi("d")},
        {phi("d"), chi("d"), psi("c")}, {phi("d"), chi("d"), psi("d")},
        {chi("a"), chi("c"), chi("d")}, {chi("b"), chi("c"), chi("d")},
    };
    auto s_ad = signed_ias(es, fc_ad);
    auto got_ad = three_circuits(s_ad, FieldSpec::rational());
    auto got_cd = three_circuits(s_cd, FieldSpec::rational());
    check("twelve 3-circuits, base ad",
          std::set<Triple>(got_ad.begin(), got_ad.end()) == expected_ad);
    check("twelve 3-circuits, base cd",
          std::set<Triple>(got_cd.begin(), got_cd.end()) == expected_cd);

    std::map<std::string, int> count_ad, count_cd;
    for (const auto& t : got_ad)
        for (const auto& l : t) ++count_ad[l];
    for (const auto& t : got_cd)
        for (const auto& l : t) ++count_cd[l];
    check("chi(a), chi(b), psi(c), psi(d) each lie in three 3-circuits",
          count_ad[chi("a")] == 3 && count_ad[chi("b")] == 3 && count_ad[psi("c")] == 3 &&
              count_ad[psi("d")] == 3);
    bool all_even = true;
    for (const auto& [label, c] : count_cd) {
        (void)label;
        all_even = all_even && c % 2 == 0;
    }
    check("base cd incidence is everywhere even", all_even);

    auto dets = transversal_determinants(s_ad);
    check("81 partition determinants, all in {-1,0,1}",
          dets.by_kinds.size() == 81 && dets.transversely_unimodular);

    check("shelters the order-3 system over " + field.name(),
          shelters(s_ad.matrix.to_field(field), interlacement(es), 3, true));

    Json doc = header("paper-example");
    doc["field"] = field.name();
    Json list = Json::array();
    Json failures = Json::array();
    bool all = true;
    for (const auto& [name, pass] : checks) {
        list.push_back({{"name", name}, {"pass", pass}});
        if (!pass) failures.push_back(name);
        all = all && pass;
        if (!out.json) std::cout << (pass ? "   ok  " : " FAIL  ") << name << "\n";
    }
    doc["checks"] = std::move(list);
    doc["failures"] = std::move(failures);
    doc["all_pass"] = all;
    out.finish(doc);
    return all ? 0 : 1;
}

// ---- multimatroid ---------------------------------------------------------------

Json multimatroid_json(const SemiMultimatroid& z) {
    Json doc;
    Json classes = Json::array();
    for (const auto& cls : z.class_members()) {
        Json one = Json::array();
        for (int e : cls) one.push_back(z.element_labels()[static_cast<std::size_t>(e)]);
        classes.push_back(std::move(one));
    }
    doc["classes"] = std::move(classes);
    Json circuits = Json::array();
    for (const auto& c : z.circuit_labels()) circuits.push_back(c);
    doc["circuits"] = std::move(circuits);
    return doc;
}

SemiMultimatroid multimatroid_from_json(const std::string& text) {
    Json doc = Json::parse(text);
    std::vector<std::vector<std::string>> classes, circuits;
    for (const auto& cls : doc.at("classes")) classes.push_back(cls.get<std::vector<std::string>>());
    for (const auto& c : doc.at("circuits")) circuits.push_back(c.get<std::vector<std::string>>());
    return SemiMultimatroid(classes, circuits);
}

int report_multimatroid(const std::string& command, const SemiMultimatroid& z, Json extra,
                        const Output& out) {
    Json doc = header(command);
    Json body = multimatroid_json(z);
    doc["order"] = z.order();
    doc["classes"] = std::move(body["classes"]);
    doc["circuits"] = std::move(body["circuits"]);
    doc["classification"] = mm_class_name(classify(z));
    if (z.order() <= 8) doc["binary_refutation"] = binary_refutation(z);
    for (auto& [key, value] : extra.items()) doc[key] = value;
    if (!out.json) {
        std::cout << "order " << z.order() << ", " << z.circuits().size() << " circuits\n";
        std::cout << "classification: " << doc["classification"].get<std::string>() << "\n";
        if (doc.contains("binary_refutation"))
            std::cout << "binary representation refuted: "
                      << (doc["binary_refutation"].get<bool>() ? "yes" : "no") << "\n";
        for (auto& [key, value] : extra.items()) std::cout << key << ": " << value.dump() << "\n";
    }
    out.finish(doc);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact isotropic systems, signed interlacement, and circle graph checks"};
    app.require_subcommand(1);

    bool json = false, no_timing = false;
    app.add_flag("--json", json, "machine-readable output");
    app.add_flag("--no-timing", no_timing, "omit timings for byte-stable output");

    std::string field_name = "rational";

    auto* rec = app.add_subcommand("recognize", "circle graph test from a graph file");
    std::string rec_path;
    bool rec_obstruction = false, rec_realize = false;
    std::size_t rec_budget = 200000;
    rec->add_option("file", rec_path, "graph text file")->required();
    rec->add_flag("--obstruction", rec_obstruction, "also search for an obstruction witness");
    rec->add_flag("--realize", rec_realize, "also search for chord diagram words");
    rec->add_option("--budget", rec_budget, "orbit budget for the obstruction search");

    auto* sia = app.add_subcommand("signed-ias", "signed matrix of an Euler system");
    std::string sia_path, sia_base;
    sia->add_option("file", sia_path, "double occurrence word file")->required();
    sia->add_option("--base", sia_base, "base edges, e.g. `ad` or `c-d:2`, comma separated");
    sia->add_option("--field", field_name, "gf2, gf<p>, or rational");

    auto* pex = app.add_subcommand("paper-example", "self-check of the worked example");
    pex->add_option("--field", field_name, "field for the sheltering check");

    auto* mm = app.add_subcommand("multimatroid", "multimatroid constructions and verdicts");
    mm->require_subcommand(1);
    auto* mm_classify = mm->add_subcommand("classify", "classify a circuit-list file");
    std::string mm_path;
    mm_classify->add_option("file", mm_path, "circuit-list JSON")->required();
    auto* mm_h33 = mm->add_subcommand("h33", "the nine-point affine plane multimatroid");
    auto* mm_s1 = mm->add_subcommand("s1", "the three-circuit order-3 multimatroid");
    auto* mm_z2 = mm->add_subcommand("z2", "two-matroid of a binary matroid file");
    mm_z2->add_option("file", mm_path, "matroid rep file")->required();
    auto* mm_z3 = mm->add_subcommand("z3", "three-matroid of a binary matroid file");
    bool mm_naji = false;
    mm_z3->add_option("file", mm_path, "matroid rep file")->required();
    mm_z3->add_flag("--naji", mm_naji, "report regularity via the planarity test");
    auto* mm_planar = mm->add_subcommand("planar", "planarity of a binary matroid file");
    mm_planar->add_option("file", mm_path, "matroid rep file")->required();

    CLI11_PARSE(app, argc, argv);

    Output out;
    out.json = json;
    out.no_timing = no_timing;

    try {
        FieldSpec field = FieldSpec::parse(field_name);
        if (rec->parsed())
            return cmd_recognize(rec_path, rec_obstruction, rec_realize, rec_budget, out);
        if (sia->parsed()) return cmd_signed_ias(sia_path, sia_base, field, out);
        if (pex->parsed()) return cmd_paper_example(field, out);
        if (mm_classify->parsed())
            return report_multimatroid("multimatroid classify",
                                       multimatroid_from_json(slurp(mm_path)), Json::object(), out);
        if (mm_h33->parsed()) return report_multimatroid("multimatroid h33", h33(), Json::object(), out);
        if (mm_s1->parsed()) return report_multimatroid("multimatroid s1", s1(), Json::object(), out);
        if (mm_z2->parsed())
            return report_multimatroid("multimatroid z2",
                                       z2_of_matroid(read_matroid_rep(slurp(mm_path))),
                                       Json::object(), out);
        if (mm_z3->parsed()) {
            BinaryMatroidRep m = read_matroid_rep(slurp(mm_path));
            Json extra = Json::object();
            if (mm_naji) extra["regular"] = matroid_is_planar(m);
            return report_multimatroid("multimatroid z3", z3_of_matroid(m), std::move(extra), out);
        }
        if (mm_planar->parsed()) {
            bool planar = matroid_is_planar(read_matroid_rep(slurp(mm_path)));
            Json doc = header("multimatroid planar");
            doc["planar"] = planar;
            if (!out.json) std::cout << "planar: " << (planar ? "yes" : "no") << "\n";
            out.finish(doc);
            return planar ? 0 : 1;
        }
    } catch (const std::out_of_range& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
