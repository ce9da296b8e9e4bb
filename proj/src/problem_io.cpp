#include "chowtori/problem_io.hpp"

#include <chrono>
#include <fstream>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "chowtori/errors.hpp"

namespace chowtori::io {

using nlohmann::ordered_json;

namespace {

const std::set<std::string> kTasks = {"chow", "kernel", "cokernel", "h1-check", "strata"};

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw parse_error(origin + ": " + what);
}

void reject_unknown_keys(const ordered_json& obj, const std::set<std::string>& allowed,
                         const std::string& origin, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            fail(origin, "unknown key \"" + it.key() + "\" in " + where);
}

long get_integer(const ordered_json& j, const std::string& origin, const std::string& where) {
    if (!j.is_number_integer()) fail(origin, where + " must be an integer");
    return j.get<long>();
}

std::pair<int, int> parse_degree_range(const std::string& s, const std::string& origin) {
    auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            int d = std::stoi(s);
            return {d, d};
        }
        int a = std::stoi(s.substr(0, dots));
        int b = std::stoi(s.substr(dots + 2));
        if (a < 0 || b < a) fail(origin, "degenerate degree range \"" + s + "\"");
        return {a, b};
    } catch (const std::invalid_argument&) {
        fail(origin, "cannot parse degree range \"" + s + "\"");
    } catch (const std::out_of_range&) {
        fail(origin, "degree range \"" + s + "\" out of range");
    }
}

lattice::IntegerMatrix parse_matrix(const ordered_json& j, const std::string& origin,
                                    const std::string& where) {
    if (!j.is_array()) fail(origin, where + " must be an array of rows");
    std::size_t rows = j.size();
    std::size_t cols = 0;
    for (std::size_t i = 0; i < rows; ++i)
        if (!j[i].is_array()) fail(origin, where + " row " + std::to_string(i) + " is not an array");
    if (rows > 0) cols = j[0].size();
    lattice::IntegerMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols)
            fail(origin, where + " row " + std::to_string(i) + " has length " +
                             std::to_string(j[i].size()) + ", expected " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c)
            m.at(i, c) = get_integer(j[i][c], origin, where + " entry");
    }
    return m;
}

} // namespace

ProblemFile parse_problem_text(const std::string& text, const std::string& origin) {
    ordered_json root;
    try {
        root = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(origin, std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) fail(origin, "top level must be an object");
    reject_unknown_keys(root,
                        {"name", "group", "variables", "phat_embedding", "phat_action", "degrees",
                         "tasks", "options"},
                        origin, "the problem file");

    ProblemFile pf;
    pf.name = root.value("name", origin);

    if (!root.contains("group")) fail(origin, "missing \"group\"");
    const ordered_json& grp = root["group"];
    if (!grp.is_object()) fail(origin, "\"group\" must be an object");
    reject_unknown_keys(grp, {"degree", "generators"}, origin, "\"group\"");
    if (!grp.contains("degree")) fail(origin, "missing \"group.degree\"");
    long deg = get_integer(grp["degree"], origin, "\"group.degree\"");
    if (deg < 1) fail(origin, "\"group.degree\" must be positive");
    pf.degree = static_cast<std::size_t>(deg);

    if (grp.contains("generators")) {
        if (!grp["generators"].is_array()) fail(origin, "\"group.generators\" must be an array");
        std::size_t gi = 0;
        for (const auto& gen : grp["generators"]) {
            std::string where = "generator " + std::to_string(gi);
            if (!gen.is_object()) fail(origin, where + " must be an object");
            reject_unknown_keys(gen, {"image", "sign"}, origin, where);
            if (!gen.contains("image")) fail(origin, where + " is missing \"image\"");
            if (!gen["image"].is_array() || gen["image"].size() != pf.degree)
                fail(origin, where + ": \"image\" must list all " + std::to_string(pf.degree) +
                                 " points in one-line notation");
            std::vector<int> image(pf.degree), sign(pf.degree, 1);
            for (std::size_t i = 0; i < pf.degree; ++i) {
                long v = get_integer(gen["image"][i], origin, where + " image entry");
                if (v < 1 || v > static_cast<long>(pf.degree))
                    fail(origin, where + ": image entry " + std::to_string(v) +
                                     " is outside 1.." + std::to_string(pf.degree));
                image[i] = static_cast<int>(v - 1);
            }
            if (gen.contains("sign")) {
                if (!gen["sign"].is_array() || gen["sign"].size() != pf.degree)
                    fail(origin, where + ": \"sign\" must have length " + std::to_string(pf.degree));
                for (std::size_t i = 0; i < pf.degree; ++i) {
                    long v = get_integer(gen["sign"][i], origin, where + " sign entry");
                    if (v != 1 && v != -1) fail(origin, where + ": signs must be +1 or -1");
                    sign[i] = static_cast<int>(v);
                }
            }
            try {
                pf.generators.emplace_back(std::move(image), std::move(sign));
            } catch (const validation_error& e) {
                fail(origin, where + ": " + e.what());
            }
            ++gi;
        }
    }

    if (root.contains("variables")) {
        if (!root["variables"].is_array() || root["variables"].size() != pf.degree)
            fail(origin, "\"variables\" must list one name per basis element");
        for (const auto& v : root["variables"]) {
            if (!v.is_string()) fail(origin, "\"variables\" entries must be strings");
            pf.variables.push_back(v.get<std::string>());
        }
    } else {
        for (std::size_t i = 1; i <= pf.degree; ++i) pf.variables.push_back("x" + std::to_string(i));
    }

    if (root.contains("phat_embedding")) {
        const ordered_json& emb = root["phat_embedding"];
        if (emb.is_array() && emb.empty()) {
            pf.phat_embedding = lattice::IntegerMatrix(pf.degree, 0);
        } else {
            pf.phat_embedding = parse_matrix(emb, origin, "\"phat_embedding\"");
            if (pf.phat_embedding.rows() != pf.degree)
                fail(origin, "\"phat_embedding\" must have one row per basis element (" +
                                 std::to_string(pf.degree) + ")");
        }
        pf.has_embedding = true;
    }

    if (!root.contains("degrees")) fail(origin, "missing \"degrees\"");
    if (!root["degrees"].is_string()) fail(origin, "\"degrees\" must be a string like \"1..3\"");
    std::tie(pf.degree_from, pf.degree_to) =
        parse_degree_range(root["degrees"].get<std::string>(), origin);

    if (!root.contains("tasks")) fail(origin, "missing \"tasks\"");
    if (!root["tasks"].is_array() || root["tasks"].empty())
        fail(origin, "\"tasks\" must be a nonempty array");
    for (const auto& t : root["tasks"]) {
        if (!t.is_string() || !kTasks.count(t.get<std::string>()))
            fail(origin, "unknown task " + t.dump());
        pf.tasks.push_back(t.get<std::string>());
    }

    if (root.contains("options")) {
        const ordered_json& opt = root["options"];
        if (!opt.is_object()) fail(origin, "\"options\" must be an object");
        reject_unknown_keys(opt, {"max_group_order", "max_degree", "oracle"}, origin, "\"options\"");
        if (opt.contains("max_group_order"))
            pf.options.max_group_order = get_integer(opt["max_group_order"], origin,
                                                     "\"options.max_group_order\"");
        if (opt.contains("max_degree"))
            pf.options.max_degree =
                static_cast<int>(get_integer(opt["max_degree"], origin, "\"options.max_degree\""));
        if (opt.contains("oracle")) {
            if (!opt["oracle"].is_boolean()) fail(origin, "\"options.oracle\" must be a boolean");
            pf.oracle = opt["oracle"].get<bool>();
        }
    }

    if (root.contains("phat_action")) {
        if (!root["phat_action"].is_array() ||
            root["phat_action"].size() != pf.generators.size())
            fail(origin, "\"phat_action\" must list one matrix per generator");
        std::vector<lattice::IntegerMatrix> mats;
        for (std::size_t i = 0; i < root["phat_action"].size(); ++i)
            mats.push_back(parse_matrix(root["phat_action"][i], origin,
                                        "\"phat_action\"[" + std::to_string(i) + "]"));
        pf.phat_action = std::move(mats);
    }

    bool ring = false;
    for (const auto& t : pf.tasks)
        if (t != "strata") ring = true;
    if (ring && !pf.has_embedding)
        fail(origin, "\"phat_embedding\" is required for ring tasks");
    return pf;
}

ProblemFile parse_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_problem_text(ss.str(), path);
}

bool ReportFile::operator==(const ReportFile& rhs) const {
    auto eq_deg = [](const DegreeRecord& a, const DegreeRecord& b) {
        auto eq_wit = [](const WitnessRecord& x, const WitnessRecord& y) {
            return x.order == y.order && x.terms == y.terms;
        };
        if (!(a.degree == b.degree && a.chow == b.chow && a.kernel == b.kernel &&
              a.cokernel == b.cokernel && a.h1 == b.h1 && a.time_ms == b.time_ms))
            return false;
        return std::equal(a.witnesses.begin(), a.witnesses.end(), b.witnesses.begin(),
                          b.witnesses.end(), eq_wit);
    };
    auto eq_strata = [](const StrataRecord& a, const StrataRecord& b) {
        auto eq_orbit = [](const StratumRecord& x, const StratumRecord& y) {
            return x.subset == y.subset && x.orbit_size == y.orbit_size &&
                   x.stabilizer_order == y.stabilizer_order && x.blocks == y.blocks;
        };
        return a.p == b.p && std::equal(a.orbits.begin(), a.orbits.end(), b.orbits.begin(),
                                        b.orbits.end(), eq_orbit);
    };
    return problem == rhs.problem && variables == rhs.variables &&
           degrees.size() == rhs.degrees.size() &&
           std::equal(degrees.begin(), degrees.end(), rhs.degrees.begin(), rhs.degrees.end(),
                      eq_deg) &&
           strata.size() == rhs.strata.size() &&
           std::equal(strata.begin(), strata.end(), rhs.strata.begin(), rhs.strata.end(),
                      eq_strata);
}

namespace {

bool has_task(const ProblemFile& pf, const std::string& t) {
    for (const auto& x : pf.tasks)
        if (x == t) return true;
    return false;
}

WitnessRecord witness_record(const chow::Witness& w, const symalg::GradedPiece& piece) {
    WitnessRecord r;
    r.order = w.order;
    for (std::size_t i = 0; i < w.vector.size(); ++i)
        if (w.vector[i] != 0) r.terms.emplace_back(w.vector[i], piece.monomial(i));
    return r;
}

} // namespace

ReportFile run_pipeline(const ProblemFile& pf) {
    ReportFile rf;
    rf.problem = pf.name;
    rf.variables = pf.variables;

    bool ring = false;
    for (const auto& t : pf.tasks)
        if (t != "strata") ring = true;

    auto group = std::make_shared<const groups::FiniteActionGroup>(
        pf.generators.empty()
            ? groups::FiniteActionGroup::trivial(pf.degree)
            : groups::FiniteActionGroup::close(pf.generators, pf.options.max_group_order));

    if (ring) {
        // optional user action is given per generator, in the embedding
        // column basis
        chow::ResolutionProblem problem = chow::validate(group, pf.phat_embedding, pf.options);
        if (pf.phat_action) {
            const auto& mats = *pf.phat_action;
            for (std::size_t i = 0; i < pf.generators.size(); ++i) {
                int gi = group->generator_indices()[i];
                lattice::IntegerMatrix lhs =
                    group->element(gi).to_matrix() * pf.phat_embedding;
                lattice::IntegerMatrix rhs = pf.phat_embedding * mats[i];
                if (lhs != rhs)
                    throw validation_error(
                        "supplied phat_action disagrees with the restriction at generator " +
                        std::to_string(i));
            }
        }
        chow::IdealOptions fast;
        for (int d = pf.degree_from; d <= pf.degree_to; ++d) {
            auto start = std::chrono::steady_clock::now();
            if (pf.oracle && d >= 1) {
                chow::IdealOptions slow;
                slow.exhaustive_subgroups = true;
                slow.invariants = symalg::InvariantsMethod::Kernel;
                if (chow::ideal_I(problem, d, fast) != chow::ideal_I(problem, d, slow))
                    throw invariant_error("oracle mismatch: conjugacy-reduced ideal differs from "
                                          "the exhaustive one in degree " +
                                          std::to_string(d));
            }
            DegreeRecord rec;
            rec.degree = d;
            if (has_task(pf, "chow")) rec.chow = chow::chow_group(problem, d);
            if (d >= 1 && (has_task(pf, "kernel") || has_task(pf, "h1-check"))) {
                chow::KernelResult kr = chow::base_change_kernel(problem, d);
                rec.kernel = kr.structure;
                symalg::GradedPiece piece(static_cast<int>(problem.ambient_rank()), d);
                for (const auto& w : kr.witnesses)
                    rec.witnesses.push_back(witness_record(w, piece));
            }
            if (d >= 1 && (has_task(pf, "cokernel") || has_task(pf, "h1-check")))
                rec.cokernel = chow::base_change_cokernel(problem, d);
            if (d >= 1 && has_task(pf, "h1-check")) {
                rec.h1 = chow::h1_of_ideal(problem, d);
                if (*rec.h1 != *rec.cokernel)
                    throw invariant_error("cross-check failed in degree " + std::to_string(d) +
                                          ": direct cokernel is " + rec.cokernel->to_string() +
                                          " but H^1(Gamma, J_d) is " + rec.h1->to_string());
            }
            if (d == 0) {
                if (has_task(pf, "kernel")) rec.kernel = lattice::AbelianGroupStructure{};
                if (has_task(pf, "cokernel")) rec.cokernel = lattice::AbelianGroupStructure{};
                if (has_task(pf, "h1-check")) rec.h1 = lattice::AbelianGroupStructure{};
            }
            auto stop = std::chrono::steady_clock::now();
            rec.time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
            rf.degrees.push_back(std::move(rec));
        }
    }

    if (has_task(pf, "strata")) {
        weil::GammaSet gs(*group);
        for (int p = 0; p <= static_cast<int>(pf.degree); ++p) {
            StrataRecord sr;
            sr.p = p;
            for (const auto& d : weil::strata(gs, p)) {
                StratumRecord o;
                for (int x : d.subset) o.subset.push_back(x + 1);
                o.orbit_size = d.orbit_size;
                o.stabilizer_order = d.stabilizer.size();
                for (const auto& b : d.blocks) {
                    std::vector<int> pts;
                    for (int x : b.points) pts.push_back(x + 1);
                    o.blocks.emplace_back(std::move(pts), b.stabilizer.size());
                }
                sr.orbits.push_back(std::move(o));
            }
            rf.strata.push_back(std::move(sr));
        }
    }
    return rf;
}

namespace {

long to_long_checked(const Int& v) {
    if (v > std::numeric_limits<long>::max() || v < std::numeric_limits<long>::min())
        throw invariant_error("value too large for the report encoding: " + v.str());
    return v.convert_to<long>();
}

ordered_json group_to_json(const lattice::AbelianGroupStructure& g) {
    ordered_json j;
    j["free_rank"] = g.free_rank;
    ordered_json t = ordered_json::array();
    for (const Int& x : g.torsion) t.push_back(to_long_checked(x));
    j["torsion"] = std::move(t);
    return j;
}

lattice::AbelianGroupStructure group_from_json(const ordered_json& j, const std::string& origin) {
    if (!j.is_object() || !j.contains("free_rank") || !j.contains("torsion"))
        fail(origin, "malformed group structure");
    lattice::AbelianGroupStructure g;
    g.free_rank = j["free_rank"].get<std::size_t>();
    for (const auto& t : j["torsion"]) g.torsion.push_back(Int(get_integer(t, origin, "torsion")));
    return g;
}

} // namespace

std::string report_to_json_text(const ReportFile& rf) {
    ordered_json root;
    root["problem"] = rf.problem;
    root["variables"] = rf.variables;
    ordered_json degs = ordered_json::array();
    for (const auto& d : rf.degrees) {
        ordered_json j;
        j["degree"] = d.degree;
        if (d.chow) j["chow"] = group_to_json(*d.chow);
        if (d.kernel) j["kernel"] = group_to_json(*d.kernel);
        if (d.cokernel) j["cokernel"] = group_to_json(*d.cokernel);
        if (d.h1) j["h1"] = group_to_json(*d.h1);
        ordered_json ws = ordered_json::array();
        for (const auto& w : d.witnesses) {
            ordered_json wj;
            wj["order"] = to_long_checked(w.order);
            ordered_json terms = ordered_json::array();
            for (const auto& [c, m] : w.terms) {
                ordered_json tj;
                tj["coefficient"] = to_long_checked(c);
                tj["monomial"] = m;
                terms.push_back(std::move(tj));
            }
            wj["terms"] = std::move(terms);
            ws.push_back(std::move(wj));
        }
        j["witnesses"] = std::move(ws);
        j["time_ms"] = d.time_ms;
        degs.push_back(std::move(j));
    }
    root["degrees"] = std::move(degs);
    ordered_json strata = ordered_json::array();
    for (const auto& s : rf.strata) {
        ordered_json sj;
        sj["p"] = s.p;
        ordered_json orbits = ordered_json::array();
        for (const auto& o : s.orbits) {
            ordered_json oj;
            oj["subset"] = o.subset;
            oj["orbit_size"] = o.orbit_size;
            oj["stabilizer_order"] = o.stabilizer_order;
            ordered_json blocks = ordered_json::array();
            for (const auto& [pts, st] : o.blocks) {
                ordered_json bj;
                bj["points"] = pts;
                bj["stabilizer_order"] = st;
                blocks.push_back(std::move(bj));
            }
            oj["blocks"] = std::move(blocks);
            orbits.push_back(std::move(oj));
        }
        sj["orbits"] = std::move(orbits);
        strata.push_back(std::move(sj));
    }
    root["strata"] = std::move(strata);
    return root.dump(2) + "\n";
}

ReportFile report_from_json_text(const std::string& text) {
    const std::string origin = "report";
    ordered_json root;
    try {
        root = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(origin, std::string("invalid JSON: ") + e.what());
    }
    ReportFile rf;
    rf.problem = root.value("problem", "");
    if (root.contains("variables"))
        for (const auto& v : root["variables"]) rf.variables.push_back(v.get<std::string>());
    for (const auto& j : root.value("degrees", ordered_json::array())) {
        DegreeRecord d;
        d.degree = static_cast<int>(get_integer(j["degree"], origin, "degree"));
        if (j.contains("chow")) d.chow = group_from_json(j["chow"], origin);
        if (j.contains("kernel")) d.kernel = group_from_json(j["kernel"], origin);
        if (j.contains("cokernel")) d.cokernel = group_from_json(j["cokernel"], origin);
        if (j.contains("h1")) d.h1 = group_from_json(j["h1"], origin);
        for (const auto& wj : j.value("witnesses", ordered_json::array())) {
            WitnessRecord w;
            w.order = Int(get_integer(wj["order"], origin, "witness order"));
            for (const auto& tj : wj.value("terms", ordered_json::array())) {
                std::vector<int> m = tj["monomial"].get<std::vector<int>>();
                w.terms.emplace_back(Int(get_integer(tj["coefficient"], origin, "coefficient")),
                                     std::move(m));
            }
            d.witnesses.push_back(std::move(w));
        }
        d.time_ms = j.value("time_ms", 0.0);
        rf.degrees.push_back(std::move(d));
    }
    for (const auto& sj : root.value("strata", ordered_json::array())) {
        StrataRecord s;
        s.p = static_cast<int>(get_integer(sj["p"], origin, "p"));
        for (const auto& oj : sj.value("orbits", ordered_json::array())) {
            StratumRecord o;
            o.subset = oj["subset"].get<std::vector<int>>();
            o.orbit_size = oj["orbit_size"].get<std::size_t>();
            o.stabilizer_order = oj["stabilizer_order"].get<std::size_t>();
            for (const auto& bj : oj.value("blocks", ordered_json::array()))
                o.blocks.emplace_back(bj["points"].get<std::vector<int>>(),
                                      bj["stabilizer_order"].get<std::size_t>());
            s.orbits.push_back(std::move(o));
        }
        rf.strata.push_back(std::move(s));
    }
    return rf;
}

namespace {

std::string monomial_to_string(const std::vector<int>& m, const std::vector<std::string>& vars) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << "*";
        os << (i < vars.size() ? vars[i] : "x" + std::to_string(i + 1));
        if (m[i] > 1) os << "^" << m[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

std::string polynomial_to_string(const std::vector<std::pair<Int, std::vector<int>>>& terms,
                                 const std::vector<std::string>& vars) {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, m] : terms) {
        if (!first) os << (c >= 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Int a = abs_int(c);
        if (a != 1) os << a << "*";
        os << monomial_to_string(m, vars);
        first = false;
    }
    return os.str();
}

std::string cell(const std::optional<lattice::AbelianGroupStructure>& g) {
    return g ? g->to_string() : "-";
}

} // namespace

std::string render_table(const ReportFile& rf) {
    std::ostringstream os;
    os << "problem: " << rf.problem << "\n";
    if (!rf.degrees.empty()) {
        os << "degree | chow group | kernel | cokernel | h1 | time_ms\n";
        for (const auto& d : rf.degrees) {
            os << d.degree << " | " << cell(d.chow) << " | " << cell(d.kernel) << " | "
               << cell(d.cokernel) << " | " << cell(d.h1) << " | " << d.time_ms << "\n";
        }
        for (const auto& d : rf.degrees)
            for (const auto& w : d.witnesses)
                os << "witness (degree " << d.degree << ", order " << w.order
                   << "): " << polynomial_to_string(w.terms, rf.variables) << "\n";
    }
    for (const auto& s : rf.strata) {
        os << "strata p=" << s.p << ": " << s.orbits.size() << " orbit(s)\n";
        for (const auto& o : s.orbits) {
            os << "  J={";
            for (std::size_t i = 0; i < o.subset.size(); ++i) os << (i ? "," : "") << o.subset[i];
            os << "} orbit size " << o.orbit_size << ", stabilizer order " << o.stabilizer_order;
            if (!o.blocks.empty()) {
                os << ", blocks:";
                for (const auto& [pts, st] : o.blocks) {
                    os << " {";
                    for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? "," : "") << pts[i];
                    os << "}/" << st;
                }
            }
            os << "\n";
        }
    }
    return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact Chow ring computations for classifying stacks of tori"};
    std::string input, degrees, tasks, format = "table", output;
    bool oracle = false;
    long max_group_order = -1;
    int max_degree = -1;
    app.add_option("--input", input, "problem file (JSON)")->required();
    app.add_option("--degrees", degrees, "degree range a..b, overrides the file");
    app.add_option("--tasks", tasks, "comma-separated task list, overrides the file");
    app.add_option("--format", format, "table or structured")
        ->check(CLI::IsMember({"table", "structured"}));
    app.add_option("--output", output, "also write the structured report to this path");
    app.add_flag("--oracle", oracle, "re-run the ideal with exhaustive subgroup enumeration");
    app.add_option("--max-group-order", max_group_order, "group order bound");
    app.add_option("--max-degree", max_degree, "degree cap");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << "\n";
        return 2;
    }

    try {
        ProblemFile pf = parse_problem(input);
        if (!degrees.empty())
            std::tie(pf.degree_from, pf.degree_to) = parse_degree_range(degrees, input);
        if (!tasks.empty()) {
            pf.tasks.clear();
            std::stringstream ss(tasks);
            std::string t;
            while (std::getline(ss, t, ',')) {
                if (!kTasks.count(t)) throw parse_error(input + ": unknown task \"" + t + "\"");
                pf.tasks.push_back(t);
            }
            if (pf.tasks.empty()) throw parse_error(input + ": empty task list");
        }
        if (oracle) pf.oracle = true;
        if (max_group_order > 0) pf.options.max_group_order = max_group_order;
        if (max_degree >= 0) pf.options.max_degree = max_degree;

        ReportFile rf = run_pipeline(pf);
        if (format == "structured") out << report_to_json_text(rf);
        else out << render_table(rf);
        if (!output.empty()) {
            std::ofstream of(output);
            if (!of) throw validation_error("cannot write report to " + output);
            of << report_to_json_text(rf);
        }
        return 0;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const resource_error& e) {
        err << "resource bound exceeded: " << e.what() << "\n";
        return 4;
    } catch (const validation_error& e) {
        err << "validation error: " << e.what() << "\n";
        return 3;
    } catch (const invariant_error& e) {
        err << "internal invariant failure: " << e.what() << "\n";
        return 5;
    }
}

} // namespace chowtori::io
