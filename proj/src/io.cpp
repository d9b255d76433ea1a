#include "modsys/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "overloaded.hpp"

namespace modsys {

using detail::overloaded;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

/// One recoverable problem inside a model file section.
struct Failure {
    ParseError::Kind kind;
    std::string path;
    std::string message;
};

[[noreturn]] void schema(const std::string& path, const std::string& message)
{
    throw Failure{ParseError::Kind::Schema, path, message};
}

[[noreturn]] void reference(const std::string& path, const std::string& message)
{
    throw Failure{ParseError::Kind::Reference, path, message};
}

std::string escape(std::string_view token)
{
    std::string s;
    for (char c : token) {
        if (c == '~') {
            s += "~0";
        } else if (c == '/') {
            s += "~1";
        } else {
            s += c;
        }
    }
    return s;
}

std::string at(const std::string& path, std::string_view key) { return path + "/" + escape(key); }
std::string at(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

std::string_view type_name(const json& j)
{
    if (j.is_number_integer()) {
        return "integer";
    }
    return j.type_name();
}

const json& field(const json& obj, std::string_view key, const std::string& path)
{
    const auto it = obj.find(key);
    if (it == obj.end()) {
        schema(path, "missing field '" + std::string(key) + "'");
    }
    return *it;
}

const json* optional_field(const json& obj, std::string_view key)
{
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

void expect_object(const json& j, const std::string& path)
{
    if (!j.is_object()) {
        schema(path, "expected an object, got " + std::string(type_name(j)));
    }
}

void expect_array(const json& j, const std::string& path)
{
    if (!j.is_array()) {
        schema(path, "expected an array, got " + std::string(type_name(j)));
    }
}

std::string get_string(const json& j, const std::string& path)
{
    if (!j.is_string()) {
        schema(path, "expected a string, got " + std::string(type_name(j)));
    }
    return j.get<std::string>();
}

double get_number(const json& j, const std::string& path)
{
    if (!j.is_number()) {
        schema(path, "expected a number, got " + std::string(type_name(j)));
    }
    return j.get<double>();
}

int get_int(const json& j, const std::string& path)
{
    if (!j.is_number_integer()) {
        schema(path, "expected an integer, got " + std::string(type_name(j)));
    }
    return j.get<int>();
}

bool get_bool(const json& j, const std::string& path)
{
    if (!j.is_boolean()) {
        schema(path, "expected a boolean, got " + std::string(type_name(j)));
    }
    return j.get<bool>();
}

std::vector<int> get_ints(const json& j, const std::string& path)
{
    expect_array(j, path);
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(get_int(j[i], at(path, i)));
    }
    return out;
}

std::vector<double> get_numbers(const json& j, const std::string& path)
{
    expect_array(j, path);
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(get_number(j[i], at(path, i)));
    }
    return out;
}

/// Runs `f`, turning library errors into schema errors at `path`.
template <class F>
auto guarded(const std::string& path, F&& f)
{
    try {
        return f();
    } catch (const Error& e) {
        schema(path, e.what());
    }
}

OrdinalScale get_ordinal(const json& j, const std::string& path)
{
    expect_object(j, path);
    const auto size = get_int(field(j, "size", path), at(path, "size"));
    return guarded(path, [&] { return OrdinalScale(size); });
}

QuantScale get_quant(const json& j, const std::string& path)
{
    const auto worst = get_number(field(j, "worst", path), at(path, "worst"));
    const auto best = get_number(field(j, "best", path), at(path, "best"));
    return guarded(path, [&] { return QuantScale(worst, best); });
}

Criterion get_criterion(const json& j, const std::string& path)
{
    expect_object(j, path);
    const auto kind = get_string(field(j, "kind", path), at(path, "kind"));
    if (kind == "quantitative") {
        return get_quant(j, path);
    }
    if (kind == "ordinal") {
        return get_ordinal(j, path);
    }
    schema(at(path, "kind"), "criterion kind must be quantitative or ordinal, got '" + kind + "'");
}

ScaleKind get_scale_kind(const json& j, const std::string& path)
{
    const auto kind = get_string(field(j, "kind", path), at(path, "kind"));
    if (kind == "quantitative") {
        return get_quant(j, path);
    }
    if (kind == "ordinal") {
        return get_ordinal(j, path);
    }
    if (kind == "vector") {
        const auto& crit = field(j, "criteria", path);
        expect_array(crit, at(path, "criteria"));
        std::vector<Criterion> criteria;
        for (std::size_t i = 0; i < crit.size(); ++i) {
            criteria.push_back(get_criterion(crit[i], at(at(path, "criteria"), i)));
        }
        return guarded(path, [&] { return VectorScale(std::move(criteria)); });
    }
    if (kind == "count-poset") {
        const auto k = get_int(field(j, "k", path), at(path, "k"));
        const auto m = get_int(field(j, "m", path), at(path, "m"));
        return guarded(path, [&] { return CountPosetScale(k, m); });
    }
    if (kind == "multiset") {
        const auto p = get_ints(field(j, "P", path), at(path, "P"));
        if (p.size() != 2) {
            schema(at(path, "P"), "expected [levels, elements]");
        }
        return guarded(path, [&] { return MultisetScale(p[0], p[1]); });
    }
    schema(at(path, "kind"), "unknown scale kind '" + kind + "'");
}

Scale get_scale(const json& j, const std::string& path)
{
    expect_object(j, path);
    auto id = get_string(field(j, "id", path), at(path, "id"));
    return Scale{std::move(id), get_scale_kind(j, path)};
}

Estimate get_estimate(const json& j, const std::string& path, const ScaleSet& scales)
{
    expect_object(j, path);
    Estimate e;
    e.scale_id = get_string(field(j, "scale", path), at(path, "scale"));
    const auto* scale = scales.find(e.scale_id);
    if (scale == nullptr) {
        reference(at(path, "scale"), "unknown scale id '" + e.scale_id + "'");
    }
    std::visit(overloaded{
                   [&](const QuantScale&) { e.value = get_number(field(j, "value", path), at(path, "value")); },
                   [&](const OrdinalScale&) { e.value = get_int(field(j, "value", path), at(path, "value")); },
                   [&](const VectorScale&) {
                       const auto xs = get_numbers(field(j, "value", path), at(path, "value"));
                       e.value = RealVector(Eigen::Map<const RealVector>(xs.data(), static_cast<Eigen::Index>(xs.size())));
                   },
                   [&](const auto&) {
                       const auto xs = get_ints(field(j, "eta", path), at(path, "eta"));
                       e.value = CountVector(Eigen::Map<const CountVector>(xs.data(), static_cast<Eigen::Index>(xs.size())));
                   },
               },
               scale->kind);
    if (auto v = validate_value(scale->kind, e.value); !v) {
        schema(path, v.violation);
    }
    return e;
}

std::optional<std::string> optional_string(const json& j, std::string_view key, const std::string& path)
{
    if (const auto* f = optional_field(j, key)) {
        return get_string(*f, at(path, key));
    }
    return std::nullopt;
}

SystemNode get_node(const json& j, const std::string& path)
{
    expect_object(j, path);
    SystemNode n;
    n.id = get_string(field(j, "id", path), at(path, "id"));
    const auto* children = optional_field(j, "children");
    const auto* das = optional_field(j, "das");
    if ((children == nullptr) == (das == nullptr)) {
        schema(path, "node needs exactly one of 'children' (internal) or 'das' (leaf)");
    }
    if (das != nullptr) {
        n.kind = NodeKind::Leaf;
        expect_array(*das, at(path, "das"));
        for (std::size_t i = 0; i < das->size(); ++i) {
            n.das.push_back(get_string((*das)[i], at(at(path, "das"), i)));
        }
        n.transform = optional_string(j, "transform", path);
        for (const auto* key : {"method", "table"}) {
            if (optional_field(j, key) != nullptr) {
                schema(at(path, key), "leaf nodes take no '" + std::string(key) + "'");
            }
        }
        return n;
    }
    n.kind = NodeKind::Internal;
    expect_array(*children, at(path, "children"));
    for (std::size_t i = 0; i < children->size(); ++i) {
        n.children.push_back(get_node((*children)[i], at(at(path, "children"), i)));
    }
    n.method = optional_string(j, "method", path);
    if (n.method) {
        guarded(at(path, "method"), [&] { return parse_method(*n.method); });
    }
    n.table = optional_string(j, "table", path);
    if (optional_field(j, "transform") != nullptr) {
        schema(at(path, "transform"), "internal nodes take no 'transform'");
    }
    return n;
}

IntegrationTable get_table(const json& j, const std::string& path)
{
    expect_object(j, path);
    const auto& ins = field(j, "inputs", path);
    expect_array(ins, at(path, "inputs"));
    std::vector<TableInput> inputs;
    for (std::size_t i = 0; i < ins.size(); ++i) {
        const auto p = at(at(path, "inputs"), i);
        TableInput in;
        in.scale = get_ordinal(ins[i], p);
        if (const auto* d = optional_field(ins[i], "domain")) {
            in.domain = get_ints(*d, at(p, "domain"));
        }
        inputs.push_back(std::move(in));
    }
    const auto output = get_ordinal(field(j, "output", path), at(path, "output"));
    const auto& cs = field(j, "cells", path);
    expect_array(cs, at(path, "cells"));
    std::vector<TableCell> cells;
    for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto p = at(at(path, "cells"), i);
        if (!cs[i].is_array() || cs[i].size() != 2) {
            schema(p, "expected [[input levels], output level]");
        }
        cells.push_back({get_ints(cs[i][0], at(p, 0)), get_int(cs[i][1], at(p, 1))});
    }
    return guarded(path, [&] { return IntegrationTable(std::move(inputs), output, cells); });
}

Eigen::MatrixXd get_points(const json& j, const std::string& path)
{
    expect_array(j, path);
    if (j.empty()) {
        schema(path, "expected at least one point");
    }
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < j.size(); ++i) {
        rows.push_back(get_numbers(j[i], at(path, i)));
        if (rows.back().size() != rows.front().size()) {
            schema(at(path, i), "points differ in dimension");
        }
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
        }
    }
    return m;
}

class ModelReader {
public:
    explicit ModelReader(const json& root) : root_(root) {}

    ParseResult read()
    {
        ParseResult result;
        Model m;
        try {
            expect_object(root_, "");
        } catch (const Failure& f) {
            record(f);
            result.errors = std::move(errors_);
            return result;
        }
        section([&] {
            if (const auto* n = optional_field(root_, "name")) {
                m.name = get_string(*n, "/name");
            }
            if (const auto* n = optional_field(root_, "notes")) {
                expect_array(*n, "/notes");
                for (std::size_t i = 0; i < n->size(); ++i) {
                    m.notes.push_back(get_string((*n)[i], at("/notes", i)));
                }
            }
        });
        for (const auto& [key, _] : root_.items()) {
            static const std::set<std::string> known{"name", "notes", "scales", "das", "tree", "compat",
                                                     "tables", "thresholds", "ordinal_maps", "topsis",
                                                     "compositions", "bindings"};
            if (!known.contains(key)) {
                errors_.push_back({ParseError::Kind::Schema, 0, 0, at("", key), "unknown field"});
            }
        }

        each("/scales", [&](const json& j, const std::string& p) {
            auto s = get_scale(j, p);
            guarded(p, [&] {
                m.scales.add(std::move(s));
                return 0;
            });
        });
        each("/das", [&](const json& j, const std::string& p) {
            expect_object(j, p);
            DA da;
            da.id = get_string(field(j, "id", p), at(p, "id"));
            if (m.find_da(da.id) != nullptr) {
                schema(at(p, "id"), "duplicate DA id '" + da.id + "'");
            }
            const auto& ests = field(j, "estimates", p);
            expect_object(ests, at(p, "estimates"));
            for (const auto& [kind, e] : ests.items()) {
                const auto ep = at(at(p, "estimates"), kind);
                try {
                    da.estimates[kind] = get_estimate(e, ep, m.scales);
                } catch (const Failure& f) {
                    record(f);
                }
            }
            m.das.push_back(std::move(da));
        });
        keyed("/tables", [&](const std::string& id, const json& j, const std::string& p) {
            m.tables.emplace(id, get_table(j, p));
        });
        keyed("/thresholds", [&](const std::string& id, const json& j, const std::string& p) {
            ThresholdDecl t;
            t.source_scale = get_string(field(j, "source", p), at(p, "source"));
            t.spec.thresholds = get_numbers(field(j, "thresholds", p), at(p, "thresholds"));
            t.spec.target = get_ordinal(field(j, "target", p), at(p, "target"));
            const auto* src = m.scales.find(t.source_scale);
            if (src == nullptr) {
                reference(at(p, "source"), "unknown scale id '" + t.source_scale + "'");
            }
            const auto* q = std::get_if<QuantScale>(&src->kind);
            if (q == nullptr) {
                schema(at(p, "source"), "threshold source must be a quantitative scale");
            }
            if (auto v = validate_thresholds(t.spec, *q); !v) {
                schema(at(p, "thresholds"), v.violation);
            }
            m.thresholds.emplace(id, std::move(t));
        });
        keyed("/ordinal_maps", [&](const std::string& id, const json& j, const std::string& p) {
            const auto source = get_ordinal(field(j, "source", p), at(p, "source"));
            const auto target = get_ordinal(field(j, "target", p), at(p, "target"));
            auto table = get_ints(field(j, "table", p), at(p, "table"));
            bool reverse = false;
            if (const auto* r = optional_field(j, "reverse")) {
                reverse = get_bool(*r, at(p, "reverse"));
            }
            m.ordinal_maps.emplace(id, guarded(p, [&] { return OrdinalMap(source, target, std::move(table), reverse); }));
        });
        keyed("/topsis", [&](const std::string& id, const json& j, const std::string& p) {
            TopsisConfig c;
            c.best_points = get_points(field(j, "best", p), at(p, "best"));
            c.worst_points = get_points(field(j, "worst", p), at(p, "worst"));
            if (const auto* e = optional_field(j, "exponent")) {
                c.exponent = get_int(*e, at(p, "exponent"));
            }
            if (c.exponent != 1 && c.exponent != 2) {
                schema(at(p, "exponent"), "exponent must be 1 or 2");
            }
            if (c.best_points.cols() != c.worst_points.cols()) {
                schema(p, "best and worst points differ in dimension");
            }
            m.topsis.emplace(id, std::move(c));
        });

        bool have_tree = false;
        section([&] {
            m.root = get_node(field(root_, "tree", ""), "/tree");
            have_tree = true;
        });
        if (have_tree) {
            resolve_tree(m, m.root, "/tree");
        }

        section([&] {
            const auto* c = optional_field(root_, "compat");
            if (c == nullptr) {
                return;
            }
            expect_object(*c, "/compat");
            const auto nu = get_int(field(*c, "nu", "/compat"), "/compat/nu");
            bool zero = false;
            if (const auto* z = optional_field(*c, "zero_level")) {
                zero = get_bool(*z, "/compat/zero_level");
            }
            CompatTable table = guarded("/compat", [&] { return CompatTable(nu, zero); });
            const auto& pairs = field(*c, "pairs", "/compat");
            expect_array(pairs, "/compat/pairs");
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                const auto p = at("/compat/pairs", i);
                try {
                    const auto& e = pairs[i];
                    if (!e.is_array() || e.size() != 3) {
                        schema(p, "expected [DA, DA, level]");
                    }
                    const auto a = get_string(e[0], at(p, 0));
                    const auto b = get_string(e[1], at(p, 1));
                    for (const auto& [id, k] : {std::pair{a, 0}, std::pair{b, 1}}) {
                        if (m.find_da(id) == nullptr) {
                            reference(at(p, static_cast<std::size_t>(k)), "unknown DA id '" + id + "'");
                        }
                    }
                    const auto level = get_int(e[2], at(p, 2));
                    if (table.get(a, b)) {
                        schema(p, "duplicate compatibility entry for pair (" + a + "," + b + ")");
                    }
                    guarded(p, [&] {
                        table.set(a, b, level);
                        return 0;
                    });
                } catch (const Failure& f) {
                    record(f);
                }
            }
            m.compat = std::move(table);
        });

        each("/compositions", [&](const json& j, const std::string& p) {
            expect_object(j, p);
            Composition c;
            c.name = get_string(field(j, "name", p), at(p, "name"));
            if (m.find_composition(c.name) != nullptr) {
                schema(at(p, "name"), "duplicate composition name '" + c.name + "'");
            }
            const auto& sel = field(j, "select", p);
            expect_object(sel, at(p, "select"));
            const auto leaves = have_tree ? m.leaves() : std::vector<const SystemNode*>{};
            for (const auto& [leaf, da] : sel.items()) {
                const auto sp = at(at(p, "select"), leaf);
                const auto id = get_string(da, sp);
                if (have_tree && std::none_of(leaves.begin(), leaves.end(),
                                              [&](const SystemNode* l) { return l->id == leaf; })) {
                    reference(sp, "unknown leaf id '" + leaf + "'");
                }
                if (m.find_da(id) == nullptr) {
                    reference(sp, "unknown DA id '" + id + "'");
                }
                c.selection[leaf] = id;
            }
            m.compositions.push_back(std::move(c));
        });

        section([&] {
            const auto* b = optional_field(root_, "bindings");
            if (b == nullptr) {
                return;
            }
            expect_object(*b, "/bindings");
            for (const auto& [method, kind] : b->items()) {
                guarded(at("/bindings", method), [&] { return parse_method(method); });
                m.bindings[method] = get_string(kind, at("/bindings", method));
            }
        });

        result.errors = std::move(errors_);
        if (result.errors.empty()) {
            result.model = std::move(m);
        }
        return result;
    }

private:
    void record(const Failure& f) { errors_.push_back({f.kind, 0, 0, f.path, f.message}); }

    template <class F>
    void section(F&& f)
    {
        try {
            f();
        } catch (const Failure& failure) {
            record(failure);
        }
    }

    /// Array section: each element parsed independently so every bad entry is reported.
    template <class F>
    void each(const std::string& path, F&& f)
    {
        const auto* arr = optional_field(root_, path.substr(1));
        if (arr == nullptr) {
            return;
        }
        if (!arr->is_array()) {
            record({ParseError::Kind::Schema, path, "expected an array, got " + std::string(type_name(*arr))});
            return;
        }
        for (std::size_t i = 0; i < arr->size(); ++i) {
            section([&] { f((*arr)[i], at(path, i)); });
        }
    }

    /// Array section of objects with unique string ids.
    template <class F>
    void keyed(const std::string& path, F&& f)
    {
        std::set<std::string> seen;
        each(path, [&](const json& j, const std::string& p) {
            expect_object(j, p);
            const auto id = get_string(field(j, "id", p), at(p, "id"));
            if (!seen.insert(id).second) {
                schema(at(p, "id"), "duplicate id '" + id + "'");
            }
            f(id, j, p);
        });
    }

    void resolve_tree(const Model& m, const SystemNode& n, const std::string& path)
    {
        if (n.is_leaf()) {
            for (std::size_t i = 0; i < n.das.size(); ++i) {
                if (m.find_da(n.das[i]) == nullptr) {
                    record({ParseError::Kind::Reference, at(at(path, "das"), i), "unknown DA id '" + n.das[i] + "'"});
                }
            }
            if (n.transform && !m.thresholds.contains(*n.transform) && !m.ordinal_maps.contains(*n.transform)) {
                record({ParseError::Kind::Reference, at(path, "transform"),
                        "unknown transform id '" + *n.transform + "'"});
            }
            return;
        }
        if (n.table && !m.tables.contains(*n.table)) {
            record({ParseError::Kind::Reference, at(path, "table"), "unknown table id '" + *n.table + "'"});
        }
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            resolve_tree(m, n.children[i], at(at(path, "children"), i));
        }
    }

    const json& root_;
    std::vector<ParseError> errors_;
};

std::pair<int, int> position(std::string_view text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    int line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

// --- serialization ------------------------------------------------------------------------

ojson write_ordinal(const OrdinalScale& o) { return ojson{{"size", o.size()}}; }

ojson write_criterion(const Criterion& c)
{
    return std::visit(overloaded{
                          [](const QuantScale& q) {
                              return ojson{{"kind", "quantitative"}, {"worst", q.worst()}, {"best", q.best()}};
                          },
                          [](const OrdinalScale& o) { return ojson{{"kind", "ordinal"}, {"size", o.size()}}; },
                      },
                      c);
}

ojson write_scale(const Scale& s)
{
    ojson j{{"id", s.id}, {"kind", std::string(kind_name(s.kind))}};
    std::visit(overloaded{
                   [&](const QuantScale& q) {
                       j["worst"] = q.worst();
                       j["best"] = q.best();
                   },
                   [&](const OrdinalScale& o) { j["size"] = o.size(); },
                   [&](const VectorScale& v) {
                       j["criteria"] = ojson::array();
                       for (const auto& c : v.criteria()) {
                           j["criteria"].push_back(write_criterion(c));
                       }
                   },
                   [&](const CountPosetScale& c) {
                       j["k"] = c.levels();
                       j["m"] = c.elements();
                   },
                   [&](const MultisetScale& m) { j["P"] = {m.levels(), m.elements()}; },
               },
               s.kind);
    return j;
}

ojson write_estimate(const Estimate& e)
{
    ojson j{{"scale", e.scale_id}};
    std::visit(overloaded{
                   [&](double x) { j["value"] = x; },
                   [&](Level l) { j["value"] = l; },
                   [&](const RealVector& v) { j["value"] = std::vector<double>(v.begin(), v.end()); },
                   [&](const CountVector& c) { j["eta"] = std::vector<int>(c.begin(), c.end()); },
               },
               e.value);
    return j;
}

ojson write_node(const SystemNode& n)
{
    ojson j{{"id", n.id}};
    if (n.is_leaf()) {
        j["das"] = n.das;
        if (n.transform) {
            j["transform"] = *n.transform;
        }
        return j;
    }
    if (n.method) {
        j["method"] = *n.method;
    }
    if (n.table) {
        j["table"] = *n.table;
    }
    j["children"] = ojson::array();
    for (const auto& c : n.children) {
        j["children"].push_back(write_node(c));
    }
    return j;
}

ojson write_points(const Eigen::MatrixXd& m)
{
    ojson rows = ojson::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        ojson row = ojson::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string quote(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

template <class Key, class Format>
std::string dot(const PosetView<Key>& poset, std::string_view name, Format&& format)
{
    std::ostringstream os;
    os << "digraph " << quote(name) << " {\n";
    os << "  rankdir=TB;\n";
    os << "  node [shape=box];\n";
    for (std::size_t i = 0; i < poset.size(); ++i) {
        os << "  n" << i << " [label=" << quote(format(poset.elements[i])) << "];\n";
    }
    for (const auto& [a, b] : poset.covers) {
        os << "  n" << a << " -> n" << b << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::string rank_cell(const RankReport& report, const RankEntry& e)
{
    if (report.reduction == Reduction::LabelD && e.label) {
        return format_label(*e.label);
    }
    return std::to_string(e.priority);
}

} // namespace

std::string ParseError::describe() const
{
    switch (kind) {
    case Kind::Syntax:
        return "syntax error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + message;
    case Kind::Schema:
        return "schema error at " + (path.empty() ? std::string("/") : path) + ": " + message;
    default:
        return "reference error at " + path + ": " + message;
    }
}

ParseResult parse_model(std::string_view text)
{
    json root;
    try {
        root = json::parse(text.begin(), text.end(), nullptr, true, true);
    } catch (const json::parse_error& e) {
        const auto offset = e.byte > 0 ? e.byte - 1 : 0;
        const auto [line, column] = position(text, offset);
        std::string message = e.what();
        if (const auto cut = message.find(": syntax error"); cut != std::string::npos) {
            message = message.substr(cut + 2);
        }
        if (const auto cut = message.find(" - "); cut != std::string::npos) {
            message = message.substr(cut + 3);
        }
        ParseResult r;
        r.errors.push_back({ParseError::Kind::Syntax, line, column, "", message});
        return r;
    }
    return ModelReader(root).read();
}

ParseResult load_model(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open model file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

std::string serialize_model(const Model& model)
{
    ojson j;
    j["name"] = model.name;
    if (!model.notes.empty()) {
        j["notes"] = model.notes;
    }
    j["scales"] = ojson::array();
    for (const auto& s : model.scales.all()) {
        j["scales"].push_back(write_scale(s));
    }
    j["das"] = ojson::array();
    for (const auto& da : model.das) {
        ojson ests = ojson::object();
        for (const auto& [kind, e] : da.estimates) {
            ests[kind] = write_estimate(e);
        }
        j["das"].push_back({{"id", da.id}, {"estimates", std::move(ests)}});
    }
    j["tree"] = write_node(model.root);
    if (model.compat) {
        ojson pairs = ojson::array();
        for (const auto& [pair, level] : model.compat->entries()) {
            pairs.push_back({pair.first, pair.second, level});
        }
        j["compat"] = {{"nu", model.compat->nu()},
                       {"zero_level", model.compat->zero_level()},
                       {"pairs", std::move(pairs)}};
    }
    if (!model.tables.empty()) {
        j["tables"] = ojson::array();
        for (const auto& [id, t] : model.tables) {
            ojson inputs = ojson::array();
            for (const auto& in : t.inputs()) {
                inputs.push_back({{"size", in.scale.size()}, {"domain", in.domain}});
            }
            ojson cells = ojson::array();
            for (const auto& c : t.cells()) {
                cells.push_back({c.inputs, c.output});
            }
            j["tables"].push_back(
                {{"id", id}, {"inputs", std::move(inputs)}, {"output", write_ordinal(t.output())}, {"cells", std::move(cells)}});
        }
    }
    if (!model.thresholds.empty()) {
        j["thresholds"] = ojson::array();
        for (const auto& [id, t] : model.thresholds) {
            j["thresholds"].push_back({{"id", id},
                                       {"source", t.source_scale},
                                       {"thresholds", t.spec.thresholds},
                                       {"target", write_ordinal(t.spec.target)}});
        }
    }
    if (!model.ordinal_maps.empty()) {
        j["ordinal_maps"] = ojson::array();
        for (const auto& [id, m] : model.ordinal_maps) {
            j["ordinal_maps"].push_back({{"id", id},
                                         {"source", write_ordinal(m.source())},
                                         {"target", write_ordinal(m.target())},
                                         {"table", m.table()},
                                         {"reverse", m.reverse()}});
        }
    }
    if (!model.topsis.empty()) {
        j["topsis"] = ojson::array();
        for (const auto& [id, c] : model.topsis) {
            j["topsis"].push_back({{"id", id},
                                   {"best", write_points(c.best_points)},
                                   {"worst", write_points(c.worst_points)},
                                   {"exponent", c.exponent}});
        }
    }
    if (!model.compositions.empty()) {
        j["compositions"] = ojson::array();
        for (const auto& c : model.compositions) {
            ojson sel = ojson::object();
            for (const auto& [leaf, da] : c.selection) {
                sel[leaf] = da;
            }
            j["compositions"].push_back({{"name", c.name}, {"select", std::move(sel)}});
        }
    }
    if (!model.bindings.empty()) {
        j["bindings"] = model.bindings;
    }
    return j.dump(2) + "\n";
}

std::string export_dot(const PosetView<CountVector>& poset, std::string_view name)
{
    return dot(poset, name, [](const CountVector& c) { return format_counts(c); });
}

std::string export_dot(const PosetView<QualityVector>& poset, std::string_view name)
{
    return dot(poset, name, [](const QualityVector& q) { return format_quality(q); });
}

std::string render_rank(const RankReport& report, const Model& model)
{
    std::ostringstream os;
    for (const auto& note : model.notes) {
        os << "# " << note << "\n";
    }
    os << "# method=" << method_name(report.method) << " reduce=" << reduction_name(report.reduction) << "\n";
    if (report.truncated) {
        os << "# truncated: composition limit reached\n";
    }
    for (const auto& e : report.entries) {
        os << "r(" << e.name << ")=" << rank_cell(report, e) << "  e(" << e.name << ")=" << format_eval(e.value);
        if (e.topsis) {
            os << "  C(" << e.name << ")=" << format_number(e.topsis->closeness);
        }
        os << "\n";
    }
    return os.str();
}

std::string render_rank_json(const RankReport& report)
{
    ojson entries = ojson::array();
    for (const auto& e : report.entries) {
        ojson j{{"name", e.name}, {"priority", e.priority}, {"value", format_eval(e.value)}};
        if (e.label) {
            j["label"] = format_label(*e.label);
        }
        if (e.topsis) {
            j["rho_plus"] = e.topsis->rho_plus;
            j["rho_minus"] = e.topsis->rho_minus;
            j["closeness"] = e.topsis->closeness;
        }
        entries.push_back(std::move(j));
    }
    ojson j{{"method", std::string(method_name(report.method))},
            {"reduce", std::string(reduction_name(report.reduction))},
            {"truncated", report.truncated},
            {"entries", std::move(entries)}};
    return j.dump(2) + "\n";
}

} // namespace modsys
