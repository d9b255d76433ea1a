#include "modsys/model.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <string>

#include "overloaded.hpp"

namespace modsys {

using detail::overloaded;

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 6> method_names{{
    {Method::Additive, "additive"},
    {Method::Tables, "tables"},
    {Method::VectorSum, "vector-sum"},
    {Method::CountProfile, "count-profile"},
    {Method::Quality, "quality-vector"},
    {Method::MultisetMedian, "multiset-median"},
}};

/// Variant index each method produces and consumes.
std::size_t result_index(Method m)
{
    switch (m) {
    case Method::Additive: return 0;
    case Method::Tables: return 1;
    case Method::VectorSum: return 2;
    case Method::CountProfile: return 3;
    case Method::Quality: return 4;
    default: return 5;
    }
}

std::string_view value_shape(std::size_t index)
{
    static constexpr std::array<std::string_view, 6> shapes{
        "real", "level", "vector", "count vector", "quality vector", "median"};
    return shapes[index];
}

void collect_leaves(const SystemNode& node, std::vector<const SystemNode*>& out)
{
    if (node.is_leaf()) {
        out.push_back(&node);
        return;
    }
    for (const auto& c : node.children) {
        collect_leaves(c, out);
    }
}

struct NodeResult {
    EvalValue value;
    std::optional<int> ordinal_size;
    std::string scale_id;
    std::vector<std::string> das;
};

class Evaluator {
public:
    Evaluator(const Model& model, const Composition& composition, Method method, const EvalOptions& options)
        : model_(model), composition_(composition), method_(method), options_(options)
    {
    }

    NodeResult run() { return node(model_.root, "/" + model_.root.id, method_); }

private:
    NodeResult node(const SystemNode& n, const std::string& path, Method parent_method)
    {
        if (n.is_leaf()) {
            return leaf(n, path, parent_method);
        }
        const Method m = n.method ? parse_method(*n.method) : method_;
        std::vector<NodeResult> kids;
        kids.reserve(n.children.size());
        for (const auto& c : n.children) {
            auto r = node(c, path + "/" + c.id, m);
            if (r.value.index() != result_index(m)) {
                throw Error(path + ": method " + std::string(method_name(m)) + " expects a " +
                            std::string(value_shape(result_index(m))) + " from child '" + c.id +
                            "', got a " + std::string(value_shape(r.value.index())));
            }
            kids.push_back(std::move(r));
        }

        NodeResult out;
        out.scale_id = kids.front().scale_id;
        for (const auto& k : kids) {
            out.das.insert(out.das.end(), k.das.begin(), k.das.end());
        }
        switch (m) {
        case Method::Additive: {
            std::vector<double> xs;
            for (const auto& k : kids) {
                xs.push_back(std::get<double>(k.value));
            }
            out.value = compensated_sum(xs);
            break;
        }
        case Method::Tables: {
            if (!n.table) {
                throw Error(path + ": node has no integration table");
            }
            const auto it = model_.tables.find(*n.table);
            if (it == model_.tables.end()) {
                throw Error(path + ": unknown integration table '" + *n.table + "'");
            }
            const auto& table = it->second;
            if (table.inputs().size() != kids.size()) {
                throw Error(path + ": table '" + *n.table + "' has " + std::to_string(table.inputs().size()) +
                            " inputs for " + std::to_string(kids.size()) + " children");
            }
            std::vector<Level> levels;
            for (std::size_t i = 0; i < kids.size(); ++i) {
                if (kids[i].ordinal_size != table.inputs()[i].scale.size()) {
                    throw Error(path + ": scale mismatch at table input " + std::to_string(i + 1) + " (child '" +
                                n.children[i].id + "')");
                }
                levels.push_back(std::get<Level>(kids[i].value));
            }
            try {
                out.value = table.lookup(levels);
            } catch (const Error& e) {
                throw Error(path + ": " + e.what());
            }
            out.ordinal_size = table.output().size();
            break;
        }
        case Method::VectorSum: {
            std::vector<RealVector> vs;
            for (const auto& k : kids) {
                vs.push_back(std::get<RealVector>(k.value));
            }
            out.value = vector_sum(vs);
            break;
        }
        case Method::CountProfile: {
            CountVector total = std::get<CountVector>(kids.front().value);
            for (std::size_t i = 1; i < kids.size(); ++i) {
                const auto& c = std::get<CountVector>(kids[i].value);
                if (c.size() != total.size()) {
                    throw Error(path + ": children use ordinal scales of different sizes");
                }
                total += c;
            }
            out.value = total;
            break;
        }
        case Method::Quality: {
            const auto& compat = require_compat(path);
            QualityVector q = std::get<QualityVector>(kids.front().value);
            for (std::size_t i = 1; i < kids.size(); ++i) {
                const auto& c = std::get<QualityVector>(kids[i].value);
                if (c.counts.size() != q.counts.size()) {
                    throw Error(path + ": children use ordinal scales of different sizes");
                }
                q.counts += c.counts;
                q.w = std::min(q.w, c.w);
            }
            for (std::size_t i = 0; i < kids.size(); ++i) {
                for (std::size_t j = i + 1; j < kids.size(); ++j) {
                    for (const auto& a : kids[i].das) {
                        for (const auto& b : kids[j].das) {
                            const auto level = compat.get(a, b);
                            if (!level) {
                                throw Error(path + ": missing compatibility entry for pair (" + a + "," + b + ")");
                            }
                            q.w = std::min(q.w, *level);
                        }
                    }
                }
            }
            out.value = q;
            break;
        }
        case Method::MultisetMedian: {
            std::vector<CountVector> reps;
            for (const auto& k : kids) {
                if (k.scale_id != out.scale_id) {
                    throw Error(path + ": children use different multiset scales");
                }
                reps.push_back(std::get<MedianResult>(k.value).representative);
            }
            const auto& scale = std::get<MultisetScale>(model_.scales.at(out.scale_id).kind);
            out.value = ScalePoset(scale).median_like(reps, options_.metric);
            break;
        }
        }
        return out;
    }

    NodeResult leaf(const SystemNode& n, const std::string& path, Method m)
    {
        const auto sel = composition_.selection.find(n.id);
        if (sel == composition_.selection.end()) {
            throw Error(path + ": composition '" + composition_.name + "' selects no DA");
        }
        const DA* da = model_.find_da(sel->second);
        if (da == nullptr) {
            throw ReferenceError(path + ": unknown DA '" + sel->second + "'");
        }
        const auto da_path = path + "/" + da->id;
        const auto kind = model_.estimate_kind(m);
        const auto est = da->estimates.find(kind);
        if (est == da->estimates.end()) {
            throw Error(da_path + ": missing '" + kind + "' estimate");
        }
        const Estimate& e = est->second;
        const Scale& scale = model_.scales.at(e.scale_id);
        if (auto v = validate_value(scale.kind, e.value); !v) {
            throw Error(da_path + ": " + v.violation);
        }

        NodeResult out;
        out.scale_id = e.scale_id;
        out.das = {da->id};
        auto expect = [&](bool ok, std::string_view what) {
            if (!ok) {
                throw Error(da_path + ": method " + std::string(method_name(m)) + " needs a " +
                            std::string(what) + " estimate, '" + kind + "' is " +
                            std::string(kind_name(scale.kind)));
            }
        };
        switch (m) {
        case Method::Additive:
            expect(std::holds_alternative<QuantScale>(scale.kind), "quantitative");
            out.value = std::get<double>(e.value);
            break;
        case Method::VectorSum:
            expect(std::holds_alternative<VectorScale>(scale.kind), "vector");
            out.value = std::get<RealVector>(e.value);
            break;
        case Method::MultisetMedian: {
            expect(std::holds_alternative<MultisetScale>(scale.kind), "multiset");
            const auto& c = std::get<CountVector>(e.value);
            out.value = MedianResult{{c}, c, 0};
            break;
        }
        default: {
            const auto [level, size] = ordinal_level(n, e, scale, da_path);
            out.ordinal_size = size;
            if (m == Method::Tables) {
                out.value = level;
            } else {
                CountVector unit = CountVector::Zero(size);
                unit[level - 1] = 1;
                if (m == Method::CountProfile) {
                    out.value = unit;
                } else {
                    out.value = QualityVector{require_compat(da_path).nu(), unit};
                }
            }
        }
        }
        return out;
    }

    std::pair<Level, int> ordinal_level(const SystemNode& n, const Estimate& e, const Scale& scale,
                                        const std::string& path) const
    {
        if (n.transform) {
            if (const auto t = model_.thresholds.find(*n.transform); t != model_.thresholds.end()) {
                const auto* q = std::get_if<QuantScale>(&scale.kind);
                if (q == nullptr || e.scale_id != t->second.source_scale) {
                    throw Error(path + ": threshold spec '" + *n.transform + "' needs a value on scale '" +
                                t->second.source_scale + "'");
                }
                return {quantize(std::get<double>(e.value), t->second.spec, *q), t->second.spec.target.size()};
            }
            if (const auto o = model_.ordinal_maps.find(*n.transform); o != model_.ordinal_maps.end()) {
                const auto* l = std::get_if<Level>(&e.value);
                if (l == nullptr || std::get<OrdinalScale>(scale.kind) != o->second.source()) {
                    throw Error(path + ": ordinal map '" + *n.transform + "' needs a level on a " +
                                std::to_string(o->second.source().size()) + "-level scale");
                }
                return {o->second(*l), o->second.target().size()};
            }
            throw ReferenceError(path + ": unknown transform '" + *n.transform + "'");
        }
        const auto* o = std::get_if<OrdinalScale>(&scale.kind);
        if (o == nullptr) {
            throw Error(path + ": ordinal methods need an ordinal estimate, scale '" + scale.id + "' is " +
                        std::string(kind_name(scale.kind)));
        }
        return {std::get<Level>(e.value), o->size()};
    }

    const CompatTable& require_compat(const std::string& path) const
    {
        if (!model_.compat) {
            throw Error(path + ": method quality-vector needs a compatibility table");
        }
        return *model_.compat;
    }

    const Model& model_;
    const Composition& composition_;
    Method method_;
    EvalOptions options_;
};

const Estimate* first_leaf_estimate(const Model& model, Method m)
{
    const auto kind = model.estimate_kind(m);
    for (const auto* leaf : model.leaves()) {
        for (const auto& id : leaf->das) {
            if (const auto* da = model.find_da(id)) {
                if (const auto it = da->estimates.find(kind); it != da->estimates.end()) {
                    return &it->second;
                }
            }
        }
    }
    throw Error("no DA carries a '" + kind + "' estimate");
}

/// Dominance, corners and numeric embedding of one method's results.
struct MethodFrame {
    std::function<bool(const EvalValue&, const EvalValue&)> dominates;
    EvalValue best;
    EvalValue worst;
};

EvalValue ranking_key(const EvalValue& v)
{
    if (const auto* med = std::get_if<MedianResult>(&v)) {
        return med->representative;
    }
    return v;
}

int root_ordinal_size(const Model& model)
{
    const auto& root = model.root;
    if (!root.is_leaf() && root.table) {
        if (const auto it = model.tables.find(*root.table); it != model.tables.end()) {
            return it->second.output().size();
        }
    }
    const auto* e = first_leaf_estimate(model, Method::Tables);
    return std::get<OrdinalScale>(model.scales.at(e->scale_id).kind).size();
}

MethodFrame method_frame(const Model& model, Method method, std::span<const EvalValue> keys)
{
    const auto m = static_cast<double>(model.leaves().size());
    MethodFrame f;
    switch (method) {
    case Method::Additive: {
        const auto* e = first_leaf_estimate(model, method);
        const auto& s = std::get<QuantScale>(model.scales.at(e->scale_id).kind);
        const QuantScale total(m * s.worst(), m * s.best());
        f.dominates = [total](const EvalValue& a, const EvalValue& b) {
            return total.better(std::get<double>(a), std::get<double>(b));
        };
        f.best = total.best();
        f.worst = total.worst();
        break;
    }
    case Method::Tables: {
        f.dominates = [](const EvalValue& a, const EvalValue& b) { return std::get<Level>(a) < std::get<Level>(b); };
        f.best = Level{1};
        f.worst = Level{root_ordinal_size(model)};
        break;
    }
    case Method::VectorSum: {
        const auto* e = first_leaf_estimate(model, method);
        const auto& vs = std::get<VectorScale>(model.scales.at(e->scale_id).kind);
        RealVector best(vs.arity()), worst(vs.arity());
        for (Eigen::Index i = 0; i < vs.arity(); ++i) {
            std::visit(overloaded{
                           [&](const QuantScale& q) {
                               best[i] = m * q.best();
                               worst[i] = m * q.worst();
                           },
                           [&](const OrdinalScale& o) {
                               best[i] = m;
                               worst[i] = m * o.size();
                           },
                       },
                       vs.criteria()[static_cast<std::size_t>(i)]);
        }
        f.dominates = [vs](const EvalValue& a, const EvalValue& b) {
            return dominates_vector(vs, std::get<RealVector>(a), std::get<RealVector>(b));
        };
        f.best = best;
        f.worst = worst;
        break;
    }
    case Method::CountProfile:
    case Method::MultisetMedian: {
        if (keys.empty()) {
            throw Error("nothing to rank");
        }
        const auto& c = std::get<CountVector>(keys.front());
        CountVector best = CountVector::Zero(c.size()), worst = CountVector::Zero(c.size());
        best[0] = c.sum();
        worst[c.size() - 1] = c.sum();
        f.dominates = [](const EvalValue& a, const EvalValue& b) {
            return dominates_counts(std::get<CountVector>(a), std::get<CountVector>(b));
        };
        f.best = best;
        f.worst = worst;
        break;
    }
    case Method::Quality: {
        if (keys.empty()) {
            throw Error("nothing to rank");
        }
        const auto& q = std::get<QualityVector>(keys.front());
        CountVector best = CountVector::Zero(q.counts.size()), worst = CountVector::Zero(q.counts.size());
        best[0] = q.counts.sum();
        worst[q.counts.size() - 1] = q.counts.sum();
        f.dominates = [](const EvalValue& a, const EvalValue& b) {
            return dominates_quality(std::get<QualityVector>(a), std::get<QualityVector>(b));
        };
        f.best = QualityVector{model.compat->nu(), best};
        f.worst = QualityVector{model.compat->min_level(), worst};
        break;
    }
    }
    return f;
}

RealVector embed(const EvalValue& v)
{
    return std::visit(overloaded{
                          [](double x) -> RealVector { return RealVector::Constant(1, x); },
                          [](Level l) -> RealVector { return RealVector::Constant(1, static_cast<double>(l)); },
                          [](const RealVector& x) -> RealVector { return x; },
                          [](const CountVector& c) -> RealVector { return c.cast<double>(); },
                          [](const QualityVector& q) -> RealVector {
                              RealVector r(q.counts.size() + 1);
                              r[0] = q.w;
                              r.tail(q.counts.size()) = q.counts.cast<double>();
                              return r;
                          },
                          [](const MedianResult& med) -> RealVector { return med.representative.cast<double>(); },
                      },
                      v);
}

Eigen::MatrixXd stack(std::span<const EvalValue> values)
{
    std::vector<RealVector> rows;
    for (const auto& v : values) {
        rows.push_back(embed(v));
    }
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), rows.empty() ? 0 : rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        m.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
    }
    return m;
}

} // namespace

std::string_view method_name(Method m) noexcept
{
    for (const auto& [method, name] : method_names) {
        if (method == m) {
            return name;
        }
    }
    return "?";
}

Method parse_method(std::string_view name)
{
    for (const auto& [method, n] : method_names) {
        if (n == name) {
            return method;
        }
    }
    throw Error("unknown method '" + std::string(name) + "'");
}

std::string_view default_estimate_kind(Method m) noexcept
{
    switch (m) {
    case Method::Additive: return "quant";
    case Method::VectorSum: return "vector";
    case Method::MultisetMedian: return "multiset";
    default: return "ordinal";
    }
}

std::string_view reduction_name(Reduction r) noexcept
{
    switch (r) {
    case Reduction::Layers: return "layers";
    case Reduction::LabelD: return "labelD";
    default: return "closeness";
    }
}

Reduction parse_reduction(std::string_view name)
{
    if (name == "layers") {
        return Reduction::Layers;
    }
    if (name == "labelD") {
        return Reduction::LabelD;
    }
    if (name == "closeness") {
        return Reduction::Closeness;
    }
    throw Error("unknown reduction '" + std::string(name) + "'");
}

const DA* Model::find_da(const std::string& id) const
{
    const auto it = std::find_if(das.begin(), das.end(), [&](const DA& d) { return d.id == id; });
    return it == das.end() ? nullptr : &*it;
}

const Composition* Model::find_composition(const std::string& n) const
{
    const auto it = std::find_if(compositions.begin(), compositions.end(),
                                 [&](const Composition& c) { return c.name == n; });
    return it == compositions.end() ? nullptr : &*it;
}

std::string Model::estimate_kind(Method m) const
{
    if (const auto it = bindings.find(std::string(method_name(m))); it != bindings.end()) {
        return it->second;
    }
    return std::string(default_estimate_kind(m));
}

std::vector<const SystemNode*> Model::leaves() const
{
    std::vector<const SystemNode*> out;
    collect_leaves(root, out);
    return out;
}

bool ModelReport::ok() const { return errors() == 0; }

std::size_t ModelReport::errors() const
{
    return static_cast<std::size_t>(
        std::count_if(violations.begin(), violations.end(), [](const Violation& v) { return !v.warning; }));
}

ModelReport validate_model(const Model& model, const ValidationOptions& options)
{
    ModelReport report;
    auto add = [&](std::string path, std::string message, bool warning = false) {
        report.violations.push_back({std::move(path), std::move(message), warning});
    };

    // DA estimates
    std::set<std::string> da_ids;
    for (const auto& da : model.das) {
        const auto path = "/das/" + da.id;
        if (!da_ids.insert(da.id).second) {
            add(path, "duplicate DA id");
        }
        for (const auto& [kind, e] : da.estimates) {
            const auto* scale = model.scales.find(e.scale_id);
            if (scale == nullptr) {
                add(path + "/estimates/" + kind, "unknown scale '" + e.scale_id + "'");
            } else if (auto v = validate_value(scale->kind, e.value); !v) {
                add(path + "/estimates/" + kind, v.violation);
            }
        }
    }

    // tree shape and DA ownership
    std::map<std::string, std::string> owner;
    std::set<std::string> node_ids;
    std::function<void(const SystemNode&, const std::string&)> walk = [&](const SystemNode& n,
                                                                          const std::string& path) {
        if (!node_ids.insert(n.id).second) {
            add(path, "duplicate node id '" + n.id + "'");
        }
        if (n.is_leaf()) {
            if (n.das.empty()) {
                add(path, "leaf has no DAs");
            }
            if (!n.children.empty()) {
                add(path, "leaf has children");
            }
            for (const auto& id : n.das) {
                if (!da_ids.contains(id)) {
                    add(path, "unknown DA '" + id + "'");
                } else if (!owner.emplace(id, n.id).second) {
                    add(path, "DA '" + id + "' already belongs to leaf '" + owner[id] + "'");
                }
            }
            if (n.transform && !model.thresholds.contains(*n.transform) &&
                !model.ordinal_maps.contains(*n.transform)) {
                add(path, "unknown transform '" + *n.transform + "'");
            }
            return;
        }
        if (n.children.empty()) {
            add(path, "internal node has no children");
        }
        if (!n.das.empty()) {
            add(path, "internal node lists DAs");
        }
        if (n.method) {
            try {
                parse_method(*n.method);
            } catch (const Error& e) {
                add(path, e.what());
            }
        }
        if (n.table) {
            const auto it = model.tables.find(*n.table);
            if (it == model.tables.end()) {
                add(path, "unknown integration table '" + *n.table + "'");
            } else if (it->second.inputs().size() != n.children.size()) {
                add(path, "table '" + *n.table + "' arity differs from child count");
            }
        } else if (n.method && *n.method == method_name(Method::Tables)) {
            add(path, "tables method without an integration table");
        }
        for (const auto& c : n.children) {
            walk(c, path + "/" + c.id);
        }
    };
    walk(model.root, "/tree/" + model.root.id);
    for (const auto& id : da_ids) {
        if (!owner.contains(id)) {
            add("/das/" + id, "DA belongs to no leaf");
        }
    }

    for (const auto& [id, table] : model.tables) {
        for (const auto& v : table.monotonicity_violations()) {
            add("/tables/" + id, "not monotone: " + v.describe(), !options.strict_monotone);
        }
    }

    for (const auto& [id, t] : model.thresholds) {
        const auto* scale = model.scales.find(t.source_scale);
        if (scale == nullptr) {
            add("/thresholds/" + id, "unknown scale '" + t.source_scale + "'");
        } else if (const auto* q = std::get_if<QuantScale>(&scale->kind)) {
            if (auto v = validate_thresholds(t.spec, *q); !v) {
                add("/thresholds/" + id, v.violation);
            }
        } else {
            add("/thresholds/" + id, "source scale '" + t.source_scale + "' is not quantitative");
        }
    }

    for (const auto& [id, cfg] : model.topsis) {
        if (cfg.exponent != 1 && cfg.exponent != 2) {
            add("/topsis/" + id, "exponent must be 1 or 2");
        }
        if (cfg.best_points.rows() == 0 || cfg.worst_points.rows() == 0) {
            add("/topsis/" + id, "needs at least one best and one worst point");
        } else if (cfg.best_points.cols() != cfg.worst_points.cols()) {
            add("/topsis/" + id, "best and worst points differ in dimension");
        }
    }

    for (const auto& [method, kind] : model.bindings) {
        try {
            parse_method(method);
        } catch (const Error& e) {
            add("/bindings/" + method, e.what());
        }
    }

    const auto leaves = model.leaves();
    if (model.compat) {
        for (const auto& [pair, level] : model.compat->entries()) {
            const auto path = "/compat/" + pair.first + "," + pair.second;
            if (!owner.contains(pair.first) || !owner.contains(pair.second)) {
                add(path, "entry refers to an unknown or unassigned DA");
            } else if (owner[pair.first] == owner[pair.second]) {
                add(path, "entry pairs two DAs of the same leaf '" + owner[pair.first] + "'");
            }
        }
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            for (std::size_t j = i + 1; j < leaves.size(); ++j) {
                for (const auto& a : leaves[i]->das) {
                    for (const auto& b : leaves[j]->das) {
                        if (!model.compat->get(a, b)) {
                            add("/compat", "missing compatibility entry for pair (" + a + "," + b + ")");
                        }
                    }
                }
            }
        }
    }

    std::set<std::string> names;
    for (const auto& c : model.compositions) {
        const auto path = "/compositions/" + c.name;
        if (!names.insert(c.name).second) {
            add(path, "duplicate composition name");
        }
        for (const auto* leaf : leaves) {
            const auto it = c.selection.find(leaf->id);
            if (it == c.selection.end()) {
                add(path, "no DA selected for leaf '" + leaf->id + "'");
            } else if (std::find(leaf->das.begin(), leaf->das.end(), it->second) == leaf->das.end()) {
                add(path, "DA '" + it->second + "' is not an alternative of leaf '" + leaf->id + "'");
            }
        }
        for (const auto& [leaf, da] : c.selection) {
            if (std::none_of(leaves.begin(), leaves.end(), [&](const SystemNode* l) { return l->id == leaf; })) {
                add(path, "selection names unknown leaf '" + leaf + "'");
            }
        }
    }
    return report;
}

CompositionList enumerate_compositions(const Model& model, std::size_t limit)
{
    const auto leaves = model.leaves();
    CompositionList out;
    if (leaves.empty() || std::any_of(leaves.begin(), leaves.end(), [](const SystemNode* l) { return l->das.empty(); })) {
        return out;
    }
    std::vector<std::size_t> index(leaves.size(), 0);
    while (true) {
        if (out.compositions.size() == limit) {
            out.truncated = true;
            return out;
        }
        Composition c;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            const auto& da = leaves[i]->das[index[i]];
            c.selection[leaves[i]->id] = da;
            c.name += (i > 0 ? "*" : "") + da;
        }
        out.compositions.push_back(std::move(c));

        std::size_t pos = leaves.size();
        while (pos > 0) {
            --pos;
            if (++index[pos] < leaves[pos]->das.size()) {
                break;
            }
            index[pos] = 0;
            if (pos == 0) {
                return out;
            }
        }
    }
}

bool operator==(const EvalValue& a, const EvalValue& b)
{
    if (a.index() != b.index()) {
        return false;
    }
    return std::visit(overloaded{
                          [&](double x) { return x == std::get<double>(b); },
                          [&](Level x) { return x == std::get<Level>(b); },
                          [&](const RealVector& x) { return same_vector(x, std::get<RealVector>(b)); },
                          [&](const CountVector& x) { return same_vector(x, std::get<CountVector>(b)); },
                          [&](const QualityVector& x) { return x == std::get<QualityVector>(b); },
                          [&](const MedianResult& x) { return x == std::get<MedianResult>(b); },
                      },
                      a);
}

std::string format_eval(const EvalValue& v)
{
    return std::visit(overloaded{
                          [](double x) { return format_number(x); },
                          [](Level l) { return std::to_string(l); },
                          [](const RealVector& x) { return format_vector(x); },
                          [](const CountVector& x) { return format_counts(x); },
                          [](const QualityVector& q) { return format_quality(q); },
                          [](const MedianResult& med) {
                              auto s = format_counts(med.representative);
                              if (med.tie_broken()) {
                                  s += " tie-broken argmin={";
                                  for (std::size_t i = 0; i < med.argmin_set.size(); ++i) {
                                      s += (i > 0 ? "," : "") + format_counts(med.argmin_set[i]);
                                  }
                                  s += "}";
                              }
                              return s;
                          },
                      },
                      v);
}

EvalValue evaluate(const Model& model, const Composition& composition, Method method, const EvalOptions& options)
{
    return Evaluator(model, composition, method, options).run().value;
}

RankReport rank(const Model& model, Method method, Reduction reduction, const RankOptions& options)
{
    RankReport report{method, reduction, {}, false};
    std::vector<Composition> comps;
    if (!options.subset.empty()) {
        for (const auto& name : options.subset) {
            const auto* c = model.find_composition(name);
            if (c == nullptr) {
                throw ReferenceError("unknown composition '" + name + "'");
            }
            comps.push_back(*c);
        }
    } else if (!options.all && !model.compositions.empty()) {
        comps = model.compositions;
    } else {
        auto list = enumerate_compositions(model, options.limit);
        comps = std::move(list.compositions);
        report.truncated = list.truncated;
    }

    std::vector<EvalValue> keys;
    for (const auto& c : comps) {
        RankEntry entry;
        entry.name = c.name;
        entry.value = evaluate(model, c, method, options.eval);
        keys.push_back(ranking_key(entry.value));
        report.entries.push_back(std::move(entry));
    }
    if (comps.empty()) {
        return report;
    }
    if (method == Method::Quality && !model.compat) {
        throw Error("method quality-vector needs a compatibility table");
    }
    const auto frame = method_frame(model, method, keys);

    switch (reduction) {
    case Reduction::Layers: {
        const auto layers = peel_layers(std::span<const EvalValue>(keys), frame.dominates);
        for (std::size_t i = 0; i < layers.size(); ++i) {
            report.entries[i].priority = layers[i];
        }
        break;
    }
    case Reduction::LabelD: {
        const auto labels = label_d(std::span<const EvalValue>(keys), frame.dominates, frame.best, frame.worst,
                                    [](const EvalValue& a, const EvalValue& b) { return a == b; });
        int deepest = 0;
        for (const auto& l : labels) {
            deepest = std::max(deepest, l.layer);
        }
        for (std::size_t i = 0; i < labels.size(); ++i) {
            report.entries[i].label = labels[i];
            report.entries[i].priority = labels[i].kind == DLabel::Kind::Ideal   ? 0
                                         : labels[i].kind == DLabel::Kind::Worst ? deepest + 1
                                                                                 : labels[i].layer;
        }
        break;
    }
    case Reduction::Closeness: {
        TopsisConfig cfg;
        if (const auto it = model.topsis.find(std::string(method_name(method))); it != model.topsis.end()) {
            cfg = it->second;
        } else {
            cfg.best_points = embed(frame.best).transpose();
            cfg.worst_points = embed(frame.worst).transpose();
        }
        const auto ranking = topsis_rank(stack(keys), cfg);
        for (std::size_t pos = 0; pos < ranking.order.size(); ++pos) {
            auto& e = report.entries[ranking.order[pos]];
            e.priority = static_cast<int>(pos + 1);
            e.topsis = ranking.results[ranking.order[pos]];
        }
        break;
    }
    }
    return report;
}

std::vector<std::string> near_pareto(const Model& model, std::span<const Composition> compositions,
                                     Method method, const EvalOptions& options)
{
    const auto leaves = model.leaves();
    std::vector<std::size_t> sizes;
    for (const auto* l : leaves) {
        sizes.push_back(l->das.size());
    }
    std::vector<Choice> choices;
    for (const auto& c : compositions) {
        Choice ch;
        for (const auto* l : leaves) {
            const auto it = c.selection.find(l->id);
            if (it == c.selection.end()) {
                throw Error("composition '" + c.name + "' selects no DA for leaf '" + l->id + "'");
            }
            const auto pos = std::find(l->das.begin(), l->das.end(), it->second);
            if (pos == l->das.end()) {
                throw Error("composition '" + c.name + "' selects a DA outside leaf '" + l->id + "'");
            }
            ch.push_back(static_cast<std::size_t>(pos - l->das.begin()));
        }
        choices.push_back(std::move(ch));
    }
    auto eval = [&](const Choice& ch) {
        Composition c;
        for (std::size_t i = 0; i < leaves.size(); ++i) {
            c.selection[leaves[i]->id] = leaves[i]->das[ch[i]];
        }
        return ranking_key(evaluate(model, c, method, options));
    };
    std::vector<EvalValue> keys;
    for (const auto& ch : choices) {
        keys.push_back(eval(ch));
    }
    const auto frame = method_frame(model, method, keys);
    std::vector<std::string> out;
    for (auto i : near_pareto_by_swap(std::span<const Choice>(choices), std::span<const std::size_t>(sizes), eval,
                                      frame.dominates)) {
        out.push_back(compositions[i].name);
    }
    return out;
}

} // namespace modsys
