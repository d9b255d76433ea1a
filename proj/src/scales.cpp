#include "modsys/scales.hpp"

#include <charconv>

#include "modsys/poset.hpp"
#include "overloaded.hpp"

namespace modsys {

using detail::overloaded;

namespace {

std::string_view value_kind(const EstimateValue& v)
{
    switch (v.index()) {
    case 0: return "real";
    case 1: return "level";
    case 2: return "level-vector";
    default: return "count-vector";
    }
}

Validation check_counts(const CountVector& c, int levels, int elements)
{
    if (c.size() != levels) {
        return Validation::fail("count vector has " + std::to_string(c.size()) +
                                " entries, expected " + std::to_string(levels));
    }
    if ((c.array() < 0).any()) {
        return Validation::fail("negative count in " + format_counts(c));
    }
    if (c.sum() != elements) {
        return Validation::fail("counts " + format_counts(c) + " sum to " + std::to_string(c.sum()) +
                                ", expected " + std::to_string(elements));
    }
    return Validation::pass();
}

Validation check_criterion(const Criterion& crit, double x, Eigen::Index i)
{
    const auto where = "criterion " + std::to_string(i + 1);
    return std::visit(
        overloaded{
            [&](const QuantScale& q) {
                return q.contains(x) ? Validation::pass()
                                     : Validation::fail(where + ": value " + format_number(x) +
                                                        " outside [" + format_number(q.min()) + "," +
                                                        format_number(q.max()) + "]");
            },
            [&](const OrdinalScale& o) {
                const bool integral = x == static_cast<double>(static_cast<long>(x));
                return integral && o.contains(static_cast<Level>(x))
                           ? Validation::pass()
                           : Validation::fail(where + ": level " + format_number(x) +
                                              " not in 1.." + std::to_string(o.size()));
            },
        },
        crit);
}

Preference from_dominance(bool ab, bool ba, bool equal)
{
    if (equal) {
        return Preference::Tie;
    }
    if (ab) {
        return Preference::First;
    }
    if (ba) {
        return Preference::Second;
    }
    return Preference::Incomparable;
}

} // namespace

QuantScale::QuantScale(double worst, double best) : worst_(worst), best_(best)
{
    if (worst == best) {
        throw Error("quantitative scale needs distinct worst and best endpoints");
    }
}

OrdinalScale::OrdinalScale(int size) : size_(size)
{
    if (size < 1) {
        throw Error("ordinal scale size must be positive, got " + std::to_string(size));
    }
}

VectorScale::VectorScale(std::vector<Criterion> criteria) : criteria_(std::move(criteria))
{
    if (criteria_.empty()) {
        throw Error("vector scale needs at least one criterion");
    }
}

CountPosetScale::CountPosetScale(int levels, int elements) : levels_(levels), elements_(elements)
{
    if (levels < 1 || elements < 1) {
        throw Error("count-poset scale needs positive levels and elements");
    }
}

MultisetScale::MultisetScale(int levels, int elements) : levels_(levels), elements_(elements)
{
    if (levels < 1 || elements < 1) {
        throw Error("multiset scale needs positive levels and elements");
    }
}

bool same_vector(const CountVector& a, const CountVector& b) noexcept
{
    return a.size() == b.size() && (a.array() == b.array()).all();
}

bool same_vector(const RealVector& a, const RealVector& b) noexcept
{
    return a.size() == b.size() && (a.array() == b.array()).all();
}

bool operator==(const Estimate& a, const Estimate& b)
{
    if (a.scale_id != b.scale_id || a.value.index() != b.value.index()) {
        return false;
    }
    return std::visit(
        overloaded{
            [&](double x) { return x == std::get<double>(b.value); },
            [&](Level x) { return x == std::get<Level>(b.value); },
            [&](const RealVector& x) { return same_vector(x, std::get<RealVector>(b.value)); },
            [&](const CountVector& x) { return same_vector(x, std::get<CountVector>(b.value)); },
        },
        a.value);
}

bool operator==(const QualityVector& a, const QualityVector& b)
{
    return a.w == b.w && same_vector(a.counts, b.counts);
}

void ScaleSet::add(Scale s)
{
    if (find(s.id) != nullptr) {
        throw Error("duplicate scale id '" + s.id + "'");
    }
    scales_.push_back(std::move(s));
}

const Scale* ScaleSet::find(const std::string& id) const
{
    for (const auto& s : scales_) {
        if (s.id == id) {
            return &s;
        }
    }
    return nullptr;
}

const Scale& ScaleSet::at(const std::string& id) const
{
    if (const auto* s = find(id)) {
        return *s;
    }
    throw ReferenceError("unknown scale '" + id + "'");
}

Validation validate_multiset(const CountVector& counts, const MultisetScale& scale)
{
    if (auto v = check_counts(counts, scale.levels(), scale.elements()); !v) {
        return v;
    }
    Eigen::Index first = 0;
    while (first < counts.size() && counts[first] == 0) {
        ++first;
    }
    Eigen::Index last = counts.size() - 1;
    while (last > first && counts[last] == 0) {
        --last;
    }
    for (auto r = first; r <= last; ++r) {
        if (counts[r] == 0) {
            return Validation::fail("non-contiguous support in " + format_counts(counts));
        }
    }
    return Validation::pass();
}

Validation validate_value(const ScaleKind& scale, const EstimateValue& value)
{
    auto mismatch = [&](std::string_view expected) {
        return Validation::fail(std::string(kind_name(scale)) + " scale expects a " +
                                std::string(expected) + ", got a " + std::string(value_kind(value)));
    };
    return std::visit(
        overloaded{
            [&](const QuantScale& q) {
                const auto* x = std::get_if<double>(&value);
                if (x == nullptr) {
                    return mismatch("real");
                }
                if (!q.contains(*x)) {
                    return Validation::fail("value " + format_number(*x) + " outside [" +
                                            format_number(q.min()) + "," + format_number(q.max()) + "]");
                }
                return Validation::pass();
            },
            [&](const OrdinalScale& o) {
                const auto* l = std::get_if<Level>(&value);
                if (l == nullptr) {
                    return mismatch("level");
                }
                if (!o.contains(*l)) {
                    return Validation::fail("level " + std::to_string(*l) + " not in 1.." +
                                            std::to_string(o.size()));
                }
                return Validation::pass();
            },
            [&](const VectorScale& vs) {
                const auto* v = std::get_if<RealVector>(&value);
                if (v == nullptr) {
                    return mismatch("level-vector");
                }
                if (v->size() != vs.arity()) {
                    return Validation::fail("vector arity " + std::to_string(v->size()) +
                                            " differs from criterion count " + std::to_string(vs.arity()));
                }
                for (Eigen::Index i = 0; i < v->size(); ++i) {
                    if (auto r = check_criterion(vs.criteria()[static_cast<std::size_t>(i)], (*v)[i], i); !r) {
                        return r;
                    }
                }
                return Validation::pass();
            },
            [&](const CountPosetScale& cs) {
                const auto* c = std::get_if<CountVector>(&value);
                if (c == nullptr) {
                    return mismatch("count-vector");
                }
                return check_counts(*c, cs.levels(), cs.elements());
            },
            [&](const MultisetScale& ms) {
                const auto* c = std::get_if<CountVector>(&value);
                if (c == nullptr) {
                    return mismatch("count-vector");
                }
                return validate_multiset(*c, ms);
            },
        },
        scale);
}

Validation validate_estimate(const Estimate& e, const ScaleSet& scales)
{
    return validate_value(scales.at(e.scale_id).kind, e.value);
}

Preference better_of(const ScaleKind& scale, const EstimateValue& a, const EstimateValue& b)
{
    if (auto v = validate_value(scale, a); !v) {
        throw Error("first estimate invalid: " + v.violation);
    }
    if (auto v = validate_value(scale, b); !v) {
        throw Error("second estimate invalid: " + v.violation);
    }
    return std::visit(
        overloaded{
            [&](const QuantScale& q) {
                const double x = std::get<double>(a), y = std::get<double>(b);
                return from_dominance(q.better(x, y), q.better(y, x), x == y);
            },
            [&](const OrdinalScale&) {
                const Level x = std::get<Level>(a), y = std::get<Level>(b);
                return from_dominance(x < y, y < x, x == y);
            },
            [&](const VectorScale& vs) {
                const auto& x = std::get<RealVector>(a);
                const auto& y = std::get<RealVector>(b);
                return from_dominance(dominates_vector(vs, x, y), dominates_vector(vs, y, x),
                                      same_vector(x, y));
            },
            [&](const auto&) {
                const auto& x = std::get<CountVector>(a);
                const auto& y = std::get<CountVector>(b);
                return from_dominance(dominates_counts(x, y), dominates_counts(y, x), same_vector(x, y));
            },
        },
        scale);
}

Preference better_of(const Estimate& a, const Estimate& b, const ScaleSet& scales)
{
    if (a.scale_id != b.scale_id) {
        throw Error("cannot compare estimates on scales '" + a.scale_id + "' and '" + b.scale_id + "'");
    }
    return better_of(scales.at(a.scale_id).kind, a.value, b.value);
}

std::string format_number(double x)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) {
        throw Error("cannot format number");
    }
    return {buf, end};
}

std::string format_counts(const CountVector& c)
{
    std::string s = "(";
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if (i > 0) {
            s += ',';
        }
        s += std::to_string(c[i]);
    }
    return s + ")";
}

std::string format_quality(const QualityVector& q)
{
    auto counts = format_counts(q.counts);
    return "(" + std::to_string(q.w) + ";" + counts.substr(1);
}

std::string format_vector(const RealVector& v)
{
    std::string s = "(";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i > 0) {
            s += ',';
        }
        s += format_number(v[i]);
    }
    return s + ")";
}

std::string format_value(const EstimateValue& v)
{
    return std::visit(overloaded{
                          [](double x) { return format_number(x); },
                          [](Level l) { return std::to_string(l); },
                          [](const RealVector& x) { return format_vector(x); },
                          [](const CountVector& x) { return format_counts(x); },
                      },
                      v);
}

std::string_view kind_name(const ScaleKind& s) noexcept
{
    switch (s.index()) {
    case 0: return "quantitative";
    case 1: return "ordinal";
    case 2: return "vector";
    case 3: return "count-poset";
    default: return "multiset";
    }
}

} // namespace modsys
