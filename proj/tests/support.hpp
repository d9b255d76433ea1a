#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "modsys/io.hpp"
#include "oracles.hpp"

namespace test {

inline modsys::CountVector cv(std::initializer_list<int> xs)
{
    modsys::CountVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (int x : xs) {
        v[i++] = x;
    }
    return v;
}

inline modsys::RealVector rv(std::initializer_list<double> xs)
{
    modsys::RealVector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) {
        v[i++] = x;
    }
    return v;
}

inline oracle::Counts to_counts(const modsys::CountVector& v) { return {v.begin(), v.end()}; }

inline modsys::CountVector from_counts(const oracle::Counts& c)
{
    modsys::CountVector v(static_cast<Eigen::Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        v[static_cast<Eigen::Index>(i)] = c[i];
    }
    return v;
}

inline std::string model_path(const std::string& name)
{
    return std::string(MODSYS_MODELS_DIR) + "/" + name + ".model.json";
}

/// Loads a bundled fixture; throws if it does not parse.
inline modsys::Model fixture(const std::string& name)
{
    auto r = modsys::load_model(model_path(name));
    if (!r.ok()) {
        throw modsys::Error(name + ": " + r.errors.front().describe());
    }
    return *r.model;
}

} // namespace test
