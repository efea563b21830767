#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "semrel/errors.hpp"

namespace semrel {

/// String-keyed table of fixed-width vectors stored contiguously, one row per
/// key. Immutable once built, so it can be shared across threads.
template <typename Scalar>
class EmbeddingTable {
public:
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    using ConstRow = Eigen::Map<const Vector>;

    EmbeddingTable() = default;
    explicit EmbeddingTable(Eigen::Index dim) : dim_(dim) {}

    Eigen::Index dim() const { return dim_; }
    std::size_t size() const { return keys_.size(); }
    bool empty() const { return keys_.empty(); }

    bool contains(const std::string& key) const { return index_.contains(key); }

    ConstRow row(const std::string& key) const {
        auto it = index_.find(key);
        if (it == index_.end()) throw ValidationError("unknown embedding key: " + key);
        return row_at(it->second);
    }

    const Scalar* find(const std::string& key) const {
        auto it = index_.find(key);
        return it == index_.end() ? nullptr : data_.data() + it->second * dim_;
    }

    ConstRow row_at(std::size_t i) const { return ConstRow(data_.data() + i * dim_, dim_); }

    const std::vector<std::string>& keys() const { return keys_; }

    template <typename Derived>
    void insert(const std::string& key, const Eigen::MatrixBase<Derived>& v) {
        if (v.size() != dim_) {
            throw ValidationError("embedding for '" + key + "' has " + std::to_string(v.size()) +
                                  " components, table dim is " + std::to_string(dim_));
        }
        if (!v.allFinite()) throw ValidationError("non-finite embedding for '" + key + "'");
        auto [it, inserted] = index_.emplace(key, keys_.size());
        if (!inserted) throw ValidationError("duplicate embedding key: " + key);
        keys_.push_back(key);
        for (Eigen::Index j = 0; j < dim_; ++j) data_.push_back(static_cast<Scalar>(v(j)));
    }

private:
    Eigen::Index dim_ = 0;
    std::vector<std::string> keys_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Scalar> data_;
};

using WordVectorTable = EmbeddingTable<float>;
using DocVectorTable = EmbeddingTable<float>;

}  // namespace semrel
