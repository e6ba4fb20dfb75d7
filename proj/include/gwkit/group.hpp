#ifndef GWKIT_GROUP_HPP
#define GWKIT_GROUP_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "util.hpp"

namespace gwkit {

enum class GroupKind { Integers, Cyclic, Free, Table, Perm };

namespace detail {
struct GroupData;
}

// Element of a specific group handle. Elements remember their owner; mixing
// elements of different handles in one operation is a domain error.
class GroupElem {
public:
    GroupElem() = default;

    bool valid() const { return owner_ != nullptr; }

    bool operator==(const GroupElem& o) const {
        return owner_ == o.owner_ && scalar_ == o.scalar_ && seq_ == o.seq_;
    }
    bool operator!=(const GroupElem& o) const { return !(*this == o); }
    bool operator<(const GroupElem& o) const {
        if (owner_ != o.owner_) return owner_ < o.owner_;
        if (scalar_ != o.scalar_) return scalar_ < o.scalar_;
        return seq_ < o.seq_;
    }

private:
    friend class Group;
    GroupElem(const detail::GroupData* owner, std::int64_t scalar, std::vector<std::int32_t> seq)
        : owner_(owner), scalar_(scalar), seq_(std::move(seq)) {}

    const detail::GroupData* owner_ = nullptr;
    std::int64_t scalar_ = 0;
    std::vector<std::int32_t> seq_;
};

namespace detail {

struct GroupData {
    GroupKind kind = GroupKind::Integers;
    std::int64_t n = 0;                                  // cyclic order / table size
    std::int64_t rank = 0;                               // free rank
    std::vector<std::vector<std::int64_t>> table;        // multiplication table
    std::int64_t table_identity = 0;
    std::vector<std::int64_t> table_inverse;
    std::vector<std::int64_t> table_gens;                // canonical generator indices
    std::int64_t degree = 0;                             // permutation degree
    std::vector<std::vector<std::int32_t>> perm_gens;    // canonical generator images
    std::vector<std::vector<std::int32_t>> perm_elements; // sorted closure
    std::vector<std::int32_t> perm_identity;

    mutable std::once_flag length_once;
    mutable std::vector<std::uint64_t> table_lengths;
    mutable std::map<std::vector<std::int32_t>, std::uint64_t> perm_lengths;
};

inline std::vector<std::int32_t> compose_perm(const std::vector<std::int32_t>& a,
                                              const std::vector<std::int32_t>& b) {
    std::vector<std::int32_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
    return out;
}

inline std::vector<std::int32_t> invert_perm(const std::vector<std::int32_t>& a) {
    std::vector<std::int32_t> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[a[i]] = static_cast<std::int32_t>(i);
    return out;
}

// Concatenate two freely reduced words and reduce at the seam.
inline std::vector<std::int32_t> reduce_concat(const std::vector<std::int32_t>& a,
                                               const std::vector<std::int32_t>& b) {
    std::vector<std::int32_t> out = a;
    for (std::int32_t letter : b) {
        if (!out.empty() && (out.back() ^ 1) == letter) out.pop_back();
        else out.push_back(letter);
    }
    return out;
}

} // namespace detail

// Immutable group value over one of five backends: the integers, a finite
// cyclic group, a finitely generated free group, a finite group given by its
// multiplication table, or a finite permutation group given by generators.
class Group {
public:
    static Group integers() {
        auto d = std::make_shared<detail::GroupData>();
        d->kind = GroupKind::Integers;
        return Group(std::move(d));
    }

    static Group cyclic(std::int64_t n) {
        if (n < 1) throw ValidationError("cyclic group order must be positive");
        auto d = std::make_shared<detail::GroupData>();
        d->kind = GroupKind::Cyclic;
        d->n = n;
        return Group(std::move(d));
    }

    static Group free_group(std::int64_t rank) {
        if (rank < 1) throw ValidationError("free group rank must be at least 1");
        if (rank > 26) throw ValidationError("free group rank above 26 not supported");
        auto d = std::make_shared<detail::GroupData>();
        d->kind = GroupKind::Free;
        d->rank = rank;
        return Group(std::move(d));
    }

    static Group table(const std::vector<std::vector<std::int64_t>>& mul,
                       std::vector<std::int64_t> gens = {}) {
        auto d = std::make_shared<detail::GroupData>();
        d->kind = GroupKind::Table;
        const std::int64_t n = static_cast<std::int64_t>(mul.size());
        if (n == 0) throw ValidationError("multiplication table is empty");
        if (n > 256) throw ValidationError("multiplication table above 256 elements not supported");
        for (std::int64_t i = 0; i < n; ++i) {
            if (static_cast<std::int64_t>(mul[i].size()) != n)
                throw ValidationError("multiplication table is not square at row " + std::to_string(i));
            for (std::int64_t j = 0; j < n; ++j) {
                if (mul[i][j] < 0 || mul[i][j] >= n) {
                    std::ostringstream os;
                    os << "table entry (" << i << ", " << j << ") = " << mul[i][j] << " out of range";
                    throw ValidationError(os.str());
                }
            }
        }
        std::int64_t e = -1;
        for (std::int64_t c = 0; c < n; ++c) {
            bool ok = true;
            for (std::int64_t j = 0; j < n && ok; ++j)
                if (mul[c][j] != j || mul[j][c] != j) ok = false;
            if (ok) { e = c; break; }
        }
        if (e < 0) throw ValidationError("multiplication table has no identity element");
        std::vector<std::int64_t> inv(n, -1);
        for (std::int64_t i = 0; i < n; ++i) {
            for (std::int64_t j = 0; j < n; ++j) {
                if (mul[i][j] == e && mul[j][i] == e) { inv[i] = j; break; }
            }
            if (inv[i] < 0)
                throw ValidationError("table element " + std::to_string(i) + " has no inverse");
        }
        for (std::int64_t a = 0; a < n; ++a)
            for (std::int64_t b = 0; b < n; ++b)
                for (std::int64_t c = 0; c < n; ++c)
                    if (mul[mul[a][b]][c] != mul[a][mul[b][c]]) {
                        std::ostringstream os;
                        os << "table is not associative at triple (" << a << ", " << b << ", " << c << ")";
                        throw ValidationError(os.str());
                    }
        if (gens.empty()) {
            for (std::int64_t i = 0; i < n; ++i)
                if (i != e) gens.push_back(i);
        }
        for (std::int64_t g : gens)
            if (g < 0 || g >= n)
                throw ValidationError("generator index " + std::to_string(g) + " out of range");
        std::vector<bool> reached(n, false);
        reached[e] = true;
        std::deque<std::int64_t> queue{e};
        std::uint64_t count = 1;
        while (!queue.empty()) {
            std::int64_t x = queue.front();
            queue.pop_front();
            for (std::int64_t g : gens) {
                for (std::int64_t y : {mul[x][g], mul[x][inv[g]]}) {
                    if (!reached[y]) {
                        reached[y] = true;
                        ++count;
                        queue.push_back(y);
                    }
                }
            }
        }
        if (count != static_cast<std::uint64_t>(n)) {
            std::ostringstream os;
            os << "generators reach only " << count << " of " << n << " table elements";
            throw ValidationError(os.str());
        }
        d->n = n;
        d->table = mul;
        d->table_identity = e;
        d->table_inverse = std::move(inv);
        d->table_gens = std::move(gens);
        return Group(std::move(d));
    }

    static Group perm(std::int64_t degree, const std::vector<std::vector<std::int64_t>>& gens) {
        if (degree < 1) throw ValidationError("permutation degree must be positive");
        if (degree > 16) throw ValidationError("permutation degree above 16 not supported");
        if (gens.empty()) throw ValidationError("permutation group needs at least one generator");
        auto d = std::make_shared<detail::GroupData>();
        d->kind = GroupKind::Perm;
        d->degree = degree;
        for (const auto& g : gens) {
            if (static_cast<std::int64_t>(g.size()) != degree)
                throw ValidationError("permutation generator has wrong length");
            std::vector<bool> hit(degree, false);
            std::vector<std::int32_t> p(degree);
            for (std::int64_t i = 0; i < degree; ++i) {
                if (g[i] < 0 || g[i] >= degree || hit[g[i]]) {
                    std::ostringstream os;
                    os << "permutation generator [";
                    for (std::size_t k = 0; k < g.size(); ++k) os << (k ? "," : "") << g[k];
                    os << "] is not a bijection";
                    throw ValidationError(os.str());
                }
                hit[g[i]] = true;
                p[i] = static_cast<std::int32_t>(g[i]);
            }
            d->perm_gens.push_back(std::move(p));
        }
        d->perm_identity.resize(degree);
        for (std::int64_t i = 0; i < degree; ++i) d->perm_identity[i] = static_cast<std::int32_t>(i);
        std::set<std::vector<std::int32_t>> closure{d->perm_identity};
        std::deque<std::vector<std::int32_t>> queue{d->perm_identity};
        while (!queue.empty()) {
            auto x = queue.front();
            queue.pop_front();
            for (const auto& g : d->perm_gens) {
                for (const auto& y : {detail::compose_perm(x, g), detail::compose_perm(x, detail::invert_perm(g))}) {
                    if (closure.insert(y).second) queue.push_back(y);
                }
            }
        }
        d->perm_elements.assign(closure.begin(), closure.end());
        return Group(std::move(d));
    }

    GroupKind kind() const { return d_->kind; }

    bool is_finite() const {
        return d_->kind == GroupKind::Cyclic || d_->kind == GroupKind::Table || d_->kind == GroupKind::Perm;
    }

    std::uint64_t order() const {
        switch (d_->kind) {
            case GroupKind::Cyclic: return static_cast<std::uint64_t>(d_->n);
            case GroupKind::Table: return static_cast<std::uint64_t>(d_->n);
            case GroupKind::Perm: return d_->perm_elements.size();
            default: throw UnsupportedError("order of an infinite group");
        }
    }

    GroupElem identity() const {
        switch (d_->kind) {
            case GroupKind::Integers: return make(0);
            case GroupKind::Cyclic: return make(0);
            case GroupKind::Free: return make_seq({});
            case GroupKind::Table: return make(d_->table_identity);
            case GroupKind::Perm: return make_seq(d_->perm_identity);
        }
        throw Error("unreachable");
    }

    bool is_identity(const GroupElem& a) const { return equal(a, identity()); }

    bool equal(const GroupElem& a, const GroupElem& b) const {
        check(a);
        check(b);
        return a.scalar_ == b.scalar_ && a.seq_ == b.seq_;
    }

    GroupElem product(const GroupElem& a, const GroupElem& b) const {
        check(a);
        check(b);
        switch (d_->kind) {
            case GroupKind::Integers: return make(a.scalar_ + b.scalar_);
            case GroupKind::Cyclic: return make((a.scalar_ + b.scalar_) % d_->n);
            case GroupKind::Free: return make_seq(detail::reduce_concat(a.seq_, b.seq_));
            case GroupKind::Table: return make(d_->table[a.scalar_][b.scalar_]);
            case GroupKind::Perm: return make_seq(detail::compose_perm(a.seq_, b.seq_));
        }
        throw Error("unreachable");
    }

    GroupElem inverse(const GroupElem& a) const {
        check(a);
        switch (d_->kind) {
            case GroupKind::Integers: return make(-a.scalar_);
            case GroupKind::Cyclic: return make((d_->n - a.scalar_) % d_->n);
            case GroupKind::Free: {
                std::vector<std::int32_t> out(a.seq_.rbegin(), a.seq_.rend());
                for (auto& l : out) l ^= 1;
                return make_seq(std::move(out));
            }
            case GroupKind::Table: return make(d_->table_inverse[a.scalar_]);
            case GroupKind::Perm: return make_seq(detail::invert_perm(a.seq_));
        }
        throw Error("unreachable");
    }

    GroupElem power(const GroupElem& a, std::int64_t k) const {
        GroupElem base = k < 0 ? inverse(a) : a;
        std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
        GroupElem acc = identity();
        while (e > 0) {
            if (e & 1) acc = product(acc, base);
            base = product(base, base);
            e >>= 1;
        }
        return acc;
    }

    // Order of an element; nullopt when infinite.
    std::optional<std::uint64_t> element_order(const GroupElem& a) const {
        check(a);
        switch (d_->kind) {
            case GroupKind::Integers: return a.scalar_ == 0 ? std::optional<std::uint64_t>(1) : std::nullopt;
            case GroupKind::Free: return a.seq_.empty() ? std::optional<std::uint64_t>(1) : std::nullopt;
            default: {
                GroupElem x = a;
                std::uint64_t k = 1;
                while (!is_identity(x)) {
                    x = product(x, a);
                    ++k;
                }
                return k;
            }
        }
    }

    // Generators in the positive direction only; symmetrized by generators().
    std::vector<GroupElem> canonical_generators() const {
        switch (d_->kind) {
            case GroupKind::Integers: return {make(1)};
            case GroupKind::Cyclic: return d_->n == 1 ? std::vector<GroupElem>{} : std::vector<GroupElem>{make(1)};
            case GroupKind::Free: {
                std::vector<GroupElem> out;
                for (std::int64_t i = 0; i < d_->rank; ++i) out.push_back(make_seq({static_cast<std::int32_t>(2 * i)}));
                return out;
            }
            case GroupKind::Table: {
                std::vector<GroupElem> out;
                for (std::int64_t g : d_->table_gens) out.push_back(make(g));
                return out;
            }
            case GroupKind::Perm: {
                std::vector<GroupElem> out;
                for (const auto& g : d_->perm_gens) out.push_back(make_seq(g));
                return out;
            }
        }
        throw Error("unreachable");
    }

    // Canonical generators together with their inverses, deduplicated.
    std::vector<GroupElem> generators() const {
        std::vector<GroupElem> out = canonical_generators();
        std::vector<GroupElem> sym = out;
        for (const auto& g : out) sym.push_back(inverse(g));
        std::sort(sym.begin(), sym.end());
        sym.erase(std::unique(sym.begin(), sym.end()), sym.end());
        return sym;
    }

    std::vector<GroupElem> elements() const {
        switch (d_->kind) {
            case GroupKind::Cyclic: {
                std::vector<GroupElem> out;
                for (std::int64_t i = 0; i < d_->n; ++i) out.push_back(make(i));
                return out;
            }
            case GroupKind::Table: {
                std::vector<GroupElem> out;
                for (std::int64_t i = 0; i < d_->n; ++i) out.push_back(make(i));
                return out;
            }
            case GroupKind::Perm: {
                std::vector<GroupElem> out;
                for (const auto& p : d_->perm_elements) out.push_back(make_seq(p));
                return out;
            }
            default: throw UnsupportedError("element enumeration needs a finite group");
        }
    }

    // Word length over the symmetrized canonical generators.
    std::uint64_t word_length(const GroupElem& a) const {
        check(a);
        switch (d_->kind) {
            case GroupKind::Integers:
                return static_cast<std::uint64_t>(a.scalar_ < 0 ? -a.scalar_ : a.scalar_);
            case GroupKind::Cyclic:
                return static_cast<std::uint64_t>(std::min(a.scalar_, d_->n - a.scalar_));
            case GroupKind::Free:
                return a.seq_.size();
            case GroupKind::Table: {
                std::call_once(d_->length_once, [&] { build_table_lengths(); });
                return d_->table_lengths[a.scalar_];
            }
            case GroupKind::Perm: {
                std::call_once(d_->length_once, [&] { build_perm_lengths(); });
                auto it = d_->perm_lengths.find(a.seq_);
                if (it == d_->perm_lengths.end()) throw DomainError("permutation is not in the group");
                return it->second;
            }
        }
        throw Error("unreachable");
    }

    // All elements of word length at most r, sorted.
    std::vector<GroupElem> ball(std::uint64_t r) const {
        std::vector<GroupElem> out;
        switch (d_->kind) {
            case GroupKind::Integers: {
                for (std::int64_t i = -static_cast<std::int64_t>(r); i <= static_cast<std::int64_t>(r); ++i)
                    out.push_back(make(i));
                break;
            }
            case GroupKind::Free: {
                std::vector<std::vector<std::int32_t>> frontier{{}};
                out.push_back(make_seq({}));
                for (std::uint64_t l = 1; l <= r; ++l) {
                    std::vector<std::vector<std::int32_t>> next;
                    for (const auto& w : frontier) {
                        for (std::int32_t letter = 0; letter < 2 * d_->rank; ++letter) {
                            if (!w.empty() && (w.back() ^ 1) == letter) continue;
                            auto x = w;
                            x.push_back(letter);
                            out.push_back(make_seq(x));
                            next.push_back(std::move(x));
                        }
                    }
                    frontier = std::move(next);
                    if (out.size() > search_budget()) throw BudgetError("free group ball exceeded the node budget");
                }
                break;
            }
            default: {
                for (const auto& a : elements())
                    if (word_length(a) <= r) out.push_back(a);
                break;
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    GroupElem parse(const std::string& text) const {
        std::string s = trimmed(text);
        if (s.empty()) throw ValidationError("empty element literal");
        switch (d_->kind) {
            case GroupKind::Integers: return make(parse_int(s));
            case GroupKind::Cyclic: {
                std::int64_t v = parse_int(s) % d_->n;
                if (v < 0) v += d_->n;
                return make(v);
            }
            case GroupKind::Table: {
                std::int64_t v = parse_int(s);
                if (v < 0 || v >= d_->n)
                    throw ValidationError("table element index " + s + " out of range");
                return make(v);
            }
            case GroupKind::Free: return parse_free(s);
            case GroupKind::Perm: return parse_perm(s);
        }
        throw Error("unreachable");
    }

    std::string render(const GroupElem& a) const {
        check(a);
        switch (d_->kind) {
            case GroupKind::Integers:
            case GroupKind::Cyclic:
            case GroupKind::Table:
                return std::to_string(a.scalar_);
            case GroupKind::Free: {
                if (a.seq_.empty()) return "e";
                std::ostringstream os;
                std::size_t i = 0;
                while (i < a.seq_.size()) {
                    std::size_t j = i;
                    while (j < a.seq_.size() && a.seq_[j] == a.seq_[i]) ++j;
                    os << static_cast<char>('a' + (a.seq_[i] >> 1));
                    std::int64_t exp = static_cast<std::int64_t>(j - i) * ((a.seq_[i] & 1) ? -1 : 1);
                    if (exp != 1) os << "^" << exp;
                    i = j;
                }
                return os.str();
            }
            case GroupKind::Perm: {
                std::ostringstream os;
                os << "[";
                for (std::size_t i = 0; i < a.seq_.size(); ++i) os << (i ? "," : "") << a.seq_[i];
                os << "]";
                return os.str();
            }
        }
        throw Error("unreachable");
    }

    std::string describe() const {
        switch (d_->kind) {
            case GroupKind::Integers: return "integers";
            case GroupKind::Cyclic: return "cyclic group of order " + std::to_string(d_->n);
            case GroupKind::Free: return "free group of rank " + std::to_string(d_->rank);
            case GroupKind::Table: return "table group of order " + std::to_string(d_->n);
            case GroupKind::Perm: return "permutation group of order " + std::to_string(d_->perm_elements.size()) +
                                         " on " + std::to_string(d_->degree) + " points";
        }
        throw Error("unreachable");
    }

    // Uniformly random element of the radius-r ball (of the whole group when finite).
    GroupElem sample(std::mt19937_64& rng, std::uint64_t radius) const {
        if (is_finite()) {
            auto all = elements();
            return all[rng() % all.size()];
        }
        auto b = ball(radius);
        return b[rng() % b.size()];
    }

    // Backend-specific views used by the action machinery.
    std::int64_t scalar_value(const GroupElem& a) const {
        check(a);
        if (d_->kind != GroupKind::Integers && d_->kind != GroupKind::Cyclic && d_->kind != GroupKind::Table)
            throw UnsupportedError("scalar view is only defined for integer-indexed backends");
        return a.scalar_;
    }

    const std::vector<std::int32_t>& letters(const GroupElem& a) const {
        check(a);
        if (d_->kind != GroupKind::Free) throw UnsupportedError("letter view is only defined for free groups");
        return a.seq_;
    }

    GroupElem from_letters(const std::vector<std::int32_t>& word) const {
        if (d_->kind != GroupKind::Free) throw UnsupportedError("letter view is only defined for free groups");
        std::vector<std::int32_t> reduced;
        for (std::int32_t l : word) {
            if (l < 0 || l >= 2 * d_->rank) throw DomainError("letter code out of range");
            if (!reduced.empty() && (reduced.back() ^ 1) == l) reduced.pop_back();
            else reduced.push_back(l);
        }
        return make_seq(std::move(reduced));
    }

    std::int64_t free_rank() const {
        if (d_->kind != GroupKind::Free) throw UnsupportedError("rank is only defined for free groups");
        return d_->rank;
    }

    bool owns(const GroupElem& a) const { return a.owner_ == d_.get(); }
    bool same(const Group& o) const { return d_ == o.d_; }
    const void* handle() const { return d_.get(); }

private:
    explicit Group(std::shared_ptr<detail::GroupData> d) : d_(std::move(d)) {}

    void check(const GroupElem& a) const {
        if (a.owner_ != d_.get())
            throw DomainError("element does not belong to this group (" + describe() + ")");
    }

    GroupElem make(std::int64_t scalar) const { return GroupElem(d_.get(), scalar, {}); }
    GroupElem make_seq(std::vector<std::int32_t> seq) const { return GroupElem(d_.get(), 0, std::move(seq)); }

    void build_table_lengths() const {
        const std::int64_t n = d_->n;
        d_->table_lengths.assign(n, std::uint64_t(-1));
        std::deque<std::int64_t> queue{d_->table_identity};
        d_->table_lengths[d_->table_identity] = 0;
        while (!queue.empty()) {
            std::int64_t x = queue.front();
            queue.pop_front();
            for (std::int64_t g : d_->table_gens) {
                for (std::int64_t y : {d_->table[x][g], d_->table[x][d_->table_inverse[g]]}) {
                    if (d_->table_lengths[y] == std::uint64_t(-1)) {
                        d_->table_lengths[y] = d_->table_lengths[x] + 1;
                        queue.push_back(y);
                    }
                }
            }
        }
    }

    void build_perm_lengths() const {
        d_->perm_lengths[d_->perm_identity] = 0;
        std::deque<std::vector<std::int32_t>> queue{d_->perm_identity};
        while (!queue.empty()) {
            auto x = queue.front();
            queue.pop_front();
            std::uint64_t len = d_->perm_lengths[x];
            for (const auto& g : d_->perm_gens) {
                for (const auto& y : {detail::compose_perm(x, g), detail::compose_perm(x, detail::invert_perm(g))}) {
                    if (!d_->perm_lengths.count(y)) {
                        d_->perm_lengths[y] = len + 1;
                        queue.push_back(y);
                    }
                }
            }
        }
    }

    static std::string trimmed(const std::string& s) {
        std::size_t a = s.find_first_not_of(" \t");
        if (a == std::string::npos) return "";
        std::size_t b = s.find_last_not_of(" \t");
        return s.substr(a, b - a + 1);
    }

    static std::int64_t parse_int(const std::string& s) {
        std::size_t pos = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(s, &pos);
        } catch (const std::exception&) {
            throw ValidationError("expected an integer literal, got \"" + s + "\"");
        }
        if (pos != s.size()) throw ValidationError("trailing characters in integer literal \"" + s + "\"");
        return v;
    }

    GroupElem parse_free(const std::string& s) const {
        if (s == "e" || s == "1") return make_seq({});
        std::vector<std::int32_t> word;
        std::size_t i = 0;
        while (i < s.size()) {
            char c = s[i];
            if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
            if (c < 'a' || c > 'z')
                throw ValidationError("unexpected character '" + std::string(1, c) + "' in free group word");
            std::int64_t gen = c - 'a';
            if (gen >= d_->rank)
                throw ValidationError("letter '" + std::string(1, c) + "' exceeds the free group rank");
            ++i;
            std::int64_t exp = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t j = i;
                if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
                while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
                if (j == i || (j == i + 1 && !std::isdigit(static_cast<unsigned char>(s[i]))))
                    throw ValidationError("malformed exponent in free group word");
                exp = parse_int(s.substr(i, j - i));
                i = j;
            }
            std::int32_t letter = static_cast<std::int32_t>(2 * gen + (exp < 0 ? 1 : 0));
            std::int64_t reps = exp < 0 ? -exp : exp;
            for (std::int64_t k = 0; k < reps; ++k) word.push_back(letter);
        }
        return from_letters(word);
    }

    GroupElem parse_perm(const std::string& s) const {
        std::string body = s;
        if (!body.empty() && body.front() == '[') {
            if (body.back() != ']') throw ValidationError("unbalanced brackets in permutation literal");
            body = body.substr(1, body.size() - 2);
        }
        for (auto& c : body)
            if (c == ',') c = ' ';
        std::istringstream is(body);
        std::vector<std::int32_t> p;
        std::int64_t v;
        while (is >> v) p.push_back(static_cast<std::int32_t>(v));
        if (static_cast<std::int64_t>(p.size()) != d_->degree)
            throw ValidationError("permutation literal has wrong length");
        if (!std::binary_search(d_->perm_elements.begin(), d_->perm_elements.end(), p))
            throw DomainError("permutation " + s + " is not an element of the group");
        return make_seq(std::move(p));
    }

    std::shared_ptr<detail::GroupData> d_;
};

} // namespace gwkit

#endif
