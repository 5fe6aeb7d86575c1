#include "pmod/streaming.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "pmod/errors.hpp"
#include "pmod/homology.hpp"

namespace pmod {

StreamState::StreamState(Field field) : field_(field) {}

bool StreamState::key_less(std::size_t a, std::size_t b) const {
    if (cells_[a].value != cells_[b].value) return cells_[a].value < cells_[b].value;
    return a < b;
}

std::optional<std::size_t> StreamState::low(const SparseVector& column) const {
    std::optional<std::size_t> best;
    for (const auto& t : column)
        if (!best || key_less(*best, t.index)) best = t.index;
    return best;
}

SparseVector StreamState::boundary_of(std::size_t id) const {
    SparseVector v;
    const auto& vs = cells_[id].vertices;
    if (vs.size() < 2) return v;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::vector<int> face = vs;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        v.set(index_.at(simplex_label(face)), Scalar(field_, i % 2 == 0 ? 1L : -1L));
    }
    return v;
}

BarcodeDelta StreamState::add_simplex(std::vector<int> vertices, int value) {
    if (vertices.empty()) throw ValidationError("empty simplex");
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw ValidationError("simplex [" + simplex_label(vertices) + "] repeats a vertex");
    const std::string label = simplex_label(vertices);
    if (index_.contains(label)) throw ValidationError("duplicate simplex [" + label + "]");
    if (vertices.size() > 1)
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            std::vector<int> face = vertices;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
            auto it = index_.find(simplex_label(face));
            if (it == index_.end())
                throw ValidationError("missing face [" + simplex_label(face) + "] of [" + label + "]");
            if (cells_[it->second].value > value)
                throw ValidationError("face [" + simplex_label(face) + "] has a larger value than [" + label + "]");
        }

    const Barcode before = current_barcode();
    const std::size_t id = cells_.size();
    const int dim = static_cast<int>(vertices.size()) - 1;
    cells_.push_back(Cell{std::move(vertices), label, value, dim});
    index_.emplace(label, id);
    reduced_.push_back(boundary_of(id));

    auto later = [this](std::size_t a, std::size_t b) { return key_less(b, a); };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(later)> queue(later);
    queue.push(id);
    while (!queue.empty()) {
        const std::size_t c = queue.top();
        queue.pop();
        SparseVector& col = reduced_[c];
        while (auto l = low(col)) {
            auto it = owner_.find(*l);
            if (it == owner_.end()) {
                owner_.emplace(*l, c);
                break;
            }
            const std::size_t o = it->second;
            if (o == c) break;
            if (key_less(o, c)) {
                col.axpy(-(*col.find(*l) / *reduced_[o].find(*l)), reduced_[o]);
                continue;
            }
            // the earlier column takes the pivot over; the later one is repaired
            it->second = c;
            SparseVector& other = reduced_[o];
            other.axpy(-(*other.find(*l) / *col.find(*l)), col);
            queue.push(o);
            break;
        }
    }

    const Barcode after = current_barcode();
    BarcodeDelta delta;
    std::set_difference(after.bars().begin(), after.bars().end(), before.bars().begin(), before.bars().end(),
                        std::back_inserter(delta.added), bar_less);
    std::set_difference(before.bars().begin(), before.bars().end(), after.bars().begin(), after.bars().end(),
                        std::back_inserter(delta.removed), bar_less);
    return delta;
}

Barcode StreamState::current_barcode() const {
    std::vector<Bar> bars;
    std::vector<bool> paired(cells_.size(), false);
    for (const auto& [row, col] : owner_) {
        paired[row] = paired[col] = true;
        bars.push_back(Bar{cells_[row].dim, cells_[row].value, cells_[col].value});
    }
    for (std::size_t i = 0; i < cells_.size(); ++i)
        if (!paired[i]) bars.push_back(Bar{cells_[i].dim, cells_[i].value, std::nullopt});
    return Barcode(std::move(bars));
}

std::vector<std::pair<std::string, std::string>> StreamState::pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> ids(owner_.begin(), owner_.end());
    std::sort(ids.begin(), ids.end());
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& [row, col] : ids) out.emplace_back(cells_[row].label, cells_[col].label);
    return out;
}

std::optional<std::string> StreamState::partner(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    for (const auto& [row, col] : owner_) {
        if (row == it->second) return cells_[col].label;
        if (col == it->second) return cells_[row].label;
    }
    return std::nullopt;
}

bool StreamState::audit() const {
    std::vector<std::size_t> order(cells_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) { return key_less(a, b); });

    std::unordered_map<std::size_t, std::size_t> owner;
    std::vector<SparseVector> cols(cells_.size());
    for (std::size_t c : order) {
        SparseVector col = boundary_of(c);
        while (auto l = low(col)) {
            auto it = owner.find(*l);
            if (it == owner.end()) {
                owner.emplace(*l, c);
                break;
            }
            col.axpy(-(*col.find(*l) / *cols[it->second].find(*l)), cols[it->second]);
        }
        cols[c] = std::move(col);
    }
    if (owner != owner_) return false;
    // every maintained column must still have its recorded low
    for (const auto& [row, col] : owner_)
        if (low(reduced_[col]) != row) return false;
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        auto l = low(reduced_[c]);
        if (!l) continue;
        auto it = owner_.find(*l);
        if (it == owner_.end() || it->second != c) return false;
    }
    return true;
}

}  // namespace pmod
